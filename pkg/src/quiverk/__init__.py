"""Exact K-theory of Cuntz-Pimsner algebras of torus group quivers."""

from .abgroup import FinGenAbGroup, direct_sum, render
from .exact_linalg import IntMatrix, SubsetIndex, det, exterior_power, is_unimodular, mat_mul, minor
from .kquiver import KGroupsResult, QuiverInput, build_levels, k_groups, k_groups_of
from .smith import SmithDecomposition, cokernel, kernel_rank, rank, smith_normal_form

__all__ = [
    "FinGenAbGroup", "direct_sum", "render",
    "IntMatrix", "SubsetIndex", "det", "exterior_power", "is_unimodular", "mat_mul", "minor",
    "KGroupsResult", "QuiverInput", "build_levels", "k_groups", "k_groups_of",
    "SmithDecomposition", "cokernel", "kernel_rank", "rank", "smith_normal_form",
]
