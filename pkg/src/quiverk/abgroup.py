"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    # Pairwise (gcd, lcm) sweep. After pass i, slot i divides every later slot.
    xs = sorted(orders)
    n = len(xs)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = xs[i], xs[j]
            g = gcd(a, b)
            xs[i], xs[j] = g, a // g * b
    return tuple(x for x in xs if x > 1)


@dataclass(frozen=True)
class FinGenAbGroup:
    """Z^free_rank (+) Z/d1 (+) ... (+) Z/dm with d1 | d2 | ... | dm, each di >= 2.

    Two instances compare equal exactly when the groups are isomorphic.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = tuple(self.torsion)
        if any(x < 2 for x in t):
            raise ValueError(f"torsion orders must be >= 2: {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion is not a divisibility chain: {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic_factors(cls, orders: Iterable[int], free_rank: int = 0) -> FinGenAbGroup:
        """Canonicalize a direct sum of cyclic groups Z/|n|; Z/0 counts as Z."""
        finite = []
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free_rank += 1
            elif n > 1:
                finite.append(n)
        return cls(free_rank, _invariant_factors(finite))

    @classmethod
    def free(cls, rank: int) -> FinGenAbGroup:
        return cls(rank, ())

    def __add__(self, other: FinGenAbGroup) -> FinGenAbGroup:
        return direct_sum(self, other)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, data: dict) -> FinGenAbGroup:
        return cls(int(data["free_rank"]), tuple(int(x) for x in data["torsion"]))

    def __str__(self) -> str:
        return render(self)


def direct_sum(*groups: FinGenAbGroup) -> FinGenAbGroup:
    rank = sum(g.free_rank for g in groups)
    return FinGenAbGroup(rank, _invariant_factors(t for g in groups for t in g.torsion))


def render(g: FinGenAbGroup, style: str = "text") -> str:
    """``"Z^2 (+) Z/2 (+) Z/12"`` for text, ``{"free_rank":..,"torsion":[..]}`` for json."""
    if style == "json":
        return json.dumps(g.to_dict())
    if style != "text":
        raise ValueError(f"unknown style {style!r}")
    parts = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank > 1:
        parts.append(f"Z^{g.free_rank}")
    parts.extend(f"Z/{t}" for t in g.torsion)
    return " (+) ".join(parts) if parts else "0"


def parse_json(text: str) -> FinGenAbGroup:
    return FinGenAbGroup.from_dict(json.loads(text))


TRIVIAL = FinGenAbGroup()
Z = FinGenAbGroup(1)
