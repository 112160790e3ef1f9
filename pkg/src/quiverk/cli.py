"""Command-line front end.

    quiverk "F=diag(2,3); G=[[1,1],[0,1]]" [--json] [--breakdown] [--check]
            [--closed-form] [--presentation] [--general-f]
    quiverk --file job.txt ...
    quiverk --batch jobs.txt ...      # one job per line, JSON-lines with --json

Exit codes: 0 success, 1 a check or closed-form comparison failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import ast
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from . import closed_forms as cf
from .abgroup import render
from .exact_linalg import IntMatrix
from .kquiver import (
    KGroupsResult,
    QuiverError,
    QuiverInput,
    assemble,
    build_levels,
    check_identities,
    level_result,
)
from .omega import box, run_omega_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class JobSpec:
    input: QuiverInput
    breakdown: bool = False
    check: bool = False
    closed_form: bool = False
    presentation: bool = False
    general_f: bool = False
    fmt: str = "text"


_ASSIGN = re.compile(r"^([FG])=(.*)$")
_INT = re.compile(r"^[+-]?\d+$")


def _parse_int(tok: str) -> int:
    if not _INT.match(tok):
        raise ParseError(f"not an integer: {tok!r}")
    return int(tok)


def _parse_matrix(text: str) -> IntMatrix:
    if _INT.match(text):
        return IntMatrix.from_rows([[int(text)]])
    m = re.fullmatch(r"diag\((.*)\)", text)
    if m:
        body = m.group(1)
        if not body:
            raise ParseError("diag() needs at least one entry")
        return IntMatrix.diag(_parse_int(t) for t in body.split(","))
    if text.startswith("[") and re.fullmatch(r"[\[\]\d,+-]+", text):
        try:
            value = ast.literal_eval(text)
        except (ValueError, SyntaxError) as exc:
            raise ParseError(f"malformed matrix: {text!r}") from exc
        if isinstance(value, list) and len(value) == 1 and isinstance(value[0], int):
            value = [value]
        if not (isinstance(value, list) and value
                and all(isinstance(r, list) and r and all(isinstance(x, int) for x in r) for r in value)):
            raise ParseError(f"malformed matrix: {text!r}")
        try:
            return IntMatrix.from_rows(value)
        except ValueError as exc:
            raise ParseError(f"{exc}: {text!r}") from exc
    raise ParseError(f"cannot parse matrix {text!r}; use diag(a,...), [[..],[..]] or an integer")


def parse_matrices(source: str) -> tuple[IntMatrix, IntMatrix]:
    """Parse ``F=...; G=...`` (``;`` or newline separated, whitespace-insensitive)."""
    text = "".join(source.split())
    found: dict[str, IntMatrix] = {}
    for part in text.split(";"):
        if not part:
            continue
        m = _ASSIGN.match(part)
        if not m:
            raise ParseError(f"expected F=... or G=..., got {part!r}")
        name, value = m.groups()
        if name in found:
            raise ParseError(f"{name} given twice")
        found[name] = _parse_matrix(value)
    missing = {"F", "G"} - found.keys()
    if missing:
        raise ParseError(f"missing {', '.join(sorted(missing))}")
    return found["F"], found["G"]


def _split_statements(source: str) -> str:
    # newlines separate statements inside a single-job file
    return ";".join(line.split("#", 1)[0] for line in source.splitlines())


def parse_input(source: str, *, general_f: bool = False, **flags) -> JobSpec:
    F, G = parse_matrices(_split_statements(source))
    q = QuiverInput(F, G, general_f=general_f)
    return JobSpec(input=q, general_f=general_f, **flags)


# -- output ------------------------------------------------------------------

def _label(nu: tuple[int, ...]) -> str:
    return str(nu[0]) if len(nu) == 1 else "(" + ",".join(map(str, nu)) + ")"


def _unitary(j: int, d: int) -> str:
    return "U" if d == 1 else f"U_{j + 1}"


def _power(j: int, e: int, d: int) -> str:
    u = _unitary(j, d)
    return u if e == 1 else f"{u}^{e}"


def _word(exps, d: int) -> str:
    return " ".join(_power(j, e, d) for j, e in enumerate(exps) if e)


def emit_presentation(q: QuiverInput) -> str:
    """Generators and relations of O_{F,G}(T^d) for positive diagonal F."""
    if not q.f_diagonal:
        raise QuiverError("presentation requires a positive diagonal F")
    d = q.d
    a = q.F.diagonal()
    idx = box(q.F)
    S = {nu: f"S_{_label(nu)}" for nu in idx}
    zero = idx[0]
    lines = [f"generators: isometries {', '.join(S[nu] for nu in idx)}; "
             f"commuting unitaries {', '.join(_unitary(j, d) for j in range(d))}",
             f"S = {S[zero]}", "relations:"]
    if len(idx) <= 16:
        for nu in idx:
            for mu in idx:
                lines.append(f"  (1) {S[nu]}* {S[mu]} = {int(nu == mu)}")
    else:
        lines.append(f"  (1) S_nu* S_mu = delta(nu, mu) for all {len(idx)}^2 pairs nu, mu")
    for nu in idx:
        w = _word(nu, d)
        lines.append(f"  (2) {w + ' ' if w else ''}S = {S[nu]}")
    for j in range(d):
        rhs = _word(q.G.row(j), d)
        lines.append(f"  (3) {_power(j, a[j], d)} S = S{' ' + rhs if rhs else ''}")
    lines.append("  (4) " + " + ".join(f"{S[nu]} {S[nu]}*" for nu in idx) + " = 1")
    return "\n".join(lines)


@dataclass
class Report:
    data: dict
    text: list[str]
    failed: bool = False


def _closed_form_candidates(q: QuiverInput) -> list[tuple[str, KGroupsResult, bool]]:
    """(name, result, expected_mismatch) for every closed form that applies.

    Two printed forms are known to disagree with the engine and are reported
    without failing the run: the diagonal formula for p = 0, v > 0 (with f > 0),
    which puts odd-level torsion in K0, and the scalar formula where some
    n^(d-k) m^k = 1.
    """
    F, G, d = q.F, q.G, q.d
    out = []
    if not q.f_diagonal:
        return out
    a = F.diagonal()
    scalar_F = len(set(a)) == 1
    if scalar_F:
        r = cf.alg2_kgroups(a[0], G)
        if r is not cf.NotCovered:
            out.append(("F = n 1_d", r, False))
        if G.is_diagonal() and len(set(G.diagonal())) == 1:
            r = cf.scalar_kgroups(a[0], G[0, 0], d)
            out.append(("F = n 1_d, G = m 1_d", r, False))
            printed = cf.scalar_kgroups(a[0], G[0, 0], d, literal=True)
            if printed != r:
                out.append(("F = n 1_d, G = m 1_d (as printed)", printed, True))
        if d == 2 and a[0] == 1 and not cf.has_eigenvalue_one(G):
            out.append(("d = 2, F = 1", cf.corollary_d2(G), False))
    if G.is_diagonal() and list(a) == sorted(a):
        data = cf.diagonal_case_data(a, G.diagonal())
        out.append(("diagonal F and G", cf.diag_kgroups(F, G), False))
        if data.f > 0 and data.case == 2:
            out.append(("diagonal F and G (as printed, p = 0, v > 0)", cf.diag_kgroups(F, G, literal=True), True))
    return out


def run(job: JobSpec) -> tuple[int, Report]:
    q = job.input
    levels = build_levels(q)
    per_level = [level_result(lv) for lv in levels]
    result = assemble(per_level)
    data: dict = {
        "d": q.d,
        "F": q.F.to_lists(),
        "G": q.G.to_lists(),
        "K0": result.K0.to_dict(),
        "K1": result.K1.to_dict(),
        "levels": [
            {"k": lv.k, "size": lv.size, "ker_rank": lv.ker_rank, "coker": lv.coker.to_dict()}
            for lv in per_level
        ],
        "flags": {"general_f": job.general_f},
        "warnings": list(q.warnings),
    }
    text = [f"K0 = {render(result.K0)}", f"K1 = {render(result.K1)}"]
    text.extend(f"warning: {w}" for w in q.warnings)
    failed = False

    if job.breakdown:
        text.append("k  size  ker_rank  coker(1-C_k)")
        for lv in per_level:
            text.append(f"{lv.k:<2} {lv.size:<5} {lv.ker_rank:<9} {render(lv.coker)}")

    if job.check:
        checks = [(c.name, c.passed, c.detail) for c in check_identities(levels, q)]
        if q.f_diagonal:
            checks += [(c.name, c.passed, c.detail) for c in run_omega_checks(q.F, q.G, levels[1].C)]
        else:
            data["warnings"].append("Omega checks skipped: F is not diagonal")
            text.append("warning: Omega checks skipped: F is not diagonal")
        data["checks"] = [{"name": n, "passed": p, "detail": dt} for n, p, dt in checks]
        for n, p, dt in checks:
            text.append(f"check {'PASS' if p else 'FAIL'}: {n}{' (' + dt + ')' if dt else ''}")
        failed = failed or not all(p for _, p, _ in checks)

    if job.closed_form:
        entries = []
        for name, r, flagged in _closed_form_candidates(q):
            agree = r == result
            entries.append({
                "name": name, "agree": agree, "expected_mismatch": flagged,
                "K0": r.K0.to_dict(), "K1": r.K1.to_dict(),
            })
            status = "agree" if agree else ("DISAGREE (expected)" if flagged else "DISAGREE")
            text.append(f"closed form [{name}]: {status}; K0 = {render(r.K0)}, K1 = {render(r.K1)}")
            failed = failed or (not agree and not flagged)
        if not entries:
            text.append("closed form: none applicable")
        data["closed_form"] = entries

    if job.presentation:
        if q.f_diagonal:
            pres = emit_presentation(q)
            data["presentation"] = pres.splitlines()
            text.append(pres)
        else:
            data["warnings"].append("presentation skipped: F is not diagonal")
            text.append("warning: presentation skipped: F is not diagonal")

    return (EXIT_CHECK_FAILED if failed else EXIT_OK), Report(data, text, failed)


def _error_payload(exc: Exception) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def _emit(report_or_error, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        payload = report_or_error if isinstance(report_or_error, dict) else report_or_error.data
        out.write(json.dumps(payload) + "\n")
    else:
        if isinstance(report_or_error, dict):
            err = report_or_error["error"]
            out.write(f"error ({err['type']}): {err['message']}\n")
        else:
            out.write("\n".join(report_or_error.text) + "\n")


def _run_source(source: str, flags: dict, fmt: str, out: TextIO) -> int:
    try:
        job = parse_input(source, **flags)
    except (ParseError, QuiverError) as exc:
        _emit(_error_payload(exc), fmt, out)
        return EXIT_INPUT_ERROR
    try:
        code, report = run(job)
    except QuiverError as exc:
        _emit(_error_payload(exc), fmt, out)
        return EXIT_INPUT_ERROR
    _emit(report, fmt, out)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverk", description=__doc__.split("\n\n")[0])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("job", nargs="?", help='inline job, e.g. "F=diag(2,3); G=[[1,1],[0,1]]"')
    src.add_argument("--file", type=Path, help="file holding one job (F and G on separate lines)")
    src.add_argument("--batch", type=Path, metavar="FILE", help="file with one job per line")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--breakdown", action="store_true", help="per-level kernel/cokernel table")
    p.add_argument("--check", action="store_true", help="verify matrix identities and Omega")
    p.add_argument("--closed-form", action="store_true", help="compare against applicable closed forms")
    p.add_argument("--presentation", action="store_true", help="print generators and relations")
    p.add_argument("--general-f", action="store_true", help="allow F that is not positive diagonal")
    return p


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    fmt = "json" if args.json else "text"
    flags = dict(
        breakdown=args.breakdown, check=args.check, closed_form=args.closed_form,
        presentation=args.presentation, general_f=args.general_f, fmt=fmt,
    )
    if args.batch is not None:
        try:
            lines = args.batch.read_text().splitlines()
        except OSError as exc:
            _emit(_error_payload(exc), fmt, out)
            return EXIT_INPUT_ERROR
        worst = EXIT_OK
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if fmt == "text":
                out.write(f"== {line}\n")
            worst = max(worst, _run_source(line, flags, fmt, out))
        return worst
    if args.file is not None:
        try:
            source = args.file.read_text()
        except OSError as exc:
            _emit(_error_payload(exc), fmt, out)
            return EXIT_INPUT_ERROR
    else:
        source = args.job
    return _run_source(source, flags, fmt, out)


if __name__ == "__main__":
    raise SystemExit(main())
