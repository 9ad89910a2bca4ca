"""Command-line front end: ``fracsum <command> [flags]``.

Sequences and matrices are read from JSON files::

    {"kind": "explicit", "values": [0, 1, 0, 1]}
    {"kind": "generator", "name": "alternating", "length": 8}
    {"kind": "builtin", "name": "euler", "params": {"r": 0.5}}
    {"kind": "explicit", "rows": [[1], [0.5, 0.5]]}

The exit status reports whether the analysis ran, never what it found:
0 on completion, 2 when the flags or the input are rejected.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import verify as verify_mod
from .almost import GENERATORS, estimate_almost_limit, make_generator
from .classify import DEFAULT_N1, DEFAULT_N2, DEFAULT_TOL, SpacePair, classify
from .duality import KINDS, dual_check
from .errors import FracSumError, NameLookupError, ParseError
from .frac_coeff import weights
from .operators import BUILTINS, RowFiniteMatrix, apply, build_builtin, explicit
from .sequence import TruncatedSequence
from .spaces import fdf_membership

TOL_ENV = "FRACSUM_TOL"


# --- file specs -------------------------------------------------------------

@dataclass(frozen=True)
class SequenceSpec:
    kind: str
    values: Optional[tuple[float, ...]] = None
    name: Optional[str] = None
    params: dict = field(default_factory=dict)
    length: Optional[int] = None
    approximate: bool = False

    def build(self) -> TruncatedSequence:
        if self.kind == "explicit":
            return TruncatedSequence(np.array(self.values), approximate=self.approximate)
        return make_generator(self.name, self.length, **self.params)


@dataclass(frozen=True)
class MatrixSpec:
    kind: str
    name: Optional[str] = None
    params: dict = field(default_factory=dict)
    rows: Optional[tuple[tuple[float, ...], ...]] = None

    def build(self) -> RowFiniteMatrix:
        if self.kind == "builtin":
            return build_builtin(self.name, **self.params)
        return explicit(self.rows)


def _load(path) -> tuple[dict, str]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: top level must be an object")
    return obj, str(path)


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ParseError(f"{where}: unknown field {extra[0]!r}")


def _number(v: Any, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {json.dumps(v)}")
    x = float(v)
    if not math.isfinite(x):
        raise ParseError(f"{where}: value is not finite")
    return x


def _numbers(v: Any, where: str) -> tuple[float, ...]:
    if not isinstance(v, list) or not v:
        raise ParseError(f"{where}: expected a non-empty list of numbers")
    return tuple(_number(x, f"{where}[{i}]") for i, x in enumerate(v))


def _params(obj: dict, where: str) -> dict:
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise ParseError(f"{where}: field 'params' must be an object")
    out = {}
    for key, v in params.items():
        out[key] = list(_numbers(v, f"{where}: params.{key}")) if isinstance(v, list) \
            else _number(v, f"{where}: params.{key}")
    return out


def _kind(obj: dict, kinds: tuple[str, ...], where: str) -> str:
    kind = obj.get("kind")
    if kind not in kinds:
        raise ParseError(f"{where}: field 'kind' must be one of {list(kinds)}, got {json.dumps(kind)}")
    return kind


def _name(obj: dict, known: tuple[str, ...], where: str, what: str) -> str:
    name = obj.get("name")
    if not isinstance(name, str):
        raise ParseError(f"{where}: field 'name' must be a string")
    if name not in known:
        raise NameLookupError(f"{where}: unknown {what} {name!r}; expected one of {list(known)}")
    return name


def sequence_from_obj(obj: dict, where: str = "<sequence>") -> SequenceSpec:
    kind = _kind(obj, ("explicit", "generator"), where)
    if kind == "explicit":
        _check_keys(obj, {"kind", "values", "approximate"}, where)
        if "values" not in obj:
            raise ParseError(f"{where}: missing field 'values'")
        approx = obj.get("approximate", False)
        if not isinstance(approx, bool):
            raise ParseError(f"{where}: field 'approximate' must be true or false")
        return SequenceSpec("explicit", values=_numbers(obj["values"], f"{where}: values"),
                            approximate=approx)
    _check_keys(obj, {"kind", "name", "length", "params"}, where)
    name = _name(obj, GENERATORS, where, "generator")
    length = obj.get("length")
    if isinstance(length, bool) or not isinstance(length, int) or length < 1:
        raise ParseError(f"{where}: field 'length' must be a positive integer")
    return SequenceSpec("generator", name=name, params=_params(obj, where), length=length)


def matrix_from_obj(obj: dict, where: str = "<matrix>") -> MatrixSpec:
    kind = _kind(obj, ("builtin", "explicit"), where)
    if kind == "builtin":
        _check_keys(obj, {"kind", "name", "params"}, where)
        return MatrixSpec("builtin", name=_name(obj, BUILTINS, where, "builtin matrix"),
                          params=_params(obj, where))
    _check_keys(obj, {"kind", "rows", "column_bounds"}, where)
    rows = obj.get("rows")
    if not isinstance(rows, list) or not rows:
        raise ParseError(f"{where}: field 'rows' must be a non-empty list of rows")
    parsed = [list(_numbers(r, f"{where}: rows[{i}]")) for i, r in enumerate(rows)]
    if "column_bounds" in obj:
        bounds = obj["column_bounds"]
        if not isinstance(bounds, list) or len(bounds) != len(parsed):
            raise ParseError(f"{where}: 'column_bounds' needs one entry per row")
        for i, (b, r) in enumerate(zip(bounds, parsed)):
            if isinstance(b, bool) or not isinstance(b, int) or b < len(r):
                raise ParseError(f"{where}: column_bounds[{i}] must be an integer >= {len(r)}")
            r.extend([0.0] * (b - len(r)))
    return MatrixSpec("explicit", rows=tuple(tuple(r) for r in parsed))


def parse_sequence_file(path) -> SequenceSpec:
    obj, where = _load(path)
    return sequence_from_obj(obj, where)


def parse_matrix_file(path) -> MatrixSpec:
    obj, where = _load(path)
    return matrix_from_obj(obj, where)


# --- reports ----------------------------------------------------------------

def _clean(obj):
    """Make a report JSON-safe: numpy scalars to Python, non-finite to null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def _fmt(x: float) -> str:
    return f"{x:.17g}" if x != 0 else "0"


def _emit(report: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(_clean(report), sort_keys=True, allow_nan=False))
    else:
        print(text)


def _text_conditions(results: dict) -> list[str]:
    return [f"  {cid:<5} {r['verdict']}" for cid, r in results.items()]


# --- commands ---------------------------------------------------------------

def cmd_weights(args) -> dict:
    w = weights(args.order, args.count).weights
    report = {"order": args.order, "count": args.count, "weights": w}
    _emit(report, args.json, " ".join(_fmt(v) for v in w))
    return report


def cmd_apply(args) -> dict:
    op = parse_matrix_file(args.matrix).build()
    x = parse_sequence_file(args.input).build()
    if args.trunc is not None:
        x = x.prefix(args.trunc)
    y = apply(op, x)
    report = {"kind": "explicit", "values": y.values}
    if y.approximate:
        report["approximate"] = True
    note = "\n# approximate: rows reach past the prefix" if y.approximate else ""
    _emit(report, args.json, " ".join(_fmt(v) for v in y.values) + note)
    return report


def cmd_almost(args) -> dict:
    x = parse_sequence_file(args.input).build()
    est = estimate_almost_limit(x, args.mmax, args.tol)
    report = {"value": est.value, "verdict": est.verdict.value, "final_spread": est.final_spread,
              "m_used": est.m_used, "n_range": est.n_range, "tol": est.tolerance, "note": est.note}
    _emit(report, args.json, "\n".join([
        f"almost-limit estimate: {est.value:.12g}",
        f"verdict: {est.verdict.value}",
        f"spread at m={est.m_used}: {est.final_spread:.3g} (tol {est.tolerance:g})",
        f"note: {est.note}"]))
    return report


def cmd_member(args) -> dict:
    x = parse_sequence_file(args.input).build()
    rep = fdf_membership(x, args.order, args.mmax, args.tol)
    est = rep.estimate
    report = {"order": args.order, "verdict": rep.space_verdict.value,
              "almost_verdict": est.verdict.value, "f_limit": est.value,
              "final_spread": est.final_spread, "norm_estimate": rep.norm_estimate,
              "m_used": est.m_used, "tol": args.tol}
    _emit(report, args.json, "\n".join([
        f"fdf membership (r={args.order:g}): {rep.space_verdict.value}",
        f"f-lim of Delta^(r) x: {est.value:.12g} ({est.verdict.value}, spread {est.final_spread:.3g})",
        f"norm lower bound: {rep.norm_estimate:.12g}"]))
    return report


def cmd_dual(args) -> dict:
    x = parse_sequence_file(args.input).build()
    rep = dual_check(x, args.order, args.kind, args.tol)
    report = {"kind": args.kind, "order": args.order, "verdict": rep.verdict.value,
              "agreement": rep.agreement, "route_V": rep.route_V.to_dict(),
              "route_direct": rep.route_direct.to_dict()}
    lines = [f"{args.kind}-dual of fdf (r={args.order:g}): {rep.verdict.value}",
             f"V-matrix route: {rep.route_V.verdict.value}",
             *_text_conditions(report["route_V"]["conditions"]),
             f"direct route: {rep.route_direct.verdict.value}",
             *_text_conditions(report["route_direct"]["conditions"]),
             f"routes agree: {'n/a' if rep.agreement is None else rep.agreement}"]
    _emit(report, args.json, "\n".join(lines))
    return report


def cmd_classify(args) -> dict:
    a = parse_matrix_file(args.matrix).build()
    pair = SpacePair(args.source, args.target, args.order)
    rep = classify(a, pair, args.n1, args.n2, args.tol)
    report = rep.to_dict()
    lines = [f"class {report['class']}: {report['verdict']}",
             f"table {rep.spec.table}, entry {rep.spec.entry}, evaluated on "
             f"{'A' if rep.spec.transform == 'identity' else rep.spec.transform}",
             *_text_conditions(report["conditions"])]
    if rep.precondition is not None:
        lines.append(f"  rows in beta-dual of fdf: {rep.precondition.value}")
    _emit(report, args.json, "\n".join(lines))
    return report


def cmd_verify(args) -> dict:
    results = verify_mod.run(quick=args.quick)
    report = {"quick": args.quick, "passed": all(r.passed for r in results),
              "checks": [{"criterion": r.key, "check": r.description, "passed": r.passed,
                          "measured": r.measured, "threshold": r.threshold} for r in results]}
    _emit(report, args.json, verify_mod.format_table(results))
    return report


# --- argument parsing -------------------------------------------------------

def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def _finite(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return v


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return _finite(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise ParseError(f"environment variable {TOL_ENV}={raw!r} is not a finite number") from None


def build_parser(tol: float = DEFAULT_TOL) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracsum",
                                     description="Fractional differences, almost convergence "
                                                 "and matrix classes on finite truncations.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("weights", parents=[common], help="fractional difference weights")
    p.add_argument("--order", type=_finite, required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("apply", parents=[common], help="apply a matrix to a sequence")
    p.add_argument("--matrix", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--trunc", type=_positive_int)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("almost", parents=[common], help="almost-limit estimate")
    p.add_argument("--input", required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--tol", type=_finite, default=tol)
    p.set_defaults(func=cmd_almost)

    p = sub.add_parser("member", parents=[common], help="fdf / fdf0 membership")
    p.add_argument("--order", type=_finite, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--tol", type=_finite, default=tol)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("dual", parents=[common], help="beta/gamma dual check")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--order", type=_finite, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=_finite, default=tol)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("classify", parents=[common], help="matrix class evidence")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--order", type=_finite)
    p.add_argument("--n1", type=_positive_int, default=DEFAULT_N1)
    p.add_argument("--n2", type=_positive_int, default=DEFAULT_N2)
    p.add_argument("--tol", type=_finite, default=tol)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="built-in self-check suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    try:
        parser = build_parser(default_tol())
        args = parser.parse_args(argv)
        with np.errstate(all="ignore"):
            args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except FracSumError as exc:
        print(f"fracsum: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
