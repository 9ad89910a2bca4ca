r"""Finite-truncation evaluators for the matrix-class conditions.

Every condition asks for a limit (possibly uniform) or a finite supremum
of quantities built from the rows or columns of ``A``.  Each evaluator
computes the quantity on two windows ``N1 < N2`` and reports a three-valued
verdict with the numbers behind it.

The shared rules, applied to a quantity ``q`` whose tail is the last quarter
of the evaluated index range:

* limit exists: *satisfied* when the tail spread at ``N2`` is at most ``tol``
  and the tail centres at ``N1`` and ``N2`` agree within ``tol``; *violated*
  when the tail spread exceeds ``tol`` and did not shrink from ``N1`` to
  ``N2``;
* limit equals a target: additionally the centre must be within ``tol`` of
  the target; it is *violated* when the distance exceeds ``tol`` and did not
  shrink between the two windows;
* supremum finite: the running maximum must have a limit;
* ``f``-limits: Lorentz means as in :mod:`fracsum.almost`.

Anything else is *inconclusive*.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .almost import SPREAD_FLOOR, AlmostVerdict, estimate_almost_limit
from .errors import NameLookupError, SizeError
from .operators import RowFiniteMatrix


#: relative change below which two window statistics count as equal
ROUNDING_SLACK = 1e-9


class Verdict(str, enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


CONDITION_IDS = ("C20", "C21", "C22", "C23", "C24", "C25", "C26", "C26x",
                 "C27", "C28", "C29", "C30", "C31", "C32", "C33")

DESCRIPTIONS = {
    "C20": "sup_n sum_k |a_nk| < inf",
    "C21": "lim_n a_nk = alpha_k for each k",
    "C22": "lim_n sum_k a_nk = alpha",
    "C23": "lim_n sum_k |Delta(a_nk - alpha_k)| = 0",
    "C24": "f-lim_n a_nk = alpha_k for each k",
    "C25": "f-lim_n sum_k a_nk = alpha",
    "C26": "lim_m sum_k |Delta(a(n,k,m) - alpha_k)| = 0 uniformly in n",
    "C26x": "lim_m sum_k |a(n,k,m) - alpha_k| = 0 uniformly in n",
    "C27": "lim_n a_nk = 0 for each k",
    "C28": "lim_n sum_k |Delta^2 a_nk| exists",
    "C29": "sup_n sum_k |a(n,k)| < inf, a(n,k) = sum_{j<=n} a_jk",
    "C30": "sum_n a_nk = alpha_k for each k",
    "C31": "sum_n sum_k a_nk = alpha",
    "C32": "lim_n sum_k |Delta(a(n,k) - alpha_k)| = 0",
    "C33": "sup_n sum_k |Delta a_nk| < inf",
}


@dataclass(frozen=True)
class ConditionResult:
    id: str
    verdict: Verdict
    evidence: dict = field(default_factory=dict)
    alpha: Optional[object] = None


def aggregate(verdicts) -> Verdict:
    verdicts = list(verdicts)
    if any(v is Verdict.VIOLATED for v in verdicts):
        return Verdict.VIOLATED
    if verdicts and all(v is Verdict.SATISFIED for v in verdicts):
        return Verdict.SATISFIED
    return Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class ConditionReport:
    """Per-condition verdicts with their evidence, in evaluation order."""

    results: dict[str, ConditionResult]

    @property
    def verdict(self) -> Verdict:
        return aggregate(r.verdict for r in self.results.values())

    def __getitem__(self, cid: str) -> ConditionResult:
        return self.results[cid]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "conditions": {
                cid: {"verdict": r.verdict.value, "evidence": r.evidence,
                      "alpha": _jsonable(r.alpha)}
                for cid, r in self.results.items()
            },
        }


def _jsonable(v):
    if v is None:
        return None
    if isinstance(v, np.ndarray):
        return [_float(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_float(x) for x in v]
    return _float(v)


def _float(x):
    x = float(x)
    return x if np.isfinite(x) else None


# --- generic proxies --------------------------------------------------------

def _tail(q: np.ndarray, fraction: float) -> np.ndarray:
    start = min(int(len(q) * (1.0 - fraction)), len(q) - 1)
    return q[start:]


def _tail_stats(q: np.ndarray, fraction: float):
    t = _tail(q, fraction)
    hi, lo = t.max(axis=0), t.min(axis=0)
    return hi - lo, 0.5 * (hi + lo)


def _not_shrunk(before: np.ndarray, after: np.ndarray) -> np.ndarray:
    # a decrease at rounding level is not evidence of convergence
    return after >= before - ROUNDING_SLACK * np.maximum(np.abs(before), 1.0)


def limit_evidence(q1: np.ndarray, q2: np.ndarray, tol: float,
                   target: Optional[float] = None, tail: float = 0.25):
    """Apply the limit rules column-wise.

    ``q1``/``q2`` have shape ``(L1,)``/``(L2,)`` or ``(L1, K)``/``(L2, K)``.
    Returns ``(verdicts, stats)`` where ``verdicts`` is an array of
    :class:`Verdict` values (one per column) and ``stats`` holds spreads and
    centres per window.
    """
    s1, c1 = _tail_stats(np.asarray(q1, dtype=np.float64), tail)
    s2, c2 = _tail_stats(np.asarray(q2, dtype=np.float64), tail)
    s1, c1, s2, c2 = (np.atleast_1d(v) for v in (s1, c1, s2, c2))
    exists_ok = (s2 <= tol) & (np.abs(c2 - c1) <= tol)
    exists_bad = (s2 > tol) & _not_shrunk(s1, s2)
    if target is None:
        ok, bad = exists_ok, exists_bad
    else:
        d1, d2 = np.abs(c1 - target), np.abs(c2 - target)
        ok = exists_ok & (d2 <= tol)
        bad = exists_bad | (exists_ok & (d2 > tol) & _not_shrunk(d1, d2))
    verdicts = np.where(ok, Verdict.SATISFIED.value,
                        np.where(bad, Verdict.VIOLATED.value, Verdict.INCONCLUSIVE.value))
    stats = {"spread": [s1, s2], "center": [c1, c2]}
    return verdicts, stats


def sup_evidence(q1: np.ndarray, q2: np.ndarray, tol: float):
    """Finite supremum: the running maximum of ``|q|`` must settle."""
    m1 = np.maximum.accumulate(np.abs(q1), axis=0)
    m2 = np.maximum.accumulate(np.abs(q2), axis=0)
    verdicts, stats = limit_evidence(m1, m2, tol)
    stats["sup"] = [m1[-1], m2[-1]]
    return verdicts, stats


def _scalar_result(cid: str, verdicts, stats, base: dict, alpha=None) -> ConditionResult:
    ev = dict(base)
    for key, pair in stats.items():
        ev[key] = [_float(np.ravel(v)[0]) for v in pair]
    return ConditionResult(cid, Verdict(str(verdicts[0])), ev, alpha)


def _column_result(cid: str, verdicts, stats, base: dict, alpha=None) -> ConditionResult:
    verdicts = [Verdict(str(v)) for v in verdicts]
    ev = dict(base)
    ev["columns_checked"] = len(verdicts)
    ev["counts"] = {v.value: sum(1 for x in verdicts if x is v) for v in Verdict}
    worst = next((i for i, v in enumerate(verdicts) if v is Verdict.VIOLATED),
                 next((i for i, v in enumerate(verdicts) if v is Verdict.INCONCLUSIVE), 0))
    ev["worst_column"] = worst
    for key, pair in stats.items():
        ev[key + "_worst"] = [_float(np.ravel(v)[worst]) for v in pair]
    return ConditionResult(cid, aggregate(verdicts), ev, alpha)


# --- window extraction ------------------------------------------------------

@dataclass(frozen=True)
class _Window:
    size: int
    block: np.ndarray  # rows x size, rows whose support fits (or all rows)
    approximate: bool

    @property
    def rows(self) -> int:
        return self.block.shape[0]

    def padded(self, width: int = 1) -> np.ndarray:
        """Block with ``width`` extra zero columns, so differences in ``k``
        see the (exactly zero) entries just past the window for rows that
        fit."""
        return np.pad(self.block, ((0, 0), (0, width)))


def _window(a: RowFiniteMatrix, n: int) -> _Window:
    full = a.block(n, n)
    exact = a.exact_rows(n)
    if exact >= max(n // 2, 2):
        return _Window(n, full[:exact], exact < n)
    return _Window(n, full, True)


def _base_evidence(w1: _Window, w2: _Window, tol: float) -> dict:
    return {
        "sizes": [w1.size, w2.size],
        "rows": [w1.rows, w2.rows],
        "approximate": bool(w1.approximate or w2.approximate),
        "tol": tol,
    }


def _columns(w1: _Window) -> int:
    return max(1, w1.size // 4)


def _m_max(rows: int) -> int:
    return max((rows - 1) // 2, 0)


# --- f-limit helpers --------------------------------------------------------

def _prefix(x: np.ndarray) -> np.ndarray:
    p = np.zeros((x.shape[0] + 1,) + x.shape[1:], dtype=np.longdouble)
    np.cumsum(x, axis=0, dtype=np.longdouble, out=p[1:])
    return p


def _means(prefix: np.ndarray, m: int) -> np.ndarray:
    n = prefix.shape[0] - 1
    return np.asarray((prefix[m + 1 :] - prefix[: n - m]) / (m + 1), dtype=np.float64)


def _upper_half_ms(m_max: int, count: int = 5) -> np.ndarray:
    return np.unique(np.linspace(m_max // 2, m_max, count).astype(int))


def _almost_columns(x: np.ndarray, tol: float):
    """Vectorised almost-limit diagnostic for each column of ``x``.

    Same rule as :func:`fracsum.almost.estimate_almost_limit`, with the
    persistence test sampled at five ``m`` values in the upper half.
    Returns ``(value, converged, not_converged, spread)`` per column.
    """
    m_max = _m_max(x.shape[0])
    prefix = _prefix(x)
    spreads = []
    for m in _upper_half_ms(m_max):
        t = _means(prefix, m)
        spreads.append(t.max(axis=0) - t.min(axis=0))
    last = _means(prefix, m_max)
    value = 0.5 * (last.max(axis=0) + last.min(axis=0))
    spreads = np.array(spreads)
    converged = spreads[-1] <= tol
    against = (~converged) & (spreads.min(axis=0) >= max(SPREAD_FLOOR, tol))
    return value, converged, against, spreads[-1]


# --- evaluators -------------------------------------------------------------

def _rows_abs_sum(w: _Window) -> np.ndarray:
    return np.abs(w.block).sum(axis=1)


def _diff_k(b: np.ndarray) -> np.ndarray:
    return b[:, :-1] - b[:, 1:]


def _c20(w1, w2, tol, base):
    v, st = sup_evidence(_rows_abs_sum(w1), _rows_abs_sum(w2), tol)
    return _scalar_result("C20", v, st, base)


def _column_limit(cid, w1, w2, tol, base, target=None):
    k = _columns(w1)
    v, st = limit_evidence(w1.block[:, :k], w2.block[:, :k], tol, target=target)
    return _column_result(cid, v, st, base, alpha=st["center"][1])


def _c21(w1, w2, tol, base):
    return _column_limit("C21", w1, w2, tol, base)


def _c27(w1, w2, tol, base):
    return _column_limit("C27", w1, w2, tol, base, target=0.0)


def _c22(w1, w2, tol, base):
    v, st = limit_evidence(w1.block.sum(axis=1), w2.block.sum(axis=1), tol)
    return _scalar_result("C22", v, st, base, alpha=float(st["center"][1][0]))


def _delta_to_limit(w: _Window, cumulative: bool) -> np.ndarray:
    """Row quantity ``sum_k |Delta(b_nk - alpha_k)|`` with ``alpha_k`` read
    from the last row; the last row itself is excluded."""
    b = w.padded()
    if cumulative:
        b = np.cumsum(b, axis=0)
    alpha = b[-1]
    q = np.abs(_diff_k(b[:-1] - alpha[None, :])).sum(axis=1)
    return q if q.size else np.zeros(1)


def _c23(w1, w2, tol, base):
    v, st = limit_evidence(_delta_to_limit(w1, False), _delta_to_limit(w2, False),
                           tol, target=0.0)
    return _scalar_result("C23", v, st, base)


def _c32(w1, w2, tol, base):
    v, st = limit_evidence(_delta_to_limit(w1, True), _delta_to_limit(w2, True),
                           tol, target=0.0)
    return _scalar_result("C32", v, st, base)


def _c24(w1, w2, tol, base):
    k = _columns(w1)
    val1, conv1, _, sp1 = _almost_columns(w1.block[:, :k], tol)
    val2, conv2, against2, sp2 = _almost_columns(w2.block[:, :k], tol)
    ok = conv1 & conv2 & (np.abs(val2 - val1) <= tol)
    verdicts = np.where(ok, Verdict.SATISFIED.value,
                        np.where(against2, Verdict.VIOLATED.value, Verdict.INCONCLUSIVE.value))
    stats = {"f_spread": [sp1, sp2], "f_value": [val1, val2]}
    return _column_result("C24", verdicts, stats, base, alpha=val2)


def _c25(w1, w2, tol, base):
    e1 = estimate_almost_limit(w1.block.sum(axis=1), _m_max(w1.rows), tol)
    e2 = estimate_almost_limit(w2.block.sum(axis=1), _m_max(w2.rows), tol)
    conv = AlmostVerdict.CONVERGENT
    if e1.verdict is conv and e2.verdict is conv and abs(e2.value - e1.value) <= tol:
        verdict = Verdict.SATISFIED
    elif e2.verdict is AlmostVerdict.NOT_CONVERGENT:
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.INCONCLUSIVE
    ev = dict(base)
    ev.update({"f_value": [e1.value, e2.value], "f_spread": [e1.final_spread, e2.final_spread],
               "m_max": [e1.m_used, e2.m_used],
               "almost_verdict": [e1.verdict.value, e2.verdict.value]})
    return ConditionResult("C25", verdict, ev, e2.value)


def _uniform_quantity(w: _Window, differenced: bool) -> np.ndarray:
    """``max_n sum_k |.|`` of ``a(n,k,m) - alpha_k`` at ``m`` sampled over the
    last quarter of ``0 .. m_max``."""
    b = w.padded()
    m_max = _m_max(w.rows)
    prefix = _prefix(b)
    last = _means(prefix, m_max)
    alpha = 0.5 * (last.max(axis=0) + last.min(axis=0))
    out = []
    for m in np.unique(np.linspace(3 * m_max // 4, m_max, 5).astype(int)):
        dev = _means(prefix, m) - alpha[None, :]
        if differenced:
            dev = _diff_k(dev)
        out.append(np.abs(dev).sum(axis=1).max())
    return np.array(out)


def _uniform(cid, w1, w2, tol, base, differenced):
    g1 = _uniform_quantity(w1, differenced)
    g2 = _uniform_quantity(w2, differenced)
    v, st = limit_evidence(g1, g2, tol, target=0.0, tail=1.0)
    return _scalar_result(cid, v, st, base)


def _c26(w1, w2, tol, base):
    return _uniform("C26", w1, w2, tol, base, True)


def _c26x(w1, w2, tol, base):
    return _uniform("C26x", w1, w2, tol, base, False)


def _c28(w1, w2, tol, base):
    def q(w):
        b = w.padded(2)
        return np.abs(b[:, :-2] - 2 * b[:, 1:-1] + b[:, 2:]).sum(axis=1)

    v, st = limit_evidence(q(w1), q(w2), tol)
    return _scalar_result("C28", v, st, base, alpha=float(st["center"][1][0]))


def _c29(w1, w2, tol, base):
    def q(w):
        return np.abs(np.cumsum(w.block, axis=0)).sum(axis=1)

    v, st = sup_evidence(q(w1), q(w2), tol)
    return _scalar_result("C29", v, st, base)


def _c30(w1, w2, tol, base):
    k = _columns(w1)
    v, st = limit_evidence(np.cumsum(w1.block[:, :k], axis=0),
                           np.cumsum(w2.block[:, :k], axis=0), tol)
    return _column_result("C30", v, st, base, alpha=st["center"][1])


def _c31(w1, w2, tol, base):
    v, st = limit_evidence(np.cumsum(w1.block.sum(axis=1)),
                           np.cumsum(w2.block.sum(axis=1)), tol)
    return _scalar_result("C31", v, st, base, alpha=float(st["center"][1][0]))


def _c33(w1, w2, tol, base):
    def q(w):
        return np.abs(_diff_k(w.padded())).sum(axis=1)

    v, st = sup_evidence(q(w1), q(w2), tol)
    return _scalar_result("C33", v, st, base)


_EVALUATORS: dict[str, Callable] = {
    "C20": _c20, "C21": _c21, "C22": _c22, "C23": _c23, "C24": _c24,
    "C25": _c25, "C26": _c26, "C26x": _c26x, "C27": _c27, "C28": _c28,
    "C29": _c29, "C30": _c30, "C31": _c31, "C32": _c32, "C33": _c33,
}


def eval_condition(cid: str, a: RowFiniteMatrix, n1: int, n2: int, tol: float) -> ConditionResult:
    """Evaluate one condition on the ``n1`` and ``n2`` windows of ``a``."""
    return evaluate(a, [cid], n1, n2, tol).results[cid]


def evaluate(a: RowFiniteMatrix, ids, n1: int, n2: int, tol: float) -> ConditionReport:
    """Evaluate several conditions sharing the two materialised windows."""
    for cid in ids:
        if cid not in _EVALUATORS:
            raise NameLookupError(f"unknown condition {cid!r}; expected one of {CONDITION_IDS}")
    if not 4 <= n1 < n2:
        raise SizeError(f"need 4 <= n1 < n2, got n1={n1}, n2={n2}")
    w1, w2 = _window(a, n1), _window(a, n2)
    base = _base_evidence(w1, w2, tol)
    return ConditionReport({cid: _EVALUATORS[cid](w1, w2, tol, base) for cid in ids})
