r"""Lorentz means and finite-window almost-limit diagnostics.

A bounded sequence is almost convergent to :math:`L` when the window means

.. math::

    t_{mn}(x) = \frac{1}{m+1} \sum_{i=0}^{m} x_{n+i}

tend to :math:`L` as :math:`m \to \infty`, uniformly in :math:`n`.  On a
prefix of length ``N`` only ``n <= N - m - 1`` is observable, so everything
here is a diagnostic with three outcomes rather than a decision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
import numpy as np

from .errors import DomainError, NameLookupError, SizeError
from .frac_coeff import FracOrder, as_order, inverse_weights
from .sequence import TruncatedSequence, as_sequence

#: Row spread that counts as persistent oscillation when it holds over the
#: whole upper half of the evaluated ``m`` range.
SPREAD_FLOOR = 0.1


class AlmostVerdict(str, enum.Enum):
    CONVERGENT = "convergent-within-tol"
    NOT_CONVERGENT = "not-convergent-evidence"
    INCONCLUSIVE = "inconclusive"


def _prefix(values: np.ndarray) -> np.ndarray:
    # extended precision keeps window sums accurate for long prefixes
    p = np.zeros((values.shape[0] + 1,) + values.shape[1:], dtype=np.longdouble)
    np.cumsum(values, axis=0, dtype=np.longdouble, out=p[1:])
    return p


def _window_means(prefix: np.ndarray, m: int) -> np.ndarray:
    n = prefix.shape[0] - 1
    return np.asarray((prefix[m + 1 :] - prefix[: n - m]) / (m + 1), dtype=np.float64)


@dataclass(frozen=True, eq=False)
class MeanGrid:
    """Lorentz means ``t(m, n)`` for ``0 <= m <= m_max``, ``0 <= n <= N-m-1``.

    Rows are produced on demand from a shared prefix-sum array, so each
    cell costs O(1) and the full rectangle is never stored unless
    :meth:`as_array` is called.
    """

    prefix: np.ndarray
    m_max: int

    @property
    def length(self) -> int:
        return self.prefix.shape[0] - 1

    def row(self, m: int) -> np.ndarray:
        if not 0 <= m <= self.m_max:
            raise SizeError(f"row m={m} outside 0..{self.m_max}")
        return _window_means(self.prefix, m)

    def __call__(self, m: int, n: int) -> float:
        if not 0 <= n <= self.length - m - 1:
            raise SizeError(f"cell ({m}, {n}) outside the observable range")
        return float((self.prefix[n + m + 1] - self.prefix[n]) / (m + 1))

    def as_array(self) -> np.ndarray:
        """Dense ``(m_max+1, N)`` array, NaN where ``n > N - m - 1``."""
        out = np.full((self.m_max + 1, self.length), np.nan)
        for m in range(self.m_max + 1):
            out[m, : self.length - m] = self.row(m)
        return out

    def spreads(self) -> np.ndarray:
        """``sup_n t(m, n) - inf_n t(m, n)`` for every row."""
        return np.array([np.ptp(self.row(m)) for m in range(self.m_max + 1)])

    def sup_abs(self) -> float:
        return max(float(np.max(np.abs(self.row(m)))) for m in range(self.m_max + 1))


def lorentz_grid(x, m_max: int) -> MeanGrid:
    x = as_sequence(x)
    if m_max < 0 or m_max >= len(x):
        raise SizeError(f"m_max={m_max} must satisfy 0 <= m_max < N={len(x)}")
    return MeanGrid(_prefix(x.values), m_max)


def envelopes(columns: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Row envelope ``(sup_n, inf_n)`` of ``t(m, n)`` for several sequences.

    ``columns`` has shape ``(N, C)``; each column is one sequence.
    """
    t = _window_means(_prefix(np.asarray(columns, dtype=np.float64)), m)
    return t.max(axis=0), t.min(axis=0)


@dataclass(frozen=True)
class AlmostLimitEstimate:
    """Outcome of :func:`estimate_almost_limit`.

    ``spread[m]`` is the row envelope width for ``m = 0 .. m_used``.  The
    verdict is evidence from a finite prefix; ``convergent-within-tol`` means
    the widest row at ``m_used`` fits inside ``tol``, nothing more.
    """

    value: float
    spread: np.ndarray = field(repr=False)
    verdict: AlmostVerdict
    m_used: int
    n_range: int
    tolerance: float
    note: str = ""

    @property
    def final_spread(self) -> float:
        return float(self.spread[-1]) if self.spread.size else float("nan")


def estimate_almost_limit(x, m_max: int, tol: float,
                          floor: float = SPREAD_FLOOR) -> AlmostLimitEstimate:
    """Estimate ``f-lim x`` from the Lorentz means of a prefix.

    ``value`` is the midpoint of ``[inf_n, sup_n] t(m_max, n)``.  The verdict
    is ``convergent-within-tol`` when that envelope is at most ``tol`` wide,
    ``not-convergent-evidence`` when every row in the upper half
    ``m_max//2 .. m_max`` stays at least ``max(floor, tol)`` wide, and
    ``inconclusive`` otherwise.  ``m_max`` must be below ``N/2`` so that each
    row ranges over at least ``N/2`` window positions; a smaller ``n``-range
    yields ``inconclusive`` rather than an error.
    """
    x = as_sequence(x)
    n = len(x)
    m_used = min(max(m_max, 0), n - 1)
    prefix = _prefix(x.values)
    spread = np.empty(m_used + 1)
    for m in range(m_used + 1):
        row = _window_means(prefix, m)
        spread[m] = row.max() - row.min()
    last = _window_means(prefix, m_used)
    value = 0.5 * (float(last.max()) + float(last.min()))
    n_range = n - m_used
    note = "finite-prefix diagnostic; almost convergence is not decidable from a prefix"

    if m_max < 0 or 2 * m_max >= n:
        return AlmostLimitEstimate(value, spread, AlmostVerdict.INCONCLUSIVE, m_used,
                                   n_range, tol, f"degenerate n-range (need m_max < N/2); {note}")
    if spread[-1] <= tol:
        verdict = AlmostVerdict.CONVERGENT
    elif spread[m_used // 2 :].min() >= max(floor, tol):
        verdict = AlmostVerdict.NOT_CONVERGENT
    else:
        verdict = AlmostVerdict.INCONCLUSIVE
    return AlmostLimitEstimate(value, spread, verdict, m_used, n_range, tol, note)


# --- witness and test sequences --------------------------------------------

def miller_orhan_blocks(n: int, zeros: int = 1, ones: int = 1,
                        zero_factor: int = 100, one_factor: int = 10) -> list[tuple[int, int]]:
    """Block ledger ``[(value, length), ...]`` covering at least ``n`` terms.

    Blocks alternate zeros and ones, starting with zeros; successive zero
    blocks grow by ``zero_factor`` and one blocks by ``one_factor``.
    """
    if zeros < 1 or ones < 1:
        raise DomainError("initial block lengths must be >= 1")
    blocks, total = [], 0
    z, o = zeros, ones
    while total < n:
        blocks.append((0, z))
        blocks.append((1, o))
        total += z + o
        z *= zero_factor
        o *= one_factor
    return blocks


def _from_blocks(blocks, n: int) -> np.ndarray:
    out = np.concatenate([np.full(length, float(v)) for v, length in blocks])
    return out[:n]


def _blocks(n: int, lengths, values) -> np.ndarray:
    lengths = [int(v) for v in lengths]
    values = [float(v) for v in values]
    if not lengths or not values or min(lengths) < 1:
        raise DomainError("blocks needs non-empty positive lengths and values")
    out, i = [], 0
    total = 0
    while total < n:
        length = lengths[i % len(lengths)]
        out.append((values[i % len(values)], length))
        total += length
        i += 1
    return _from_blocks(out, n)


def zero_one(n: int) -> np.ndarray:
    return (np.arange(n) % 2).astype(np.float64)


def d_sequence(order: FracOrder | float, n: int) -> np.ndarray:
    """Witness ``Delta^(-r) z`` with ``z = (0, 1, 0, 1, ...)``.

    Its forward transform is ``z`` itself, which is almost convergent to
    ``1/2``, while the sequence grows like ``k^r`` for ``r > 0``.
    """
    order = as_order(order)
    return np.convolve(inverse_weights(order, n), zero_one(n))[:n]


GENERATORS = ("constant", "alternating", "zero_one", "harmonic", "blocks",
              "miller_orhan", "d_sequence")


def make_generator(name: str, n: int, **params) -> TruncatedSequence:
    """Deterministic prefix of length ``n`` of a named sequence.

    ``constant`` (``c``), ``alternating`` ``(1, -1, ...)``, ``zero_one``
    ``(0, 1, 0, 1, ...)``, ``harmonic`` ``1/(k+1)``, ``blocks`` (``lengths``,
    ``values``, cycled), ``miller_orhan`` (``zeros``, ``ones``,
    ``zero_factor``, ``one_factor``) and ``d_sequence`` (``r``).
    """
    if name not in GENERATORS:
        raise NameLookupError(f"unknown generator {name!r}; expected one of {GENERATORS}")
    if n < 1:
        raise SizeError(f"sequence length must be >= 1, got {n}")
    k = np.arange(n, dtype=np.float64)
    try:
        if name == "constant":
            values = np.full(n, float(params.get("c", 1.0)))
        elif name == "alternating":
            values = np.where(k % 2 == 0, 1.0, -1.0)
        elif name == "zero_one":
            values = zero_one(n)
        elif name == "harmonic":
            values = 1.0 / (k + 1.0)
        elif name == "blocks":
            values = _blocks(n, params["lengths"], params["values"])
        elif name == "miller_orhan":
            values = _from_blocks(miller_orhan_blocks(n, **params), n)
        else:
            values = d_sequence(params["r"], n)
    except KeyError as exc:
        raise DomainError(f"generator {name!r} requires parameter {exc.args[0]!r}") from None
    except TypeError as exc:
        raise DomainError(f"bad parameters for generator {name!r}: {exc}") from None
    return TruncatedSequence(values, name, params=dict(params))


def spread_at(x, m: int) -> float:
    """Row spread of a single ``m``; handy for spot checks."""
    x = as_sequence(x)
    row = _window_means(_prefix(x.values), m)
    return float(row.max() - row.min())


def row_values(x, m: int) -> np.ndarray:
    return _window_means(_prefix(as_sequence(x).values), m)


__all__ = [
    "AlmostLimitEstimate", "AlmostVerdict", "MeanGrid", "SPREAD_FLOOR",
    "d_sequence", "envelopes", "estimate_almost_limit", "lorentz_grid",
    "make_generator", "miller_orhan_blocks", "row_values", "spread_at", "zero_one",
]
