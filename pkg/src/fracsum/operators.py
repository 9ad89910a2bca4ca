r"""Infinite matrices realised through their finite truncations.

Two flavours are supported.  A :class:`TriangularOperator` is lower
triangular, so its ``N x N`` truncation acts on a prefix of length ``N``
exactly as the infinite matrix does.  A :class:`RowFiniteMatrix` may reach to
the right of the diagonal; each row declares an exclusive column bound and
rows that do not fit inside the evaluation window are reported as
approximate.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import linalg, stats

from .errors import DomainError, NameLookupError, SizeError
from .frac_coeff import (
    FracOrder,
    as_order,
    inverse_weights,
    partial_weight_sums,
    recurrence_weights,
    weights,
)
from .sequence import TruncatedSequence, as_sequence

BlockFn = Callable[[int, int], np.ndarray]
BoundFn = Callable[[int], Optional[int]]


def _infinite_rows(n: int) -> Optional[int]:
    return None


@dataclass(frozen=True, eq=False)
class RowFiniteMatrix:
    """Matrix ``(a_nk)`` with ``n, k >= 0`` given by a block builder.

    ``builder(rows, cols)`` returns the leading ``rows x cols`` block.
    ``column_bound(n)`` is the exclusive upper bound of the support of row
    ``n`` (``None`` for rows with infinitely many nonzero entries).  ``size``
    limits matrices that only exist on a finite window, such as explicit
    input or the D/E transforms.
    """

    name: str
    builder: BlockFn
    column_bound: BoundFn = _infinite_rows
    size: Optional[int] = None

    def _check(self, rows: int, cols: int) -> None:
        if rows < 0 or cols < 0:
            raise SizeError(f"negative block shape ({rows}, {cols})")
        if self.size is not None and max(rows, cols) > self.size:
            raise SizeError(
                f"{self.name} is only defined on a {self.size}x{self.size} window, "
                f"requested {rows}x{cols}"
            )

    def block(self, rows: int, cols: int) -> np.ndarray:
        self._check(rows, cols)
        out = np.asarray(self.builder(rows, cols), dtype=np.float64)
        if out.shape != (rows, cols):
            raise SizeError(f"builder for {self.name} returned shape {out.shape}")
        return out

    def truncation(self, n: int) -> np.ndarray:
        return self.block(n, n)

    def entry(self, n: int, k: int) -> float:
        return float(self.block(n + 1, k + 1)[n, k])

    def row_is_exact(self, n: int, width: int) -> bool:
        bound = self.column_bound(n)
        return bound is not None and bound <= width

    def exact_rows(self, n: int) -> int:
        """Number of leading rows whose support fits inside ``n`` columns."""
        count = 0
        while count < n and self.row_is_exact(count, n):
            count += 1
        return count


@dataclass(frozen=True, eq=False)
class TriangularOperator(RowFiniteMatrix):
    """Lower-triangular matrix; ``entry(n, k) = 0`` for ``k > n``.

    If ``kernel`` is set the operator is Toeplitz, ``entry(n, k) =
    kernel[n - k]``, and :func:`apply` uses a direct convolution instead of
    materialising the matrix.
    """

    column_bound: BoundFn = field(default=lambda n: n + 1)
    kernel: Optional[Callable[[int], np.ndarray]] = None

    def exact_rows(self, n: int) -> int:
        return n


def _triangular(name: str, lower: Callable[[int], np.ndarray], *,
                kernel=None, size: Optional[int] = None) -> TriangularOperator:
    def builder(rows: int, cols: int) -> np.ndarray:
        m = max(rows, cols)
        return np.tril(lower(m))[:rows, :cols]

    return TriangularOperator(name, builder, size=size, kernel=kernel)


def _toeplitz(name: str, kernel: Callable[[int], np.ndarray]) -> TriangularOperator:
    def lower(m: int) -> np.ndarray:
        if m == 0:
            return np.zeros((0, 0))
        return linalg.toeplitz(kernel(m), np.zeros(m))

    return _triangular(name, lower, kernel=kernel)


def build_frac_delta(order: FracOrder | float) -> TriangularOperator:
    """The triangle with entries ``w_{n-k}(r)`` below the diagonal."""
    order = as_order(order)
    return _toeplitz(f"frac_delta({order.r:g})",
                     lambda m: weights(order, m).weights)


def build_frac_delta_inverse(order: FracOrder | float) -> TriangularOperator:
    """The inverse triangle, entries ``w_{n-k}(-r)``.

    Defined for every valid ``r`` including positive integers, where it is
    the iterated summation operator.
    """
    order = as_order(order)
    return _toeplitz(f"frac_delta_inv({order.r:g})",
                     lambda m: inverse_weights(order, m))


def identity() -> TriangularOperator:
    return _toeplitz("identity", lambda m: np.eye(1, m).ravel())


def cesaro() -> TriangularOperator:
    def lower(m: int) -> np.ndarray:
        return np.tril(np.repeat(1.0 / np.arange(1, m + 1), m).reshape(m, m))

    return _triangular("cesaro", lower)


def euler(r: float) -> TriangularOperator:
    """Euler means, ``binom(n, k) (1-r)^(n-k) r^k`` for ``k <= n``."""
    r = _unit_interval(r, "euler")

    def lower(m: int) -> np.ndarray:
        n = np.arange(m)[:, None]
        k = np.arange(m)[None, :]
        return np.where(k <= n, stats.binom.pmf(k, n, r), 0.0)

    return _triangular(f"euler({r:g})", lower)


def riesz(t: Sequence[float]) -> TriangularOperator:
    """Riesz means ``t_k / T_n`` for ``k <= n`` with ``T_n = t_0 + ... + t_n``.

    The weight list fixes the window: the matrix is defined for ``len(t)``
    rows.
    """
    t = np.asarray(t, dtype=np.float64).ravel()
    if t.size == 0 or not np.all(np.isfinite(t)) or np.any(t <= 0):
        raise DomainError("riesz weights must be a non-empty list of positive numbers")
    total = np.cumsum(t)

    def lower(m: int) -> np.ndarray:
        return np.tril(t[None, :m] / total[:m, None])

    return _triangular("riesz", lower, size=t.size)


def taylor(r: float) -> RowFiniteMatrix:
    """Taylor matrix ``binom(k, n) (1-r)^(n+1) r^(k-n)`` for ``k >= n``.

    Rows are infinite, so every truncation is approximate.
    """
    r = _unit_interval(r, "taylor")

    def builder(rows: int, cols: int) -> np.ndarray:
        n = np.arange(rows)[:, None]
        k = np.arange(cols)[None, :]
        return np.where(k >= n, stats.nbinom.pmf(k - n, n + 1, 1.0 - r), 0.0)

    return RowFiniteMatrix(f"taylor({r:g})", builder)


def explicit(rows: Sequence[Sequence[float]], name: str = "explicit") -> RowFiniteMatrix:
    """Matrix from a finite, possibly ragged, list of rows.

    Row ``n`` has column bound ``len(rows[n])``; entries past it are zero.
    The window is the number of rows, so entries of rows longer than that
    are not visible and such rows are reported approximate.
    """
    data = [np.asarray(r, dtype=np.float64).ravel() for r in rows]
    if not data:
        raise DomainError("explicit matrix needs at least one row")
    width = max(r.size for r in data)
    dense = np.zeros((len(data), max(width, len(data))))
    for i, r in enumerate(data):
        dense[i, : r.size] = r
    bounds = [r.size for r in data]
    lower = all(b <= i + 1 for i, b in enumerate(bounds))

    def builder(nr: int, nc: int) -> np.ndarray:
        out = np.zeros((nr, nc))
        w = min(nc, dense.shape[1])
        out[:, :w] = dense[:nr, :w]
        return out

    if lower:
        return TriangularOperator(name, builder, size=len(data))
    return RowFiniteMatrix(name, builder, column_bound=lambda n: bounds[n],
                           size=len(data))


def _unit_interval(r: float, name: str) -> float:
    r = float(r)
    if not 0.0 < r < 1.0:
        raise DomainError(f"{name} requires 0 < r < 1, got r={r:g}")
    return r


BUILTINS = ("identity", "cesaro", "euler", "riesz", "taylor",
            "frac_delta", "frac_delta_inv")


def build_builtin(name: str, **params) -> RowFiniteMatrix:
    """Construct one of the named standalone matrices.

    ``euler``, ``taylor``, ``frac_delta`` and ``frac_delta_inv`` take ``r``;
    ``riesz`` takes the weight list ``t``.
    """
    try:
        if name == "identity":
            return identity()
        if name == "cesaro":
            return cesaro()
        if name == "euler":
            return euler(params["r"])
        if name == "riesz":
            return riesz(params["t"])
        if name == "taylor":
            return taylor(params["r"])
        if name == "frac_delta":
            return build_frac_delta(params["r"])
        if name == "frac_delta_inv":
            return build_frac_delta_inverse(params["r"])
    except KeyError as exc:
        raise DomainError(f"builtin {name!r} requires parameter {exc.args[0]!r}") from None
    raise NameLookupError(f"unknown builtin matrix {name!r}; expected one of {BUILTINS}")


def compose(a: TriangularOperator, b: TriangularOperator, n: int) -> TriangularOperator:
    """The product ``a o b`` on the ``n x n`` window.

    Triangularity makes the product of truncations the truncation of the
    product, so the result is exact on its window.
    """
    for op in (a, b):
        if not isinstance(op, TriangularOperator):
            raise DomainError(f"compose needs triangular operators, got {op.name}")
    if n < 1:
        raise SizeError(f"window size must be >= 1, got {n}")

    @functools.lru_cache(maxsize=1)
    def product() -> np.ndarray:
        p = a.truncation(n) @ b.truncation(n)
        p.flags.writeable = False
        return p

    def builder(rows: int, cols: int) -> np.ndarray:
        return product()[:rows, :cols].copy()

    return TriangularOperator(f"({a.name})o({b.name})", builder, size=n)


def apply(op: RowFiniteMatrix, x) -> TruncatedSequence:
    """``y_n = sum_k a_nk x_k`` for ``n < len(x)``.

    For triangles this is the exact action of the infinite matrix on the
    prefix.  Rows of a non-triangular matrix that reach past the prefix are
    cut off and the result is flagged ``approximate``.
    """
    x = as_sequence(x)
    n = len(x)
    kernel = getattr(op, "kernel", None)
    if kernel is not None:
        y = np.convolve(kernel(n), x.values)[:n]
    else:
        y = op.block(n, n) @ x.values
    approximate = x.approximate or op.exact_rows(n) < n
    return TruncatedSequence(y, f"{op.name}*{x.source}", approximate)


# --- matrices derived from an input matrix A -------------------------------

def _window(a: RowFiniteMatrix, n: int) -> np.ndarray:
    if n < 1:
        raise SizeError(f"window size must be >= 1, got {n}")
    return a.block(n, n)


def _running_bounds(a: RowFiniteMatrix, n: int, lag: int | None = None) -> BoundFn:
    """Column bound of rows built from rows ``j <= n`` of ``a`` (or the last
    ``lag + 1`` of them): the running maximum of ``a``'s bounds."""
    raw = [a.column_bound(j) for j in range(n)]
    out: list[Optional[int]] = []
    for i in range(n):
        lo = 0 if lag is None else max(i - lag, 0)
        window = raw[lo : i + 1]
        out.append(None if any(b is None for b in window) else max(window))

    def bound(row: int) -> Optional[int]:
        return out[row] if row < n else None

    return bound


def transform_D(a: RowFiniteMatrix, order: FracOrder | float, n: int) -> RowFiniteMatrix:
    """Matrix ``D`` that represents ``A`` acting on the image of the inverse
    fractional difference.

    With ``t_nk = a_nk * sum_{j<=k} w_j(-r)``, ``d_nk = t_nk - t_{n,k+1}``
    and, in the last column of the evaluated block, ``d_nk = t_nk``.
    """
    order = as_order(order)
    base = _window(a, n)
    scale = partial_weight_sums(-order.r, n)
    t = base * scale[None, :]

    def builder(rows: int, cols: int) -> np.ndarray:
        tt = t[:rows, :cols]
        d = tt.copy()
        d[:, :-1] -= tt[:, 1:]
        return d

    return RowFiniteMatrix(f"D[{a.name}; r={order.r:g}]", builder,
                           column_bound=a.column_bound, size=n)


def _left_triangle(kernel: np.ndarray, a: RowFiniteMatrix, n: int, name: str) -> RowFiniteMatrix:
    base = _window(a, n)
    left = np.tril(linalg.toeplitz(kernel[:n], np.zeros(n)))
    prod = left @ base
    return RowFiniteMatrix(name, lambda r, c: prod[:r, :c].copy(),
                           column_bound=_running_bounds(a, n), size=n)


def transform_E(a: RowFiniteMatrix, order: FracOrder | float, n: int) -> RowFiniteMatrix:
    """``e_nk = sum_{j<=n} S_{n-j}(r) a_jk`` with ``S_m(r) = sum_{i<=m} w_i(r)``."""
    order = as_order(order)
    return _left_triangle(partial_weight_sums(order.r, n), a, n,
                          f"E[{a.name}; r={order.r:g}]")


def transform_E_weights(a: RowFiniteMatrix, order: float, n: int) -> RowFiniteMatrix:
    """Variant of :func:`transform_E` with kernel ``w_{n-j}(r)``, i.e. the
    product ``Delta^(r) A``.

    The partial-sum kernel of :func:`transform_E` at order ``r`` equals this
    kernel at order ``r - 1``.  The order is not validated because ``r - 1``
    may be a negative integer.
    """
    r = float(order)
    return _left_triangle(recurrence_weights(r, n), a, n, f"Ew[{a.name}; r={r:g}]")


# --- example transforms of A by classical summability matrices -------------

def euler_transform(a: RowFiniteMatrix, r: float, n: int) -> RowFiniteMatrix:
    """``c_nk = sum_{j<=n} binom(n,j) (1-r)^(n-j) r^j a_jk``."""
    return _product(euler(r), a, n, f"C[{a.name}; r={r:g}]")


def riesz_transform(a: RowFiniteMatrix, t: Sequence[float], n: int) -> RowFiniteMatrix:
    """``g_nk = (1/T_n) sum_{j<=n} t_j a_jk``."""
    return _product(riesz(t), a, n, f"G[{a.name}]")


def taylor_transform(a: RowFiniteMatrix, r: float, n: int,
                     inner: Optional[int] = None) -> RowFiniteMatrix:
    """``p_nk = sum_{j>=n} binom(j,n) (1-r)^(n+1) r^(j-n) a_jk``.

    The inner series is cut at ``inner`` terms (default ``2 n``); the result
    is always flagged approximate.
    """
    inner = 2 * n if inner is None else inner
    if a.size is not None:
        inner = min(inner, a.size)
    prod = taylor(r).block(n, inner) @ a.block(inner, n)
    return RowFiniteMatrix(f"P[{a.name}; r={r:g}]", lambda rr, cc: prod[:rr, :cc].copy(),
                           size=n)


def h_transform(a: RowFiniteMatrix, r: float, s: float, n: int) -> RowFiniteMatrix:
    """``h_nk = s a_{n-1,k} + r a_nk`` with ``a_{-1,k} = 0``."""
    base = _window(a, n)
    h = r * base
    h[1:] += s * base[:-1]
    return RowFiniteMatrix(f"H[{a.name}; r={r:g}, s={s:g}]",
                           lambda rr, cc: h[:rr, :cc].copy(),
                           column_bound=_running_bounds(a, n, lag=1), size=n)


def m_transform(a: RowFiniteMatrix, n: int) -> RowFiniteMatrix:
    """``m_nk = sum_{j>=k} a_nj / (j+1)``, the tail sum cut at column ``n``.

    Rows of ``a`` whose support fits in the window give exact entries; rows
    of ``M`` are dense up to that support, so the result is row-finite with
    the same bounds as ``a``.
    """
    base = _window(a, n) / np.arange(1, n + 1)[None, :]
    m = np.cumsum(base[:, ::-1], axis=1)[:, ::-1]
    return RowFiniteMatrix(f"M[{a.name}]", lambda rr, cc: m[:rr, :cc].copy(),
                           column_bound=a.column_bound, size=n)


def _product(left: TriangularOperator, a: RowFiniteMatrix, n: int, name: str) -> RowFiniteMatrix:
    prod = left.truncation(n) @ _window(a, n)
    return RowFiniteMatrix(name, lambda rr, cc: prod[:rr, :cc].copy(),
                           column_bound=_running_bounds(a, n), size=n)
