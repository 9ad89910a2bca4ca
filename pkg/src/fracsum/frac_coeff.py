r"""Weights of the fractional difference operator.

The operator of order :math:`r` acts on a sequence by

.. math::

    (\Delta^{(r)} x)_k = \sum_{i=0}^{k} w_i(r)\, x_{k-i},
    \qquad
    w_i(r) = (-1)^i \frac{\Gamma(r+1)}{i!\,\Gamma(r-i+1)},

which are the Grünwald-Letnikov coefficients.  Production code evaluates
them with the multiplicative recurrence

.. math::

    w_0 = 1, \qquad w_i = w_{i-1}\,\frac{i-1-r}{i},

which never overflows and is exact (zeros included) at integer orders.
:func:`weight_direct` evaluates the Gamma quotient directly and exists as an
independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, RangeError

#: Largest index accepted by :func:`weight_direct`; ``i!`` overflows a double
#: just past 170.
DIRECT_INDEX_LIMIT = 170


@dataclass(frozen=True)
class FracOrder:
    """A real difference order ``r``; negative integers are rejected."""

    r: float

    def __post_init__(self) -> None:
        r = float(self.r)
        if not math.isfinite(r):
            raise DomainError(f"order must be finite, got {self.r!r}")
        if r < 0 and r == math.floor(r):
            raise DomainError(
                f"order r={r:g} is a negative integer; Gamma(r+1) is undefined"
            )
        object.__setattr__(self, "r", r)

    @property
    def is_integer(self) -> bool:
        return self.r == math.floor(self.r)

    def __float__(self) -> float:
        return self.r


def as_order(order: FracOrder | float) -> FracOrder:
    return order if isinstance(order, FracOrder) else FracOrder(order)


@dataclass(frozen=True)
class WeightVector:
    order: FracOrder
    weights: np.ndarray

    def __len__(self) -> int:
        return self.weights.size

    def __getitem__(self, i):
        return self.weights[i]


def recurrence_weights(r: float, count: int) -> np.ndarray:
    """Run the weight recurrence for any real ``r`` without validation.

    Used for the inverse operator, whose order ``-r`` may be a negative
    integer even though the recurrence itself is perfectly well defined.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    i = np.arange(1, count, dtype=np.float64)
    w = np.empty(count, dtype=np.float64)
    w[0] = 1.0
    # cumprod is a left-to-right product, i.e. the same rounding as a loop.
    w[1:] = np.cumprod((i - 1.0 - r) / i)
    # integer orders produce -0.0 past the last binomial; normalise to +0.0
    return w + 0.0


def weights(order: FracOrder | float, count: int) -> WeightVector:
    """First ``count`` weights ``w_0(r), ..., w_{count-1}(r)``."""
    order = as_order(order)
    return WeightVector(order, recurrence_weights(order.r, count))


def inverse_weights(order: FracOrder | float, count: int) -> np.ndarray:
    """Weights ``w_i(-r)`` of the inverse operator.

    These are the entries :math:`(-1)^i \\Gamma(1-r)/(i!\\,\\Gamma(1-r-i))`,
    i.e. ``1, r, r(r+1)/2!, r(r+1)(r+2)/3!, ...``.
    """
    order = as_order(order)
    return recurrence_weights(-order.r, count)


def partial_weight_sums(r: float, count: int) -> np.ndarray:
    """Cumulative sums ``S_m(r) = sum_{i<=m} w_i(r)``.

    Computed as the weights of order ``r - 1`` (summing is the inverse first
    difference), which avoids cancellation in a running sum.
    """
    return recurrence_weights(r - 1.0, count)


def weight_direct(order: FracOrder | float, i: int) -> float:
    """Evaluate ``w_i(r)`` as a Gamma quotient.

    Valid for ``0 <= i <= 170`` and orders with ``|r| <= 170``.  When
    ``r - i + 1`` hits a pole of Gamma the reciprocal Gamma vanishes and the
    weight is exactly zero, which is the integer-order truncation.
    """
    order = as_order(order)
    r = order.r
    if i < 0:
        raise DomainError(f"index must be non-negative, got {i}")
    if i > DIRECT_INDEX_LIMIT or abs(r) > DIRECT_INDEX_LIMIT:
        raise RangeError(
            f"direct Gamma evaluation unsupported for i={i}, r={r:g} "
            f"(limit {DIRECT_INDEX_LIMIT})"
        )
    if i == 0:
        return 1.0
    sign = -1.0 if i % 2 else 1.0
    return float(sign * special.gamma(r + 1.0) * special.rgamma(r - i + 1.0)
                 / math.factorial(i))
