"""Membership diagnostics and norm for the spaces fdf and fdf0.

``x`` belongs to fdf (fdf0) when its fractional difference ``Delta^(r) x``
is almost convergent (almost convergent to zero).  The map
``x -> Delta^(r) x`` is a linear bijection onto the almost convergent
sequences, with inverse ``Delta^(-r)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .almost import AlmostLimitEstimate, AlmostVerdict, estimate_almost_limit, lorentz_grid
from .frac_coeff import FracOrder, as_order
from .operators import apply, build_frac_delta, build_frac_delta_inverse
from .sequence import TruncatedSequence, as_sequence


class SpaceVerdict(str, enum.Enum):
    IN_FDF = "in-fdf"
    IN_FDF0 = "in-fdf0"
    AGAINST = "evidence-against"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FdfReport:
    order: FracOrder
    transformed: TruncatedSequence
    estimate: AlmostLimitEstimate
    norm_estimate: float
    space_verdict: SpaceVerdict


def iso_forward(x, order: FracOrder | float) -> TruncatedSequence:
    """``x -> Delta^(r) x``."""
    return apply(build_frac_delta(order), as_sequence(x))


def iso_inverse(y, order: FracOrder | float) -> TruncatedSequence:
    """``y -> Delta^(-r) y``; at ``r = 1`` these are running partial sums."""
    return apply(build_frac_delta_inverse(order), as_sequence(y))


def fdf_norm(x, order: FracOrder | float, m_max: int) -> float:
    """``sup |t(m, n)(Delta^(r) x)|`` over the observable grid.

    The true norm is a supremum over all ``m, n``; the value returned is a
    lower bound that can only grow with the prefix length and ``m_max``.
    """
    return lorentz_grid(iso_forward(x, order), m_max).sup_abs()


def fdf_membership(x, order: FracOrder | float, m_max: int, tol: float) -> FdfReport:
    order = as_order(order)
    y = iso_forward(x, order)
    est = estimate_almost_limit(y, m_max, tol)
    if est.verdict is AlmostVerdict.CONVERGENT:
        verdict = SpaceVerdict.IN_FDF0 if abs(est.value) <= tol else SpaceVerdict.IN_FDF
    elif est.verdict is AlmostVerdict.NOT_CONVERGENT:
        verdict = SpaceVerdict.AGAINST
    else:
        verdict = SpaceVerdict.INCONCLUSIVE
    norm = lorentz_grid(y, min(m_max, len(y) - 1)).sup_abs()
    return FdfReport(order, y, est, norm, verdict)


def in_fdf(report: FdfReport) -> bool:
    return report.space_verdict in (SpaceVerdict.IN_FDF, SpaceVerdict.IN_FDF0)


__all__ = ["FdfReport", "SpaceVerdict", "fdf_membership", "fdf_norm", "in_fdf",
           "iso_forward", "iso_inverse"]
