"""Classification of a matrix against the condition tables.

``classify`` picks the condition set for ``(X : Y)``, evaluates it on ``A``
or on the ``D``/``E`` matrix when ``fdf`` is involved, and aggregates: all
satisfied is membership evidence, any violation is non-membership evidence,
anything else is inconclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .conditions import (
    CONDITION_IDS,
    ConditionReport,
    ConditionResult,
    Verdict,
    aggregate,
    eval_condition,
    evaluate,
)
from .duality import DualReport, dual_check
from .operators import RowFiniteMatrix, transform_D, transform_E
from .tables import ClassSpec, SpacePair, all_pairs, class_conditions

#: default windows and tolerance for limit stabilisation
DEFAULT_N1 = 512
DEFAULT_N2 = 1024
DEFAULT_TOL = 1e-2
PRECONDITION_ROWS = 16


class ClassVerdict(str, enum.Enum):
    MEMBER = "membership-evidence"
    NON_MEMBER = "non-membership-evidence"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ClassificationReport:
    pair: SpacePair
    spec: ClassSpec
    conditions: ConditionReport
    precondition: Optional[Verdict] = None
    dual_rows: dict[int, DualReport] = field(default_factory=dict, repr=False)

    @property
    def verdict(self) -> ClassVerdict:
        verdicts = [r.verdict for r in self.conditions.results.values()]
        if self.precondition is not None:
            verdicts.append(self.precondition)
        agg = aggregate(verdicts)
        return {Verdict.SATISFIED: ClassVerdict.MEMBER,
                Verdict.VIOLATED: ClassVerdict.NON_MEMBER}.get(agg, ClassVerdict.INCONCLUSIVE)

    def to_dict(self) -> dict:
        out = {
            "class": f"({self.pair.source}:{self.pair.target})",
            "order": None if self.pair.order is None else self.pair.order.r,
            "table": self.spec.table,
            "entry": self.spec.entry,
            "transform": self.spec.transform,
            "verdict": self.verdict.value,
        }
        out.update(self.conditions.to_dict())
        out["verdict"] = self.verdict.value
        if self.precondition is not None:
            out["row_dual_precondition"] = {
                "verdict": self.precondition.value,
                "rows": {str(n): {"route_V": d.route_V.verdict.value,
                                  "route_direct": d.route_direct.verdict.value}
                         for n, d in self.dual_rows.items()},
            }
        return out


def _precondition_rows(n1: int, count: int) -> list[int]:
    return sorted(set(np.linspace(0, n1 - 1, min(count, n1)).astype(int).tolist()))


def classify(a: RowFiniteMatrix, pair: SpacePair, n1: int = DEFAULT_N1,
             n2: int = DEFAULT_N2, tol: float = DEFAULT_TOL,
             precondition_rows: int = PRECONDITION_ROWS) -> ClassificationReport:
    """Evaluate ``A in (X : Y)`` on the ``n1``/``n2`` windows.

    For an ``fdf`` source every row of ``A`` must also lie in the beta-dual of
    fdf; that is checked with :func:`fracsum.duality.dual_check` on
    ``precondition_rows`` rows spread evenly over the first ``n1`` rows.
    """
    spec = class_conditions(pair)
    if spec.transform == "D":
        target = transform_D(a, pair.order, n2)
    elif spec.transform == "E":
        target = transform_E(a, pair.order, n2)
    else:
        target = a
    report = evaluate(target, spec.conditions, n1, n2, tol)

    precondition, duals = None, {}
    if spec.requires_dual:
        rows = a.block(n1, n2)
        for n in _precondition_rows(n1, precondition_rows):
            duals[n] = dual_check(rows[n], pair.order, "beta", tol)
        precondition = aggregate(d.verdict for d in duals.values())
    return ClassificationReport(pair, spec, report, precondition, duals)


__all__ = [
    "CONDITION_IDS", "ClassSpec", "ClassVerdict", "ClassificationReport",
    "ConditionReport", "ConditionResult", "DEFAULT_N1", "DEFAULT_N2", "DEFAULT_TOL",
    "SpacePair", "Verdict", "all_pairs", "class_conditions", "classify",
    "eval_condition",
]
