"""Which conditions characterise which matrix class.

``(f : Y)`` and ``(X : f)`` come straight from the two condition tables.
Classes with ``fdf`` as source reuse the ``(f : Y)`` sets on the matrix
``D``; classes with ``fdf`` as target reuse the ``(X : f)`` sets on ``E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, NameLookupError
from .frac_coeff import FracOrder, as_order

SPACES = ("f", "fdf", "c", "linf", "bs", "cs")

# target -> (entry label, condition ids), source f
FROM_F = {
    "linf": ("1", ("C20",)),
    "c": ("2", ("C20", "C21", "C22", "C23")),
    "cs": ("3", ("C29", "C30", "C31", "C32")),
    "bs": ("4", ("C29",)),
    "f": ("5", ("C20", "C24", "C25", "C26")),
}

# source -> (entry label, condition ids), target f
TO_F = {
    "linf": ("6", ("C20", "C24", "C26x")),
    "c": ("7", ("C20", "C24", "C25")),
    "bs": ("8", ("C33", "C27", "C24", "C26")),
    "cs": ("9", ("C33", "C24")),
}


@dataclass(frozen=True)
class SpacePair:
    source: str
    target: str
    order: Optional[FracOrder] = None

    def __post_init__(self) -> None:
        for name in (self.source, self.target):
            if name not in SPACES:
                raise NameLookupError(f"unknown space {name!r}; expected one of {SPACES}")
        if self.order is not None:
            object.__setattr__(self, "order", as_order(self.order))
        if "fdf" in (self.source, self.target) and self.order is None:
            raise DomainError(f"class ({self.source}:{self.target}) needs an order r")


@dataclass(frozen=True)
class ClassSpec:
    """Condition set for one class plus the matrix it is evaluated on."""

    table: int
    entry: str
    conditions: tuple[str, ...]
    transform: str  # "identity", "D" or "E"

    @property
    def requires_dual(self) -> bool:
        return self.transform == "D"


def class_conditions(pair: SpacePair) -> ClassSpec:
    src, dst = pair.source, pair.target
    if src == "f" and dst in FROM_F:
        entry, ids = FROM_F[dst]
        return ClassSpec(1, entry, ids, "identity")
    if dst == "f" and src in TO_F:
        entry, ids = TO_F[src]
        return ClassSpec(2, entry, ids, "identity")
    if src == "fdf" and dst in FROM_F and dst != "fdf":
        entry, ids = FROM_F[dst]
        return ClassSpec(3, entry + "a", ids, "D")
    if dst == "fdf" and src in TO_F:
        entry, ids = TO_F[src]
        return ClassSpec(4, entry + "a", ids, "E")
    raise NameLookupError(f"class ({src}:{dst}) is not covered by the condition tables")


def all_pairs() -> list[tuple[str, str]]:
    """Every ``(source, target)`` with a table entry, in table order."""
    return ([("f", t) for t in FROM_F] + [(s, "f") for s in TO_F]
            + [("fdf", t) for t in FROM_F] + [(s, "fdf") for s in TO_F])
