"""Finite prefixes of real sequences."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TruncatedSequence:
    """The prefix ``(x_0, ..., x_{N-1})`` of a real sequence.

    ``source`` records where the values came from (``"explicit"`` or a
    generator label).  ``approximate`` is set when the values were produced by
    a matrix whose rows had to be cut at the window edge.
    """

    values: np.ndarray
    source: str = "explicit"
    approximate: bool = False
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        if v.size < 1:
            raise DomainError("a truncated sequence needs at least one term")
        if not np.all(np.isfinite(v)):
            bad = int(np.flatnonzero(~np.isfinite(v))[0])
            raise DomainError(f"sequence entry {bad} is not finite: {v[bad]!r}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def prefix(self, n: int) -> "TruncatedSequence":
        return TruncatedSequence(self.values[:n], self.source, self.approximate, self.params)


def as_sequence(x, source: str = "explicit") -> TruncatedSequence:
    if isinstance(x, TruncatedSequence):
        return x
    return TruncatedSequence(np.asarray(x, dtype=np.float64), source)
