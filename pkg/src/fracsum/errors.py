"""Exception hierarchy shared by all modules."""


class FracSumError(Exception):
    """Base class for every error raised by :mod:`fracsum`."""


class DomainError(FracSumError, ValueError):
    """An order or parameter lies outside the domain of the construction."""


class RangeError(FracSumError, ValueError):
    """A direct evaluation was requested beyond its representable range."""


class SizeError(FracSumError, ValueError):
    """Truncation sizes are inconsistent with the requested computation."""


class ParseError(FracSumError, ValueError):
    """An input file could not be parsed into a sequence or matrix spec."""


class NameLookupError(FracSumError, KeyError):
    """A name that is not in the relevant registry."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
