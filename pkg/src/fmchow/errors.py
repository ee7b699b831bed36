"""Exceptions raised by the engine; the CLI maps them to exit codes."""

from __future__ import annotations


class FmchowError(Exception):
    pass


class BadParams(FmchowError, ValueError):
    pass


class CapExceeded(FmchowError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds configured cap {limit}")
        self.what = what
        self.limit = limit


class NotNested(FmchowError, ValueError):
    def __init__(self, a: tuple[int, ...], b: tuple[int, ...]):
        super().__init__(f"subsets {list(a)} and {list(b)} are not nested")
        self.pair = (a, b)


class BadCardinality(FmchowError, ValueError):
    pass


class NotMember(FmchowError, ValueError):
    pass


class BadSubset(FmchowError, ValueError):
    pass


class NegativeExponent(FmchowError, ValueError):
    pass


class DegreeOutOfRange(FmchowError, ValueError):
    pass


class DegreeMismatch(FmchowError, ValueError):
    pass


class DivisionFailure(FmchowError, ValueError):
    pass


class NotCellular(FmchowError, ValueError):
    pass


class NormalizationFailure(FmchowError, RuntimeError):
    pass
