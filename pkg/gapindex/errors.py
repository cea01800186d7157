"""
Exception hierarchy for the gapped consecutive-occurrence index
"""
from typing import Optional


class GapIndexError(ValueError):
    """Base class for all library errors (data errors at the CLI surface)"""

    exit_code = 3


class SentinelInInput(GapIndexError):
    """The text contains the reserved sentinel byte"""

    def __init__(self, position: int):
        super().__init__(f"Reserved sentinel byte 0x00 found at text position {position}")
        self.position = position


class EmptyPattern(GapIndexError):
    """A query pattern has length zero"""

    def __init__(self, which: str = "pattern"):
        super().__init__(f"Empty {which}: patterns must contain at least one symbol")


class BadRange(GapIndexError):
    """Index range outside the indexed array"""

    def __init__(self, lo: int, hi: int, length: int):
        super().__init__(f"Bad range [{lo},{hi}] for array of length {length}")
        self.lo = lo
        self.hi = hi


class DuplicateValue(GapIndexError):
    """Range-successor arrays must hold distinct values"""

    def __init__(self, value: int):
        super().__init__(f"Duplicate value in range-successor array: {value}")
        self.value = value


class BadTau(GapIndexError):
    """Cluster size parameter outside its admissible range"""

    def __init__(self, tau: int, reason: str):
        super().__init__(f"Invalid tau {tau}: {reason}")
        self.tau = tau


class NonUniformFrequency(GapIndexError):
    """A reduction instance whose elements do not share one frequency"""

    def __init__(self, element: str, frequency: int, expected: int):
        super().__init__(
            f"Element {element!r} occurs in {frequency} sets, expected {expected}"
        )


class DummySetQueried(GapIndexError):
    """Disjointness was asked for a padding set"""

    def __init__(self, set_id: int):
        super().__init__(f"Set {set_id} is a dummy set and cannot be queried")
        self.set_id = set_id


class IndexFormatError(GapIndexError):
    """An index file could not be decoded"""


class ScriptError(GapIndexError):
    """A malformed line in a query script or set-system file"""

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line


class TextTooLarge(GapIndexError):
    """The text exceeds the size limit of a quadratic-space index"""

    def __init__(self, n: int, limit: int):
        super().__init__(f"Text of length {n} exceeds the quadratic index limit of {limit}")
        self.n = n
        self.limit = limit
