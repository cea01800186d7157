"""
Resolve one occurrence of P1 (or P2) to its consecutive pair with two range queries.

r1 and r2 are inclusive suffix-array intervals of the two loci. The optional
window [a, b] restricts both ends of the pair to text positions a..b; results of
the global range queries outside the window count as absent.
"""
from typing import Optional, Tuple

from models import ConsecutivePair
from range_successor import OrsIndex

Interval = Tuple[int, int]
Window = Optional[Tuple[int, int]]


def find_from_p1(
    ors: OrsIndex, r1: Interval, r2: Interval, i: int, window: Window = None
) -> Optional[ConsecutivePair]:
    """Pair (i, j) where j is the first P2 occurrence after i, if no P1 occurs in between."""
    j = ors.range_successor(r2[0], r2[1], i)
    if j is None or (window is not None and j > window[1]):
        return None
    # j is the nearest P2 after i, so only an intervening P1 can break the pair
    if ors.range_predecessor(r1[0], r1[1], j) != i:
        return None
    return ConsecutivePair(i, j)


def find_from_p2(
    ors: OrsIndex, r1: Interval, r2: Interval, j: int, window: Window = None
) -> Optional[ConsecutivePair]:
    """Pair (i, j) where i is the last P1 occurrence before j, if no P2 occurs in between."""
    i = ors.range_predecessor(r1[0], r1[1], j)
    if i is None or (window is not None and i < window[0]):
        return None
    if ors.range_successor(r2[0], r2[1], i) != j:
        return None
    return ConsecutivePair(i, j)
