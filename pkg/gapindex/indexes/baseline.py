"""
Merge baseline: read both occurrence lists off the suffix array and merge them.

Linear space, query time proportional to the two occurrence counts. Issues no
range-successor queries.
"""
import logging
from typing import List, Optional

from models import ConsecutivePair, GapQuery, ReportResult
from text_core import TextIndex, build_text_index

from . import GapIndex

logger = logging.getLogger(__name__)


def merge_pairs(first: List[int], second: List[int]) -> List[ConsecutivePair]:
    """Consecutive pairs between two sorted occurrence lists."""
    pairs: List[ConsecutivePair] = []
    k = 0
    for idx, i in enumerate(first):
        while k < len(second) and second[k] <= i:
            k += 1
        if k == len(second):
            break
        j = second[k]
        if idx + 1 == len(first) or first[idx + 1] >= j:
            pairs.append(ConsecutivePair(i, j))
    return pairs


class MergeIndex(GapIndex):
    """Suffix-tree search for both patterns followed by a merge"""

    kind = "baseline"

    def __init__(self, text_index: TextIndex, tau: Optional[int] = None, **kwargs):
        super().__init__(text_index, tau=None, **kwargs)

    @classmethod
    def build(cls, text: bytes) -> "MergeIndex":
        return cls(build_text_index(text))

    def report(self, query: GapQuery) -> ReportResult:
        loc1, loc2 = self._loci(query)
        if loc1 is None or loc2 is None:
            return ReportResult()
        lo, hi = query.effective_range(self.n)
        if lo > hi:
            return ReportResult()
        tree = self.text_index.tree
        first = sorted(tree.leaf_positions(loc1.node))
        second = sorted(tree.leaf_positions(loc2.node))
        return ReportResult(pairs=[p for p in merge_pairs(first, second) if lo <= p.distance <= hi])

    def count(self, query: GapQuery) -> int:
        return self.report(query).count

    def exists(self, query: GapQuery) -> bool:
        return self.report(query).exists
