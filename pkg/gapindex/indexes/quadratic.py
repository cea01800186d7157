"""
Quadratic-space reference index.

Each suffix-tree node keeps one point per candidate pair of its occurrences:
for a position i below the node and every j up to the next position below it,
the point carries the suffix-array rank of j, the distance j - i, and the
shadow of (i, j), the longest common prefix of suffix j with any suffix
starting strictly between i and j. P2 occurs at j with no occurrence in
between exactly when rank(j) lies in P2's range and the shadow is shorter
than P2. Points are sorted by rank, so a query slices one node's points and
masks them; no range-successor queries are issued. Space grows with the square
of n, so the text length is capped.
"""
import logging
from typing import Any, Dict, List, NamedTuple, Optional

import numpy as np

from config import get_settings
from errors import TextTooLarge
from models import ConsecutivePair, GapQuery, ReportResult
from text_core import Locus, TextIndex, build_text_index

from . import GapIndex

logger = logging.getLogger(__name__)


class NodePoints(NamedTuple):
    rank: np.ndarray
    shadow: np.ndarray
    start: np.ndarray
    distance: np.ndarray

    @property
    def size(self) -> int:
        return int(self.rank.size)


EMPTY = NodePoints(*(np.zeros(0, dtype=np.int64) for _ in range(4)))


def common_prefix_matrix(padded: bytes) -> np.ndarray:
    """lcp[a, b] = longest common prefix of the suffixes at a and b."""
    size = len(padded)
    symbols = np.frombuffer(padded, dtype=np.uint8)
    lcp = np.zeros((size + 1, size + 1), dtype=np.int32)
    for a in range(size - 1, -1, -1):
        lcp[a, :size] = np.where(symbols == symbols[a], lcp[a + 1, 1:] + 1, 0)
    return lcp[:size, :size]


def shadow_matrix(lcp: np.ndarray) -> np.ndarray:
    """shadow[j, i] = max lcp[j, k] over i < k < j; zero when nothing lies between."""
    size = lcp.shape[0]
    shadow = np.zeros_like(lcp)
    for j in range(2, size):
        shadow[j, : j - 1] = np.maximum.accumulate(lcp[j, 1:j][::-1])[::-1]
    return shadow


def node_points(positions: List[int], n: int, isa: np.ndarray, shadow: np.ndarray) -> NodePoints:
    """Candidate pairs (i, j) with i in positions and j up to the next position, sorted by rank(j)."""
    starts = np.array(sorted(p for p in positions if p < n), dtype=np.int64)
    if starts.size == 0:
        return EMPTY
    ends = np.empty_like(starts)
    ends[:-1] = starts[1:]
    ends[-1] = n - 1
    lengths = ends - starts
    total = int(lengths.sum())
    if total == 0:
        return EMPTY
    first = np.repeat(starts, lengths)
    offsets = np.arange(total) - np.repeat(np.cumsum(lengths) - lengths, lengths)
    second = first + offsets + 1
    rank = isa[second]
    order = np.argsort(rank, kind="stable")
    return NodePoints(
        rank=rank[order],
        shadow=shadow[second, first][order].astype(np.int64),
        start=first[order],
        distance=(second - first)[order],
    )


class QuadraticIndex(GapIndex):
    """Per-node point sets answering every query without range-successor calls"""

    kind = "quadratic"

    def __init__(self, text_index: TextIndex, tau: Optional[int] = None, max_n: Optional[int] = None, **kwargs):
        super().__init__(text_index, tau=None, **kwargs)
        self.max_n = max_n if max_n is not None else get_settings().quadratic_max_n
        if text_index.n > self.max_n:
            raise TextTooLarge(text_index.n, self.max_n)
        shadow = shadow_matrix(common_prefix_matrix(text_index.padded))
        tree = text_index.tree
        isa = text_index.isa
        self.points: List[NodePoints] = [EMPTY] * tree.node_count
        for v in range(1, tree.node_count):
            self.points[v] = node_points(tree.leaf_positions(v), self.n, isa, shadow)
        logger.info(f"Built quadratic index: n={self.n}, nodes={tree.node_count}, points={self.point_count}")

    @classmethod
    def build(cls, text: bytes) -> "QuadraticIndex":
        return cls(build_text_index(text))

    @property
    def point_count(self) -> int:
        return sum(p.size for p in self.points)

    def _select(self, loc1: Locus, loc2: Locus, lo: int, hi: int):
        points = self.points[loc1.node]
        r_lo, r_hi = self.text_index.tree.sa_range(loc2.node)
        left = int(np.searchsorted(points.rank, r_lo, side="left"))
        right = int(np.searchsorted(points.rank, r_hi, side="right"))
        distance = points.distance[left:right]
        mask = (points.shadow[left:right] < loc2.pattern_len) & (distance >= lo) & (distance <= hi)
        return points.start[left:right][mask], distance[mask]

    def report(self, query: GapQuery) -> ReportResult:
        loc1, loc2 = self._loci(query)
        if loc1 is None or loc2 is None:
            return ReportResult()
        lo, hi = query.effective_range(self.n)
        if lo > hi:
            return ReportResult()
        starts, distances = self._select(loc1, loc2, lo, hi)
        order = np.argsort(starts)
        return ReportResult(pairs=[
            ConsecutivePair(int(i), int(i + d)) for i, d in zip(starts[order], distances[order])
        ])

    def count(self, query: GapQuery) -> int:
        loc1, loc2 = self._loci(query)
        if loc1 is None or loc2 is None:
            return 0
        lo, hi = query.effective_range(self.n)
        if lo > hi:
            return 0
        starts, _ = self._select(loc1, loc2, lo, hi)
        return int(starts.size)

    def exists(self, query: GapQuery) -> bool:
        return self.count(query) > 0

    def stats(self) -> Dict[str, Any]:
        return {**super().stats(), "max_n": self.max_n, "points": self.point_count}
