"""
Per-tree query layers built on a cluster partition.

A layer answers questions about consecutive pairs whose both ends lie in its
tree's window, using the shared range-successor structure over the global
suffix array. GapCounter keeps prefix-count tables over boundary-node pairs;
ExistsLayer keeps only the minimum distance per boundary-node pair.
"""
import heapq
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from cluster_partition import ClusterPartition, cluster_partition
from consecutive_finder import Interval, find_from_p1, find_from_p2
from models import ConsecutivePair
from range_successor import OrsIndex
from text_core import SuffixTree

logger = logging.getLogger(__name__)

NO_PAIR = np.iinfo(np.int64).max


def integer_cube_root(n: int) -> int:
    k = int(round(n ** (1.0 / 3.0))) if n > 0 else 0
    while k ** 3 > n:
        k -= 1
    while (k + 1) ** 3 <= n:
        k += 1
    return k


def count_tau(size: int) -> int:
    """tau with size // tau equal to the integer cube root of size; small sizes use tau = size."""
    if size < 8:
        return max(2, size)
    return size // integer_cube_root(size)


def sqrt_tau(size: int) -> int:
    return max(2, math.isqrt(size))


def consecutive_distances(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Distances of all consecutive pairs between two sorted occurrence lists."""
    if first.size == 0 or second.size == 0:
        return np.empty(0, dtype=np.int64)
    idx = np.searchsorted(second, first, side="right")
    has_next = idx < second.size
    j = second[np.minimum(idx, second.size - 1)]
    next_first = np.empty_like(first)
    next_first[:-1] = first[1:]
    next_first[-1] = NO_PAIR
    valid = has_next & (j <= next_first)
    return (j - first)[valid]


def segment_sweep(
    ors: OrsIndex,
    r1: Interval,
    r2: Interval,
    window: Tuple[int, int],
    segment: int,
    lo: int,
    hi: int,
    out: Optional[List[ConsecutivePair]] = None,
    stop_first: bool = False,
) -> int:
    """
    Pairs inside `window` with distance in [lo, hi], lo >= segment.

    Scans segments right to left; only the last P1 occurrence of a segment can
    start a pair longer than the segment.
    """
    if lo > hi:
        return 0
    a, b = window
    found = 0
    cur = b + 1
    while True:
        i = ors.range_predecessor(r1[0], r1[1], cur)
        if i is None or i < a:
            break
        pair = find_from_p1(ors, r1, r2, i, window)
        if pair is not None and lo <= pair.j - i <= hi:
            found += 1
            if out is not None:
                out.append(pair)
            if stop_first:
                break
        cur = a + ((i - a) // segment) * segment
    return found


class ClusterLayer:
    """Cluster partition of one tree plus the finder-based local enumerations."""

    def __init__(self, tree: SuffixTree, ors: OrsIndex, isa: Sequence[int], tau: int, size: int):
        self.tree = tree
        self.ors = ors
        self.isa = isa
        self.tau = tau
        self.size = size
        self.window = tree.window
        self.partition: ClusterPartition = cluster_partition(tree, tau)

    def boundary_positions(self) -> List[np.ndarray]:
        tree = self.tree
        return [np.sort(np.asarray(tree.leaf_positions(b), dtype=np.int64)) for b in self.partition.boundary]

    def off_spine(self, u1: int, u2: int) -> bool:
        on_spine = self.partition.on_spine
        return not (on_spine[u1] and on_spine[u2])

    def enumerate_pairs(
        self, u1: int, u2: int, r1: Interval, r2: Interval, lo: int, hi: int,
        out: Optional[List[ConsecutivePair]] = None, stop_first: bool = False,
    ) -> int:
        """All pairs from the off-spine side's leaves (at most tau of them)."""
        from_p2 = self.partition.on_spine[u1] and not self.partition.on_spine[u2]
        return enumerate_pairs(
            self.ors, self.tree, u2 if from_p2 else u1, r1, r2, lo, hi, from_p2, out, stop_first
        )

    def local_leaves(self, u: int, b: int) -> List[int]:
        """Leaves below u but not below its lower boundary b, in text order."""
        if u == b:
            return []
        tree = self.tree
        ranks = self.partition.local_rank
        slots: List[Optional[int]] = [None] * self.tau
        for k in range(tree.lo[u], tree.lo[b]):
            slots[ranks[tree.leaf_ids[k]]] = tree.leaves[k]
        for k in range(tree.hi[b] + 1, tree.hi[u] + 1):
            slots[ranks[tree.leaf_ids[k]]] = tree.leaves[k]
        return [p for p in slots if p is not None]

    def local_pairs(
        self, l1: List[int], l2: List[int], b1: int, r1: Interval, r2: Interval, lo: int, hi: int,
        out: Optional[List[ConsecutivePair]] = None, stop_first: bool = False,
    ) -> int:
        """Pairs with i in l1 or j in l2, each counted once."""
        ors = self.ors
        window = self.window
        found = 0
        for i in l1:
            pair = find_from_p1(ors, r1, r2, i, window)
            if pair is not None and lo <= pair.j - i <= hi:
                found += 1
                if out is not None:
                    out.append(pair)
                if stop_first:
                    return found
        below_lo, below_hi = self.tree.glo[b1], self.tree.ghi[b1]
        isa = self.isa
        for j in l2:
            pair = find_from_p2(ors, r1, r2, j, window)
            if pair is None or not lo <= j - pair.i <= hi:
                continue
            # pairs whose i lies outside range(b1) were already taken from the P1 side
            if below_lo <= isa[pair.i] <= below_hi:
                found += 1
                if out is not None:
                    out.append(pair)
                if stop_first:
                    return found
        return found


def enumerate_pairs(
    ors: OrsIndex, tree: SuffixTree, u: int, r1: Interval, r2: Interval, lo: int, hi: int,
    from_p2: bool = False, out: Optional[List[ConsecutivePair]] = None, stop_first: bool = False,
) -> int:
    """Resolve every leaf of u (a P1 locus, or a P2 locus with from_p2) to its pair."""
    window = tree.window
    found = 0
    for p in tree.leaf_positions(u):
        if from_p2:
            pair = find_from_p2(ors, r1, r2, p, window)
        else:
            pair = find_from_p1(ors, r1, r2, p, window)
        if pair is not None and lo <= pair.j - pair.i <= hi:
            found += 1
            if out is not None:
                out.append(pair)
            if stop_first:
                break
    return found


class GapCounter(ClusterLayer):
    """Counting layer: M(u,v)[x] = consecutive (str(u), str(v)) pairs of distance <= x."""

    def __init__(
        self, tree: SuffixTree, ors: OrsIndex, isa: Sequence[int], tau: int, size: int,
        tables: Optional[np.ndarray] = None,
    ):
        super().__init__(tree, ors, isa, tau, size)
        self.cap = size // tau
        self.segment = max(1, self.cap)
        k = len(self.partition.boundary)
        if tables is None:
            tables = self._build_tables()
        elif tables.shape != (k, k, self.cap + 1):
            raise ValueError(f"table shape {tables.shape} does not match {(k, k, self.cap + 1)}")
        self.tables = tables

    def _build_tables(self) -> np.ndarray:
        positions = self.boundary_positions()
        k = len(positions)
        width = self.cap + 1
        tables = np.zeros((k, k, width), dtype=np.int64)
        for x, first in enumerate(positions):
            for y, second in enumerate(positions):
                dist = consecutive_distances(first, second)
                dist = dist[dist <= self.cap]
                if dist.size:
                    tables[x, y] = np.cumsum(np.bincount(dist, minlength=width))
        return tables

    @property
    def table_entries(self) -> int:
        return int(self.tables.size)

    def table(self, u: int, v: int) -> np.ndarray:
        index = self.partition.boundary_index
        return self.tables[index[u], index[v]]

    def small_phase(
        self, u1: int, u2: int, r1: Interval, r2: Interval, lo: int, hi: int, stop_first: bool = False
    ) -> int:
        """Number of pairs in the window with distance in [lo, hi], where hi <= cap."""
        if lo > hi:
            return 0
        if self.off_spine(u1, u2):
            return self.enumerate_pairs(u1, u2, r1, r2, lo, hi, stop_first=stop_first)
        cp = self.partition
        b1, b2 = cp.lower_boundary[u1], cp.lower_boundary[u2]
        l1 = self.local_leaves(u1, b1)
        l2 = self.local_leaves(u2, b2)
        found = self.local_pairs(l1, l2, b1, r1, r2, lo, hi, stop_first=stop_first)
        if found and stop_first:
            return found
        row = self.table(b1, b2)
        tabled = int(row[hi] - row[lo - 1])
        if tabled:
            tabled -= self._false_occurrences(l1, l2, b1, b2, lo, hi)
        return found + tabled

    def _false_occurrences(self, l1: List[int], l2: List[int], b1: int, b2: int, lo: int, hi: int) -> int:
        """Consecutive (str(b1), str(b2)) pairs in [lo, hi] with a local occurrence strictly inside."""
        ors = self.ors
        tree = self.tree
        a, b = self.window
        g1 = (tree.glo[b1], tree.ghi[b1])
        g2 = (tree.glo[b2], tree.ghi[b2])
        false = 0
        skip_until = -1
        last = -1
        for e in heapq.merge(l1, l2):
            if e == last or e < skip_until:
                continue
            last = e
            i = ors.range_predecessor(g1[0], g1[1], e)
            if i is None or i < a:
                continue
            j = ors.range_successor(g2[0], g2[1], i)
            if j is None or j > b or j <= e:
                continue
            if ors.range_predecessor(g1[0], g1[1], j) != i:
                continue
            skip_until = j
            if lo <= j - i <= hi:
                false += 1
        return false


class ExistsLayer(ClusterLayer):
    """One-sided layer: minimum consecutive distance per boundary-node pair."""

    def __init__(
        self, tree: SuffixTree, ors: OrsIndex, isa: Sequence[int], tau: int, size: int,
        min_dist: Optional[np.ndarray] = None,
    ):
        super().__init__(tree, ors, isa, tau, size)
        k = len(self.partition.boundary)
        if min_dist is None:
            min_dist = self._build_min_dist()
        elif min_dist.shape != (k, k):
            raise ValueError(f"min-distance shape {min_dist.shape} does not match {(k, k)}")
        self.min_dist_table = min_dist

    def _build_min_dist(self) -> np.ndarray:
        positions = self.boundary_positions()
        k = len(positions)
        table = np.full((k, k), NO_PAIR, dtype=np.int64)
        for x, first in enumerate(positions):
            for y, second in enumerate(positions):
                dist = consecutive_distances(first, second)
                if dist.size:
                    table[x, y] = dist.min()
        return table

    @property
    def table_entries(self) -> int:
        return int(self.min_dist_table.size)

    def min_dist(self, u: int, v: int) -> float:
        """Smallest consecutive distance of (str(u), str(v)); math.inf when there is none."""
        index = self.partition.boundary_index
        value = int(self.min_dist_table[index[u], index[v]])
        return math.inf if value == NO_PAIR else value

    def exists(self, u1: int, u2: int, r1: Interval, r2: Interval, beta: int) -> bool:
        if beta < 1:
            return False
        if self.off_spine(u1, u2):
            return self.enumerate_pairs(u1, u2, r1, r2, 1, beta, stop_first=True) > 0
        cp = self.partition
        b1, b2 = cp.lower_boundary[u1], cp.lower_boundary[u2]
        if self.min_dist(b1, b2) <= beta:
            return True
        l1 = self.local_leaves(u1, b1)
        l2 = self.local_leaves(u2, b2)
        return self.local_pairs(l1, l2, b1, r1, r2, 1, beta, stop_first=True) > 0
