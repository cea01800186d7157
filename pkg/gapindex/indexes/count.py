"""
Counting index: boundary-pair prefix tables plus a segment sweep for long gaps.
"""
import logging
from typing import Any, Dict, List, Optional

import numpy as np

from cluster_tables import GapCounter, count_tau, enumerate_pairs, segment_sweep
from errors import BadTau
from models import ConsecutivePair, GapQuery, ReportResult
from text_core import TextIndex, build_text_index

from . import GapIndex

logger = logging.getLogger(__name__)


def resolve_tau(tau: Optional[int], size: int, default) -> int:
    """Validate a requested tau against the text length; tau = 1 runs as 2."""
    if tau is None:
        return default(size)
    if tau < 1:
        raise BadTau(tau, "must be at least 1")
    if tau > size:
        raise BadTau(tau, f"exceeds text length {size}")
    return max(2, tau)


class CountIndex(GapIndex):
    """Exists and Count over two-sided gap ranges"""

    kind = "count"

    def __init__(self, text_index: TextIndex, tau: Optional[int] = None, tables: Optional[np.ndarray] = None, **kwargs):
        super().__init__(text_index, tau=tau, **kwargs)
        self.tau = resolve_tau(tau, text_index.n, count_tau)
        self.counter = GapCounter(
            text_index.tree, self.ors, text_index.isa_list, self.tau, text_index.n, tables=tables
        )
        logger.info(
            f"Built count index: n={self.n}, tau={self.tau}, cap={self.counter.cap}, "
            f"boundary={len(self.counter.partition.boundary)}, entries={self.counter.table_entries}"
        )

    def _count(self, query: GapQuery, stop_first: bool) -> int:
        loc1, loc2 = self._loci(query)
        if loc1 is None or loc2 is None:
            return 0
        lo, hi = query.effective_range(self.n)
        if lo > hi:
            return 0
        tree = self.text_index.tree
        counter = self.counter
        r1, r2 = tree.sa_range(loc1.node), tree.sa_range(loc2.node)
        found = counter.small_phase(loc1.node, loc2.node, r1, r2, lo, min(hi, counter.cap), stop_first)
        if found and stop_first:
            return found
        if hi > counter.cap:
            found += segment_sweep(
                self.ors, r1, r2, tree.window, counter.segment,
                max(lo, counter.cap + 1), hi, stop_first=stop_first,
            )
        return found

    def count(self, query: GapQuery) -> int:
        return self._count(query, stop_first=False)

    def exists(self, query: GapQuery) -> bool:
        return self._count(query, stop_first=True) > 0

    def report(self, query: GapQuery) -> ReportResult:
        loc1, loc2 = self._loci(query)
        if loc1 is None or loc2 is None:
            return ReportResult()
        lo, hi = query.effective_range(self.n)
        if lo > hi:
            return ReportResult()
        tree = self.text_index.tree
        pairs: List[ConsecutivePair] = []
        enumerate_pairs(
            self.ors, tree, loc1.node, tree.sa_range(loc1.node), tree.sa_range(loc2.node), lo, hi, out=pairs
        )
        pairs.sort()
        return ReportResult(pairs=pairs)

    def stats(self) -> Dict[str, Any]:
        return {
            **super().stats(),
            "tau": self.tau,
            "cap": self.counter.cap,
            "boundary_nodes": len(self.counter.partition.boundary),
            "clusters": self.counter.partition.cluster_count,
            "table_entries": self.counter.table_entries,
        }


def build_count_index(text: bytes, tau: Optional[int] = None) -> CountIndex:
    return CountIndex(build_text_index(text), tau=tau)


def count(index: CountIndex, query: GapQuery) -> int:
    return index.count(query)


def exists(index: CountIndex, query: GapQuery) -> bool:
    return index.exists(query)
