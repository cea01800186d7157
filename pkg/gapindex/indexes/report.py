"""
Reporting index over the induced suffix tree decomposition.

At each tree the pairs with distance above the tree's cap come from a segment
sweep; the rest are split into the pair straddling the midpoint and the pairs
inside either half, which are found by recursing wherever the tree's counting
layer confirms that at least one pair remains.
"""
import logging
from typing import Any, Dict, List, Optional

from cluster_tables import GapCounter, count_tau, enumerate_pairs, segment_sweep
from config import get_settings
from consecutive_finder import Interval, find_from_p1
from decomposition import InducedDecomposition, InducedTree, LEFT, RIGHT, build_decomposition
from models import ConsecutivePair, GapQuery, ReportResult
from text_core import TextIndex, build_text_index

from . import GapIndex
from .count import resolve_tau

logger = logging.getLogger(__name__)


class ReportIndex(GapIndex):
    """Report, Count and Exists through the decomposition"""

    kind = "report"

    def __init__(self, text_index: TextIndex, tau: Optional[int] = None, cutoff: Optional[int] = None, **kwargs):
        super().__init__(text_index, tau=tau, **kwargs)
        size = text_index.n + 1
        self.tau = resolve_tau(tau, text_index.n, count_tau) if tau is not None else count_tau(size)
        self.cutoff = cutoff if cutoff is not None else get_settings().small_tree_cutoff
        isa = text_index.isa_list
        root_tree = text_index.tree

        def make_layer(tree, tree_size):
            tree_tau = self.tau if tree is root_tree else count_tau(tree_size)
            return GapCounter(tree, self.ors, isa, tree_tau, tree_size)

        self.decomposition: InducedDecomposition = build_decomposition(text_index, make_layer, self.cutoff)
        self.visits = 0
        logger.info(
            f"Built report index: n={self.n}, trees={len(self.decomposition.trees)}, "
            f"depth={self.decomposition.depth}, nodes={self.decomposition.total_nodes}"
        )

    def report(self, query: GapQuery) -> ReportResult:
        self.visits = 0
        loc1, loc2 = self._loci(query)
        if loc1 is None or loc2 is None:
            return ReportResult()
        lo, hi = query.effective_range(self.n)
        if lo > hi:
            return ReportResult()
        root = self.decomposition.root
        tree = root.tree
        r1, r2 = tree.sa_range(loc1.node), tree.sa_range(loc2.node)
        pairs: List[ConsecutivePair] = []
        self._descend(root, loc1.node, loc2.node, r1, r2, lo, hi, pairs)
        pairs.sort()
        for prev, cur in zip(pairs, pairs[1:]):
            assert prev != cur, f"pair {cur} reported twice"
        return ReportResult(pairs=pairs)

    def _descend(
        self, node: InducedTree, u1: int, u2: int, r1: Interval, r2: Interval, lo: int, hi: int,
        out: List[ConsecutivePair],
    ) -> None:
        """Long pairs of `node` by sweep, then recurse with the cap lowered."""
        layer = node.layer
        if layer is None:
            self._recurse(node, u1, u2, r1, r2, lo, hi, out)
            return
        segment_sweep(self.ors, r1, r2, node.interval, layer.segment, max(lo, layer.cap + 1), hi, out)
        self._recurse(node, u1, u2, r1, r2, lo, min(hi, layer.cap), out)

    def _recurse(
        self, node: InducedTree, u1: int, u2: int, r1: Interval, r2: Interval, lo: int, hi: int,
        out: List[ConsecutivePair],
    ) -> None:
        """All pairs inside node's window with distance in [lo, hi]."""
        if lo > hi:
            return
        layer: Optional[GapCounter] = node.layer
        if layer is None or layer.off_spine(u1, u2):
            if layer is None:
                enumerate_pairs(self.ors, node.tree, u1, r1, r2, lo, hi, out=out)
            else:
                layer.enumerate_pairs(u1, u2, r1, r2, lo, hi, out=out)
            return
        if not layer.small_phase(u1, u2, r1, r2, lo, hi, stop_first=True):
            return
        self.visits += 1
        a, _ = node.interval
        c = node.split
        i = self.ors.range_predecessor(r1[0], r1[1], c + 1)
        if i is not None and i >= a:
            pair = find_from_p1(self.ors, r1, r2, i, node.interval)
            if pair is not None and pair.j > c and lo <= pair.j - i <= hi:
                out.append(pair)
        for side in (LEFT, RIGHT):
            child = node.children[side]
            if child is None:
                continue
            c1 = node.successor_locus(u1, side)
            c2 = node.successor_locus(u2, side)
            if c1 is None or c2 is None:
                continue
            self._descend(child, c1, c2, r1, r2, lo, hi, out)

    def count(self, query: GapQuery) -> int:
        return self.report(query).count

    def exists(self, query: GapQuery) -> bool:
        root = self.decomposition.root
        layer: Optional[GapCounter] = root.layer
        if layer is None:
            return self.report(query).exists
        loc1, loc2 = self._loci(query)
        if loc1 is None or loc2 is None:
            return False
        lo, hi = query.effective_range(self.n)
        if lo > hi:
            return False
        tree = root.tree
        r1, r2 = tree.sa_range(loc1.node), tree.sa_range(loc2.node)
        if layer.small_phase(loc1.node, loc2.node, r1, r2, lo, min(hi, layer.cap), stop_first=True):
            return True
        return segment_sweep(
            self.ors, r1, r2, root.interval, layer.segment, max(lo, layer.cap + 1), hi, stop_first=True
        ) > 0

    def stats(self) -> Dict[str, Any]:
        layered = [t for t in self.decomposition.trees if t.layer is not None]
        return {
            **super().stats(),
            "tau": self.tau,
            "trees": len(self.decomposition.trees),
            "layered_trees": len(layered),
            "depth": self.decomposition.depth,
            "levels": self.decomposition.level_count,
            "induced_nodes": self.decomposition.total_nodes,
            "table_entries": sum(t.layer.table_entries for t in layered),
        }


def build_report_index(text: bytes) -> ReportIndex:
    return ReportIndex(build_text_index(text))


def report(index: ReportIndex, query: GapQuery) -> ReportResult:
    return index.report(query)
