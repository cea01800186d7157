"""
One-sided index for gap ranges [0, beta].

Exists reads a single minimum-distance table with tau = floor(sqrt(n)).
Report walks the decomposition, descending only where a tree's minimum-distance
table guarantees a pair of distance <= beta.
"""
import logging
from typing import Any, Dict, List, Optional

from cluster_tables import ExistsLayer, enumerate_pairs, sqrt_tau
from config import get_settings
from consecutive_finder import Interval, find_from_p1
from decomposition import InducedDecomposition, InducedTree, LEFT, RIGHT, build_decomposition
from models import ConsecutivePair, GapQuery, ReportResult
from text_core import TextIndex, build_text_index

from . import GapIndex
from .count import resolve_tau

logger = logging.getLogger(__name__)


class ZbIndex(GapIndex):
    """Exists, Count and Report for one-sided gap ranges; larger alphas filter the report"""

    kind = "zero-beta"

    def __init__(self, text_index: TextIndex, tau: Optional[int] = None, cutoff: Optional[int] = None, **kwargs):
        super().__init__(text_index, tau=tau, **kwargs)
        self.tau = resolve_tau(tau, text_index.n, sqrt_tau) if tau is not None else sqrt_tau(text_index.n)
        self.cutoff = cutoff if cutoff is not None else get_settings().small_tree_cutoff
        isa = text_index.isa_list
        root_tree = text_index.tree
        root_min_dist = kwargs.get("min_dist")

        def make_layer(tree, tree_size):
            if tree is root_tree:
                return ExistsLayer(tree, self.ors, isa, self.tau, text_index.n, min_dist=root_min_dist)
            return ExistsLayer(tree, self.ors, isa, sqrt_tau(tree_size), tree_size)

        self.decomposition: InducedDecomposition = build_decomposition(
            text_index, make_layer, self.cutoff, layer_root=True
        )
        self.layer: ExistsLayer = self.decomposition.root.layer
        self.visits = 0
        logger.info(
            f"Built zero-beta index: n={self.n}, tau={self.tau}, "
            f"boundary={len(self.layer.partition.boundary)}, trees={len(self.decomposition.trees)}"
        )

    def _setup(self, p1: bytes, p2: bytes, beta: int):
        loc1 = self.text_index.tree.locus(p1)
        loc2 = self.text_index.tree.locus(p2)
        beta = min(beta, self.n - 1)
        if loc1 is None or loc2 is None or beta < 1:
            return None
        tree = self.text_index.tree
        return loc1.node, loc2.node, tree.sa_range(loc1.node), tree.sa_range(loc2.node), beta

    def exists_zb(self, p1: bytes, p2: bytes, beta: int) -> bool:
        setup = self._setup(p1, p2, beta)
        if setup is None:
            return False
        u1, u2, r1, r2, beta = setup
        return self.layer.exists(u1, u2, r1, r2, beta)

    def report_zb(self, p1: bytes, p2: bytes, beta: int) -> ReportResult:
        self.visits = 0
        setup = self._setup(p1, p2, beta)
        if setup is None:
            return ReportResult()
        u1, u2, r1, r2, beta = setup
        pairs: List[ConsecutivePair] = []
        self._recurse(self.decomposition.root, u1, u2, r1, r2, beta, pairs)
        pairs.sort()
        return ReportResult(pairs=pairs)

    def count_zb(self, p1: bytes, p2: bytes, beta: int) -> int:
        return self.report_zb(p1, p2, beta).count

    def _recurse(
        self, node: InducedTree, u1: int, u2: int, r1: Interval, r2: Interval, beta: int,
        out: List[ConsecutivePair],
    ) -> None:
        layer: Optional[ExistsLayer] = node.layer
        if layer is None:
            enumerate_pairs(self.ors, node.tree, u1, r1, r2, 1, beta, out=out)
            return
        if layer.off_spine(u1, u2):
            layer.enumerate_pairs(u1, u2, r1, r2, 1, beta, out=out)
            return
        cp = layer.partition
        b1, b2 = cp.lower_boundary[u1], cp.lower_boundary[u2]
        if layer.min_dist(b1, b2) > beta:
            # every pair left has an end among the cluster-local leaves
            layer.local_pairs(layer.local_leaves(u1, b1), layer.local_leaves(u2, b2), b1, r1, r2, 1, beta, out=out)
            return
        self.visits += 1
        a, _ = node.interval
        c = node.split
        i = self.ors.range_predecessor(r1[0], r1[1], c + 1)
        if i is not None and i >= a:
            pair = find_from_p1(self.ors, r1, r2, i, node.interval)
            if pair is not None and pair.j > c and pair.j - i <= beta:
                out.append(pair)
        for side in (LEFT, RIGHT):
            child = node.children[side]
            if child is None:
                continue
            c1 = node.successor_locus(u1, side)
            c2 = node.successor_locus(u2, side)
            if c1 is not None and c2 is not None:
                self._recurse(child, c1, c2, r1, r2, beta, out)

    def _filtered(self, query: GapQuery) -> ReportResult:
        result = self.report_zb(query.p1, query.p2, query.beta)
        if query.alpha <= 1:
            return result
        return ReportResult(pairs=[p for p in result.pairs if p.distance >= query.alpha])

    def exists(self, query: GapQuery) -> bool:
        if query.alpha <= 1:
            return self.exists_zb(query.p1, query.p2, query.beta)
        return self._filtered(query).exists

    def count(self, query: GapQuery) -> int:
        return self._filtered(query).count

    def report(self, query: GapQuery) -> ReportResult:
        return self._filtered(query)

    def stats(self) -> Dict[str, Any]:
        return {
            **super().stats(),
            "tau": self.tau,
            "boundary_nodes": len(self.layer.partition.boundary),
            "table_entries": self.layer.table_entries,
            "trees": len(self.decomposition.trees),
            "depth": self.decomposition.depth,
            "levels": self.decomposition.level_count,
        }


def build_zb_index(text: bytes) -> ZbIndex:
    return ZbIndex(build_text_index(text))


def exists_zb(index: ZbIndex, p1: bytes, p2: bytes, beta: int) -> bool:
    return index.exists_zb(p1, p2, beta)


def report_zb(index: ZbIndex, p1: bytes, p2: bytes, beta: int) -> ReportResult:
    return index.report_zb(p1, p2, beta)


def count_zb(index: ZbIndex, p1: bytes, p2: bytes, beta: int) -> int:
    return index.count_zb(p1, p2, beta)
