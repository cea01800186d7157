"""
Cluster partition of a rooted tree into edge-disjoint clusters of at most tau
nodes with at most two boundary nodes each.

Boundary nodes are picked bottom-up so the set is closed under lowest common
ancestors and every unmarked component hanging below a boundary node is small.
Each component, together with its top boundary and its (at most one) lower
boundary, forms a region; regions sharing a top boundary are packed greedily
into clusters.
"""
import logging
from typing import Dict, List, NamedTuple, Optional

from errors import BadTau
from text_core import SuffixTree

logger = logging.getLogger(__name__)

# Declared constant in the cluster-count bound: clusters <= K * ceil(N / tau).
CLUSTER_COUNT_FACTOR = 8


class Cluster(NamedTuple):
    top: int
    hole: Optional[int]
    nodes: List[int]
    spine: List[int]

    @property
    def boundary(self) -> List[int]:
        return [self.top] if self.hole is None else [self.top, self.hole]


class SpineInfo(NamedTuple):
    on_spine: bool
    lower_boundary: Optional[int]
    local_rank: Optional[int]


class ClusterPartition:
    """Per-node cluster metadata for one tree."""

    def __init__(self, tree: SuffixTree, tau: int):
        self.tree = tree
        self.tau = tau
        count = tree.node_count
        self.is_boundary = [False] * count
        self.clusters: List[Cluster] = []
        self.cluster_of = [-1] * count
        self.on_spine = [False] * count
        self.lower_boundary = [-1] * count
        self.local_rank = [-1] * count
        self._mark()
        self._build_clusters()
        self.boundary = [v for v in range(count) if self.is_boundary[v]]
        self.boundary_index: Dict[int, int] = {v: k for k, v in enumerate(self.boundary)}

    def _mark(self) -> None:
        tree = self.tree
        limit = self.tau - 1
        size = [0] * tree.node_count
        has_mark = [False] * tree.node_count
        # preorder ids: every child has a larger id than its parent
        for v in range(tree.node_count - 1, -1, -1):
            s = 1
            branches = 0
            for c in tree.children[v].values():
                if has_mark[c]:
                    branches += 1
                s += 1 if self.is_boundary[c] else size[c]
            size[v] = s
            if v == tree.root or branches >= 2 or s > limit:
                self.is_boundary[v] = True
            has_mark[v] = self.is_boundary[v] or branches > 0
        self._size = size

    def _region(self, c: int):
        """Nodes below a boundary node reached through child c, and the region's hole."""
        if self.is_boundary[c]:
            return [c], c
        members = []
        hole = None
        stack = [c]
        children = self.tree.children
        while stack:
            v = stack.pop()
            members.append(v)
            for w in children[v].values():
                if self.is_boundary[w]:
                    members.append(w)
                    hole = w
                else:
                    stack.append(w)
        return members, hole

    def _build_clusters(self) -> None:
        tree = self.tree
        tau = self.tau
        if tree.node_count == 1:
            self.clusters.append(Cluster(tree.root, None, [tree.root], []))
        for b in range(tree.node_count):
            if not self.is_boundary[b]:
                continue
            group: List[int] = []
            group_hole: Optional[int] = None
            for c in tree.children[b].values():
                members, hole = self._region(c)
                fits = 1 + len(group) + len(members) <= tau
                if group and (not fits or (hole is not None and group_hole is not None)):
                    self._close(b, group, group_hole)
                    group, group_hole = [], None
                group.extend(members)
                if hole is not None:
                    group_hole = hole
            if group:
                self._close(b, group, group_hole)

        self.on_spine[tree.root] = True
        self.lower_boundary[tree.root] = tree.root

        for cid, cluster in enumerate(self.clusters):
            ranked = sorted((tree.label[v], v) for v in cluster.nodes if v != cluster.top and tree.is_leaf(v))
            for rank, (_, v) in enumerate(ranked):
                self.local_rank[v] = rank
        if tree.node_count == 1:
            self.local_rank[tree.root] = 0

    def _close(self, top: int, members: List[int], hole: Optional[int]) -> None:
        cid = len(self.clusters)
        spine: List[int] = []
        if hole is not None:
            v = hole
            while v != top:
                spine.append(v)
                v = self.tree.parent[v]
            spine.append(top)
            spine.reverse()
        self.clusters.append(Cluster(top, hole, [top] + members, spine))
        for v in members:
            self.cluster_of[v] = cid
        for v in spine[1:]:
            self.on_spine[v] = True
            self.lower_boundary[v] = hole

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)

    def spine_metadata(self, node: int) -> SpineInfo:
        rank = self.local_rank[node]
        lower = self.lower_boundary[node]
        return SpineInfo(
            on_spine=self.on_spine[node],
            lower_boundary=lower if lower >= 0 else None,
            local_rank=rank if rank >= 0 else None,
        )


def cluster_partition(tree: SuffixTree, tau: int) -> ClusterPartition:
    """Partition `tree` into clusters of at most `tau` nodes."""
    if tau < 1:
        raise BadTau(tau, "must be at least 1")
    if tau < 2 and tree.node_count > 1:
        raise BadTau(tau, "a cluster holding an edge has two nodes")
    cp = ClusterPartition(tree, tau)
    logger.debug(
        f"Cluster partition: nodes={tree.node_count}, tau={tau}, "
        f"boundary={len(cp.boundary)}, clusters={cp.cluster_count}"
    )
    return cp


def spine_metadata(cp: ClusterPartition, node: int) -> SpineInfo:
    return cp.spine_metadata(node)
