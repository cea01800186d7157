"""
Induced suffix tree decomposition.

Tree T[a,b] is the compact trie of the suffixes starting at a..b, induced from
the global suffix tree. Intervals halve per level: T[a,b] has children
T[a,c] and T[c+1,b] with c = (a+b)//2 whenever b - a > 1. Every node keeps a
pointer to its successor node (the locus of its string) in each child tree.
"""
import logging
from collections import deque
from typing import Callable, List, Optional, Tuple

import numpy as np

from text_core import SuffixTree, TextIndex, build_tree

logger = logging.getLogger(__name__)

LEFT = 0
RIGHT = 1

LayerFactory = Callable[[SuffixTree, int], object]


class RangeMin:
    """Sparse table over an integer array; inclusive range minima, vectorised."""

    def __init__(self, values: np.ndarray):
        self.table = [np.asarray(values, dtype=np.int64)]
        width = 1
        while 2 * width <= len(values):
            prev = self.table[-1]
            self.table.append(np.minimum(prev[:-width], prev[width:]))
            width *= 2

    def query(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        result = np.empty(left.shape, dtype=np.int64)
        if left.size == 0:
            return result
        level = np.frexp((right - left + 1).astype(np.float64))[1] - 1
        for lvl in np.unique(level):
            mask = level == lvl
            row = self.table[int(lvl)]
            result[mask] = np.minimum(row[left[mask]], row[right[mask] - (1 << int(lvl)) + 1])
        return result


class InducedTree:
    """One node of the decomposition: the induced trie over window [a, b]."""

    def __init__(self, tree: SuffixTree, level: int, cropped: np.ndarray):
        self.tree = tree
        self.level = level
        self.cropped = cropped
        self.interval: Tuple[int, int] = tree.window
        self.children: List[Optional["InducedTree"]] = [None, None]
        self.pointers: List[Optional[List[int]]] = [None, None]
        self.layer = None

    @property
    def size(self) -> int:
        a, b = self.interval
        return b - a + 1

    @property
    def split(self) -> int:
        a, b = self.interval
        return (a + b) // 2

    def successor_locus(self, node: int, side: int) -> Optional[int]:
        """Closest present descendant of `node` in the chosen child tree."""
        pointers = self.pointers[side]
        if pointers is None:
            return None
        target = pointers[node]
        return None if target < 0 else target


class InducedDecomposition:
    """Balanced binary hierarchy of induced trees sharing one range-successor structure."""

    def __init__(self, root: InducedTree, trees: List[InducedTree]):
        self.root = root
        self.trees = trees

    @property
    def depth(self) -> int:
        """Deepest level; the root is level 0."""
        return max(t.level for t in self.trees)

    @property
    def level_count(self) -> int:
        """ceil(log2 m) for a root over m >= 2 positions."""
        return self.depth + 1

    @property
    def total_nodes(self) -> int:
        return sum(t.tree.node_count for t in self.trees)

    def levels(self) -> List[List[InducedTree]]:
        out: List[List[InducedTree]] = [[] for _ in range(self.depth + 1)]
        for t in self.trees:
            out[t.level].append(t)
        return out


def _induce(index: TextIndex, rmq: RangeMin, cropped: np.ndarray, window: Tuple[int, int]) -> SuffixTree:
    ranks = index.isa[cropped]
    lcp = np.zeros(cropped.size, dtype=np.int64)
    if cropped.size > 1:
        lcp[1:] = rmq.query(ranks[:-1] + 1, ranks[1:])
    tree = build_tree(index.padded, cropped.tolist(), lcp.tolist(), window, induced=True)
    first = ranks[np.asarray(tree.lo, dtype=np.int64)]
    last = ranks[np.asarray(tree.hi, dtype=np.int64)]
    tree.glo = first.tolist()
    tree.ghi = last.tolist()
    return tree


def _link(parent: InducedTree, child: InducedTree, side: int) -> None:
    a, b = child.interval
    leaves = parent.cropped
    inside = np.zeros(leaves.size + 1, dtype=np.int64)
    np.cumsum((leaves >= a) & (leaves <= b), out=inside[1:])
    ptree = parent.tree
    first = inside[np.asarray(ptree.lo, dtype=np.int64)].tolist()
    upto = inside[np.asarray(ptree.hi, dtype=np.int64) + 1].tolist()
    ctree = child.tree
    by_interval = {(ctree.lo[u], ctree.hi[u]): u for u in range(ctree.node_count)}
    pointers = [-1] * ptree.node_count
    for v in range(ptree.node_count):
        if upto[v] > first[v]:
            pointers[v] = by_interval[(first[v], upto[v] - 1)]
    parent.pointers[side] = pointers


def build_decomposition(
    index: TextIndex,
    layer_factory: Optional[LayerFactory] = None,
    cutoff: int = 64,
    layer_root: bool = False,
) -> InducedDecomposition:
    """
    Decompose the suffix tree of `index` over positions 0..n (sentinel included).

    Trees with more than `cutoff` leaves (and the root when `layer_root` is set)
    get a query layer from `layer_factory(tree, size)`.
    """
    rmq = RangeMin(np.asarray(index.lcp, dtype=np.int64))
    root = InducedTree(index.tree, 0, index.sa)
    trees = [root]
    queue = deque([root])
    while queue:
        node = queue.popleft()
        if layer_factory is not None and (node.size > cutoff or (node is root and layer_root)):
            node.layer = layer_factory(node.tree, node.size)
        a, b = node.interval
        if b - a <= 1:
            continue
        c = node.split
        for side, (lo, hi) in ((LEFT, (a, c)), (RIGHT, (c + 1, b))):
            cropped = node.cropped[(node.cropped >= lo) & (node.cropped <= hi)]
            child = InducedTree(_induce(index, rmq, cropped, (lo, hi)), node.level + 1, cropped)
            node.children[side] = child
            _link(node, child, side)
            trees.append(child)
            queue.append(child)
    decomposition = InducedDecomposition(root, trees)
    logger.debug(
        f"Decomposition: trees={len(trees)}, depth={decomposition.depth}, nodes={decomposition.total_nodes}"
    )
    return decomposition
