"""
Suffix array, LCP array and suffix tree of a text terminated by a virtual sentinel.

Byte 0 is reserved as the sentinel and sorts before every other symbol. Positions
run over 0..n where n is the sentinel position; the suffix array is a permutation
of {0..n}.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from errors import EmptyPattern, SentinelInInput

logger = logging.getLogger(__name__)

SENTINEL = 0


class Locus(NamedTuple):
    node: int
    pattern_len: int


def suffix_array(text: bytes) -> np.ndarray:
    """Prefix doubling over text + sentinel. O(n log^2 n) with numpy sorts."""
    n = len(text) + 1
    rank = np.zeros(n, dtype=np.int64)
    if n > 1:
        rank[:-1] = np.frombuffer(text, dtype=np.uint8).astype(np.int64) + 1
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r_sorted = rank[sa]
        s_sorted = second[sa]
        boundaries = (r_sorted[1:] != r_sorted[:-1]) | (s_sorted[1:] != s_sorted[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.concatenate(([0], np.cumsum(boundaries)))
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            return sa.astype(np.int64)
        k <<= 1


def lcp_array(padded: bytes, sa: Sequence[int], isa: Sequence[int]) -> List[int]:
    """Kasai et al.; lcp[k] = LCP(sa[k-1], sa[k]) and lcp[0] = 0."""
    m = len(sa)
    lcp = [0] * m
    h = 0
    for i in range(m):
        r = isa[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while padded[i + h] == padded[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


class SuffixTree:
    """
    Compact trie over a lexicographically sorted set of suffixes.

    Node ids are dense and in preorder (root 0, children after parents, siblings
    in symbol order). `lo`/`hi` delimit the node's leaves inside `leaves`; `glo`/`ghi`
    delimit the same leaves inside the global suffix array. `window` is the range
    of text positions the tree was induced from.
    """

    def __init__(
        self,
        text: bytes,
        leaves: List[int],
        parent: List[int],
        depth: List[int],
        lo: List[int],
        hi: List[int],
        label: List[int],
        children: List[Dict[int, int]],
        window: Tuple[int, int],
    ):
        self.text = text
        self.leaves = leaves
        self.parent = parent
        self.depth = depth
        self.lo = lo
        self.hi = hi
        self.label = label
        self.children = children
        self.window = window
        self.glo = lo
        self.ghi = hi
        self.leaf_ids = [0] * len(leaves)
        for v, lab in enumerate(label):
            if lab >= 0:
                self.leaf_ids[lo[v]] = v

    root = 0

    @property
    def node_count(self) -> int:
        return len(self.parent)

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    def is_leaf(self, v: int) -> bool:
        return self.label[v] >= 0

    def leaf_positions(self, v: int) -> List[int]:
        return self.leaves[self.lo[v]: self.hi[v] + 1]

    def string(self, v: int) -> bytes:
        """str(v); leaf strings end with the sentinel byte."""
        p = self.leaves[self.lo[v]]
        return self.text[p: p + self.depth[v]]

    def sa_range(self, v: int) -> Tuple[int, int]:
        """Inclusive interval of the global suffix array below v."""
        return self.glo[v], self.ghi[v]

    def locus(self, pattern: bytes) -> Optional[Locus]:
        """Minimum-depth node whose string has `pattern` as a prefix."""
        if not pattern:
            raise EmptyPattern()
        if SENTINEL in pattern:
            return None
        m = len(pattern)
        text = self.text
        v = self.root
        matched = 0
        while True:
            d = self.depth[v]
            p = self.leaves[self.lo[v]]
            upto = d if d < m else m
            if upto > matched and text[p + matched: p + upto] != pattern[matched:upto]:
                return None
            if upto == m:
                return Locus(v, m)
            matched = d
            nxt = self.children[v].get(pattern[d])
            if nxt is None:
                return None
            v = nxt


def build_tree(
    text: bytes,
    leaves: List[int],
    lcp: Sequence[int],
    window: Tuple[int, int],
    induced: bool = False,
) -> SuffixTree:
    """
    Left-to-right stack construction from sorted suffixes and adjacent LCPs.

    `text` is padded with the sentinel. With `induced` set, a single suffix
    yields a one-node tree instead of a root with one leaf.
    """
    total = len(text)
    m = len(leaves)
    parent: List[int] = []
    depth: List[int] = []
    lo: List[int] = []
    hi: List[int] = []
    label: List[int] = []

    def new_node(d: int, first: int, lab: int) -> int:
        parent.append(-1)
        depth.append(d)
        lo.append(first)
        hi.append(first)
        label.append(lab)
        return len(parent) - 1

    if m == 1 and induced:
        root = new_node(total - leaves[0], 0, leaves[0])
    else:
        root = new_node(min(lcp[1:m]) if m > 1 else 0, 0, -1)
        stack = [root]
        for k in range(m):
            if k:
                l = lcp[k]
                while depth[stack[-1]] > l:
                    last = stack.pop()
                    hi[last] = k - 1
                    if depth[stack[-1]] >= l:
                        parent[last] = stack[-1]
                    else:
                        w = new_node(l, lo[last], -1)
                        parent[last] = w
                        stack.append(w)
            stack.append(new_node(total - leaves[k], k, leaves[k]))
        while len(stack) > 1:
            last = stack.pop()
            hi[last] = m - 1
            parent[last] = stack[-1]
        hi[root] = m - 1

    return _preorder(text, leaves, parent, depth, lo, hi, label, root, window)


def _preorder(text, leaves, parent, depth, lo, hi, label, root, window) -> SuffixTree:
    count = len(parent)
    kids: List[List[int]] = [[] for _ in range(count)]
    for v in range(count):
        if parent[v] >= 0:
            kids[parent[v]].append(v)
    order: List[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        if kids[v]:
            kids[v].sort(key=lo.__getitem__)
            stack.extend(reversed(kids[v]))
    new_id = [0] * count
    for idx, v in enumerate(order):
        new_id[v] = idx

    n_parent = [-1 if parent[v] < 0 else new_id[parent[v]] for v in order]
    n_depth = [depth[v] for v in order]
    n_lo = [lo[v] for v in order]
    n_hi = [hi[v] for v in order]
    n_label = [label[v] for v in order]
    children: List[Dict[int, int]] = [{} for _ in range(count)]
    for c in range(1, count):
        p = n_parent[c]
        children[p][text[leaves[n_lo[c]] + n_depth[p]]] = c
    return SuffixTree(text, leaves, n_parent, n_depth, n_lo, n_hi, n_label, children, window)


class TextIndex:
    """Suffix array, inverse suffix array, LCP array and suffix tree of one text."""

    def __init__(self, text: bytes, sa: np.ndarray):
        self.text = text
        self.n = len(text)
        self.padded = text + bytes([SENTINEL])
        self.sa = sa
        self.sa_list: List[int] = sa.tolist()
        isa = np.empty_like(sa)
        isa[sa] = np.arange(len(sa), dtype=sa.dtype)
        self.isa = isa
        self.isa_list: List[int] = isa.tolist()
        self.lcp = lcp_array(self.padded, self.sa_list, self.isa_list)
        self.tree = build_tree(self.padded, self.sa_list, self.lcp, (0, self.n))

    def locus(self, pattern: bytes) -> Optional[Locus]:
        return self.tree.locus(pattern)

    def sa_range(self, node: int) -> Tuple[int, int]:
        return self.tree.lo[node], self.tree.hi[node]

    def occurrences(self, pattern: bytes) -> List[int]:
        loc = self.locus(pattern)
        if loc is None:
            return []
        return sorted(self.tree.leaf_positions(loc.node))


def build_text_index(text: bytes) -> TextIndex:
    """Build all suffix structures of `text`; rejects the sentinel byte."""
    text = bytes(text)
    pos = text.find(bytes([SENTINEL]))
    if pos >= 0:
        raise SentinelInInput(pos)
    idx = TextIndex(text, suffix_array(text))
    logger.debug(f"Built text index: n={idx.n}, nodes={idx.tree.node_count}")
    return idx


def locus(idx: TextIndex, pattern: bytes) -> Optional[Locus]:
    return idx.locus(pattern)


def occurrences(idx: TextIndex, pattern: bytes) -> List[int]:
    return idx.occurrences(pattern)
