"""
Set disjointness answered through gapped existence queries.

Sets are split into frequency classes; each class becomes a fixed-frequency
instance (padded with dummy sets) and is encoded as a text over {0,1,$} in
which sets i and j intersect iff codewords w_i, w_j form a consecutive pair of
distance at most the block size.
"""
import logging
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from errors import DummySetQueried, GapIndexError, NonUniformFrequency, ScriptError
from indexes import GapIndex, build_index
from models import FixedFreqInstance, GapQuery, ReductionString, SetSystem

logger = logging.getLogger(__name__)

SEPARATOR = "$"


def _next_pow2(value: int) -> int:
    return 1 << max(0, value - 1).bit_length()


def bucketize(system: SetSystem) -> List[FixedFreqInstance]:
    """One fixed-frequency instance per class 2^(j-1) <= f_e < 2^j, j = 1..log2(m)+1."""
    if system.total_size == 0:
        return []
    m = max(2, _next_pow2(system.m))
    sets = system.sets + [[] for _ in range(m - system.m)]
    freq = system.frequencies()
    instances = []
    for j in range(1, m.bit_length() + 1):
        low, high = 1 << (j - 1), 1 << j
        members = [[e for e in s if low <= freq[e] < high] for s in sets]
        dummies: List[List[str]] = [[] for _ in range(low)]
        for e in sorted(e for e, f in freq.items() if low <= f < high):
            for d in range(high - freq[e]):
                dummies[d].append(e)
        instances.append(FixedFreqInstance(
            bucket=j,
            frequency=high,
            sets=members + dummies,
            parent=list(range(m)) + [None] * low,
        ))
    return instances


def codeword(set_id: int, length: int) -> str:
    return format(set_id, f"0{length}b")


def build_reduction(instance: FixedFreqInstance) -> ReductionString:
    """Per element: the codewords of its sets, each followed by $, then B copies of $."""
    f = instance.frequency
    freq: Dict[str, int] = {}
    for members in instance.sets:
        for e in members:
            freq[e] = freq.get(e, 0) + 1
    for e, got in freq.items():
        if got != f:
            raise NonUniformFrequency(e, got, f)
    length = max(1, (_next_pow2(len(instance.sets)) - 1).bit_length())
    words = [codeword(k, length) for k in range(len(instance.sets))]
    block = f * length + f
    containing: Dict[str, List[int]] = {e: [] for e in freq}
    for k, members in enumerate(instance.sets):
        for e in members:
            containing[e].append(k)
    parts = []
    for e in sorted(freq):
        parts.append("".join(words[k] + SEPARATOR for k in containing[e]))
        parts.append(SEPARATOR * block)
    return ReductionString(
        text="".join(parts).encode("ascii"),
        codewords=words,
        codeword_length=length,
        block_size=block,
        frequency=f,
        num_real=instance.num_real,
    )


def disjoint(rs: ReductionString, index: GapIndex, i: int, j: int) -> bool:
    """Sets i and j (0-based instance ids) share no element iff no close codeword pair exists."""
    if i == j:
        raise GapIndexError(f"Disjointness needs two distinct sets, got {i} twice")
    if i > j:
        i, j = j, i
    for k in (i, j):
        if k >= rs.num_real:
            raise DummySetQueried(k)
    query = GapQuery(
        p1=rs.codewords[i].encode("ascii"), p2=rs.codewords[j].encode("ascii"), alpha=0, beta=rs.block_size
    )
    return not index.exists(query)


def sets_disjoint(system: SetSystem, i: int, j: int) -> bool:
    return not set(system.sets[i]) & set(system.sets[j])


class DisjointnessIndex:
    """All frequency classes of a set system, each with its own gap index."""

    def __init__(self, system: SetSystem, kind: str = "count"):
        self.system = system
        self.kind = kind
        self.instances = bucketize(system)
        self.parts: List[Tuple[ReductionString, GapIndex]] = []
        for instance in self.instances:
            if instance.total_size == 0:
                continue
            rs = build_reduction(instance)
            self.parts.append((rs, build_index(kind, rs.text)))
            logger.debug(
                f"Class {instance.bucket}: f={rs.frequency}, B={rs.block_size}, |S|={len(rs.text)}"
            )
        logger.info(f"Built disjointness index: m={system.m}, N={system.total_size}, classes={len(self.parts)}")

    def disjoint(self, i: int, j: int) -> bool:
        """Original 0-based set ids; disjoint iff disjoint in every frequency class."""
        for k in (i, j):
            if not 0 <= k < self.system.m:
                raise GapIndexError(f"Set id {k + 1} outside 1..{self.system.m}")
        if i == j:
            raise GapIndexError(f"Disjointness needs two distinct sets, got {i + 1} twice")
        return all(disjoint(rs, index, i, j) for rs, index in self.parts)

    def verify(self, pairs: Optional[Iterable[Tuple[int, int]]] = None) -> List[Tuple[int, int]]:
        """Pairs where the index verdict differs from direct intersection."""
        if pairs is None:
            pairs = combinations(range(self.system.m), 2)
        return [(i, j) for i, j in pairs if self.disjoint(i, j) != sets_disjoint(self.system, i, j)]


def parse_set_system(text: str) -> SetSystem:
    """One set per line, whitespace-separated element ids; line k is set k."""
    sets = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        members = line.split()
        if len(set(members)) != len(members):
            raise ScriptError("set lists an element twice", line_no)
        sets.append(members)
    return SetSystem(sets=sets)
