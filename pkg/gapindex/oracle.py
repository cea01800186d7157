"""
Brute-force ground truth by direct scanning of the text.
"""
from typing import List

from errors import EmptyPattern
from models import ConsecutivePair, OracleResult


def naive_occurrences(text: bytes, pattern: bytes) -> List[int]:
    """All (possibly overlapping) start positions of pattern in text."""
    if not pattern:
        raise EmptyPattern()
    found = []
    pos = text.find(pattern)
    while pos >= 0:
        found.append(pos)
        pos = text.find(pattern, pos + 1)
    return found


def oracle_pairs(text: bytes, p1: bytes, p2: bytes) -> List[ConsecutivePair]:
    """Pairs (i, j): i a p1 occurrence and j the next position holding an occurrence of either pattern, which is a p2 occurrence."""
    first = set(naive_occurrences(text, p1))
    second = set(naive_occurrences(text, p2))
    merged = sorted(first | second)
    return [
        ConsecutivePair(p, q)
        for p, q in zip(merged, merged[1:])
        if p in first and q in second
    ]


def oracle_query(text: bytes, p1: bytes, p2: bytes, alpha: int, beta: int) -> OracleResult:
    pairs = oracle_pairs(text, p1, p2)
    return OracleResult(pairs=[p for p in pairs if alpha <= p.distance <= beta])
