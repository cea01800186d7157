"""Test helpers: reference suffix arrays, seeded corpora, query shorthand."""
from typing import List

import numpy as np

from models import GapQuery
from workload import periodic_text, random_text


def naive_suffix_array(text: bytes) -> List[int]:
    padded = text + b"\x00"
    return sorted(range(len(padded)), key=lambda p: padded[p:])


def random_corpus(seed: int, count: int, max_n: int) -> List[bytes]:
    """Mixed random and periodic texts over alphabets of size 2, 4 and 26."""
    rng = np.random.default_rng(seed)
    texts = []
    for k in range(count):
        n = int(rng.integers(1, max_n + 1))
        sigma = (2, 4, 26)[k % 3]
        if k % 4 == 3:
            texts.append(periodic_text(n, int(rng.integers(1, 6)), rng, sigma=min(sigma, 4)))
        else:
            texts.append(random_text(n, sigma, rng))
    return texts


def query(p1: bytes, p2: bytes, alpha: int, beta: int) -> GapQuery:
    return GapQuery(p1=p1, p2=p2, alpha=alpha, beta=beta)
