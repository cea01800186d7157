"""
Text and query workload generators, plus the log-log cost fit used by bench.
"""
import math
import string
from typing import List, Optional, Sequence

import numpy as np

from models import QueryLine, QueryMode
from oracle import oracle_pairs

ALPHABET = string.ascii_lowercase.encode("ascii")


def random_text(n: int, sigma: int, rng: np.random.Generator) -> bytes:
    """n symbols drawn uniformly from the first sigma lowercase letters."""
    if not 1 <= sigma <= len(ALPHABET):
        raise ValueError(f"sigma must be in 1..{len(ALPHABET)}, got {sigma}")
    symbols = np.frombuffer(ALPHABET[:sigma], dtype=np.uint8)
    return rng.choice(symbols, size=n).tobytes()


def periodic_text(n: int, period: int, rng: np.random.Generator, sigma: int = 2) -> bytes:
    """A random word of length `period` repeated to length n."""
    unit = random_text(max(1, period), sigma, rng)
    reps = n // len(unit) + 1
    return (unit * reps)[:n]


def random_pattern(text: bytes, rng: np.random.Generator, max_len: int = 4, present: float = 0.8) -> bytes:
    """A substring of text with probability `present`, otherwise a random (often absent) string."""
    length = int(rng.integers(1, max_len + 1))
    if text and rng.random() < present:
        length = min(length, len(text))
        start = int(rng.integers(0, len(text) - length + 1))
        return text[start: start + length]
    return random_text(length, 26, rng)


def sample_queries(
    text: bytes,
    count: int,
    rng: np.random.Generator,
    modes: Sequence[QueryMode] = ("exists", "count", "report"),
    same_pattern: float = 0.15,
) -> List[QueryLine]:
    """Random script lines over text; alpha and beta drawn from [0, n]."""
    n = len(text)
    lines = []
    for _ in range(count):
        p1 = random_pattern(text, rng)
        p2 = p1 if rng.random() < same_pattern else random_pattern(text, rng)
        alpha, beta = (int(v) for v in rng.integers(0, n + 1, size=2))
        lines.append(QueryLine(mode=modes[int(rng.integers(0, len(modes)))], p1=p1, p2=p2, alpha=alpha, beta=beta))
    return lines


def sample_tight_exists(
    text: bytes, count: int, rng: np.random.Generator, max_len: Optional[int] = None, tries: int = 50,
) -> List[QueryLine]:
    """
    Exists lines with alpha 0 and beta below the smallest consecutive distance of
    the two patterns.

    Every answer is "no", and an index must rule out each candidate it holds; for
    the one-sided index that is a scan of the cluster-local leaves, since the
    boundary minimum distance can never be smaller than the patterns' own. Both
    patterns are substrings of the text. By default pattern lengths stay within
    max(2, half of log_sigma(n)), so a pattern tends to occur sqrt(n) times or
    more and the cost follows the cluster size rather than the occurrence
    count. Gives up after `tries` draws per line.
    """
    n = len(text)
    lines: List[QueryLine] = []
    if n < 2:
        return lines
    if max_len is None:
        sigma = max(2, len(set(text)))
        max_len = max(2, int(math.log(n, sigma) / 2))
    for _ in range(count * tries):
        if len(lines) == count:
            break
        p1 = random_pattern(text, rng, max_len=max_len, present=1.0)
        p2 = random_pattern(text, rng, max_len=max_len, present=1.0)
        closest = min((pair.distance for pair in oracle_pairs(text, p1, p2)), default=n)
        if closest < 2:
            continue
        beta = int(rng.integers(1, closest))
        lines.append(QueryLine(mode="exists", p1=p1, p2=p2, alpha=0, beta=beta))
    return lines


def fit_exponent(ns: Sequence[float], costs: Sequence[float]) -> float:
    """Least-squares slope of log(cost) against log(n)."""
    xs = np.log(np.asarray(ns, dtype=np.float64))
    ys = np.log(np.maximum(np.asarray(costs, dtype=np.float64), 1.0))
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
