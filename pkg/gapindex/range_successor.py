"""
Orthogonal range successor / predecessor over an integer array.

A wavelet matrix over the value universe answers both queries in O(log U)
level steps. Every query bumps a shared counter so callers can audit query cost.
"""
import logging
import threading
from typing import List, Optional, Sequence

import numpy as np

from errors import BadRange, DuplicateValue

logger = logging.getLogger(__name__)


class OrsIndex:
    """Range successor/predecessor structure with a thread-safe query counter."""

    def __init__(self, array: Sequence[int]):
        values = np.asarray(array, dtype=np.int64)
        if values.size and values.min() < 0:
            raise ValueError(f"Range-successor values must be non-negative, got {int(values.min())}")
        if values.size:
            uniq, counts = np.unique(values, return_counts=True)
            if uniq.size != values.size:
                raise DuplicateValue(int(uniq[np.argmax(counts > 1)]))
        self.length = int(values.size)
        self.universe = int(values.max()) + 1 if values.size else 1
        self.levels = max(1, (self.universe - 1).bit_length())
        self.top = (1 << self.levels) - 1
        self._ones: List[List[int]] = []
        self._zeros: List[int] = []
        cur = values
        for lvl in range(self.levels):
            bits = (cur >> (self.levels - 1 - lvl)) & 1
            prefix = np.zeros(self.length + 1, dtype=np.int64)
            np.cumsum(bits, out=prefix[1:])
            self._ones.append(prefix.tolist())
            self._zeros.append(self.length - int(prefix[-1]))
            cur = np.concatenate((cur[bits == 0], cur[bits == 1]))
        self._count = 0
        self._lock = threading.Lock()
        self.last_steps = 0

    def query_count(self) -> int:
        return self._count

    def reset_count(self) -> None:
        with self._lock:
            self._count = 0

    def _tick(self) -> None:
        with self._lock:
            self._count += 1

    def _check(self, lo: int, hi: int) -> None:
        if lo < 0 or lo > hi or hi >= self.length:
            raise BadRange(lo, hi, self.length)

    def range_successor(self, lo: int, hi: int, x: int) -> Optional[int]:
        """Minimum A[k] > x over k in [lo, hi], or None."""
        self._tick()
        if self.length == 0:
            return None
        self._check(lo, hi)
        target = x + 1
        if target > self.top:
            self.last_steps = 0
            return None
        return self._next_ge(lo, hi + 1, max(target, 0))

    def range_predecessor(self, lo: int, hi: int, x: int) -> Optional[int]:
        """Maximum A[k] < x over k in [lo, hi], or None."""
        self._tick()
        if self.length == 0:
            return None
        self._check(lo, hi)
        target = x - 1
        if target < 0:
            self.last_steps = 0
            return None
        return self._prev_le(lo, hi + 1, min(target, self.top))

    def _next_ge(self, s: int, e: int, x: int) -> Optional[int]:
        levels = self.levels
        ones = self._ones
        zeros = self._zeros
        steps = 0
        val = 0
        cand = None
        found = True
        for lvl in range(levels):
            steps += 1
            row = ones[lvl]
            os_, oe = row[s], row[e]
            one_s, one_e = zeros[lvl] + os_, zeros[lvl] + oe
            if (x >> (levels - 1 - lvl)) & 1:
                s, e, val = one_s, one_e, (val << 1) | 1
            else:
                if one_e > one_s:
                    cand = (lvl + 1, one_s, one_e, (val << 1) | 1)
                s, e, val = s - os_, e - oe, val << 1
            if s >= e:
                found = False
                break
        if found:
            self.last_steps = steps
            return x
        if cand is None:
            self.last_steps = steps
            return None
        lvl, s, e, val = cand
        for level in range(lvl, levels):
            steps += 1
            row = ones[level]
            os_, oe = row[s], row[e]
            if (e - oe) > (s - os_):
                s, e, val = s - os_, e - oe, val << 1
            else:
                s, e, val = zeros[level] + os_, zeros[level] + oe, (val << 1) | 1
        self.last_steps = steps
        return val

    def _prev_le(self, s: int, e: int, x: int) -> Optional[int]:
        levels = self.levels
        ones = self._ones
        zeros = self._zeros
        steps = 0
        val = 0
        cand = None
        found = True
        for lvl in range(levels):
            steps += 1
            row = ones[lvl]
            os_, oe = row[s], row[e]
            zero_s, zero_e = s - os_, e - oe
            if (x >> (levels - 1 - lvl)) & 1:
                if zero_e > zero_s:
                    cand = (lvl + 1, zero_s, zero_e, val << 1)
                s, e, val = zeros[lvl] + os_, zeros[lvl] + oe, (val << 1) | 1
            else:
                s, e, val = zero_s, zero_e, val << 1
            if s >= e:
                found = False
                break
        if found:
            self.last_steps = steps
            return x
        if cand is None:
            self.last_steps = steps
            return None
        lvl, s, e, val = cand
        for level in range(lvl, levels):
            steps += 1
            row = ones[level]
            os_, oe = row[s], row[e]
            if oe > os_:
                s, e, val = zeros[level] + os_, zeros[level] + oe, (val << 1) | 1
            else:
                s, e, val = s - os_, e - oe, val << 1
        self.last_steps = steps
        return val


def build_ors(array: Sequence[int]) -> OrsIndex:
    return OrsIndex(array)


def range_successor(ors: OrsIndex, lo: int, hi: int, x: int) -> Optional[int]:
    return ors.range_successor(lo, hi, x)


def range_predecessor(ors: OrsIndex, lo: int, hi: int, x: int) -> Optional[int]:
    return ors.range_predecessor(lo, hi, x)


def query_count(ors: OrsIndex) -> int:
    return ors.query_count()


def reset_count(ors: OrsIndex) -> None:
    ors.reset_count()
