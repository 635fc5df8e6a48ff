"""Reference semantics for ranks, lowsets, configurations and crossings.

Ranks order elements by value with ties going to the smaller index. Ranges
are inclusive ``[lo, hi]``; windows of length ``k`` start at ``i`` and cover
``[i, i + k - 1]``. These are plain quadratic-time helpers meant for
planning, checking and the protocol parties, not for streaming use.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class RankOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class WindowRange:
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"bad range [{self.lo}, {self.hi}]")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    @classmethod
    def window(cls, start: int, k: int) -> "WindowRange":
        return cls(start, start + k - 1)


def _check(A: Sequence[int], rng: WindowRange) -> None:
    if rng.hi >= len(A):
        raise IndexError(f"range [{rng.lo}, {rng.hi}] outside array of length {len(A)}")


def ranked_indices(A: Sequence[int], rng: WindowRange) -> list[int]:
    """Indices of ``A[lo..hi]`` sorted by rank."""
    _check(A, rng)
    return sorted(range(rng.lo, rng.hi + 1), key=lambda j: (A[j], j))


def rank_of(A: Sequence[int], i: int) -> int:
    if not 0 <= i < len(A):
        raise IndexError(f"index {i} outside array of length {len(A)}")
    return ranked_indices(A, WindowRange(0, len(A) - 1)).index(i) + 1


def select_index(A: Sequence[int], rng: WindowRange, l: int) -> int:
    if not 1 <= l <= len(rng):
        raise RankOutOfRange(f"rank {l} outside [1, {len(rng)}]")
    return ranked_indices(A, rng)[l - 1]


def lowset(A: Sequence[int], rng: WindowRange, l: int) -> set[int]:
    if not 1 <= l <= len(rng):
        raise RankOutOfRange(f"rank {l} outside [1, {len(rng)}]")
    return set(ranked_indices(A, rng)[:l])


def configuration(A: Sequence[int], l: int, b: int, rng: WindowRange) -> set[int]:
    """Ranks ``1..l`` of ``rng`` whose element sits at an index above ``b``.

    ``l == 0`` gives the empty set.
    """
    if l == 0:
        _check(A, rng)
        return set()
    if not 1 <= l <= len(rng):
        raise RankOutOfRange(f"rank {l} outside [1, {len(rng)}]")
    order = ranked_indices(A, rng)
    return {r for r in range(1, l + 1) if order[r - 1] > b}


def g_value(A: Sequence[int], l: int, b: int, window_start: int, k: int) -> int:
    if window_start < 0 or window_start + k > len(A):
        raise IndexError(f"window {window_start} of length {k} outside array")
    rng = WindowRange.window(window_start, k)
    return len(configuration(A, l, b, rng)) + len(configuration(A, l - 1, b, rng))


def crossing_set(A: Sequence[int], l: int, b: int, k: int) -> set[int]:
    """Window starts where the rank-``l`` element changes side of ``b``."""
    starts = range(len(A) - k + 1)
    inside = [l in configuration(A, l, b, WindowRange.window(i, k)) for i in starts]
    return {i for i in range(1, len(inside)) if inside[i] != inside[i - 1]}


def sorted_lowset(A: Sequence[int], window_start: int, k: int, l: int) -> list[int]:
    return sorted(lowset(A, WindowRange.window(window_start, k), l))
