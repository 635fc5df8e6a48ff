"""Brute-force ground truth.

Deliberately shares no code with the algorithm modules or ``order_math``:
ranks are computed by direct counting rather than sorting with a key.
"""
from __future__ import annotations

from typing import Sequence


class InvalidParams(ValueError):
    pass


def _params(A: Sequence[int], k: int, l: int = 1) -> None:
    if not 1 <= l <= k <= len(A):
        raise InvalidParams(f"need 1 <= l <= k <= n, got l={l}, k={k}, n={len(A)}")


def brute_rank(A: Sequence[int], lo: int, hi: int, i: int) -> int:
    """Rank of ``A[i]`` inside ``A[lo..hi]`` by counting."""
    return sum(1 for j in range(lo, hi + 1) if A[j] < A[i] or (A[j] == A[i] and j <= i))


def brute_select(A: Sequence[int], lo: int, hi: int, l: int) -> int:
    for i in range(lo, hi + 1):
        if brute_rank(A, lo, hi, i) == l:
            return i
    raise InvalidParams(f"no element of rank {l} in [{lo}, {hi}]")


def brute_lowset(A: Sequence[int], lo: int, hi: int, l: int) -> set[int]:
    return {i for i in range(lo, hi + 1) if brute_rank(A, lo, hi, i) <= l}


def brute_configuration(A: Sequence[int], lo: int, hi: int, l: int, b: int) -> set[int]:
    return {brute_rank(A, lo, hi, i) for i in range(max(lo, b + 1), hi + 1)
            if brute_rank(A, lo, hi, i) <= l}


def brute_g(A: Sequence[int], l: int, b: int, i: int, k: int) -> int:
    lo, hi = i, i + k - 1
    return len(brute_configuration(A, lo, hi, l, b)) + len(brute_configuration(A, lo, hi, l - 1, b))


def brute_ksmin(A: Sequence[int], k: int, l: int = 1) -> list[int]:
    """Rank-``l`` value of every length-``k`` window."""
    _params(A, k, l)
    out = []
    for i in range(len(A) - k + 1):
        window = list(A[i:i + k])
        if l == 1:
            out.append(min(window))
        else:
            window.sort()
            out.append(window[l - 1])
    return out


def brute_change_count(A: Sequence[int], k: int) -> int:
    lows = brute_ksmin(A, k, 1)
    return sum(1 for i in range(len(lows) - 1) if lows[i] != lows[i + 1])


def brute_crossings(A: Sequence[int], k: int, l: int, b: int) -> set[int]:
    _params(A, k, l)
    side = []
    for i in range(len(A) - k + 1):
        window = sorted((A[j], j) for j in range(i, i + k))
        side.append(window[l - 1][1] > b)
    return {i for i in range(1, len(side)) if side[i] != side[i - 1]}


def first_mismatch(expected: Sequence[int], got: Sequence[int]) -> int | None:
    """Index of the first differing window, or ``None`` if identical."""
    for i, (e, g) in enumerate(zip(expected, got)):
        if e != g:
            return i
    if len(expected) != len(got):
        return min(len(expected), len(got))
    return None
