"""Instance generators: uniform random inputs and the two lower-bound families."""
from __future__ import annotations

import random

from .model import ProblemInstance


class InvalidParams(ValueError):
    pass


def gen_random(n: int, k: int, r: int, l: int = 1, seed: int = 0) -> ProblemInstance:
    if not 1 <= l <= k <= n or r < 0:
        raise InvalidParams(f"bad parameters n={n} k={k} r={r} l={l}")
    rng = random.Random(seed)
    return ProblemInstance(tuple(rng.randint(0, r) for _ in range(n)), k, r, l)


def hard_min_bob(k: int, m: int, r: int, i: int) -> list[int]:
    """Bob's half: ``2*m*i`` copies of ``r`` followed by zeros."""
    return [r] * (2 * m * i) + [0] * (k - 2 * m * i)


def gen_hard_min(k: int, m: int, r: int, seed: int = 0, i: int | None = None) -> ProblemInstance:
    """Length ``2k`` input: sorted Alice half in ``[1, r-1]``, step-shaped Bob half."""
    if r < k or m < 1 or 2 * m > k:
        raise InvalidParams(f"need r >= k, m >= 1 and 2m <= k (k={k}, m={m}, r={r})")
    rng = random.Random(seed)
    steps = k // (2 * m)
    if i is None:
        i = rng.randint(0, steps)
    elif not 0 <= i <= steps:
        raise InvalidParams(f"i must lie in [0, {steps}]")
    alice = sorted(rng.randint(1, r - 1) for _ in range(k))
    return ProblemInstance(tuple(alice + hard_min_bob(k, m, r, i)), k, r, 1)


def majority_window(n: int, passes: int = 1) -> int:
    """Largest odd integer strictly below ``n / (2 * passes + 1)``."""
    k = -(-n // (2 * passes + 1)) - 1
    if k % 2 == 0:
        k -= 1
    if k < 1:
        raise InvalidParams(f"n={n} too small for {passes} passes")
    return k


def gen_hard_majority(n: int, seed: int = 0, k: int | None = None, passes: int = 1) -> ProblemInstance:
    """Boolean string whose consecutive pairs are ``01`` or ``10``.

    The window defaults to :func:`majority_window` and the rank to ``ceil(k/2)``,
    so the rank statistic is the window majority.
    """
    if n % 2:
        raise InvalidParams(f"n must be even, got {n}")
    rng = random.Random(seed)
    bits: list[int] = []
    for _ in range(n // 2):
        b = rng.randint(0, 1)
        bits += [b, 1 - b]
    if k is None:
        k = majority_window(n, passes)
    return ProblemInstance(tuple(bits), k, 1, (k + 1) // 2)
