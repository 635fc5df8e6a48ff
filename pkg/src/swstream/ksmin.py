"""Sliding-window l-th smallest in l+1 input passes and at most l output passes.

Pass 1 fills one capped rank store per block anchor. Each later pass rebuilds
the block intervals from those stores, then replays the stream keeping
per-window stores only for blocks whose interval covers the current index.
Block ``i`` is answered in pass ``p`` when the right end of its interval is
the ``(p-1)``-th smallest index of the right anchor's lowset.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .model import InvalidInstance, ProblemInstance, RunMetrics, Tapes
from .primitives import CappedRankStore

PLAN_WORDS = 4  # a, b, d and output pass per block


class MissingBoundaryStore(KeyError):
    pass


@dataclass
class Block:
    start: int  # first window start
    stop: int  # one past the last window start
    left: int  # anchor window start for the left boundary
    right: int  # anchor window start for the right boundary
    a: int
    b: int
    d: int
    out_pass: int


@dataclass
class BlockPlanK:
    block_len: int
    anchors: list[int]
    blocks: list[Block]


def block_length(n: int, l: int) -> int:
    return math.isqrt(-(-n // l) - 1) + 1  # ceil(sqrt(n / l))


def anchor_starts(windows: int, block_len: int) -> list[int]:
    anchors = list(range(0, windows, block_len))
    if anchors[-1] != windows - 1:
        anchors.append(windows - 1)
    return anchors


def _g(store_indices: list[int], l: int, b: int) -> int:
    """g_b for a window given its rank-ordered lowset indices."""
    upper = sum(1 for x in store_indices[:l] if x > b)
    lower = sum(1 for x in store_indices[:l - 1] if x > b)
    return upper + lower


def plan_blocks(stores: dict[int, CappedRankStore], n: int, k: int, l: int,
                block_len: int) -> BlockPlanK:
    windows = n - k + 1
    anchors = anchor_starts(windows, block_len)
    for a in anchors:
        if a not in stores:
            raise MissingBoundaryStore(a)
    blocks = []
    for start in range(0, windows, block_len):
        stop = min(start + block_len, windows)
        right = min(start + block_len, windows - 1)
        left_idx = stores[start].indices()
        right_idx = stores[right].indices()
        a = b = left_idx[l - 1]
        while a > 0 and _g(left_idx, l, a - 1) < _g(right_idx, l, a - 1):
            a -= 1
        while b < n - 1 and _g(left_idx, l, b) < _g(right_idx, l, b):
            b += 1
        upper_a = sum(1 for x in left_idx[:l - 1] if x > a - 1)
        upper_b = sum(1 for x in left_idx[:l - 1] if x > b)
        by_position = sorted(right_idx)
        if b not in by_position:
            raise AssertionError(f"interval end {b} not in right anchor lowset")
        blocks.append(Block(start, stop, start, right, a, b, upper_a - upper_b,
                            by_position.index(b) + 2))
    return BlockPlanK(block_len, anchors, blocks)


def _first_pass(tapes: Tapes, k: int, l: int, anchors: list[int]) -> dict[int, CappedRankStore]:
    stores = {a: CappedRankStore(l, tapes.meter) for a in anchors}
    order = list(anchors)
    for j, v in tapes.input.begin_pass():
        # anchors whose window [a, a+k) contains j
        lo = bisect_left(order, j - k + 1)
        hi = bisect_right(order, j)
        for t in range(lo, hi):
            stores[order[t]].insert(j, v)
    return stores


def ksmin_plan(instance: ProblemInstance) -> BlockPlanK:
    """Run only the first pass and build the block plan."""
    n, k, l = instance.n, instance.k, instance.l
    tapes = Tapes.for_instance(instance)
    blen = block_length(n, l)
    anchors = anchor_starts(instance.windows, blen)
    stores = _first_pass(tapes, k, l, anchors)
    return plan_blocks(stores, n, k, l, blen)


def run_ksmin(instance: ProblemInstance, tapes: Tapes | None = None,
              l: int | None = None) -> RunMetrics:
    if l is not None:
        instance = instance.with_rank(l)
    tapes = tapes or Tapes.for_instance(instance)
    n, k, l = instance.n, instance.k, instance.l
    if not 1 <= l <= k:
        raise InvalidInstance(f"need 1 <= l <= k, got l={l}")
    meter, out = tapes.meter, tapes.output
    windows = instance.windows
    blen = block_length(n, l)
    anchors = anchor_starts(windows, blen)
    stores = _first_pass(tapes, k, l, anchors)
    store_cap = (4 * l - 2) * blen

    for p in range(2, l + 2):
        plan = plan_blocks(stores, n, k, l, blen)
        blocks = plan.blocks
        meter.adjust(PLAN_WORDS * len(blocks))
        opening: dict[int, list[int]] = {}
        closing: dict[int, list[int]] = {}
        for bi, blk in enumerate(blocks):
            if blk.a < blk.b:
                opening.setdefault(blk.a, []).append(bi)
            closing.setdefault(blk.b, []).append(bi)
        live: dict[int, list[CappedRankStore]] = {}
        started = False
        for j, v in tapes.input.begin_pass():
            for bi in opening.get(j, ()):
                blk = blocks[bi]
                live[bi] = [CappedRankStore(l, meter) for _ in range(blk.start, blk.stop)]
            assert sum(len(s) for s in live.values()) <= store_cap
            for bi, window_stores in live.items():
                blk = blocks[bi]
                first = max(blk.start, j - k + 1)
                last = min(blk.stop - 1, j)
                for t in range(first, last + 1):
                    window_stores[t - blk.start].insert(j, v)
            for bi in closing.get(j, ()):
                blk = blocks[bi]
                window_stores = live.pop(bi, None)
                if blk.out_pass == p:
                    if not started:
                        out.begin_pass()
                        started = True
                    for t in range(blk.start, blk.stop):
                        value = v if window_stores is None else window_stores[t - blk.start].kth(blk.d + 1)[1]
                        out.emit(t, value)
                for s in window_stores or ():
                    s.release()
        assert not live
        meter.adjust(-PLAN_WORDS * len(blocks))
    for s in stores.values():
        s.release()
    return RunMetrics.from_tapes(tapes, instance.r)
