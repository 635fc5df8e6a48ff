"""Sliding-window minimum in the multi-pass streaming model.

``run_baseline``      one pass, monotonic queue, O(min(K, R)) words.
``run_two_pass``      two passes, O(sqrt(N)) words via sampled minimizer positions.
``run_small_integer`` two passes, O(sqrt(NR/K)) words via bucketed minima.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import InvalidInstance, ProblemInstance, RunMetrics, Tapes
from .primitives import ENTRY_WORDS, MonotonicQueue


def _require_min(instance: ProblemInstance) -> None:
    if instance.l != 1:
        raise InvalidInstance(f"minimum algorithms need l=1, got l={instance.l}")


def run_baseline(instance: ProblemInstance, tapes: Tapes | None = None) -> RunMetrics:
    _require_min(instance)
    tapes = tapes or Tapes.for_instance(instance)
    k = instance.k
    q = MonotonicQueue(tapes.meter)
    tapes.output.begin_pass()
    for j, v in tapes.input.begin_pass():
        q.expire(j - k + 1)
        q.insert(j, v)
        if j >= k - 1:
            tapes.output.emit(j - k + 1, q.get_front()[1])
    q.clear()
    return RunMetrics.from_tapes(tapes, instance.r)


# --------------------------------------------------------------------------
# two-pass algorithm


@dataclass
class BlockPlanMin:
    """Sampled window starts with their minimizer index ``f`` and value ``low``."""

    starts: list[int]
    f: list[int]
    low: list[int]
    stride: int


def sample_layout(windows: int) -> tuple[int, list[int]]:
    """Stride and sampled window starts for ``windows`` windows."""
    count = math.isqrt(windows - 1) + 1 if windows > 1 else 1  # ceil(sqrt(W))
    stride = -(-windows // count)
    return stride, list(range(0, windows, stride))


def _first_pass_samples(tapes: Tapes, k: int, windows: int) -> BlockPlanMin:
    stride, starts = sample_layout(windows)
    s = len(starts)
    meter = tapes.meter
    meter.adjust(ENTRY_WORDS * s)
    # reg_idx/reg_val: running minimum of each sampled window, None until it starts.
    # For active samples, minima are non-decreasing in sample order because a
    # later sample has seen a suffix of what an earlier one has seen.
    reg_idx: list[int | None] = [None] * s
    reg_val: list[int | None] = [None] * s
    first_active = 0
    for j, v in tapes.input.begin_pass():
        last_active = min(j // stride, s - 1)
        while first_active < s and starts[first_active] + k - 1 < j:
            first_active += 1
        t = last_active
        while t >= first_active:
            cur = reg_val[t]
            if cur is not None and cur <= v:
                break
            reg_idx[t], reg_val[t] = j, v
            t -= 1
    return BlockPlanMin(starts, reg_idx, reg_val, stride)  # type: ignore[arg-type]


def two_pass_plan(instance: ProblemInstance) -> BlockPlanMin:
    """First pass only; exposed for inspecting the sample plan."""
    _require_min(instance)
    tapes = Tapes.for_instance(instance)
    return _first_pass_samples(tapes, instance.k, instance.windows)


def run_two_pass(instance: ProblemInstance, tapes: Tapes | None = None) -> RunMetrics:
    _require_min(instance)
    tapes = tapes or Tapes.for_instance(instance)
    n, k, windows = instance.n, instance.k, instance.windows
    meter, out = tapes.meter, tapes.output

    plan = _first_pass_samples(tapes, k, windows)
    starts, f, stride = plan.starts, plan.f, plan.stride
    s = len(starts)
    bounds = starts + [windows]

    reg_idx: list[int | None] = []
    reg_val: list[int | None] = []
    block = 0
    lo = hi = 0  # current block covers window starts [lo, hi)

    def open_block(b: int) -> None:
        nonlocal lo, hi, reg_idx, reg_val
        lo, hi = bounds[b], bounds[b + 1]
        reg_idx = [None] * (hi - lo)
        reg_val = [None] * (hi - lo)
        meter.adjust(ENTRY_WORDS * (hi - lo))

    def feed(j: int, v: int) -> None:
        # windows of the block containing j are starts in [max(lo, j-k+1), min(hi-1, j)]
        t = min(hi - 1, j)
        first = max(lo, j - k + 1)
        while t >= first:
            cur = reg_val[t - lo]
            if cur is not None and cur <= v:
                break
            reg_idx[t - lo], reg_val[t - lo] = j, v
            t -= 1

    def close_block() -> None:
        for t, val in enumerate(reg_val):
            if val is None:
                raise AssertionError(f"window {lo + t} never saw its minimum")
            out.emit(lo + t, val)
        meter.adjust(-ENTRY_WORDS * (hi - lo))

    out.begin_pass()
    open_block(0)
    live_cap = 2 * stride
    for j, v in tapes.input.begin_pass():
        while block + 1 < s and j == f[block + 1]:
            feed(j, v)
            close_block()
            block += 1
            open_block(block)
        feed(j, v)
        assert hi - lo <= live_cap
    close_block()
    meter.adjust(-ENTRY_WORDS * s)
    return RunMetrics.from_tapes(tapes, instance.r)


# --------------------------------------------------------------------------
# small-integer algorithm


def bucket_count(n: int, k: int, r: int) -> int:
    return max(1, min(r, round(math.sqrt(r * k / n))))


@dataclass
class ApproxMinList:
    """Changes of the window-minimum bucket from the first pass."""

    entries: list[tuple[int, int]]  # (window_start, bucket)
    buckets: int

    def increases(self) -> list[int]:
        e = self.entries
        return [e[t][0] for t in range(1, len(e)) if e[t][1] > e[t - 1][1]]


def _bucket_fn(p: int, r: int):
    return lambda v: min(p * v // r, p - 1)


def _first_pass_buckets(tapes: Tapes, k: int, p: int, r: int) -> ApproxMinList:
    bucket = _bucket_fn(p, r)
    meter = tapes.meter
    q = MonotonicQueue(meter)
    entries: list[tuple[int, int]] = []
    for j, v in tapes.input.begin_pass():
        q.expire(j - k + 1)
        q.insert(j, bucket(v))
        if j >= k - 1:
            b = q.get_front()[1]
            if not entries or entries[-1][1] != b:
                entries.append((j - k + 1, b))
                meter.adjust(ENTRY_WORDS)
    q.clear()
    return ApproxMinList(entries, p)


def small_integer_plan(instance: ProblemInstance) -> ApproxMinList:
    _require_min(instance)
    if instance.r < 1:
        raise InvalidInstance("small-integer algorithm needs r >= 1")
    p = bucket_count(instance.n, instance.k, instance.r)
    return _first_pass_buckets(Tapes.for_instance(instance), instance.k, p, instance.r)


def run_small_integer(instance: ProblemInstance, tapes: Tapes | None = None) -> RunMetrics:
    _require_min(instance)
    if instance.r < 1:
        raise InvalidInstance("small-integer algorithm needs r >= 1")
    tapes = tapes or Tapes.for_instance(instance)
    n, k, r = instance.n, instance.k, instance.r
    meter, out = tapes.meter, tapes.output
    p = bucket_count(n, k, r)
    bucket = _bucket_fn(p, r)
    queue_cap = -(-r // p) + 1

    approx = _first_pass_buckets(tapes, k, p, r)
    cuts = approx.increases()
    meter.adjust(len(cuts))
    meter.adjust(-ENTRY_WORDS * len(approx.entries))

    q = MonotonicQueue(meter)
    seg_start = 0
    nxt = 0  # position in cuts of the next segment boundary
    out.begin_pass()
    for j, v in tapes.input.begin_pass():
        q.expire(j - k + 1)
        if not q or bucket(v) <= bucket(q.get_front()[1]):
            q.insert(j, v)
        if q:
            assert bucket(q.get_front()[1]) == bucket(q.back()[1]), "queue spans buckets"
            assert len(q) <= queue_cap
        if j - k + 1 >= seg_start:
            out.emit(j - k + 1, q.get_front()[1])
        if nxt < len(cuts) and j == cuts[nxt] - 1:
            # Every element of the next K positions lies in a larger bucket than
            # A[j], so the remaining windows of this segment bottom out at or before j.
            for i in range(max(seg_start, j - k + 2), cuts[nxt]):
                q.expire(i)
                out.emit(i, q.get_front()[1])
            q.clear()
            seg_start = cuts[nxt]
            nxt += 1
    q.clear()
    meter.adjust(-len(cuts))
    return RunMetrics.from_tapes(tapes, r)
