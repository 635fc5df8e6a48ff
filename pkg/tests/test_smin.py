from hypothesis import given
import pytest

from conftest import instances
from swstream.instances import gen_random
from swstream.model import InvalidInstance, ProblemInstance, Tapes, passes_strictly_increasing
from swstream.oracle import brute_change_count, brute_ksmin
from swstream.smin import (bucket_count, run_baseline, run_small_integer, run_two_pass,
                           sample_layout, small_integer_plan, two_pass_plan)

RUNNERS = [run_baseline, run_two_pass, run_small_integer]


def _run(fn, inst):
    tapes = Tapes.for_instance(inst)
    metrics = fn(inst, tapes)
    return tapes, metrics


@pytest.mark.parametrize("fn", RUNNERS)
@given(inst=instances(max_n=60))
def test_matches_oracle(fn, inst):
    if fn is run_small_integer and inst.r == 0:
        return
    tapes, metrics = _run(fn, inst)
    assert tapes.output.finalize() == brute_ksmin(inst.values, inst.k)
    assert passes_strictly_increasing(tapes.output.log)
    assert metrics.output_passes == 1
    assert metrics.input_passes == (1 if fn is run_baseline else 2)
    assert tapes.meter.current == 0


@pytest.mark.parametrize("fn", RUNNERS)
def test_rejects_rank_above_one(fn, small_instance):
    with pytest.raises(InvalidInstance):
        fn(small_instance.with_rank(2))


def test_small_integer_needs_positive_r():
    with pytest.raises(InvalidInstance):
        run_small_integer(ProblemInstance((0, 0), 1, 0))


def test_baseline_space_bounded_by_window():
    inst = ProblemInstance(tuple(range(20)), 5, 19)
    _, m = _run(run_baseline, inst)
    assert m.peak_words <= 2 * inst.k


@given(inst=instances(max_n=60))
def test_two_pass_sample_minima(inst):
    plan = two_pass_plan(inst)
    stride, starts = sample_layout(inst.windows)
    assert plan.starts == starts and plan.stride == stride
    assert len(starts) ** 2 >= inst.windows
    for s, f, low in zip(plan.starts, plan.f, plan.low):
        window = inst.values[s:s + inst.k]
        assert low == min(window)
        assert f == s + window.index(low)


@given(inst=instances(max_n=60))
def test_bucket_list_marks_changes(inst):
    if inst.r == 0:
        return
    plan = small_integer_plan(inst)
    p = bucket_count(inst.n, inst.k, inst.r)
    assert plan.buckets == p
    lows = [min(p * v // inst.r, p - 1) for v in brute_ksmin(inst.values, inst.k)]
    expected = [(0, lows[0])] + [(i, lows[i]) for i in range(1, len(lows)) if lows[i] != lows[i - 1]]
    assert plan.entries == expected


def test_two_pass_space_grows_like_sqrt():
    small = _run(run_two_pass, gen_random(2500, 1250, 2500, seed=3))[1].peak_words
    big = _run(run_two_pass, gen_random(40000, 20000, 40000, seed=3))[1].peak_words
    assert 2.5 < big / small < 6


def test_change_count_bound_on_sorted_runs():
    values = tuple([3, 2, 1, 0] * 10)
    assert brute_change_count(values, 4) <= 2 * 3 * 10 + 6
