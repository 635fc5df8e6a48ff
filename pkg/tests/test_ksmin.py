from hypothesis import given
import pytest

from conftest import instances
from swstream.ksmin import anchor_starts, block_length, ksmin_plan, run_ksmin
from swstream.model import InvalidInstance, ProblemInstance, Tapes, passes_strictly_increasing
from swstream.oracle import brute_ksmin, brute_select


@given(inst=instances(max_n=60, max_l=5))
def test_matches_oracle(inst):
    tapes = Tapes.for_instance(inst)
    m = run_ksmin(inst, tapes)
    assert tapes.output.finalize() == brute_ksmin(inst.values, inst.k, inst.l)
    assert m.input_passes == inst.l + 1
    assert 1 <= m.output_passes <= inst.l
    assert passes_strictly_increasing(tapes.output.log)
    assert tapes.meter.current == 0


@given(inst=instances(max_n=60, max_l=4))
def test_intervals_hold_their_windows(inst):
    plan = ksmin_plan(inst)
    k, l = inst.k, inst.l
    assert plan.anchors[0] == 0 and plan.anchors[-1] == inst.windows - 1
    for blk in plan.blocks:
        assert 1 <= blk.out_pass - 1 <= l
        for i in range(blk.start, blk.stop):
            hit = brute_select(inst.values, i, i + k - 1, l)
            assert blk.a <= hit <= blk.b


def test_block_length():
    assert block_length(100, 1) == 10
    assert block_length(101, 1) == 11
    assert block_length(100, 4) == 5
    assert anchor_starts(10, 4) == [0, 4, 8, 9]
    assert anchor_starts(9, 4) == [0, 4, 8]


def test_rank_override_and_limits():
    inst = ProblemInstance((4, 1, 3, 2, 0), 3, 4)
    tapes = Tapes.for_instance(inst.with_rank(2))
    run_ksmin(inst, tapes, l=2)
    assert tapes.output.finalize() == brute_ksmin(inst.values, 3, 2)
    with pytest.raises(InvalidInstance):
        run_ksmin(inst, l=4)
