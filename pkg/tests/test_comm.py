import math

from hypothesis import given, strategies as st
import pytest

from conftest import instances
from swstream.comm import (ALICE, BOB, InvalidRounds, ProtocolError, Transcript, ValueOutOfRange,
                           WindowTooLarge, merged_configuration, narrow, run_ksmin_protocol,
                           run_smin_protocol, smallest_base, split_points)
from swstream.model import DoubleWrite, ProblemInstance
from swstream.oracle import brute_crossings, brute_ksmin
from swstream.order_math import WindowRange, configuration


@given(inst=instances(max_n=60, even=True, half_window=True), p=st.sampled_from([3, 5, 7]))
def test_smin_protocol_matches_oracle(inst, p):
    res = run_smin_protocol(inst, p)
    assert res.outputs == brute_ksmin(inst.values, inst.k)
    assert res.transcript.rounds == p
    senders = [m.sender for m in res.transcript.messages]
    assert all(a != b for a, b in zip(senders, senders[1:]))


@given(inst=instances(max_n=60, even=True, half_window=True))
def test_smin_i_last(inst):
    res = run_smin_protocol(inst, 3)
    h, k = inst.n // 2, inst.k
    owners = []
    for i in range(inst.windows):
        window = inst.values[i:i + k]
        owners.append(i + window.index(min(window)) < h)
    expected = max((i for i, a in enumerate(owners) if a), default=-1)
    if expected >= 0:
        assert res.details["i_last"] == expected


@given(inst=instances(max_n=48, max_l=4, even=True, half_window=True), extra=st.integers(0, 3))
def test_ksmin_protocol_matches_oracle(inst, extra):
    p = 2 * inst.l + 2 + extra
    res = run_ksmin_protocol(inst, p)
    assert res.outputs == brute_ksmin(inst.values, inst.k, inst.l)
    assert res.transcript.rounds == p + (1 if res.details["extra_round"] else 0)
    h = inst.n // 2
    candidates = set(res.details["candidates"].values())
    assert brute_crossings(inst.values, inst.k, inst.l, h - 1) <= candidates
    assert set(res.details["crossings"]) == brute_crossings(inst.values, inst.k, inst.l, h - 1)


def test_ksmin_extra_round_logged(caplog):
    inst = ProblemInstance(tuple(range(16)), 4, 15, 1)
    with caplog.at_level("INFO"):
        res = run_ksmin_protocol(inst, 4)  # two search rounds end on Alice
    assert res.details["extra_round"]
    assert res.transcript.rounds == 5
    assert "extra round" in caplog.text


def test_bracket_trace_shrinks():
    inst = ProblemInstance(tuple((i * 7) % 11 for i in range(40)), 20, 10, 2)
    res = run_ksmin_protocol(inst, 7)
    trace = res.details["brackets"]
    for before, after in zip(trace, trace[1:]):
        for v in before:
            lo0, hi0 = before[v]
            lo1, hi1 = after[v]
            assert lo0 <= lo1 < hi1 <= hi0


def test_round_and_shape_errors():
    inst = ProblemInstance(tuple(range(10)), 5, 9)
    for p in (1, 2, 4):
        with pytest.raises(InvalidRounds):
            run_smin_protocol(inst, p)
    with pytest.raises(InvalidRounds):
        run_ksmin_protocol(inst.with_rank(2), 5)
    with pytest.raises(WindowTooLarge):
        run_smin_protocol(ProblemInstance(tuple(range(10)), 6, 9), 3)
    with pytest.raises(WindowTooLarge):
        run_smin_protocol(ProblemInstance(tuple(range(9)), 2, 9), 3)


def test_transcript_charges():
    t = Transcript(16, 15)
    t.send(ALICE, "x", {}, values=[1, 2], indices=[3])
    assert t.messages[0].bits == 2 * 4 + 5 + 4
    assert t.value_bits == 8
    with pytest.raises(ProtocolError):
        t.send(ALICE, "y", {})
    with pytest.raises(ValueOutOfRange):
        t.send(BOB, "y", {}, values=[16])


def test_shared_output_write_once():
    inst = ProblemInstance(tuple(range(8)), 2, 7)
    res = run_smin_protocol(inst, 3)
    assert set(res.authors) <= {ALICE, BOB}
    from swstream.comm import SharedOutput
    out = SharedOutput(2)
    out.write(ALICE, 0, 1)
    with pytest.raises(DoubleWrite):
        out.write(BOB, 0, 1)


@given(st.integers(1, 10**6), st.integers(1, 8))
def test_smallest_base(target, e):
    d = smallest_base(target, e)
    assert d ** e >= target
    assert d == 2 or (d - 1) ** e < target


@given(st.integers(0, 50), st.integers(1, 60), st.integers(2, 9))
def test_split_points_cover_bracket(lo, width, parts):
    hi = lo + width
    pts = split_points(lo, hi, parts)
    assert all(lo < q < hi for q in pts)
    edges = [lo] + pts + [hi]
    assert len(edges) - 1 <= parts
    widths = [b - a for a, b in zip(edges, edges[1:])]
    assert max(widths) <= math.ceil(width / parts)
    assert narrow(lo, hi, pts, [False] * len(pts)) == (edges[-2], hi)


@given(st.lists(st.integers(0, 5), min_size=2, max_size=20), st.integers(1, 4))
def test_merged_configuration(values, l):
    h = len(values) // 2
    A = values[:2 * h]
    if l > len(A):
        return
    conf = merged_configuration(sorted(A[:h])[:l], sorted(A[h:])[:l], l)
    assert conf == configuration(A, l, h - 1, WindowRange(0, len(A) - 1))
