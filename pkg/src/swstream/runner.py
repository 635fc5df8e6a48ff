"""Algorithm registry shared by the CLI, scripts and acceptance tests."""
from __future__ import annotations

from dataclasses import dataclass, field

from .comm import run_ksmin_protocol, run_smin_protocol
from .ksmin import run_ksmin
from .model import ProblemInstance, RunMetrics, Tapes
from .oracle import brute_ksmin, first_mismatch
from .smin import run_baseline, run_small_integer, run_two_pass

STREAMING = {
    "baseline": run_baseline,
    "two-pass": run_two_pass,
    "small-int": run_small_integer,
    "ksmin": run_ksmin,
}
PROTOCOLS = ("comm-smin", "comm-ksmin")
ALGORITHMS = tuple(STREAMING) + PROTOCOLS


@dataclass
class RunResult:
    outputs: list[int]
    metrics: RunMetrics
    tape_log: list[tuple[int, int]] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    mismatch: int | None = None


def default_rounds(algo: str, l: int) -> int:
    return 3 if algo == "comm-smin" else 2 * l + 3


def solve(algo: str, instance: ProblemInstance, rounds: int | None = None,
          verify: bool = True) -> RunResult:
    """Run ``algo`` on ``instance``; with ``verify`` compare against the oracle."""
    if algo in STREAMING:
        tapes = Tapes.for_instance(instance)
        metrics = STREAMING[algo](instance, tapes)
        result = RunResult(tapes.output.finalize(), metrics, list(tapes.output.log))
        expected_rank = instance.l
    elif algo in PROTOCOLS:
        if rounds is None:
            rounds = default_rounds(algo, instance.l)
        if algo == "comm-smin":
            res = run_smin_protocol(instance, rounds)
            expected_rank = 1
        else:
            res = run_ksmin_protocol(instance, rounds)
            expected_rank = instance.l
        details = dict(res.details)
        details["transcript"] = res.transcript.records()
        details["value_bits"] = res.transcript.value_bits
        result = RunResult(res.outputs, res.metrics(), [], details)
    else:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
    if verify:
        expected = brute_ksmin(instance.values, instance.k, expected_rank)
        result.mismatch = first_mismatch(expected, result.outputs)
        result.metrics.verified = result.mismatch is None
    return result
