"""Simulated multi-pass streaming environment.

Input is read through an :class:`InputTape` one pass at a time, answers are
written to a write-once :class:`OutputTape`, and a :class:`SpaceMeter` tracks
live words. The tapes hold the whole array in memory; only the meter counts
as the algorithm's space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, asdict
from typing import Iterator, Sequence


class StreamError(Exception):
    """Base class for violations of the streaming discipline."""


class PassAlreadyOpen(StreamError):
    pass


class NoOpenPass(StreamError):
    pass


class DoubleWrite(StreamError):
    pass


class OutOfOrder(StreamError):
    pass


class OutOfRange(StreamError):
    pass


class IncompleteOutput(StreamError):
    pass


class NegativeLiveCount(StreamError):
    pass


class InvalidInstance(ValueError):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    values: tuple[int, ...]
    k: int
    r: int
    l: int = 1

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        n = len(self.values)
        if not 1 <= self.k <= n:
            raise InvalidInstance(f"need 1 <= k <= n, got k={self.k}, n={n}")
        if not 1 <= self.l <= self.k:
            raise InvalidInstance(f"need 1 <= l <= k, got l={self.l}, k={self.k}")
        if self.r < 0:
            raise InvalidInstance(f"r must be non-negative, got {self.r}")
        for i, v in enumerate(self.values):
            if not 0 <= v <= self.r:
                raise InvalidInstance(f"value {v} at index {i} outside [0, {self.r}]")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def windows(self) -> int:
        return self.n - self.k + 1

    def with_rank(self, l: int) -> "ProblemInstance":
        return ProblemInstance(self.values, self.k, self.r, l)

    def to_text(self) -> str:
        body = " ".join(str(v) for v in self.values)
        return f"{self.n} {self.k} {self.r} {self.l}\n{body}\n"

    @classmethod
    def from_text(cls, text: str) -> "ProblemInstance":
        tokens = text.split()
        if len(tokens) < 4:
            raise InvalidInstance("header must be 'N K R l'")
        try:
            n, k, r, l = (int(t) for t in tokens[:4])
            values = [int(t) for t in tokens[4:]]
        except ValueError as exc:
            raise InvalidInstance(f"non-integer token: {exc}") from None
        if len(values) != n:
            raise InvalidInstance(f"header says N={n} but {len(values)} values follow")
        return cls(tuple(values), k, r, l)


class InputPass:
    """One left-to-right scan of an :class:`InputTape`."""

    def __init__(self, tape: "InputTape"):
        self._tape = tape
        self.cursor = 0
        self.open = True

    def next_element(self) -> tuple[int, int] | None:
        if not self.open:
            raise NoOpenPass("pass already ended")
        values = self._tape._values
        if self.cursor >= len(values):
            self.open = False
            self._tape._current = None
            return None
        j = self.cursor
        self.cursor += 1
        return j, values[j]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        while True:
            item = self.next_element()
            if item is None:
                return
            yield item


class InputTape:
    def __init__(self, values: Sequence[int]):
        self._values = tuple(values)
        self.passes = 0
        self._current: InputPass | None = None

    @property
    def n(self) -> int:
        return len(self._values)

    def begin_pass(self) -> InputPass:
        if self._current is not None:
            raise PassAlreadyOpen(f"pass {self.passes} is still open")
        self.passes += 1
        self._current = InputPass(self)
        return self._current


class OutputTape:
    """Write-once output stream with explicit output passes.

    ``log`` keeps ``(pass_number, window_start)`` for every write so the
    in-pass ordering can be audited after a run.
    """

    def __init__(self, slots: int):
        if slots < 1:
            raise ValueError("output tape needs at least one slot")
        self.slots = slots
        self._values: list[int | None] = [None] * slots
        self.passes = 0
        self.last_written = -1
        self.log: list[tuple[int, int]] = []

    def begin_pass(self) -> None:
        self.passes += 1
        self.last_written = -1

    def emit(self, window_start: int, value: int) -> None:
        if self.passes == 0:
            raise NoOpenPass("no output pass has been started")
        if not 0 <= window_start < self.slots:
            raise OutOfRange(f"window {window_start} outside [0, {self.slots - 1}]")
        if self._values[window_start] is not None:
            raise DoubleWrite(f"window {window_start} already written")
        if window_start <= self.last_written:
            raise OutOfOrder(
                f"window {window_start} after {self.last_written} in output pass {self.passes}"
            )
        self._values[window_start] = value
        self.last_written = window_start
        self.log.append((self.passes, window_start))

    def written(self, window_start: int) -> bool:
        return self._values[window_start] is not None

    def finalize(self) -> list[int]:
        missing = [i for i, v in enumerate(self._values) if v is None]
        if missing:
            raise IncompleteOutput(f"{len(missing)} windows unwritten, first is {missing[0]}")
        return list(self._values)  # type: ignore[arg-type]


class SpaceMeter:
    """Live-word counter. One word is one stored value or index."""

    def __init__(self):
        self.current = 0
        self.peak = 0

    def adjust(self, delta: int) -> None:
        if self.current + delta < 0:
            raise NegativeLiveCount(f"live count would drop to {self.current + delta}")
        self.current += delta
        if self.current > self.peak:
            self.peak = self.current


@dataclass
class Tapes:
    input: InputTape
    output: OutputTape
    meter: SpaceMeter = field(default_factory=SpaceMeter)

    @classmethod
    def for_instance(cls, instance: ProblemInstance) -> "Tapes":
        return cls(InputTape(instance.values), OutputTape(instance.windows))


def word_bits(n: int, r: int) -> int:
    """Bits charged per metered word: enough for one index plus one value."""
    return math.ceil(math.log2(n + 1)) + math.ceil(math.log2(r + 1))


@dataclass
class RunMetrics:
    input_passes: int = 0
    output_passes: int = 0
    peak_words: int = 0
    peak_bits_estimate: int = 0
    comm_bits: int = 0
    rounds: int = 0
    verified: bool = False

    @classmethod
    def from_tapes(cls, tapes: Tapes, r: int) -> "RunMetrics":
        n = tapes.input.n
        peak = tapes.meter.peak
        return cls(
            input_passes=tapes.input.passes,
            output_passes=tapes.output.passes,
            peak_words=peak,
            peak_bits_estimate=peak * word_bits(n, r),
        )

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_dict(self) -> dict:
        return asdict(self)


def passes_strictly_increasing(log: Sequence[tuple[int, int]]) -> bool:
    """True if window indices strictly increase within every output pass."""
    last: dict[int, int] = {}
    for p, w in log:
        if w <= last.get(p, -1):
            return False
        last[p] = w
    return True
