"""Two-party protocols for sliding-window order statistics.

Alice holds ``A[0:N/2]`` and Bob holds ``A[N/2:N]``. Parties only see each
other's data through :class:`Transcript` messages, and both write to one
shared single-pass output stream. Bits are charged per integer sent:
``ceil(log2(R+1))`` per value, ``ceil(log2(N+1))`` per index and
``ceil(log2(N))`` per control item (round headers, bracket and candidate
ids).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

from .model import OutputTape, ProblemInstance, RunMetrics

log = logging.getLogger(__name__)

ALICE = "alice"
BOB = "bob"


class ProtocolError(ValueError):
    pass


class InvalidRounds(ProtocolError):
    pass


class WindowTooLarge(ProtocolError):
    pass


class ValueOutOfRange(ProtocolError):
    pass


def value_bits(r: int) -> int:
    return math.ceil(math.log2(r + 1))


def index_bits(n: int) -> int:
    return math.ceil(math.log2(n + 1))


def control_bits(n: int) -> int:
    return max(1, math.ceil(math.log2(n)))


def encode_values(values: Sequence[int], indices: Sequence[int], r: int, n: int) -> int:
    """Bit size of a payload of values in ``[0, r]`` and positions in ``[0, n]``."""
    for v in values:
        if not 0 <= v <= r:
            raise ValueOutOfRange(f"value {v} outside [0, {r}]")
    return len(values) * value_bits(r) + len(indices) * index_bits(n)


@dataclass
class Message:
    round: int
    sender: str
    kind: str
    payload: dict
    value_bits: int
    bits: int

    def record(self) -> tuple[int, str, str, int]:
        return self.round, self.sender, self.kind, self.bits


class Transcript:
    def __init__(self, n: int, r: int):
        self.n = n
        self.r = r
        self.messages: list[Message] = []
        self.extra_round = False

    @property
    def rounds(self) -> int:
        return len(self.messages)

    @property
    def total_bits(self) -> int:
        return sum(m.bits for m in self.messages)

    @property
    def value_bits(self) -> int:
        """Bits spent on input values only, without index or control charges."""
        return sum(m.value_bits for m in self.messages)

    def send(self, sender: str, kind: str, payload: dict, values: Sequence[int] = (),
             indices: Sequence[int] = (), control: int = 1) -> dict:
        if self.messages and self.messages[-1].sender == sender:
            raise ProtocolError(f"{sender} sent twice in a row")
        vbits = encode_values(values, (), self.r, self.n)
        bits = encode_values(values, indices, self.r, self.n) + control * control_bits(self.n)
        self.messages.append(Message(self.rounds + 1, sender, kind, payload, vbits, bits))
        return payload

    def records(self) -> list[tuple[int, str, str, int]]:
        return [m.record() for m in self.messages]


class SharedOutput:
    """Single-pass shared output stream; neither party can read it."""

    def __init__(self, windows: int):
        self._tape = OutputTape(windows)
        self._tape.begin_pass()
        self.authors: list[str | None] = [None] * windows

    def write(self, party: str, window_start: int, value: int) -> None:
        self._tape.emit(window_start, value)
        self.authors[window_start] = party

    def finalize(self) -> list[int]:
        return self._tape.finalize()

    @property
    def log(self):
        return self._tape.log


@dataclass
class ProtocolResult:
    outputs: list[int]
    transcript: Transcript
    authors: list[str | None]
    details: dict = field(default_factory=dict)

    def metrics(self) -> RunMetrics:
        return RunMetrics(output_passes=1, comm_bits=self.transcript.total_bits,
                          rounds=self.transcript.rounds)


def _check_halves(instance: ProblemInstance) -> int:
    n, k = instance.n, instance.k
    if n % 2:
        raise WindowTooLarge(f"N must be even, got {n}")
    if k > n // 2:
        raise WindowTooLarge(f"need K <= N/2, got K={k}, N={n}")
    return n // 2


def smallest_base(target: int, exponent: int) -> int:
    """Smallest integer D >= 2 with D**exponent >= target."""
    d = max(2, int(round(target ** (1.0 / exponent))) - 1)
    while d > 2 and (d - 1) ** exponent >= target:
        d -= 1
    while d ** exponent < target:
        d += 1
    return d


def split_points(lo: int, hi: int, parts: int) -> list[int]:
    """Interior points cutting ``(lo, hi]`` into at most ``parts`` pieces."""
    width = hi - lo
    if width <= 1:
        return []
    step = -(-width // parts)
    return list(range(lo + step, hi, step))


def narrow(lo: int, hi: int, points: Sequence[int], reached: Sequence[bool]) -> tuple[int, int]:
    """Shrink ``(lo, hi]`` around the first point where ``reached`` turns true."""
    for q, ok in zip(points, reached):
        if ok:
            return lo, q
        lo = q
    return lo, hi


# --------------------------------------------------------------------------
# minimum protocol
#
# With h = N/2, a window starting at i = h - t (0 < t <= K) consists of the last
# t elements of Alice's half and the first K - t of Bob's. The minimum lies with
# Alice iff suffix_min(t) <= prefix_min(K - t); that predicate is monotone in t
# and the parties search for its threshold t*.


class _MinParty:
    def __init__(self, side: str, values: Sequence[int], h: int, k: int):
        self.side = side
        self.values = tuple(values)
        self.h = h
        self.k = k

    def boundary_min(self, t: int) -> int:
        """Own contribution to the crossing window with ``t`` Alice elements."""
        if self.side == ALICE:
            return min(self.values[self.h - t:])
        return min(self.values[:self.k - t])

    def window_part_min(self, i: int) -> int:
        h, k = self.h, self.k
        if self.side == ALICE:
            return min(self.values[i:min(i + k, h)])
        return min(self.values[max(i, h) - h:i + k - h])

    def alice_reaches(self, t: int, their_min: int) -> bool:
        mine = self.boundary_min(t)
        return mine <= their_min if self.side == ALICE else their_min <= mine


def run_smin_protocol(instance: ProblemInstance, p: int) -> ProtocolResult:
    if p < 3 or p % 2 == 0:
        raise InvalidRounds(f"round count must be odd and >= 3, got {p}")
    h = _check_halves(instance)
    n, k = instance.n, instance.k
    d = smallest_base(k + 2, p)
    alice = _MinParty(ALICE, instance.values[:h], h, k)
    bob = _MinParty(BOB, instance.values[h:], h, k)
    transcript = Transcript(n, instance.r)
    out = SharedOutput(instance.windows)

    lo, hi = 0, k  # t* in (lo, hi]
    sender, receiver = alice, bob
    for m in range(1, p):
        points = split_points(lo, hi, d)
        minima = [sender.boundary_min(t) for t in points]
        msg = transcript.send(sender.side, "boundary-minima",
                              {"bracket": (lo, hi), "points": points, "minima": minima},
                              values=minima)
        reached = [receiver.alice_reaches(t, x) for t, x in zip(msg["points"], msg["minima"])]
        lo, hi = narrow(*msg["bracket"], msg["points"], reached)
        sender, receiver = receiver, sender

    # Alice answers every window holding at least hi of her elements, then
    # ships her suffix minima for the unresolved part of the bracket.
    for i in range(0, h - hi + 1):
        out.write(ALICE, i, alice.window_part_min(i))
    tail = list(range(lo + 1, hi))
    suffix = [alice.boundary_min(t) for t in tail]
    msg = transcript.send(ALICE, "final-suffix-minima",
                          {"bracket": (lo, hi), "suffix_minima": dict(zip(tail, suffix))},
                          values=suffix)

    known = msg["suffix_minima"]
    i_last = h - hi
    for i in range(h - hi + 1, instance.windows):
        t = h - i
        own = bob.window_part_min(i)
        if t in known:
            if known[t] <= own:
                i_last = max(i_last, i)
            own = min(own, known[t])
        out.write(BOB, i, own)
    return ProtocolResult(out.finalize(), transcript, out.authors,
                          {"D": d, "i_last": i_last})


# --------------------------------------------------------------------------
# rank-l protocol


def merged_configuration(alice_low: Sequence[int], bob_low: Sequence[int], l: int) -> set[int]:
    """Ranks in ``1..l`` held by Bob, given each side's sorted smallest values.

    On equal values Alice's element ranks first since her indices are smaller.
    """
    conf = set()
    i = j = 0
    for rank in range(1, l + 1):
        if j < len(bob_low) and (i >= len(alice_low) or bob_low[j] < alice_low[i]):
            conf.add(rank)
            j += 1
        else:
            i += 1
    return conf


def g_from_configuration(conf: set[int], l: int) -> int:
    return len(conf) + sum(1 for x in conf if x <= l - 1)


class _RankParty:
    def __init__(self, side: str, values: Sequence[int], h: int, k: int, l: int, d: int):
        self.side = side
        self.values = tuple(values)
        self.h, self.k, self.l, self.d = h, k, l, d
        self.brackets: dict[int, tuple[int, int]] = {}
        self.sizes: dict[int, int] = {}
        self.crossings: list[int] = []

    def part(self, i: int) -> list[int]:
        """Own slice of the window starting at ``i``."""
        h, k = self.h, self.k
        if self.side == ALICE:
            return list(self.values[i:min(i + k, h)])
        return list(self.values[max(i, h) - h:max(i + k - h, 0)])

    def low(self, i: int) -> list[int]:
        return sorted(self.part(i))[:self.l]

    def configuration(self, i: int, their_low: Sequence[int]) -> set[int]:
        mine = self.low(i)
        if self.side == ALICE:
            return merged_configuration(mine, their_low, self.l)
        return merged_configuration(their_low, mine, self.l)

    def search_points(self) -> list[int]:
        return sorted({q for lo, hi in self.brackets.values() for q in split_points(lo, hi, self.d)})

    def narrow_all(self, points: Sequence[int], their_lows: dict[int, list[int]]) -> None:
        g = {q: g_from_configuration(self.configuration(q, their_lows[q]), self.l) for q in points}
        for v, (lo, hi) in self.brackets.items():
            inside = [q for q in points if lo < q < hi]
            self.brackets[v] = narrow(lo, hi, inside, [g[q] >= v for q in inside])

    def size_at(self, i: int) -> int:
        best = 0
        for c in sorted(self.sizes):
            if c <= i:
                best = self.sizes[c]
        return best

    def answer(self, i: int) -> int:
        size = self.size_at(i)
        rank = self.l - size if self.side == ALICE else size
        part = sorted(self.part(i))
        if not 1 <= rank <= len(part):
            raise AssertionError(f"{self.side}: rank {rank} invalid for window {i}")
        return part[rank - 1]


def run_ksmin_protocol(instance: ProblemInstance, p: int, l: int | None = None) -> ProtocolResult:
    l = instance.l if l is None else l
    if not 1 <= l <= instance.k:
        raise ProtocolError(f"need 1 <= l <= K, got l={l}")
    if p < 2 * l + 2:
        raise InvalidRounds(f"need at least 2l+2 = {2 * l + 2} rounds, got {p}")
    h = _check_halves(instance)
    n, k = instance.n, instance.k
    search_rounds = p - 2 * l
    d = smallest_base(k, search_rounds)
    alice = _RankParty(ALICE, instance.values[:h], h, k, l, d)
    bob = _RankParty(BOB, instance.values[h:], h, k, l, d)
    transcript = Transcript(n, instance.r)
    out = SharedOutput(instance.windows)
    targets = list(range(1, 2 * l))
    for party in (alice, bob):
        party.brackets = {v: (h - k, h) for v in targets}  # g(lo) < v <= g(hi)
    trace: list[dict[int, tuple[int, int]]] = [dict(alice.brackets)]

    # 1. parallel bracket search for the first window where g reaches each v
    sender, receiver = alice, bob
    for m in range(search_rounds):
        points = sender.search_points()
        lows = {q: sender.low(q) for q in points}
        msg = transcript.send(sender.side, "search",
                              {"brackets": dict(sender.brackets), "lows": lows},
                              values=[x for q in points for x in lows[q]],
                              control=1 + len(targets))
        receiver.brackets = dict(msg["brackets"])
        receiver.narrow_all(sorted(msg["lows"]), msg["lows"])
        trace.append(dict(receiver.brackets))
        sender, receiver = receiver, sender

    # 2. candidates reach Bob, Bob ships his side of each candidate window
    if sender is alice:
        transcript.extra_round = True
        log.info("search ended with Alice holding the candidates; spending an extra round")
        cands = sorted({hi for _, hi in alice.brackets.values()})
        msg = transcript.send(ALICE, "candidates", {"brackets": dict(alice.brackets)},
                              indices=cands)
        bob.brackets = dict(msg["brackets"])
    candidates = {v: hi for v, (lo, hi) in bob.brackets.items()}
    distinct = sorted(set(candidates.values()))
    lows_at = {c: (bob.low(c), bob.low(c - 1)) for c in distinct}
    msg = transcript.send(BOB, "candidate-lows", {"candidates": candidates, "lows": lows_at},
                          values=[x for c in distinct for part in lows_at[c] for x in part],
                          indices=distinct)

    crossings = []
    sizes = {}
    for c, (bob_now, bob_prev) in msg["lows"].items():
        now = merged_configuration(alice.low(c), bob_now, l)
        prev = merged_configuration(alice.low(c - 1), bob_prev, l)
        if (l in now) != (l in prev):
            crossings.append(c)
        if len(now) != len(prev):
            sizes[c] = len(now)
    alice.sizes = sizes
    alice.crossings = crossings = sorted(crossings)

    # 3-5. alternate output turns, handing over at each crossing
    edges = [0] + crossings + [instance.windows]
    turns = 2 * l
    party = alice
    for t in range(turns):
        if t < len(edges) - 1:
            for i in range(edges[t], edges[t + 1]):
                out.write(party.side, i, party.answer(i))
        if t == turns - 1:
            break
        if t == 0:
            flat = [x for c in sorted(sizes) for x in (c, sizes[c])]
            msg = transcript.send(ALICE, "crossings",
                                  {"crossings": crossings, "sizes": dict(sizes)},
                                  indices=crossings + flat)
            bob.crossings = list(msg["crossings"])
            bob.sizes = dict(msg["sizes"])
        else:
            transcript.send(party.side, "handoff", {})
        party = bob if party is alice else alice

    return ProtocolResult(out.finalize(), transcript, out.authors, {
        "D": d,
        "search_rounds": search_rounds,
        "candidates": candidates,
        "crossings": crossings,
        "extra_round": transcript.extra_round,
        "brackets": trace,
    })
