"""Monotonic queue and capped rank store.

Both optionally charge a :class:`~swstream.model.SpaceMeter` two words per
live ``(index, value)`` entry.
"""
from __future__ import annotations

from bisect import insort
from collections import deque

from .model import SpaceMeter


class EmptyQueue(IndexError):
    pass


class RankOutOfRange(IndexError):
    pass


ENTRY_WORDS = 2


class MonotonicQueue:
    """Queue of ``(index, value)`` with strictly increasing values.

    Inserting evicts every back entry whose value is ``>=`` the new one, so
    among equal values the latest index survives.
    """

    def __init__(self, meter: SpaceMeter | None = None):
        self._q: deque[tuple[int, int]] = deque()
        self._meter = meter
        self.last_index = -1
        self.last_deleted = -1

    def __len__(self) -> int:
        return len(self._q)

    def __bool__(self) -> bool:
        return bool(self._q)

    def entries(self) -> list[tuple[int, int]]:
        return list(self._q)

    def insert(self, index: int, value: int) -> None:
        if index <= self.last_index:
            raise ValueError(f"index {index} not greater than previous {self.last_index}")
        self.last_index = index
        q = self._q
        evicted = 0
        while q and q[-1][1] >= value:
            q.pop()
            evicted += 1
        q.append((index, value))
        if self._meter is not None:
            self._meter.adjust(ENTRY_WORDS * (1 - evicted))

    def get_front(self) -> tuple[int, int]:
        if not self._q:
            raise EmptyQueue("monotonic queue is empty")
        return self._q[0]

    def back(self) -> tuple[int, int]:
        if not self._q:
            raise EmptyQueue("monotonic queue is empty")
        return self._q[-1]

    def delete_front(self) -> None:
        if not self._q:
            raise EmptyQueue("monotonic queue is empty")
        index, _ = self._q.popleft()
        self.last_deleted = index
        if self._meter is not None:
            self._meter.adjust(-ENTRY_WORDS)

    def expire(self, oldest_live: int) -> None:
        """Delete front entries with index below ``oldest_live``."""
        q = self._q
        while q and q[0][0] < oldest_live:
            self.delete_front()

    def clear(self) -> None:
        while self._q:
            self.delete_front()


class CappedRankStore:
    """Keeps the ``cap`` smallest ``(value, index)`` pairs seen, in rank order."""

    def __init__(self, cap: int, meter: SpaceMeter | None = None):
        if cap < 1:
            raise ValueError("cap must be at least 1")
        self.cap = cap
        self._items: list[tuple[int, int]] = []  # (value, index)
        self._meter = meter

    def __len__(self) -> int:
        return len(self._items)

    def insert(self, index: int, value: int) -> None:
        items = self._items
        key = (value, index)
        if len(items) == self.cap:
            if key >= items[-1]:
                return
            items.pop()
            insort(items, key)
            return
        insort(items, key)
        if self._meter is not None:
            self._meter.adjust(ENTRY_WORDS)

    def kth(self, i: int) -> tuple[int, int]:
        """The ``i``-th smallest entry (1-based) as ``(index, value)``."""
        if not 1 <= i <= len(self._items):
            raise RankOutOfRange(f"rank {i} outside [1, {len(self._items)}]")
        value, index = self._items[i - 1]
        return index, value

    def entries(self) -> list[tuple[int, int]]:
        return [(idx, val) for val, idx in self._items]

    def indices(self) -> list[int]:
        return [idx for _, idx in self._items]

    def release(self) -> None:
        if self._meter is not None:
            self._meter.adjust(-ENTRY_WORDS * len(self._items))
        self._items = []
