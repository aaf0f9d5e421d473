"""Dynamic confirmation: sliding worst-case window and stop-and-hover envelope."""

from __future__ import annotations

import enum
import math
import threading
from collections import deque
from dataclasses import dataclass


class EmptyWindowError(LookupError):
    """No capability sample has been confirmed yet."""


class SlidingWindow:
    """Fixed-capacity FIFO of capability samples with O(1) worst-case query.

    Smaller is worse: the worst case of a deceleration capability is the
    minimum. A monotone deque of (seq, value) pairs keeps the running min.
    """

    def __init__(self, capacity: int = 400):
        self._lock = threading.Lock()
        self._entries: deque[tuple[int, float]] = deque()
        self._mins: deque[tuple[int, float]] = deque()
        self._seq = 0
        self._capacity = 0
        self.resize(capacity)

    @property
    def capacity(self) -> int:
        return self._capacity

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> list[float]:
        with self._lock:
            return [v for _, v in self._entries]

    def _evict_to(self, n: int) -> None:
        while len(self._entries) > n:
            seq, _ = self._entries.popleft()
            if self._mins and self._mins[0][0] == seq:
                self._mins.popleft()

    def resize(self, capacity: int) -> None:
        """Change the capacity; shrinking keeps the newest samples."""
        if int(capacity) != capacity or capacity <= 0:
            raise ValueError("capacity must be a positive integer")
        with self._lock:
            self._capacity = int(capacity)
            self._evict_to(self._capacity)

    def insert(self, sample: float) -> "SlidingWindow":
        sample = float(sample)
        if not math.isfinite(sample):
            raise ValueError(f"non-finite capability sample {sample!r}")
        with self._lock:
            item = (self._seq, sample)
            self._seq += 1
            self._entries.append(item)
            while self._mins and self._mins[-1][1] >= sample:
                self._mins.pop()
            self._mins.append(item)
            self._evict_to(self._capacity)
        return self

    def worst(self) -> float:
        with self._lock:
            if not self._mins:
                raise EmptyWindowError("window holds no confirmed samples")
            return self._mins[0][1]

    def worst_or(self, fallback: float) -> float:
        try:
            return self.worst()
        except EmptyWindowError:
            return fallback


def window_insert(w: SlidingWindow, sample: float) -> SlidingWindow:
    return w.insert(sample)


def window_worst(w: SlidingWindow) -> float:
    return w.worst()


def v_safe_max(a_max: float, L_max: float, D_stop_max: float) -> float:
    """Largest descent speed whose latency-plus-braking distance fits in ``D_stop_max``."""
    if a_max <= 0 or D_stop_max <= 0 or L_max < 0:
        raise ValueError("need a_max > 0, D_stop_max > 0, L_max >= 0")
    aL = a_max * L_max
    return math.sqrt(aL * aL + 2.0 * a_max * D_stop_max) - aL


def stopping_distance(v: float, a_max: float, L_max: float) -> float:
    if v < 0:
        raise ValueError("v is a speed magnitude")
    return v * L_max + v * v / (2.0 * a_max)


class Envelope(enum.Enum):
    INSIDE = "inside"
    VIOLATION = "violation"


@dataclass(frozen=True)
class EnvelopeParams:
    D_det: float
    D_stop_max: float = 25.0
    L_max: float = 0.15
    a_max: float = 1.34

    def __post_init__(self):
        if self.D_stop_max > self.D_det:
            raise ValueError(
                f"stopping budget {self.D_stop_max} m exceeds the detection range {self.D_det} m")
        if self.L_max < 0 or self.a_max <= 0 or self.D_stop_max <= 0:
            raise ValueError("need L_max >= 0, a_max > 0, D_stop_max > 0")

    def with_a_max(self, a_max: float) -> "EnvelopeParams":
        return EnvelopeParams(self.D_det, self.D_stop_max, self.L_max, a_max)

    @property
    def v_safe(self) -> float:
        return v_safe_max(self.a_max, self.L_max, self.D_stop_max)


def envelope_check(v: float, D_obs: float | None, params: EnvelopeParams) -> Envelope:
    """``D_obs=None`` means nothing detected: assume an obstacle just past ``D_det``."""
    budget = params.D_det if D_obs is None or D_obs > params.D_det else D_obs
    d = stopping_distance(abs(v), params.a_max, params.L_max)
    return Envelope.INSIDE if d <= budget else Envelope.VIOLATION


def envelope_curve(a_max: float, L_max: float, D_det: float, distances):
    """Max safe speed vs obstacle distance: the boundary of the envelope."""
    out = []
    for d in distances:
        budget = min(d, D_det)
        out.append(v_safe_max(a_max, L_max, budget) if budget > 0 else 0.0)
    return out
