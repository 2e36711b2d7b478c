"""Event sequences: data model, text I/O and a planted-pattern generator."""

from __future__ import annotations

import bisect
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np


class SequenceParseError(ValueError):
    """Raised for a malformed line in a sequence file."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class SequenceOrderError(SequenceParseError):
    """Raised when time stamps decrease in file order."""


class SequenceEvent(NamedTuple):
    id: int
    label: str
    ts: int


@dataclass(frozen=True, eq=False)
class Sequence:
    """An id-ordered collection of events.

    Events are stored positionally; ``events[k]`` has ``id == k + 1`` unless the
    sequence was built from a subset (see :func:`subsequence`), in which case
    ids are kept from the parent sequence.
    """

    events: tuple[SequenceEvent, ...]
    _by_label: dict = field(init=False, repr=False)
    _label_ts: dict = field(init=False, repr=False)

    def __post_init__(self):
        ids = set()
        prev = None
        for ev in self.events:
            if ev.id in ids:
                raise ValueError(f"duplicate event id {ev.id}")
            ids.add(ev.id)
            if prev is not None and (ev.id <= prev.id or ev.ts < prev.ts):
                raise ValueError(f"events {prev} and {ev} violate id/time order")
            prev = ev
        by_label = defaultdict(list)
        for pos, ev in enumerate(self.events):
            by_label[ev.label].append(pos)
        object.__setattr__(self, "_by_label", dict(by_label))
        object.__setattr__(self, "_label_ts",
                           {lab: [self.events[p].ts for p in pos] for lab, pos in by_label.items()})

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __eq__(self, other) -> bool:
        return isinstance(other, Sequence) and self.events == other.events

    def __hash__(self) -> int:
        return hash(self.events)

    @property
    def alphabet(self) -> list[str]:
        """Distinct labels in ascending order."""
        return sorted(self._by_label)

    @property
    def timestamps(self) -> np.ndarray:
        return np.fromiter((ev.ts for ev in self.events), dtype=np.int64, count=len(self.events))

    def positions(self, label: str) -> list[int]:
        """Positions (indices into ``events``) of events carrying ``label``."""
        return self._by_label.get(label, [])

    def positions_between(self, label: str, lo: int, hi: int) -> list[int]:
        """Positions of ``label`` events with ``lo <= ts <= hi``, in id order."""
        pos = self.positions(label)
        if not pos:
            return []
        keys = self._label_ts[label]
        a = bisect.bisect_left(keys, lo)
        b = bisect.bisect_right(keys, hi)
        return pos[a:b]

    def span(self) -> tuple[int, int] | None:
        if not self.events:
            return None
        return self.events[0].ts, self.events[-1].ts


def from_pairs(pairs: Iterable[tuple[int, str]]) -> Sequence:
    """Build a sequence from ``(ts, label)`` pairs, assigning ids 1..N in order."""
    return Sequence(tuple(SequenceEvent(k + 1, str(lab), int(ts)) for k, (ts, lab) in enumerate(pairs)))


def from_string(text: str) -> Sequence:
    """Shorthand notation: ``"ab(cd)"`` is a, b, then c and d simultaneously.

    Each character is a label; parentheses group simultaneous events.
    Time stamps are 1, 2, ... per group.
    """
    pairs = []
    ts = 0
    group = None
    for ch in text:
        if ch == "(":
            if group is not None:
                raise ValueError("nested group")
            group = []
        elif ch == ")":
            if group is None:
                raise ValueError("unbalanced ')'")
            ts += 1
            pairs.extend((ts, c) for c in group)
            group = None
        elif ch.isspace():
            continue
        elif group is not None:
            group.append(ch)
        else:
            ts += 1
            pairs.append((ts, ch))
    if group is not None:
        raise ValueError("unbalanced '('")
    return from_pairs(pairs)


def parse_sequence(text: str) -> Sequence:
    """Parse the ``<ts> <label>`` line format.

    Blank lines and lines starting with ``#`` are skipped. Time stamps must be
    non-decreasing; ids are assigned in file order starting from 1.
    """
    pairs = []
    last_ts = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SequenceParseError(lineno, f"expected '<ts> <label>', got {raw!r}")
        try:
            ts = int(parts[0])
        except ValueError:
            raise SequenceParseError(lineno, f"bad time stamp {parts[0]!r}") from None
        if last_ts is not None and ts < last_ts:
            raise SequenceOrderError(lineno, f"time stamp {ts} smaller than previous {last_ts}")
        last_ts = ts
        pairs.append((ts, parts[1]))
    return from_pairs(pairs)


def read_sequence(path) -> Sequence:
    with open(path, encoding="utf-8") as fh:
        return parse_sequence(fh.read())


def serialize_sequence(s: Sequence) -> str:
    return "".join(f"{ev.ts} {ev.label}\n" for ev in s.events)


def subsequence(s: Sequence, i: int, j: int) -> Sequence:
    """All events with ``i <= ts <= j``; ids and time stamps are preserved."""
    keys = [ev.ts for ev in s.events]
    a = bisect.bisect_left(keys, i)
    b = bisect.bisect_right(keys, j)
    return Sequence(s.events[a:b]) if a < b else Sequence(())


def gen_planted(n_nodes: int, reps: int, gap: int, noise_count: int, noise_alphabet_size: int,
                seed: int = 0) -> Sequence:
    """Sequence with ``reps`` copies of the pattern ``(s1 s2)(s3 s4)...`` plus uniform noise.

    Copy ``r`` puts labels ``s{2k-1}`` and ``s{2k}`` at time ``r*gap + k`` for
    ``k = 1..n_nodes``. Noise events get labels ``t1..t{noise_alphabet_size}``
    and time stamps in ``[1, reps*gap]``, both drawn uniformly.
    """
    if n_nodes < 1 or reps < 1 or gap < 1:
        raise ValueError("n_nodes, reps and gap must be positive")
    if noise_count < 0 or noise_alphabet_size < 0:
        raise ValueError("noise parameters must be non-negative")
    if noise_count > 0 and noise_alphabet_size == 0:
        raise ValueError("noise events need a non-empty noise alphabet")

    # (ts, is_noise, label) sorts pattern events before noise at equal ts
    rows = []
    for r in range(reps):
        for k in range(1, n_nodes + 1):
            ts = r * gap + k
            rows.append((ts, 0, f"s{2 * k - 1}"))
            rows.append((ts, 0, f"s{2 * k}"))
    if noise_count:
        rng = np.random.default_rng(seed)
        labels = rng.integers(1, noise_alphabet_size + 1, size=noise_count)
        stamps = rng.integers(1, reps * gap + 1, size=noise_count)
        rows.extend((int(t), 1, f"t{int(x)}") for t, x in zip(stamps, labels))
    rows.sort()
    return from_pairs((ts, lab) for ts, _, lab in rows)
