"""Instance sets of an episode and the operations the miner runs on them.

An instance maps every episode event to a sequence event. Rows are kept as
``(first, last, positions)`` where ``positions[k]`` is the index, in
``seq.events``, of the event that episode event ``k`` maps to. Sorting rows as
tuples orders them by first time stamp, then last, then the mapped ids.

Whenever several sequence events share a label and a time stamp, an instance
uses the ones with the smallest ids; this is the non-redundancy rule and it is
enforced while building rows rather than by filtering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .episode import PROPER, WEAK, Episode
from .sequence import Sequence


class InstanceAbortError(RuntimeError):
    """Raised when an instance set grows past the configured limit."""


@dataclass(frozen=True, eq=False)
class InstanceSet:
    seq: Sequence
    rho: int
    episode: Episode
    rows: tuple

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    @property
    def node_rep(self) -> tuple:
        """One episode event per node, used to read the node's time stamp."""
        rep = [None] * self.episode.n_nodes
        for k, n in enumerate(self.episode.node_of):
            if rep[n] is None:
                rep[n] = k
        return tuple(rep)

    def mappings(self) -> list:
        """Instances as tuples of sequence-event ids, in episode-event order."""
        ev = self.seq.events
        return [tuple(ev[p].id for p in pos) for _, _, pos in self.rows]

    def node_times(self) -> np.ndarray:
        """Array of shape (len(self), n_nodes) with each node's time stamp."""
        ev = self.seq.events
        rep = self.node_rep
        if not self.rows:
            return np.zeros((0, len(rep)), dtype=np.int64)
        return np.array([[ev[pos[k]].ts for k in rep] for _, _, pos in self.rows], dtype=np.int64)


def _check_limit(rows, limit, what):
    if limit is not None and len(rows) > limit:
        raise InstanceAbortError(f"instance set for {what} exceeds {limit} instances")


def _next_in_class(seq: Sequence, label: str, ts: int, used: tuple) -> int | None:
    """Smallest-id event of ``(label, ts)`` not already used, provided all smaller ones are."""
    cls = seq.positions_between(label, ts, ts)
    k = sum(1 for p in cls if p in used)
    return cls[k] if k < len(cls) else None


def build_singletons(seq: Sequence, label: str, rho: int) -> InstanceSet:
    if rho < 1:
        raise ValueError("window size must be at least 1")
    rows = []
    last_ts = None
    for p in seq.positions(label):
        ts = seq.events[p].ts
        if ts != last_ts:
            rows.append((ts, ts, (p,)))
            last_ts = ts
    return InstanceSet(seq, rho, Episode.from_nodes([[label]]), tuple(rows))


def augment_equal(I: InstanceSet, n: int, label: str, limit: int | None = None) -> InstanceSet:
    """Add an event labelled ``label`` to node ``n``."""
    seq = I.seq
    k_rep = I.node_rep[n]
    rows = []
    for first, last, pos in I.rows:
        t = seq.events[pos[k_rep]].ts
        p = _next_in_class(seq, label, t, pos)
        if p is not None:
            rows.append((first, last, pos + (p,)))
    episode = I.episode.add_event(n, label)
    _check_limit(rows, limit, episode)
    # first/last unchanged and the id vectors only grow, so the order holds
    return InstanceSet(seq, I.rho, episode, tuple(rows))


def augment(I: InstanceSet, label: str, limit: int | None = None) -> InstanceSet:
    """Add a new node holding a single event labelled ``label``."""
    seq = I.seq
    rho = I.rho
    rows = []
    for first, last, pos in I.rows:
        used = set(pos)
        prev_ts = None
        for p in seq.positions_between(label, last - rho + 1, first + rho - 1):
            ts = seq.events[p].ts
            if ts == prev_ts:
                continue
            prev_ts = ts
            q = _next_in_class(seq, label, ts, used)
            if q is not None:
                rows.append((min(first, ts), max(last, ts), pos + (q,)))
        if limit is not None and len(rows) > limit:
            break
    episode = I.episode.add_node(label)
    _check_limit(rows, limit, episode)
    rows.sort()
    return InstanceSet(seq, rho, episode, tuple(rows))


def _filter(I: InstanceSet, a: int, b: int, strict: bool) -> list:
    rep = I.node_rep
    ka, kb = rep[a], rep[b]
    ev = I.seq.events
    if strict:
        return [r for r in I.rows if ev[r[2][ka]].ts < ev[r[2][kb]].ts]
    return [r for r in I.rows if ev[r[2][ka]].ts <= ev[r[2][kb]].ts]


def filter_weak(I: InstanceSet, a: int, b: int) -> InstanceSet:
    """Instances with ``ts(a) <= ts(b)``; the episode gains the weak edge ``(a, b)``."""
    G = I.episode
    weak = G.weak if (a, b) in G.edges else G.weak | {(a, b)}
    return InstanceSet(I.seq, I.rho, G.with_edges(weak=weak), tuple(_filter(I, a, b, False)))


def filter_proper(I: InstanceSet, a: int, b: int) -> InstanceSet:
    """Instances with ``ts(a) < ts(b)``; the edge ``(a, b)`` becomes proper."""
    G = I.episode
    G = G.with_edges(weak=G.weak - {(a, b)}, proper=G.proper | {(a, b)})
    return InstanceSet(I.seq, I.rho, G, tuple(_filter(I, a, b, True)))


def support(I: InstanceSet) -> int:
    """Number of windows of size ``rho`` containing at least one instance."""
    rho = I.rho
    kept = []
    bound = None
    for first, last, _ in reversed(I.rows):
        if bound is None or last < bound:
            kept.append((first, last))
            bound = last
    kept.reverse()

    total = 0
    prev_first = None
    for first, last in kept:
        d = rho - (last - first)
        start = 1 + last - rho
        if prev_first is not None:
            d -= max(0, 1 + prev_first - start)
        total += d
        prev_first = first
    return total


def instance_closure(I: InstanceSet) -> Episode:
    """Episode with every ordering that holds in all instances of ``I``.

    The result may contain cycles of weak edges when two nodes always share a
    time stamp.
    """
    if not I.rows:
        raise ValueError("instance closure of an empty instance set is undefined")
    T = I.node_times()
    lt = np.all(T[:, :, None] < T[:, None, :], axis=0)
    le = np.all(T[:, :, None] <= T[:, None, :], axis=0)
    np.fill_diagonal(le, False)
    proper = {(int(a), int(b)) for a, b in zip(*np.nonzero(lt))}
    weak = {(int(a), int(b)) for a, b in zip(*np.nonzero(le & ~lt))}
    G = I.episode
    return Episode(G.labels, G.node_of, G.n_nodes, weak, proper)


def instances_of(seq: Sequence, G: Episode, rho: int, limit: int | None = None) -> InstanceSet:
    """Build the instance set of an arbitrary episode from scratch.

    The returned set's episode has the nodes and edges of ``G`` but its events
    are regrouped node by node.
    """
    if G.is_empty():
        raise ValueError("empty episode has no instance set")
    I = None
    for n in range(G.n_nodes):
        labs = sorted(G.node_labels(n))
        if I is None:
            I = build_singletons(seq, labs[0], rho)
        else:
            I = augment(I, labs[0], limit)
        for lab in labs[1:]:
            I = augment_equal(I, n, lab, limit)
    for a, b in sorted(G.weak):
        I = filter_weak(I, a, b)
    for a, b in sorted(G.proper):
        I = filter_proper(I, a, b)
    return I


def check_instance(I: InstanceSet, row) -> None:
    """Assert every invariant of an instance row; used by tests."""
    first, last, pos = row
    ev = I.seq.events
    G = I.episode
    assert len(pos) == G.n_events
    assert len(set(pos)) == len(pos), "not injective"
    ts = [ev[p].ts for p in pos]
    assert first == min(ts) and last == max(ts)
    assert last - first <= I.rho - 1
    for k, p in enumerate(pos):
        assert ev[p].label == G.labels[k]
    node_ts = {}
    for k, n in enumerate(G.node_of):
        node_ts.setdefault(n, ts[k])
        assert node_ts[n] == ts[k], "node events not simultaneous"
    for a, b in G.weak:
        assert node_ts[a] <= node_ts[b]
    for a, b in G.proper:
        assert node_ts[a] < node_ts[b]
    used = set(pos)
    for p in pos:
        for q in I.seq.positions_between(ev[p].label, ev[p].ts, ev[p].ts):
            if q < p:
                assert q in used, "redundant instance"


__all__ = [
    "InstanceAbortError", "InstanceSet", "build_singletons", "augment_equal", "augment",
    "filter_weak", "filter_proper", "support", "instance_closure", "instances_of",
    "check_instance", "WEAK", "PROPER",
]
