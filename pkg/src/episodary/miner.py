"""Depth-first search for frequent closed episodes.

The search has three levels. The event level adds events, either to the last
node or as a new node, keeping node label multisets non-increasing. The weak
level adds weak edges and the proper level promotes weak edges to proper ones.
Every candidate is replaced by the closure of its instance set, which prunes
most of the space; the remaining non-closed episodes are removed afterwards.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field

from .episode import (PROPER, WEAK, Episode, EpisodeCycleError, canonical_key, contains,
                      count_same_node_subepisodes, has_cycle, is_transitively_closed_with, lex_leq,
                      multiset, serialize_episode, transitive_closure)
from .instance import (InstanceAbortError, InstanceSet, augment, augment_equal, build_singletons,
                       filter_proper, filter_weak, instance_closure, support)
from .sequence import Sequence
from .subepisode import subepisode

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinerConfig:
    window: int
    min_support: int
    instance_abort: int | None = 10**7
    # Skip weak edges whose addition is not already transitively closed, as in
    # the textbook search. This misses some closed episodes; see ``mine_weak``.
    literal_weak_guard: bool = False

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be at least 1")
        if self.min_support < 1:
            raise ValueError("min_support must be at least 1")


@dataclass
class MinerStats:
    scans: int = 0
    i_closed: int = 0
    closed: int = 0
    frequent_estimate: int = 0


@dataclass
class Visit:
    """One call of the episode test, recorded when tracing is on."""

    episode: Episode
    support: int
    accepted: bool
    reason: str


def frequent_estimate(episodes) -> int:
    """Lower bound on the number of frequent episodes.

    Episodes are grouped by their label multiset; each group contributes the
    largest ``3**|proper| * 2**|weak|`` among its members.
    """
    best = {}
    for G in episodes:
        k = G.label_multiset()
        best[k] = max(best.get(k, 0), count_same_node_subepisodes(G))
    return sum(best.values())


class ClosedStore:
    """Candidate closed episodes, bucketed by support."""

    def __init__(self):
        self._by_support = defaultdict(list)
        # (support, text) of every episode ever offered. Any later isomorphic
        # offer is dominated: either its twin is stored, or the twin lost to an
        # episode that, by transitivity, still dominates it.
        self._seen = set()

    def __len__(self):
        return sum(len(v) for v in self._by_support.values())

    def __iter__(self):
        for sup in sorted(self._by_support):
            yield from self._by_support[sup]

    def offer(self, G: Episode) -> bool:
        """Insert ``G`` unless an equal-support superepisode is stored.

        Stored equal-support subepisodes of ``G`` are evicted. Returns whether
        ``G`` was inserted.
        """
        tag = (G.support, canonical_key(G))
        if tag in self._seen:
            return False
        self._seen.add(tag)
        bucket = self._by_support[G.support]
        doomed = []
        inserted = True
        for H in bucket:
            if contains(H.labels, G.labels) and subepisode(G, H):
                inserted = False
                break
            if contains(G.labels, H.labels) and subepisode(H, G):
                doomed.append(H)
        if doomed:
            ids = {id(H) for H in doomed}
            bucket[:] = [H for H in bucket if id(H) not in ids]
        if inserted:
            bucket.append(G)
        return inserted


def post_filter(episodes, check_monotone: bool = False) -> list:
    """Keep episodes with no strictly larger episode of equal support.

    Among mutually similar episodes of equal support only the first is kept.
    """
    by_support = defaultdict(list)
    for G in episodes:
        by_support[G.support].append(G)
    out = []
    for sup, group in by_support.items():
        for i, G in enumerate(group):
            dominated = False
            for j, H in enumerate(group):
                if i == j or not contains(H.labels, G.labels) or not subepisode(G, H):
                    continue
                if j < i or not subepisode(H, G):
                    dominated = True
                    break
            if not dominated:
                out.append(G)
    if check_monotone:
        for G in out:
            for H in out:
                if H.support > G.support and contains(H.labels, G.labels):
                    assert not subepisode(G, H), "support is not monotone"
    return out


def sort_output(episodes) -> list:
    return sorted(episodes, key=lambda G: (-G.support, serialize_episode(G)))


class Miner:
    """Single-use mining engine holding the closed store and statistics."""

    def __init__(self, seq: Sequence, config: MinerConfig, trace: bool = False):
        self.seq = seq
        self.cfg = config
        self.store = ClosedStore()
        self.stats = MinerStats()
        self.trace = [] if trace else None
        self.i_closed_episodes = []
        self.labels = []

    def _visit(self, G, sup, accepted, reason):
        if self.trace is not None:
            self.trace.append(Visit(G, sup, accepted, reason))

    def test_episode(self, I: InstanceSet, W=frozenset(), P=frozenset()) -> Episode | None:
        f = support(I)
        self.stats.scans += 1
        if f < self.cfg.min_support:
            self._visit(I.episode, f, False, "infrequent")
            return None
        G = instance_closure(I)
        if has_cycle(G):
            self._visit(G, f, False, "cycle")
            return None
        if G.weak & W or G.proper & P:
            self._visit(G, f, False, "forbidden edge")
            return None
        G = G.with_support(f)
        self.stats.i_closed += 1
        self.i_closed_episodes.append(G)
        self._visit(G, f, True, "i-closed")
        self.store.offer(G)
        return G

    def _with(self, I: InstanceSet, G: Episode) -> InstanceSet:
        return InstanceSet(I.seq, I.rho, G, I.rows)

    def mine_parallel(self, I: InstanceSet, G: Episode) -> None:
        I = self._with(I, G)
        self.mine_weak(I, G, frozenset())
        M = G.n_nodes
        n = M - 1
        lab_n = G.node_labels(n)
        limit = self.cfg.instance_abort
        for x in self.labels:
            if x < lab_n[-1]:
                continue
            if M == 1 or lex_leq(multiset(lab_n + (x,)), G.node_labels(n - 1)):
                J = augment_equal(I, n, x, limit)
                H = self.test_episode(J)
                if H is not None:
                    self.mine_parallel(J, H)
        for x in self.labels:
            if x > lab_n[0]:
                continue
            J = augment(I, x, limit)
            H = self.test_episode(J)
            if H is not None:
                self.mine_parallel(J, H)

    def mine_weak(self, I: InstanceSet, G: Episode, W: frozenset) -> None:
        I = self._with(I, G)
        m = G.n_nodes
        edges = G.edges
        non_edges = frozenset((a, b) for a in range(m) for b in range(m) if a != b and (a, b) not in edges)
        self.mine_proper(I, G, non_edges, frozenset())
        for e in sorted(non_edges):
            if e in W:
                continue
            J = self._add_weak(I, G, e)
            if J is None:
                continue
            H = self.test_episode(J, W, frozenset())
            if H is not None:
                self.mine_weak(J, H, W)
            W = W | {e}

    def _add_weak(self, I: InstanceSet, G: Episode, e: tuple) -> InstanceSet | None:
        """Instances of ``G`` plus the weak edge ``e`` and everything it implies.

        The instance closure may already have turned some weak edges of ``G``
        into proper ones. A weak edge that would then need a further proper
        edge to keep the episode transitively closed can never be added later
        (the proper level adds no weak edges), so the implied edges are added
        together with ``e`` instead of skipping it.
        """
        if is_transitively_closed_with(G, e, WEAK):
            return filter_weak(I, *e)
        if self.cfg.literal_weak_guard:
            return None
        try:
            T = transitive_closure(G.with_edges(weak=G.weak | {e}))
        except EpisodeCycleError:
            return None
        J = filter_weak(I, *e)
        for f in sorted(T.weak - G.weak - {e}):
            J = filter_weak(J, *f)
        for f in sorted(T.proper - G.proper):
            J = filter_proper(J, *f)
        return J

    def mine_proper(self, I: InstanceSet, G: Episode, W: frozenset, P: frozenset) -> None:
        I = self._with(I, G)
        for e in sorted(G.weak):
            if e in P or not is_transitively_closed_with(G, e, PROPER):
                continue
            J = filter_proper(I, *e)
            H = self.test_episode(J, W, P)
            if H is not None:
                self.mine_proper(J, H, W, P)
            P = P | {e}

    def run(self) -> list:
        seq, cfg = self.seq, self.cfg
        singles = {}
        for x in seq.alphabet:
            singles[x] = build_singletons(seq, x, cfg.window)
        # labels whose singleton is infrequent can never extend a frequent episode
        self.labels = [x for x in seq.alphabet if support(singles[x]) >= cfg.min_support]
        for x in seq.alphabet:
            G = self.test_episode(singles[x])
            if G is not None:
                self.mine_parallel(singles[x], G)
        closed = sort_output(post_filter(list(self.store)))
        self.stats.closed = len(closed)
        self.stats.frequent_estimate = frequent_estimate(self.i_closed_episodes)
        log.info("mined %d closed, %d i-closed episodes with %d scans",
                 self.stats.closed, self.stats.i_closed, self.stats.scans)
        return closed


def mine(seq: Sequence, config: MinerConfig, trace: bool = False):
    """Mine frequent closed episodes; returns ``(episodes, stats)``."""
    miner = Miner(seq, config, trace=trace)
    return miner.run(), miner.stats


__all__ = ["MinerConfig", "MinerStats", "ClosedStore", "Miner", "Visit", "mine", "post_filter",
           "frequent_estimate", "sort_output", "InstanceAbortError"]
