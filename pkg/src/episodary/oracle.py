"""Naive reference implementations used as ground truth.

Everything here follows the definitions directly: coverage is decided by
backtracking, support by sliding every window, and the subepisode relation by
enumerating every arrangement of the larger episode in time.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter

from .episode import Episode, contains, is_transitively_closed, has_cycle
from .sequence import Sequence, SequenceEvent, subsequence


class OracleAbortError(RuntimeError):
    """Raised when an oracle exceeds its work budget."""


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise OracleAbortError(f"oracle exceeded {self.limit} steps")


def _topo_nodes(G: Episode) -> list:
    indeg = {n: 0 for n in range(G.n_nodes)}
    for _, b in G.edges:
        indeg[b] += 1
    order, ready = [], sorted(n for n, d in indeg.items() if d == 0)
    while ready:
        n = ready.pop(0)
        order.append(n)
        for c in sorted(G.children(n)):
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
    if len(order) != G.n_nodes:
        raise ValueError("episode graph has a cycle")
    return order


def covers(s: Sequence, G: Episode, max_steps: int | None = 10**7) -> bool:
    """Whether some injective, label- and order-respecting map sends ``G`` into ``s``."""
    if G.is_empty():
        return True
    if not contains((ev.label for ev in s), G.labels):
        return False
    avail = Counter((ev.label, ev.ts) for ev in s)
    stamps = sorted({ev.ts for ev in s})
    order = _topo_nodes(G)
    need = [Counter(G.node_labels(n)) for n in range(G.n_nodes)]
    parents = [[(a, (a, n) in G.proper) for a in G.parents(n)] for n in range(G.n_nodes)]
    at = [None] * G.n_nodes
    budget = _Budget(max_steps)

    def place(i):
        if i == len(order):
            return True
        n = order[i]
        lo = None
        for p, strict in parents[n]:
            t = at[p] + 1 if strict else at[p]
            lo = t if lo is None else max(lo, t)
        for t in stamps:
            if lo is not None and t < lo:
                continue
            budget.tick()
            if all(avail[(lab, t)] >= c for lab, c in need[n].items()):
                for lab, c in need[n].items():
                    avail[(lab, t)] -= c
                at[n] = t
                if place(i + 1):
                    return True
                for lab, c in need[n].items():
                    avail[(lab, t)] += c
        at[n] = None
        return False

    return place(0)


def brute_support(s: Sequence, G: Episode, rho: int) -> int:
    """Count windows ``s[t, t + rho - 1]`` that cover ``G``."""
    span = s.span()
    if span is None:
        return 0
    lo, hi = span
    return sum(1 for t in range(lo - rho + 1, hi + 1) if covers(subsequence(s, t, t + rho - 1), G))


def arrangements(H: Episode):
    """Yield every assignment of ``H``'s nodes to time slots 1..k honouring its edges.

    Each slot is non-empty, so ``k`` ranges over 1..n_nodes.
    """
    parents = [H.parents(n) for n in range(H.n_nodes)]

    def rec(remaining, slot, assign):
        if not remaining:
            yield dict(assign)
            return
        rem = sorted(remaining)
        for size in range(1, len(rem) + 1):
            for group in itertools.combinations(rem, size):
                g = set(group)
                ok = True
                for n in group:
                    for p in parents[n]:
                        if p in remaining and (p not in g or (p, n) in H.proper):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                for n in group:
                    assign[n] = slot
                yield from rec(remaining - g, slot + 1, assign)
                for n in group:
                    del assign[n]

    yield from rec(frozenset(range(H.n_nodes)), 1, {})


def witness_sequence(H: Episode, slots: dict) -> Sequence:
    pairs = sorted((slots[n], lab) for lab, n in zip(H.labels, H.node_of))
    return Sequence(tuple(SequenceEvent(k + 1, lab, ts) for k, (ts, lab) in enumerate(pairs)))


def brute_subepisode(G: Episode, H: Episode, max_steps: int | None = 10**7) -> bool:
    """``G ⪯ H``: every arrangement of ``H`` in time must also cover ``G``."""
    return _brute_subepisode(G.with_support(None), H.with_support(None), max_steps)


@functools.lru_cache(maxsize=1 << 18)
def _brute_subepisode(G: Episode, H: Episode, max_steps) -> bool:
    if G.is_empty():
        return True
    if not contains(H.labels, G.labels):
        return False
    for slots in arrangements(H):
        if not covers(witness_sequence(H, slots), G, max_steps):
            return False
    return True


def brute_similar(G: Episode, H: Episode) -> bool:
    return brute_subepisode(G, H) and brute_subepisode(H, G)


def iso_key(G: Episode) -> tuple:
    """Isomorphism-invariant key, by trying every node permutation."""
    best = None
    for perm in itertools.permutations(range(G.n_nodes)):
        pos = {old: new for new, old in enumerate(perm)}
        key = (tuple(G.node_labels(n) for n in perm),
               tuple(sorted((pos[a], pos[b]) for a, b in G.weak)),
               tuple(sorted((pos[a], pos[b]) for a, b in G.proper)))
        if best is None or key < best:
            best = key
    return best if best is not None else ((), (), ())


def _set_partitions(items):
    """All partitions of a list into non-empty blocks (as lists of lists)."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]


def enumerate_episodes(labels, max_nodes: int, max_events: int, min_events: int = 1) -> tuple:
    """All transitively closed, acyclic episodes over ``labels`` within the bounds.

    Episodes are listed once per isomorphism class (not per similarity class).
    """
    if max_events > 6 or max_nodes > 4:
        raise OracleAbortError("enumeration bounds too large for the brute-force oracle")
    labels = sorted(set(labels))
    if not labels:
        return ()
    # enumerate over placeholder labels once per alphabet size, then rename;
    # an injective renaming preserves closure, acyclicity and isomorphism
    names = [f"_{i:03d}" for i in range(len(labels))]
    rename = dict(zip(names, labels))
    return tuple(
        Episode.from_nodes([[rename[x] for x in G.node_labels(n)] for n in range(G.n_nodes)],
                           weak=G.weak, proper=G.proper)
        for G in _enumerate(tuple(names), max_nodes, max_events, min_events))


@functools.lru_cache(maxsize=32)
def _enumerate(labels, max_nodes, max_events, min_events) -> tuple:
    return tuple(_enumerate_iter(labels, max_nodes, max_events, min_events))


def _enumerate_iter(labels, max_nodes, max_events, min_events):
    seen = set()
    for size in range(min_events, max_events + 1):
        for combo in itertools.combinations_with_replacement(labels, size):
            for part in _set_partitions(list(range(size))):
                if len(part) > max_nodes:
                    continue
                nodes = [[combo[i] for i in block] for block in part]
                m = len(nodes)
                pairs = list(itertools.combinations(range(m), 2))
                for choice in itertools.product(range(5), repeat=len(pairs)):
                    weak, proper = set(), set()
                    for (a, b), c in zip(pairs, choice):
                        if c == 1:
                            weak.add((a, b))
                        elif c == 2:
                            weak.add((b, a))
                        elif c == 3:
                            proper.add((a, b))
                        elif c == 4:
                            proper.add((b, a))
                    G = Episode.from_nodes(nodes, weak=weak, proper=proper)
                    if has_cycle(G) or not is_transitively_closed(G):
                        continue
                    k = iso_key(G)
                    if k in seen:
                        continue
                    seen.add(k)
                    yield G


def brute_frequent(s: Sequence, rho: int, sigma: int, max_nodes: int, max_events: int) -> list:
    """Frequent episodes within the bounds, one representative per similarity class."""
    found = []
    parallel_ok = {}
    for G in enumerate_episodes(s.alphabet, max_nodes, max_events):
        labs = G.label_multiset()
        if labs not in parallel_ok:
            P = Episode.from_nodes([[x] for x in labs])
            parallel_ok[labs] = brute_support(s, P, rho) >= sigma
        if not parallel_ok[labs]:
            continue
        f = brute_support(s, G, rho)
        if f >= sigma:
            found.append(G.with_support(f))
    reps = []
    buckets = {}
    for G in found:
        bucket = buckets.setdefault((G.support, G.label_multiset()), [])
        if not any(brute_similar(G, H) for H in bucket):
            bucket.append(G)
            reps.append(G)
    return reps


def brute_closed(frequent: list) -> list:
    """Episodes in ``frequent`` with no strictly larger episode of equal support."""
    out = []
    for G in frequent:
        dominated = False
        for H in frequent:
            if H is G or H.support != G.support or not contains(H.labels, G.labels):
                continue
            if brute_subepisode(G, H) and not brute_subepisode(H, G):
                dominated = True
                break
        if not dominated:
            out.append(G)
    return out
