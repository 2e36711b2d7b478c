"""Deciding whether one episode is a subepisode of another.

``G ⪯ H`` holds when every sequence covering ``H`` also covers ``G``. The test
first tries a direct structural comparison that is exact when the labels of
``G`` occur once in ``H``; otherwise it recurses on the events that can occupy
the earliest time slot of ``H`` (its prefix subgraphs).
"""

from __future__ import annotations

from collections import Counter
from enum import Enum

from .episode import Episode, contains, transitive_closure


class Verdict(Enum):
    IS_SUB = "is_sub"
    NOT_SUB = "not_sub"
    INAPPLICABLE = "inapplicable"


IS_SUB = Verdict.IS_SUB
NOT_SUB = Verdict.NOT_SUB
INAPPLICABLE = Verdict.INAPPLICABLE


def unique_label_test(G: Episode, H: Episode) -> Verdict:
    """Structural test, valid when each label of ``G`` occurs exactly once in ``H``.

    Both episodes must be transitively closed.
    """
    count_h = Counter(H.labels)
    count_g = Counter(G.labels)
    if any(c != 1 or count_h[lab] != 1 for lab, c in count_g.items()):
        return INAPPLICABLE
    where = {lab: H.node_of[k] for k, lab in enumerate(H.labels)}
    node_map = {}
    for lab, n in zip(G.labels, G.node_of):
        m = where[lab]
        if node_map.setdefault(n, m) != m:
            return NOT_SUB
    for a, b in G.proper:
        if (node_map[a], node_map[b]) not in H.proper:
            return NOT_SUB
    for a, b in G.weak:
        x, y = node_map[a], node_map[b]
        if x != y and (x, y) not in H.edges:
            return NOT_SUB
    return IS_SUB


def reduce_host(H: Episode, labels) -> Episode:
    """Drop nodes of ``H`` sharing no label with ``labels``."""
    keep_labels = set(labels)
    return H.induced(n for n in range(H.n_nodes) if set(H.node_labels(n)) & keep_labels)


class _Graph:
    """Weak-edge-only view of a node subset of a transitively closed episode."""

    def __init__(self, G: Episode, nodes):
        self.nodes = frozenset(nodes)
        self.parents = {n: frozenset(p for p in G.parents(n) if p in self.nodes) for n in self.nodes}
        self.children = {n: frozenset(c for c in G.children(n) if c in self.nodes) for n in self.nodes}
        self.labels = {n: Counter(G.node_labels(n)) for n in self.nodes}

    def sources(self, alive) -> list:
        return sorted(n for n in alive if not (self.parents[n] & alive))


def _generate(g: _Graph, alive: frozenset, chosen: frozenset, out: list) -> None:
    for n in g.sources(alive):
        if n not in alive:
            continue
        grown = chosen | {n}
        out.append(grown)
        _generate(g, alive - {n}, grown, out)
        alive = alive - {n} - g.children[n]


def generate_prefix_subgraphs(G: Episode, nodes=None) -> list:
    """Node sets of all prefix subgraphs of ``G`` (restricted to ``nodes``).

    The (restricted) graph must contain no proper edges.
    """
    nodes = range(G.n_nodes) if nodes is None else nodes
    g = _Graph(G, nodes)
    if any((a, b) in G.proper for a in g.nodes for b in g.nodes):
        raise ValueError("prefix subgraphs need a graph without proper edges")
    out = []
    _generate(g, g.nodes, frozenset(), out)
    return out


def _consume(g: _Graph, alive: frozenset, budget: Counter, chosen: frozenset, out: list) -> None:
    while True:
        srcs = g.sources(alive)
        if not srcs:
            break
        n = srcs[0]
        need = g.labels[n]
        if not contains(budget.elements(), need.elements()):
            alive = alive - {n} - g.children[n]
            continue
        if any(set(g.labels[m]) & set(need) for m in alive if m != n):
            # branch without n; keep only results that cannot take n back
            sub = []
            _consume(g, alive - {n} - g.children[n], budget, chosen, sub)
            for W in sub:
                extra = Counter()
                for m in W - chosen:
                    extra.update(g.labels[m])
                extra.update(need)
                if not contains(budget.elements(), extra.elements()):
                    out.append(W)
        chosen = chosen | {n}
        budget = budget - need
        alive = alive - {n}
    out.append(chosen)


def consume(G: Episode, labels, nodes=None) -> list:
    """Maximal prefix subgraphs of ``G`` (restricted to ``nodes``) whose labels fit in ``labels``.

    Returns an empty list when no node fits at all.
    """
    nodes = G.proper_sources() if nodes is None else nodes
    g = _Graph(G, nodes)
    out = []
    _consume(g, g.nodes, Counter(labels), frozenset(), out)
    return [W for W in out if W]


def tail(G: Episode, labels) -> list:
    """Episodes left after removing each maximal fitting prefix subgraph of ``G``.

    When nothing fits, ``G`` itself is the only member.
    """
    prefixes = consume(G, labels)
    if not prefixes:
        return [G]
    return [G.remove_nodes(W) for W in prefixes]


def _step(Gs: list, H: Episode, memo: dict) -> bool:
    if any(G.is_empty() for G in Gs):
        return True
    Gs = [G for G in Gs if contains(H.labels, G.labels)]
    if not Gs or H.is_empty():
        return False
    for G in Gs:
        verdict = unique_label_test(G, H)
        if verdict is IS_SUB:
            return True
        if verdict is NOT_SUB and len(Gs) == 1:
            return False

    used = set()
    for G in Gs:
        used.update(G.labels)
    H = reduce_host(H, used)
    key = (frozenset(G.key() for G in Gs), H.key())
    if key in memo:
        return memo[key]

    result = True
    for V in generate_prefix_subgraphs(H, H.proper_sources()):
        rest = H.remove_nodes(V)
        lab_v = Counter()
        for n in V:
            lab_v.update(H.node_labels(n))
        tails = {}
        for G in Gs:
            for T in tail(G, lab_v):
                tails.setdefault(T.key(), T)
        if not _step(list(tails.values()), rest, memo):
            result = False
            break
    memo[key] = result
    return result


def step(Gs, H: Episode, memo: dict | None = None) -> bool:
    """Decide whether every sequence covering ``H`` covers some episode of ``Gs``.

    All episodes must be transitively closed.
    """
    return _step(list(Gs), H, {} if memo is None else memo)


def subepisode(G: Episode, H: Episode) -> bool:
    """``G ⪯ H``."""
    return step([transitive_closure(G)], transitive_closure(H))


def similar(G: Episode, H: Episode) -> bool:
    return subepisode(G, H) and subepisode(H, G)
