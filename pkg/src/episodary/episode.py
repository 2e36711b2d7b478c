"""Episodes: labelled events grouped into nodes of a DAG with weak and proper edges.

A weak edge ``(a, b)`` requires ``ts(a) <= ts(b)``, a proper edge requires
``ts(a) < ts(b)``. Events sharing a node occur simultaneously.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence as Seq

WEAK = "weak"
PROPER = "proper"

LabelMultiset = tuple  # labels sorted in ascending order


def multiset(labels: Iterable[str]) -> LabelMultiset:
    return tuple(sorted(labels))


def lex_leq(x: LabelMultiset, y: LabelMultiset) -> bool:
    """Compare ascending-sorted multisets elementwise; a proper prefix is smaller.

    Growing a multiset by a label at least its maximum only appends, so the
    grown multiset stays above its former self; the miner relies on this.
    """
    return tuple(x) <= tuple(y)


def contains(big: Iterable[str], small: Iterable[str]) -> bool:
    """Multiset containment ``small ⊆ big``."""
    need = Counter(small)
    have = Counter(big)
    return all(have[k] >= v for k, v in need.items())


class EpisodeCycleError(ValueError):
    pass


class EpisodeParseError(ValueError):
    def __init__(self, pos: int, message: str):
        super().__init__(f"position {pos}: {message}")
        self.pos = pos


@dataclass(frozen=True)
class Episode:
    """Immutable episode.

    Episode event ``k`` (id ``k + 1``) has label ``labels[k]`` and lives in node
    ``node_of[k]``. Nodes are ``0 .. n_nodes - 1`` in creation order.
    """

    labels: tuple = ()
    node_of: tuple = ()
    n_nodes: int = 0
    weak: frozenset = frozenset()
    proper: frozenset = frozenset()
    support: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "node_of", tuple(self.node_of))
        object.__setattr__(self, "weak", frozenset(self.weak))
        object.__setattr__(self, "proper", frozenset(self.proper))
        if len(self.labels) != len(self.node_of):
            raise ValueError("labels and node_of differ in length")
        if set(self.node_of) != set(range(self.n_nodes)):
            raise ValueError("every node needs at least one event")
        if self.weak & self.proper:
            raise ValueError(f"edges both weak and proper: {sorted(self.weak & self.proper)}")
        for a, b in self.weak | self.proper:
            if a == b or not (0 <= a < self.n_nodes and 0 <= b < self.n_nodes):
                raise ValueError(f"bad edge ({a}, {b})")

    @classmethod
    def from_nodes(cls, nodes: Seq[Iterable[str]], weak=(), proper=(), support=None) -> "Episode":
        """Build from per-node label lists; edges use 0-based node indices."""
        labels, node_of = [], []
        for n, labs in enumerate(nodes):
            for lab in labs:
                labels.append(lab)
                node_of.append(n)
        return cls(tuple(labels), tuple(node_of), len(nodes), frozenset(weak), frozenset(proper), support)

    @property
    def n_events(self) -> int:
        return len(self.labels)

    @property
    def edges(self) -> frozenset:
        return self.weak | self.proper

    def is_empty(self) -> bool:
        return self.n_nodes == 0

    def node_events(self, n: int) -> tuple:
        return tuple(k for k, m in enumerate(self.node_of) if m == n)

    def node_labels(self, n: int) -> LabelMultiset:
        return multiset(self.labels[k] for k, m in enumerate(self.node_of) if m == n)

    def label_multiset(self) -> LabelMultiset:
        return multiset(self.labels)

    def edge_kind(self, a: int, b: int) -> str | None:
        if (a, b) in self.proper:
            return PROPER
        if (a, b) in self.weak:
            return WEAK
        return None

    def parents(self, n: int) -> set:
        return {a for a, b in self.edges if b == n}

    def children(self, n: int) -> set:
        return {b for a, b in self.edges if a == n}

    def proper_sources(self) -> list:
        """Nodes without an incoming proper edge (assumes transitive closure)."""
        targets = {b for _, b in self.proper}
        return [n for n in range(self.n_nodes) if n not in targets]

    def with_support(self, support: int | None) -> "Episode":
        return Episode(self.labels, self.node_of, self.n_nodes, self.weak, self.proper, support)

    def with_edges(self, weak=None, proper=None) -> "Episode":
        return Episode(self.labels, self.node_of, self.n_nodes,
                       self.weak if weak is None else weak,
                       self.proper if proper is None else proper)

    def add_event(self, node: int, label: str) -> "Episode":
        return Episode(self.labels + (label,), self.node_of + (node,), self.n_nodes, self.weak, self.proper)

    def add_node(self, label: str) -> "Episode":
        return Episode(self.labels + (label,), self.node_of + (self.n_nodes,), self.n_nodes + 1,
                       self.weak, self.proper)

    def induced(self, keep: Iterable[int]) -> "Episode":
        """Subgraph induced by ``keep``; nodes are renumbered preserving order."""
        keep = sorted(set(keep))
        remap = {old: new for new, old in enumerate(keep)}
        labels, node_of = [], []
        for lab, n in zip(self.labels, self.node_of):
            if n in remap:
                labels.append(lab)
                node_of.append(remap[n])
        return Episode(tuple(labels), tuple(node_of), len(keep),
                       frozenset((remap[a], remap[b]) for a, b in self.weak if a in remap and b in remap),
                       frozenset((remap[a], remap[b]) for a, b in self.proper if a in remap and b in remap))

    def remove_nodes(self, drop: Iterable[int]) -> "Episode":
        drop = set(drop)
        return self.induced(n for n in range(self.n_nodes) if n not in drop)

    def key(self) -> tuple:
        """Hashable structural identity (node numbering matters)."""
        return (tuple(self.node_labels(n) for n in range(self.n_nodes)),
                tuple(sorted(self.weak)), tuple(sorted(self.proper)))

    def __str__(self) -> str:
        return serialize_episode(self)


def _reach(G: Episode) -> list:
    """Path matrix: 0 = no path, 1 = weak path only, 2 = path using a proper edge."""
    m = G.n_nodes
    r = [[0] * m for _ in range(m)]
    for a, b in G.weak:
        r[a][b] = 1
    for a, b in G.proper:
        r[a][b] = 2
    for k in range(m):
        rk = r[k]
        for i in range(m):
            rik = r[i][k]
            if not rik:
                continue
            ri = r[i]
            for j in range(m):
                if rk[j]:
                    v = 2 if (rik == 2 or rk[j] == 2) else 1
                    if v > ri[j]:
                        ri[j] = v
    return r


def transitive_closure(G: Episode) -> Episode:
    """Add an edge to every descendant; proper if some path has a proper edge."""
    r = _reach(G)
    if any(r[i][i] for i in range(G.n_nodes)):
        raise EpisodeCycleError("episode graph has a cycle")
    weak, proper = set(), set()
    for i, row in enumerate(r):
        for j, v in enumerate(row):
            if v == 2:
                proper.add((i, j))
            elif v == 1:
                weak.add((i, j))
    return Episode(G.labels, G.node_of, G.n_nodes, weak, proper, G.support)


def is_transitively_closed(G: Episode) -> bool:
    try:
        return transitive_closure(G) == G
    except EpisodeCycleError:
        return False


def is_transitively_closed_with(G: Episode, edge: tuple, kind: str) -> bool:
    """Whether adding a weak edge (or promoting a weak edge to proper) keeps ``G`` closed.

    ``G`` itself must be transitively closed.
    """
    a, b = edge
    if kind == WEAK:
        if edge in G.edges or (b, a) in G.edges or a == b:
            return False
        # p -> a -> b needs p -> b at least as strong as p -> a
        for p in G.parents(a):
            k = G.edge_kind(p, b)
            if k is None or (k == WEAK and (p, a) in G.proper):
                return False
        for c in G.children(b):
            k = G.edge_kind(a, c)
            if k is None or (k == WEAK and (b, c) in G.proper):
                return False
        return True
    if kind == PROPER:
        if edge not in G.weak:
            return False
        return all((p, b) in G.proper for p in G.parents(a)) and \
            all((a, c) in G.proper for c in G.children(b))
    raise ValueError(f"unknown edge kind {kind!r}")


def has_cycle(G: Episode) -> bool:
    ts = TopologicalSorter({n: set() for n in range(G.n_nodes)})
    for a, b in G.edges:
        ts.add(b, a)
    try:
        ts.prepare()
    except CycleError:
        return True
    return False


def count_same_node_subepisodes(G: Episode) -> int:
    """Subepisodes sharing events and nodes: each proper edge may become weak or vanish."""
    return 3 ** len(G.proper) * 2 ** len(G.weak)


def canonical_order(G: Episode) -> list:
    return sorted(range(G.n_nodes), key=lambda n: (G.node_labels(n), n))


def canonical(G: Episode) -> Episode:
    """Renumber nodes in canonical order; events are regrouped by node."""
    order = canonical_order(G)
    remap = {old: new for new, old in enumerate(order)}
    nodes = [sorted(G.node_labels(n)) for n in order]
    return Episode.from_nodes(
        nodes,
        weak=((remap[a], remap[b]) for a, b in G.weak),
        proper=((remap[a], remap[b]) for a, b in G.proper),
        support=G.support,
    )


def _refine_colours(G: Episode) -> list:
    """Node colours from label multisets refined by typed neighbour colours."""
    colour = [G.node_labels(n) for n in range(G.n_nodes)]
    for _ in range(G.n_nodes):
        sig = [(colour[n],
                tuple(sorted((G.edge_kind(p, n), colour[p]) for p in G.parents(n))),
                tuple(sorted((G.edge_kind(n, c), colour[c]) for c in G.children(n))))
               for n in range(G.n_nodes)]
        rank = {v: i for i, v in enumerate(sorted(set(sig)))}
        new = [(G.node_labels(n), rank[sig[n]]) for n in range(G.n_nodes)]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new
    return colour


def canonical_key(G: Episode, max_perms: int = 720):
    """Hashable key that is equal for isomorphic episodes, where affordable.

    Equal keys always imply isomorphism. Distinct keys guarantee
    non-isomorphism only when the number of candidate numberings after colour
    refinement is at most ``max_perms``; beyond that a cheaper,
    numbering-dependent key is returned.
    """
    colour = _refine_colours(G)
    classes = {}
    for n in range(G.n_nodes):
        classes.setdefault(colour[n], []).append(n)
    groups = [classes[c] for c in sorted(classes)]
    if math.prod(math.factorial(len(g)) for g in groups) > max_perms:
        return ("partial",) + canonical(G).key()
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [n for part in choice for n in part]
        pos = {n: i for i, n in enumerate(order)}
        enc = (tuple(sorted((pos[a], pos[b]) for a, b in G.weak)),
               tuple(sorted((pos[a], pos[b]) for a, b in G.proper)))
        if best is None or enc < best:
            best = enc
    return (tuple(sorted(colour)),) + best


def _edges_text(edges, sep: str, joiner: str) -> str:
    return joiner.join(f"{a + 1}{sep}{b + 1}" for a, b in sorted(edges)) or "-"


def serialize_episode(G: Episode) -> str:
    """Canonical text, e.g. ``nodes: 1{a} 2{b}; proper: 1>2; weak: -``."""
    C = canonical(G)
    nodes = " ".join(f"{n + 1}{{{','.join(sorted(C.node_labels(n)))}}}" for n in range(C.n_nodes))
    return f"nodes: {nodes}; proper: {_edges_text(C.proper, '>', ' ')}; weak: {_edges_text(C.weak, '>', ' ')}"


_TEXT_RE = re.compile(r"\s*nodes:(?P<nodes>[^;]*);\s*proper:(?P<proper>[^;]*);\s*weak:(?P<weak>[^;]*?)\s*$")
_NODE_RE = re.compile(r"(\d+)\{([^{}]*)\}")
_EDGE_RE = re.compile(r"(\d+)>(\d+)")


def _parse_edges(text: str, offset: int, ids: dict) -> set:
    out = set()
    body = text.strip()
    if body in ("", "-"):
        return out
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        em = _EDGE_RE.fullmatch(tok)
        if not em:
            raise EpisodeParseError(offset + m.start(), f"bad edge {tok!r}")
        a, b = (int(x) for x in em.groups())
        for x in (a, b):
            if x not in ids:
                raise EpisodeParseError(offset + m.start(), f"unknown node {x}")
        out.add((ids[a], ids[b]))
    return out


def parse_episode(text: str) -> Episode:
    """Inverse of :func:`serialize_episode`; nodes keep their textual order."""
    m = _TEXT_RE.match(text)
    if not m:
        raise EpisodeParseError(0, "expected 'nodes: ...; proper: ...; weak: ...'")
    ids, nodes = {}, []
    body, off = m.group("nodes"), m.start("nodes")
    for tok in re.finditer(r"\S+", body):
        nm = _NODE_RE.fullmatch(tok.group())
        if not nm:
            raise EpisodeParseError(off + tok.start(), f"bad node {tok.group()!r}")
        nid = int(nm.group(1))
        if nid in ids:
            raise EpisodeParseError(off + tok.start(), f"duplicate node {nid}")
        labs = [x.strip() for x in nm.group(2).split(",")]
        if not all(labs):
            raise EpisodeParseError(off + tok.start(), "empty label")
        ids[nid] = len(nodes)
        nodes.append(labs)
    proper = _parse_edges(m.group("proper"), m.start("proper"), ids)
    weak = _parse_edges(m.group("weak"), m.start("weak"), ids)
    try:
        return Episode.from_nodes(nodes, weak=weak, proper=proper)
    except ValueError as exc:
        raise EpisodeParseError(0, str(exc)) from None


def read_episode(path) -> Episode:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 1:
        raise EpisodeParseError(0, f"expected one episode line, found {len(lines)}")
    return parse_episode(lines[0])


def episode_record(G: Episode) -> str:
    """Tab-separated record: support, node count, node labels, proper edges, weak edges."""
    C = canonical(G)
    nodes = ";".join(",".join(sorted(C.node_labels(n))) for n in range(C.n_nodes)) or "-"
    sup = "" if G.support is None else str(G.support)
    return "\t".join([sup, str(C.n_nodes), nodes,
                      _edges_text(C.proper, ">", ";"), _edges_text(C.weak, "~", ";")])


def parse_record(line: str) -> Episode:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 5:
        raise EpisodeParseError(0, f"expected 5 tab-separated fields, got {len(parts)}")
    sup, count, nodes_txt, proper_txt, weak_txt = parts
    nodes = [] if nodes_txt == "-" else [x.split(",") for x in nodes_txt.split(";")]
    if len(nodes) != int(count):
        raise EpisodeParseError(0, "node count mismatch")

    def edges(txt, sep):
        if txt == "-":
            return set()
        return {tuple(int(x) - 1 for x in tok.split(sep)) for tok in txt.split(";")}

    return Episode.from_nodes(nodes, weak=edges(weak_txt, "~"), proper=edges(proper_txt, ">"),
                              support=int(sup) if sup else None)
