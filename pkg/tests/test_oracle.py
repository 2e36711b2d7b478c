import itertools
import random

import pytest

from episodary.episode import Episode, has_cycle, is_transitively_closed, transitive_closure
from episodary.oracle import (OracleAbortError, arrangements, brute_frequent, brute_similar, brute_support,
                              covers, enumerate_episodes, iso_key, witness_sequence)
from episodary.sequence import from_pairs, from_string, subsequence

from conftest import TOY

E = Episode.from_nodes


def covers_by_maps(s, G):
    """Coverage by trying every injective map of events to positions."""
    ev = s.events
    for pos in itertools.permutations(range(len(ev)), G.n_events):
        if any(ev[p].label != lab for p, lab in zip(pos, G.labels)):
            continue
        node_ts = {}
        if any(node_ts.setdefault(n, ev[p].ts) != ev[p].ts for p, n in zip(pos, G.node_of)):
            continue
        if all(node_ts[a] <= node_ts[b] for a, b in G.weak) and all(node_ts[a] < node_ts[b] for a, b in G.proper):
            return True
    return False


@pytest.mark.parametrize("seq,expected", [("ab(cd)", (True, False, True)), ("(ab)cd", (True, True, False))])
def test_toy_coverage(seq, expected):
    s = from_string(seq)
    assert tuple(covers(s, TOY[g]) for g in ("G1", "G2", "G3")) == expected


def test_support_worked_example():
    s = from_string("abcdacbd")
    assert brute_support(s, TOY["G1"], 4) == 2
    assert covers(subsequence(s, 1, 4), TOY["G1"]) and covers(subsequence(s, 5, 8), TOY["G1"])


def test_empty_episode_is_always_covered():
    assert covers(from_pairs([]), E([]))


@pytest.mark.parametrize("seed", range(200))
def test_covers_matches_map_enumeration(seed):
    rng = random.Random(seed)
    s = from_pairs(sorted((rng.randint(1, 4), rng.choice("ab")) for _ in range(rng.randint(0, 6))))
    eps = enumerate_episodes("ab", 3, 3)
    G = eps[rng.randrange(len(eps))]
    assert covers(s, G) == covers_by_maps(s, G)


def test_covers_budget():
    # b occurs only before every a, so every placement of the a nodes fails
    s = from_pairs([(1, "b")] + [(t, "a") for t in range(2, 14)])
    G = E([["a"]] * 6 + [["b"]], proper=[(n, 6) for n in range(6)])
    with pytest.raises(OracleAbortError):
        covers(s, G, max_steps=50)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 13), (4, 75)])
def test_arrangements_of_parallel_episode(n, count):
    assert sum(1 for _ in arrangements(E([["a"]] * n))) == count


def test_arrangements_respect_edges():
    chain = E([["a"], ["b"], ["c"]], weak=[(0, 1), (1, 2), (0, 2)])
    assert len(list(arrangements(chain))) == 4
    proper = transitive_closure(E([["a"], ["b"], ["c"]], proper=[(0, 1), (1, 2)]))
    assert list(arrangements(proper)) == [{0: 1, 1: 2, 2: 3}]


@pytest.mark.parametrize("name", sorted(TOY))
def test_witnesses_cover_their_episode(name):
    H = transitive_closure(TOY[name])
    for slots in arrangements(H):
        assert covers(witness_sequence(H, slots), H)


def test_iso_key_invariant_under_renumbering():
    G = TOY["G2"]
    H = G.induced([3, 1, 0, 2])  # induced keeps order; build a real permutation instead
    perm = [2, 0, 3, 1]
    P = E([G.node_labels(perm.index(i)) for i in range(4)],
          weak={(perm[a], perm[b]) for a, b in G.weak}, proper={(perm[a], perm[b]) for a, b in G.proper})
    assert iso_key(P) == iso_key(G) == iso_key(H)
    assert iso_key(G) != iso_key(TOY["G1"])


def test_enumeration_is_closed_acyclic_and_distinct():
    eps = enumerate_episodes("ab", 3, 3)
    assert all(is_transitively_closed(G) and not has_cycle(G) for G in eps)
    assert len({iso_key(G) for G in eps}) == len(eps)
    assert len(enumerate_episodes("a", 1, 1)) == 1
    # one label, two events: {a,a}, and two a nodes unordered, weak or proper
    assert len(enumerate_episodes("a", 2, 2, min_events=2)) == 4


def test_enumeration_guard():
    with pytest.raises(OracleAbortError):
        enumerate_episodes("ab", 5, 5)


def test_brute_frequent_singletons():
    s = from_string("aab")
    fr = brute_frequent(s, 1, 2, 1, 1)
    assert [(str(G), G.support) for G in fr] == [("nodes: 1{a}; proper: -; weak: -", 2)]


def test_brute_similar():
    assert brute_similar(TOY["G1"], TOY["G1"])
    assert not brute_similar(TOY["G1"], TOY["G2"])
