"""
Deciding the subepisode relation
================================

G is a subepisode of H when every sequence covering H also covers G. With
repeated labels this is not a plain graph-embedding question. The library
decides it recursively by peeling off the events H can place first, and the
oracle module checks the same thing by brute force.
"""

from episodary import Episode, serialize_episode, subepisode, transitive_closure
from episodary.oracle import arrangements, brute_subepisode, witness_sequence
from episodary.subepisode import tail

E = Episode.from_nodes

###############################################################################
# Merging two nodes is a specialisation, as long as the edge between them was
# weak.

print(subepisode(E([["a"], ["b"]], weak=[(0, 1)]), E([["a", "b"]])))
print(subepisode(E([["a"], ["b"]], proper=[(0, 1)]), E([["a", "b"]])))

###############################################################################
# Repeated labels
# ---------------
# Two crossing weak edges on top of two a->b chains make H strictly larger:
# the sequence ``abab`` covers the chains but not the crossing.

H1 = E([["a"], ["a"], ["b"], ["b"]], proper=[(0, 2), (1, 3)])
H2 = E([["a"], ["a"], ["b"], ["b"]], proper=[(0, 2), (1, 3)], weak=[(1, 2), (0, 3)])
print(subepisode(H1, H2), subepisode(H2, H1))

###############################################################################
# The brute-force check lays H out in time in every way its edges allow and
# asks whether each layout covers G.

layouts = list(arrangements(transitive_closure(H2)))
print(len(layouts), "layouts of H2")
for slots in layouts:
    w = witness_sequence(H2, slots)
    print(" ".join(f"{e.ts}{e.label}" for e in w))
print(brute_subepisode(H2, H1))

###############################################################################
# Tails
# -----
# ``tail(G, labels)`` removes from G each largest group of earliest nodes that
# fits in the given labels. It is the workhorse of the recursion.

G = transitive_closure(E([["a"], ["b"], ["c"], ["d"]], proper=[(0, 2), (1, 3)], weak=[(0, 1), (0, 3)]))
for labels in ["a", "ab", "c"]:
    print(labels, [serialize_episode(T) for T in tail(G, labels)])
