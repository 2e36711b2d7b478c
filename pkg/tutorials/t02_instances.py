"""
Instance sets and their closure
===============================

The miner never slides windows over the data. It keeps, for the current
episode, the list of its instances (one mapping of episode events to sequence
events per row) and counts windows from the first and last time stamps of the
rows alone.
"""

from episodary import Episode, from_string, serialize_episode
from episodary.instance import instance_closure, instances_of, support
from episodary.oracle import brute_support

seq = from_string("abcbdacbcd")
G = Episode.from_nodes([["a"], ["b"], ["c"], ["d"]], proper=[(0, 3)])

###############################################################################
# Rows are ``(first time stamp, last time stamp, positions)``. ``mappings``
# shows the event ids per episode event instead of positions.

I = instances_of(seq, G, 5)
for row, ids in zip(I.rows, I.mappings()):
    print(row[:2], ids)

###############################################################################
# The window count from the instance rows agrees with brute-force sliding.

print(support(I), brute_support(seq, G, 5))

###############################################################################
# Instance closure
# ----------------
# Every ordering that holds in all instances becomes an edge. Here b and c
# always fall between a and d, so the sparse episode grows into a diamond
# with the same support. This is the step that lets the miner jump straight
# to larger episodes.

C = instance_closure(I)
print(serialize_episode(C))
print(support(instances_of(seq, C, 5)))
