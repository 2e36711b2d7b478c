"""
Sequences, episodes and coverage
================================

An event sequence is a list of labelled events with integer time stamps;
several events may share a time stamp. An episode is a small DAG whose nodes
hold one or more labels. A weak edge asks for "same time or later", a proper
edge for "strictly later".
"""

from episodary import Episode, from_string, parse_sequence, serialize_episode
from episodary.oracle import brute_support, covers

###############################################################################
# Reading a sequence
# ------------------
# The text format has one ``<time stamp> <label>`` pair per line. Parentheses
# in :func:`from_string` group simultaneous events, handy for small examples.

s = parse_sequence("1 a\n1 a\n2 b\n3 a\n")
print(s.events)
print(s == from_string("(aa)ba"))

###############################################################################
# Building episodes
# -----------------
# Nodes are given as lists of labels, edges as pairs of node indices.

serial = Episode.from_nodes([["a"], ["b"], ["c", "d"]], weak=[(0, 1)], proper=[(0, 2), (1, 2)])
print(serialize_episode(serial))

###############################################################################
# The canonical text form is also the input format for the command line tool.
# Labels in one node must occur at the same time stamp, so ``(ab)cd`` does not
# cover the episode. Since a->b is weak, a and b may share a time stamp, but b
# may not come before a.

for text in ["ab(cd)", "(ab)(cd)", "(ab)cd", "ba(cd)"]:
    print(text, covers(from_string(text), serial))

###############################################################################
# Support
# -------
# The support of an episode is the number of sliding windows of a given width
# that cover it. Windows start before the first event and run past the last,
# so every event is seen by ``width`` windows.

pair = Episode.from_nodes([["a"], ["d"]], proper=[(0, 1)])
seq = from_string("abcdacbd")
for width in (2, 4, 8):
    print(width, brute_support(seq, pair, width))
