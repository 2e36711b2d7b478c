import pytest
from hypothesis import given, strategies as st

from episodary.sequence import (Sequence, SequenceEvent, SequenceOrderError, SequenceParseError,
                                from_pairs, from_string, gen_planted, parse_sequence,
                                serialize_sequence, subsequence)


def test_parse_simultaneous_events():
    s = parse_sequence("1 a\n1 a\n2 b\n3 a")
    assert s.events == ((1, "a", 1), (2, "a", 1), (3, "b", 2), (4, "a", 3))
    assert s == from_string("(aa)ba")
    assert s.alphabet == ["a", "b"]


def test_parse_empty():
    s = parse_sequence("")
    assert len(s) == 0 and s.alphabet == []


def test_parse_comments_and_tabs():
    s = parse_sequence("# header\n\n3\tx\n  4   y  \n")
    assert [(e.ts, e.label) for e in s] == [(3, "x"), (4, "y")]


def test_parse_order_violation_reports_line():
    with pytest.raises(SequenceOrderError) as exc:
        parse_sequence("5 x\n3 y")
    assert exc.value.lineno == 2


@pytest.mark.parametrize("text,line", [("1 a\nfoo", 2), ("x a", 1), ("1 a b", 1)])
def test_parse_malformed(text, line):
    with pytest.raises(SequenceParseError) as exc:
        parse_sequence(text)
    assert exc.value.lineno == line


def test_sequence_rejects_bad_order():
    with pytest.raises(ValueError):
        Sequence((SequenceEvent(1, "a", 2), SequenceEvent(2, "a", 1)))
    with pytest.raises(ValueError):
        Sequence((SequenceEvent(1, "a", 1), SequenceEvent(1, "b", 1)))


def test_subsequence():
    s = from_string("abcdacbd")
    assert [e.id for e in subsequence(s, 1, 4)] == [1, 2, 3, 4]
    assert [e.id for e in subsequence(s, 5, 8)] == [5, 6, 7, 8]
    assert [e.id for e in subsequence(s, 3, 3)] == [3]
    assert len(subsequence(s, 4, 3)) == 0
    t = from_string("(aa)ba")
    assert [e.id for e in subsequence(t, 1, 1)] == [1, 2]


def test_gen_planted_single_rep():
    s = gen_planted(1, 1, 50, 0, 0, seed=3)
    assert [(e.ts, e.label) for e in s] == [(1, "s1"), (1, "s2")]


def test_gen_planted_layout():
    s = gen_planted(2, 3, 50, 0, 0)
    assert len(s) == 12
    assert sorted({e.ts for e in s}) == [1, 2, 51, 52, 101, 102]
    assert [e.label for e in s if e.ts == 52] == ["s3", "s4"]


def test_gen_planted_noise():
    s = gen_planted(1, 100, 50, 500, 900, seed=7)
    assert len(s) == 700
    pattern = [e for e in s if e.label.startswith("s")]
    noise = [e for e in s if e.label.startswith("t")]
    assert len(pattern) == 200 and len(noise) == 500
    assert all(1 <= e.ts <= 5000 for e in noise)
    assert all(1 <= int(e.label[1:]) <= 900 for e in noise)
    assert [e.id for e in s] == list(range(1, 701))
    assert s == gen_planted(1, 100, 50, 500, 900, seed=7)


def test_gen_planted_pattern_precedes_noise_on_ties():
    s = gen_planted(1, 100, 50, 2000, 3, seed=1)
    for a, b in zip(s.events, s.events[1:]):
        if a.ts == b.ts and a.label.startswith("t"):
            assert not b.label.startswith("s")


def test_gen_planted_noise_free_is_seed_independent():
    assert gen_planted(3, 4, 20, 0, 10, seed=1) == gen_planted(3, 4, 20, 0, 10, seed=99)


pairs = st.lists(st.tuples(st.integers(-50, 50), st.sampled_from(["a", "b", "c", "x1", "é"])), max_size=30)


@given(pairs)
def test_serialize_roundtrip(raw):
    s = from_pairs(sorted(raw, key=lambda p: p[0]))
    assert parse_sequence(serialize_sequence(s)) == s


@given(st.integers(1, 4), st.integers(1, 5), st.integers(1, 30), st.integers(0, 40), st.integers(1, 9),
       st.integers(0, 1000))
def test_generated_sequences_are_valid(n, reps, gap, noise, alpha, seed):
    s = gen_planted(n, reps, gap, noise, alpha, seed)
    assert len(s) == 2 * n * reps + noise
    for a, b in zip(s.events, s.events[1:]):
        assert b.id > a.id and b.ts >= a.ts
