import random
import subprocess
import sys

import pytest

from episodary.cli import main
from episodary.episode import serialize_episode
from episodary.oracle import enumerate_episodes
from episodary.sequence import parse_sequence

from conftest import TOY


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def small_input(tmp_path):
    return write(tmp_path, "small.txt", "1 a\n1 a\n2 b\n3 a\n")


def test_mine_text_output(small_input, tmp_path, capsys):
    assert main(["mine", "--input", small_input, "--window", "2", "--min-support", "2"]) == 0
    assert capsys.readouterr().out == (
        "4\tnodes: 1{a}; proper: -; weak: -\n"
        "2\tnodes: 1{a,a}; proper: -; weak: -\n"
        "2\tnodes: 1{a} 2{b}; proper: -; weak: -\n")


def test_mine_records_and_stats(small_input, tmp_path):
    out, stats = str(tmp_path / "out.tsv"), str(tmp_path / "stats.csv")
    assert main(["mine", "--input", small_input, "--window", "2", "--min-support", "2", "--format", "records",
                 "--output", out, "--stats", stats]) == 0
    assert open(out).read().splitlines() == ["4\t1\ta\t-\t-", "2\t1\ta,a\t-\t-", "2\t2\ta;b\t-\t-"]
    assert open(stats).read() == "window,sigma,closed,i_closed,frequent_estimate,scans\n2,2,3,4,4,16\n"


def test_mine_threshold_above_max_support(small_input, tmp_path):
    out = tmp_path / "out.txt"
    assert main(["mine", "--input", small_input, "--window", "2", "--min-support", "99", "--output", str(out)]) == 0
    assert out.read_text() == ""


def test_mine_is_deterministic(tmp_path):
    seq = str(tmp_path / "seq.txt")
    assert main(["gen", "--nodes", "2", "--reps", "30", "--gap", "20", "--noise", "80", "--noise-alphabet", "5",
                 "--seed", "3", "--output", seq]) == 0
    runs = []
    for k in range(2):
        out, stats = tmp_path / f"o{k}", tmp_path / f"s{k}"
        assert main(["mine", "--input", seq, "--window", "5", "--min-support", "20", "--output", str(out),
                     "--stats", str(stats)]) == 0
        kv = [line for line in stats.read_text().splitlines() if not line.startswith(("wall_time=", "output="))]
        runs.append((out.read_bytes(), kv))
    assert runs[0] == runs[1]
    assert any(line.startswith("i_closed=") for line in runs[0][1])


def test_table_row_three(tmp_path):
    seq = str(tmp_path / "seq.txt")
    stats = tmp_path / "stats.txt"
    assert main(["gen", "--nodes", "3", "--output", seq]) == 0
    assert main(["mine", "--input", seq, "--window", "10", "--min-support", "100", "--output", str(tmp_path / "o"),
                 "--stats", str(stats)]) == 0
    text = stats.read_text()
    assert "closed=6\n" in text and "i_closed=63\n" in text


def test_sweep(small_input, capsys):
    assert main(["sweep", "--input", small_input, "--window", "1", "2", "--min-support", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "window,sigma,closed,i_closed,frequent_estimate,scans"
    assert [line.split(",")[:2] for line in lines[1:]] == [["1", "2"], ["2", "2"]]


@pytest.mark.parametrize("argv,expected", [
    (["--nodes", "1", "--reps", "1", "--noise", "0"], "1 s1\n1 s2\n"),
])
def test_gen(argv, expected, capsys):
    assert main(["gen"] + argv) == 0
    assert capsys.readouterr().out == expected


def test_gen_layout(capsys):
    assert main(["gen", "--nodes", "2", "--reps", "3", "--noise", "0"]) == 0
    seq = parse_sequence(capsys.readouterr().out)
    assert len(seq) == 12 and sorted({e.ts for e in seq}) == [1, 2, 51, 52, 101, 102]


def test_check_cover(tmp_path, capsys):
    seq = write(tmp_path, "s.txt", "1 a\n2 b\n3 c\n3 d\n")
    g2 = write(tmp_path, "g2.txt", serialize_episode(TOY["G2"]) + "\n")
    g3 = write(tmp_path, "g3.txt", "# toy episode G3\n" + serialize_episode(TOY["G3"]) + "\n")
    assert main(["check", "cover", "--sequence", seq, "--episode", g2]) == 1
    assert main(["check", "cover", "--sequence", seq, "--episode", g3]) == 0
    assert capsys.readouterr().out == "false\ntrue\n"


def test_check_sub(tmp_path, capsys):
    g1 = write(tmp_path, "g1.txt", serialize_episode(TOY["G1"]))
    g2 = write(tmp_path, "g2.txt", serialize_episode(TOY["G2"]))
    assert main(["check", "sub", "--lhs", g1, "--rhs", g1]) == 0
    assert main(["check", "sub", "--lhs", g1, "--rhs", g2, "--oracle"]) == 0
    assert main(["check", "sub", "--lhs", g2, "--rhs", g1]) == 1
    assert capsys.readouterr().out == "true\ntrue\nfalse\n"


def test_check_sub_agrees_with_oracle(tmp_path, capsys):
    rng = random.Random(0)
    eps = enumerate_episodes("ab", 3, 3)
    pairs = [(rng.choice(eps), rng.choice(eps)) for _ in range(50)]
    for k, (G, H) in enumerate(pairs):
        lhs = write(tmp_path, f"l{k}", serialize_episode(G))
        rhs = write(tmp_path, f"r{k}", serialize_episode(H))
        assert main(["check", "sub", "--lhs", lhs, "--rhs", rhs]) == \
            main(["check", "sub", "--lhs", lhs, "--rhs", rhs, "--oracle"])


@pytest.mark.parametrize("argv", [
    [],
    ["mine", "--input", "x", "--window", "0", "--min-support", "1"],
    ["mine", "--input", "x", "--window", "two", "--min-support", "1"],
    ["mine", "--input", "x", "--window", "2"],
    ["gen", "--nodes", "0"],
    ["gen", "--nodes", "1", "--noise", "-1"],
    ["check", "sub", "--lhs", "x"],
    ["frobnicate"],
])
def test_bad_flags_exit_2(argv, capsys):
    assert main(argv) == 2


def test_gen_noise_without_alphabet_exits_2(capsys):
    assert main(["gen", "--nodes", "1", "--noise", "5", "--noise-alphabet", "0"]) == 2


@pytest.mark.parametrize("text", ["1 a\nbogus\n", "5 x\n3 y\n"])
def test_malformed_sequence_exit_3(tmp_path, text, capsys):
    path = write(tmp_path, "bad.txt", text)
    assert main(["mine", "--input", path, "--window", "2", "--min-support", "1"]) == 3
    assert "line 2" in capsys.readouterr().err


def test_malformed_episode_exit_3(tmp_path, capsys):
    seq = write(tmp_path, "s.txt", "1 a\n")
    bad = write(tmp_path, "e.txt", "nodes: 1{a}; proper: 1>2; weak: -\n")
    assert main(["check", "cover", "--sequence", seq, "--episode", bad]) == 3


def test_missing_file_exit_3(tmp_path, capsys):
    assert main(["mine", "--input", str(tmp_path / "nope"), "--window", "2", "--min-support", "1"]) == 3


def test_instance_abort_exit_4(tmp_path, capsys):
    path = write(tmp_path, "s.txt", "".join(f"{t} a\n" for t in range(1, 41)))
    assert main(["mine", "--input", path, "--window", "40", "--min-support", "1", "--instance-abort", "10"]) == 4


def test_module_entry_point(small_input):
    proc = subprocess.run([sys.executable, "-m", "episodary", "mine", "--input", small_input, "--window", "2",
                           "--min-support", "2"], capture_output=True, text=True, env={"EPISODARY_LOG": "info",
                                                                                       "PATH": ""})
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "4\tnodes: 1{a}; proper: -; weak: -"
    assert "closed=3" in proc.stderr
