"""Command-line front end: ``episodary {mine,sweep,gen,check}``.

Exit codes: 0 success (or ``true`` for checks), 1 ``false`` for checks,
2 bad arguments, 3 unreadable input, 4 resource limit hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass

from .episode import EpisodeParseError, episode_record, read_episode, serialize_episode
from .instance import InstanceAbortError
from .miner import MinerConfig, MinerStats, mine
from .oracle import OracleAbortError, brute_subepisode, covers
from .sequence import SequenceParseError, gen_planted, read_sequence, serialize_sequence
from .subepisode import subepisode

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3, 4

STATS_COLUMNS = ["window", "sigma", "closed", "i_closed", "frequent_estimate", "scans"]

log = logging.getLogger("episodary")


@dataclass
class RunReport:
    input: str
    window: int
    sigma: int
    stats: MinerStats
    wall_time: float
    output: str

    def row(self) -> dict:
        s = self.stats
        return {"window": self.window, "sigma": self.sigma, "closed": s.closed, "i_closed": s.i_closed,
                "frequent_estimate": s.frequent_estimate, "scans": s.scans}

    def key_values(self) -> str:
        items = {"input": self.input, **self.row(), "output": self.output,
                 "wall_time": f"{self.wall_time:.3f}"}
        return "".join(f"{k}={v}\n" for k, v in items.items())


def _setup_logging():
    level = os.environ.get("EPISODARY_LOG", "off").lower()
    if level == "off":
        logging.getLogger("episodary").addHandler(logging.NullHandler())
        return
    logging.basicConfig(level=logging.DEBUG if level == "debug" else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=STATS_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def format_episodes(episodes, fmt: str) -> str:
    if fmt == "records":
        return "".join(episode_record(G) + "\n" for G in episodes)
    return "".join(f"{G.support}\t{serialize_episode(G)}\n" for G in episodes)


def cmd_mine(args) -> int:
    seq = read_sequence(args.input)
    cfg = MinerConfig(args.window, args.min_support, args.instance_abort)
    start = time.perf_counter()
    episodes, stats = mine(seq, cfg)
    elapsed = time.perf_counter() - start
    _write(args.output, format_episodes(episodes, args.format))
    report = RunReport(args.input, args.window, args.min_support, stats, elapsed, args.output or "-")
    if args.stats:
        text = _csv_text([report.row()]) if args.stats.endswith(".csv") else report.key_values()
        _write(args.stats, text)
    log.info("closed=%d i_closed=%d scans=%d", stats.closed, stats.i_closed, stats.scans)
    return EXIT_OK


def cmd_sweep(args) -> int:
    seq = read_sequence(args.input)
    rows = []
    for window in args.window:
        for sigma in args.min_support:
            _, stats = mine(seq, MinerConfig(window, sigma, args.instance_abort))
            rows.append({"window": window, "sigma": sigma, **{k: v for k, v in asdict(stats).items()}})
    _write(args.stats, _csv_text([{k: r[k] for k in STATS_COLUMNS} for r in rows]))
    return EXIT_OK


def cmd_gen(args) -> int:
    seq = gen_planted(args.nodes, args.reps, args.gap, args.noise, args.noise_alphabet, args.seed)
    _write(args.output, serialize_sequence(seq))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.what == "cover":
        result = covers(read_sequence(args.sequence), read_episode(args.episode))
    else:
        lhs, rhs = read_episode(args.lhs), read_episode(args.rhs)
        result = brute_subepisode(lhs, rhs) if args.oracle else subepisode(lhs, rhs)
    print("true" if result else "false")
    return EXIT_OK if result else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="episodary",
                                     description="Mine closed episodes with simultaneous events.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine closed frequent episodes")
    p.add_argument("--input", required=True)
    p.add_argument("--window", type=_positive, required=True)
    p.add_argument("--min-support", type=_positive, required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=["text", "records"], default="text")
    p.add_argument("--stats", help="stats file; CSV if it ends in .csv, key=value lines otherwise")
    p.add_argument("--instance-abort", type=_positive, default=10**7)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("sweep", help="mine over several windows/thresholds and tabulate stats")
    p.add_argument("--input", required=True)
    p.add_argument("--window", type=_positive, nargs="+", required=True)
    p.add_argument("--min-support", type=_positive, nargs="+", required=True)
    p.add_argument("--stats", help="CSV output (default stdout)")
    p.add_argument("--instance-abort", type=_positive, default=10**7)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", help="generate a sequence with a planted pattern")
    p.add_argument("--nodes", type=_positive, required=True)
    p.add_argument("--reps", type=_positive, default=100)
    p.add_argument("--gap", type=_positive, default=50)
    p.add_argument("--noise", type=_non_negative, default=500)
    p.add_argument("--noise-alphabet", type=_non_negative, default=900)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="decide coverage or the subepisode relation")
    check = p.add_subparsers(dest="what", required=True)
    c = check.add_parser("cover")
    c.add_argument("--sequence", required=True)
    c.add_argument("--episode", required=True)
    c = check.add_parser("sub")
    c.add_argument("--lhs", required=True)
    c.add_argument("--rhs", required=True)
    c.add_argument("--oracle", action="store_true", help="use the brute-force decision procedure")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (SequenceParseError, EpisodeParseError, OSError) as exc:
        print(f"episodary: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InstanceAbortError, OracleAbortError) as exc:
        print(f"episodary: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"episodary: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
