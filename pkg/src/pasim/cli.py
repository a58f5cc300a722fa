"""Command-line front end.

Exit codes: 0 ok/true, 1 input error, 2 internal invariant violation,
3 query answered false, 4 oracle mismatch.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass

from .generate import random_game
from .model import PGSError, dump_pgs, format_rational, parse_pgs
from .oracle import brute_force
from .orderings import OrderCycleError, pair_to_document
from .refine import FollowChecker, RefinementStats, gcpp

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_FALSE, EXIT_MISMATCH = 0, 1, 2, 3, 4


@dataclass
class RunReport:
    digest: str
    player: int
    stats: RefinementStats
    wall_time: float
    blocks: int
    relation_size: int

    def lines(self) -> list[str]:
        return ([f"input_sha256={self.digest}", f"player={self.player}"]
                + self.stats.lines()
                + [f"wall_time={self.wall_time:.6f}", f"blocks={self.blocks}",
                   f"relation_size={self.relation_size}"])


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _read(path: str):
    """Return ``(text, game)`` or raise PGSError with a readable message."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise PGSError(f"cannot read {path}: {exc.strerror}") from None
    return text, parse_pgs(text)


def relation_document(g, relation) -> list[list[str]]:
    return [[g.states[s], g.states[t]] for s, t in sorted(relation)]


def dot_document(g, relation) -> str:
    lines = ["digraph simulation {"]
    lines += [f'  "{name}";' for name in g.states]
    lines += [f'  "{g.states[s]}" -> "{g.states[t]}";' for s, t in sorted(relation) if s != t]
    lines.append("}")
    return "\n".join(lines) + "\n"


def solve_document(g, result, emit: str) -> str:
    if emit == "dot":
        return dot_document(g, result.relation)
    doc = {}
    if emit in ("partition", "both"):
        doc["partition"] = pair_to_document(result.pair, g)
    if emit in ("relation", "both"):
        doc["relation"] = relation_document(g, result.relation)
    return json.dumps(doc, indent=2) + "\n"


def cmd_validate(args) -> int:
    try:
        g = _read(args.path)[1]
    except PGSError as exc:
        _err(str(exc))
        return EXIT_INPUT
    print(f"ok: {g.n_states} states, {len(g.actions1)}x{len(g.actions2)} actions")
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        text, g = _read(args.path)
    except PGSError as exc:
        _err(str(exc))
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        result = gcpp(g, args.player, threads=args.threads)
    except OrderCycleError as exc:
        _err(f"internal invariant violated: {exc}")
        return EXIT_INTERNAL
    elapsed = time.perf_counter() - start
    out = solve_document(g, result, args.emit)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if args.stats:
        report = RunReport(hashlib.sha256(text.encode()).hexdigest(), args.player, result.stats,
                           elapsed, len(result.pair.blocks), len(result.relation))
        print("\n".join(report.lines()), file=sys.stderr)
    return EXIT_OK


def cmd_query(args) -> int:
    try:
        g = _read(args.path)[1]
        s, t = g.state_index(args.s), g.state_index(args.t)
    except PGSError as exc:
        _err(str(exc))
        return EXIT_INPUT
    try:
        result = gcpp(g, args.player)
    except OrderCycleError as exc:
        _err(f"internal invariant violated: {exc}")
        return EXIT_INTERNAL
    if (s, t) not in result.relation:
        print("false")
        return EXIT_FALSE
    print("true")
    if args.verbose:
        gp = g.for_player(args.player)
        checker = FollowChecker(result.pair, gp)
        for a, name in enumerate(gp.actions1):
            w = checker.witness(s, t, a)
            mix = ", ".join(f"{gp.actions1[i]}: {format_rational(v)}"
                            for i, v in enumerate(w.alpha) if v)
            print(f"follow {name}: alpha = {{{mix}}}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        g = _read(args.path)[1]
    except PGSError as exc:
        _err(str(exc))
        return EXIT_INPUT
    try:
        fast = gcpp(g, args.player).relation
    except OrderCycleError as exc:
        _err(f"internal invariant violated: {exc}")
        return EXIT_INTERNAL
    slow = brute_force(g, args.player)
    if fast == slow:
        print(f"agree: {len(fast)} pairs")
        return EXIT_OK
    for s, t in sorted(fast - slow):
        print(f"mismatch: only refinement has ({g.states[s]}, {g.states[t]})", file=sys.stderr)
    for s, t in sorted(slow - fast):
        print(f"mismatch: only brute force has ({g.states[s]}, {g.states[t]})", file=sys.stderr)
    return EXIT_MISMATCH


def cmd_gen(args) -> int:
    try:
        g = random_game(args.states, args.actions1, args.actions2, args.labels,
                        args.denominator, args.branch, args.seed)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INPUT
    text = dump_pgs(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pasim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a model file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="compute the largest PA-simulation")
    p.add_argument("path")
    p.add_argument("--player", type=int, choices=(1, 2), default=1)
    p.add_argument("--out")
    p.add_argument("--emit", choices=("relation", "partition", "both", "dot"), default="both")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("query", help="does t simulate s?")
    p.add_argument("path")
    p.add_argument("s")
    p.add_argument("t")
    p.add_argument("--player", type=int, choices=(1, 2), default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("oracle", help="cross-check refinement against brute force")
    p.add_argument("path")
    p.add_argument("--player", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit a random model")
    p.add_argument("--states", type=int, default=4)
    p.add_argument("--actions1", type=int, default=2)
    p.add_argument("--actions2", type=int, default=2)
    p.add_argument("--labels", type=int, default=2)
    p.add_argument("--denominator", type=int, default=4)
    p.add_argument("--branch", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
