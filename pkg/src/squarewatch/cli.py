"""Command-line entry point: ``squarewatch analyze|batch|generate|lemmas|random``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Iterable, Optional, Sequence, TextIO

from . import families
from .analysis import analyze, batch, lemma_suite
from .errors import GraphInputError, SquarewatchError
from .graph import Graph, basic_checks, dist2_profile
from .io import encode_graph6, format_adjacency, read_graphs

SEED_ENV = "SQUAREWATCH_SEED"

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _dump(obj: Any, out: TextIO) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii", errors="replace") as fh:
        return fh.read()


def resolve_seed(flag: Optional[int]) -> int:
    """Explicit ``--seed`` wins, then the environment variable, then 0."""
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise GraphInputError(f"{SEED_ENV}={env!r} is not an integer") from None


def _connected_square_incomplete(g: Graph) -> bool:
    c = basic_checks(g, dist2_profile(g))
    return c.is_connected and not c.square_complete


def _write_graphs(graphs: Iterable[Graph], fmt: str, out: TextIO) -> None:
    for g in graphs:
        if fmt == "adj":
            out.write(format_adjacency(g))
        else:
            out.write(encode_graph6(g).decode("ascii") + "\n")


def cmd_analyze(args: argparse.Namespace, out: TextIO) -> int:
    code = EXIT_OK
    for input_id, g in read_graphs(_read_text(args.file)):
        if isinstance(g, Exception):
            _dump({"input_id": input_id, "status": "parse-error", "error": str(g)}, out)
            code = EXIT_USAGE if code == EXIT_OK else code
            continue
        rep = analyze(g, input_id)
        _dump(rep.to_json(timing=not args.no_timing), out)
        if rep.status == "violation":
            code = EXIT_VIOLATION
    return code


def cmd_batch(args: argparse.Namespace, out: TextIO) -> int:
    items = read_graphs(_read_text(args.file))
    violation = parse_error = False
    for rep in batch(items, jobs=args.jobs, timing=not args.no_timing):
        _dump(rep, out)
        violation |= rep.get("status") == "violation"
        parse_error |= rep.get("status") == "parse-error"
    return EXIT_VIOLATION if violation else EXIT_USAGE if parse_error else EXIT_OK


def cmd_lemmas(args: argparse.Namespace, out: TextIO) -> int:
    code = EXIT_OK
    for input_id, g in read_graphs(_read_text(args.file)):
        if isinstance(g, Exception):
            _dump({"input_id": input_id, "status": "parse-error", "error": str(g)}, out)
            code = EXIT_USAGE if code == EXIT_OK else code
            continue
        suite = lemma_suite(g)
        _dump({"input_id": input_id, "lemmas": suite.to_json()}, out)
        if suite.failures:
            code = EXIT_VIOLATION
    return code


def _generate(args: argparse.Namespace) -> list[Graph]:
    fam = args.family
    if fam == "snake":
        return [families.make_snake(args.d, args.ka, args.kb)[0]]
    if fam == "peanut":
        return [families.make_peanut(args.d)[0]]
    if fam == "atail":
        return [families.make_atail_graph(args.d, args.k, args.x_prime)[0]]
    if fam == "btail":
        return [families.make_btail_graph(args.d, args.k, args.x_prime)[0]]
    if fam == "multitail":
        counts = [int(t) for t in args.counts.split(",") if t.strip()]
        return [families.make_multitail_graph(args.d, counts)[0]]
    seed = resolve_seed(args.seed)
    accept = None if args.allow_disconnected else _connected_square_incomplete
    return [g for _, g in families.random_corpus(args.n, args.d, args.count, seed, accept)]


def cmd_generate(args: argparse.Namespace, out: TextIO) -> int:
    graphs = _generate(args)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            _write_graphs(graphs, args.format, fh)
    else:
        _write_graphs(graphs, args.format, out)
    return EXIT_OK


def cmd_random(args: argparse.Namespace, out: TextIO) -> int:
    args.family = "random"
    return cmd_generate(args, out)


def _add_random_opts(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--d", type=int, required=required)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=None,
                   help=f"master seed; falls back to ${SEED_ENV}, then 0")
    p.add_argument("--allow-disconnected", action="store_true",
                   help="keep samples that are disconnected or have a complete square")


def _add_output_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help="write graphs here instead of stdout")
    p.add_argument("--format", choices=("g6", "adj"), default="g6")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squarewatch",
        description="Check distance-2 degree bounds and structure of regular graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report on every graph in a file")
    p.add_argument("file", help="graph6 (one per line) or adjacency list; '-' for stdin")
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("batch", help="reports plus a summary line, optionally in parallel")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("lemmas", help="run only the structural lemma checks")
    p.add_argument("file")
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("generate", help="emit a named family member or random graphs")
    gen = p.add_subparsers(dest="family", required=True)
    g = gen.add_parser("snake")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--ka", type=int, default=1)
    g.add_argument("--kb", type=int, default=1)
    g = gen.add_parser("peanut")
    g.add_argument("--d", type=int, required=True)
    for name in ("atail", "btail"):
        g = gen.add_parser(name)
        g.add_argument("--d", type=int, required=True)
        g.add_argument("--k", type=int, default=1)
        g.add_argument("--x-prime", type=int, default=0 if name == "atail" else 2)
    g = gen.add_parser("multitail")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--counts", default="1,1,1", help="segments per tail, comma separated")
    g = gen.add_parser("random")
    _add_random_opts(g, required=True)
    for g in gen.choices.values():
        _add_output_opts(g)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("random", help="emit seeded random connected regular graphs")
    _add_random_opts(p, required=True)
    _add_output_opts(p)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except (SquarewatchError, OSError) as exc:
        print(f"squarewatch: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
