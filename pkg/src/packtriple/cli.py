"""Command-line front end: ``packtriple {solve,check,gen,verify,badpairs}``.

Exit codes: 0 success (a witness for ``solve``), 1 no packing, 2 error.
Setting ``PACKTRIPLE_GUARD_OVERRIDE=1`` lifts the size guards on brute force
and exhaustive enumeration; runs past those guards can take hours or exhaust memory.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .conditions import THEOREMS, check_all, check_be, check_edge_sum_lemma7, lemma7_bound, Prediction
from .core import PackingMap, Triple, is_packing
from .fileformat import TripleFormatError, format_packing, format_triple, parse_triple_file
from .generators import FAMILY_TAGS, be_bad_pair_triple, family_triple
from .solver import (
    GuardError,
    backtrack_pack,
    brute_force_pack,
    constructive_lemma7,
    constructive_pack_be,
    constructive_ss_product,
    ss_product_applicable,
)
from .verifier import EnumSpec, verify_theorem

EXIT_OK, EXIT_NO_PACKING, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def constructive_pack(t: Triple) -> tuple[str, PackingMap | None]:
    """Run the first constructive packer whose hypothesis holds; backtrack otherwise."""
    if ss_product_applicable(t):
        return "ss_product", constructive_ss_product(t)
    if check_edge_sum_lemma7(t).predicted is Prediction.MUST_PACK:
        return "lemma7", constructive_lemma7(t)
    if check_be(t).predicted is Prediction.MUST_PACK:
        return "be", constructive_pack_be(t)
    return "backtrack", backtrack_pack(t)


def _read_triple(path: str) -> Triple:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_triple_file(text)
    except TripleFormatError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _write(path: str | None, text: str, out) -> None:
    if path is None:
        out.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from exc


def _caps(text: str) -> tuple[int | None, int | None, int | None]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("caps take the form D1,D2,D3 (use - for no cap)")
    try:
        vals = tuple(None if p.strip() in ("-", "") else int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad caps {text!r}") from None
    if any(v is not None and v < 0 for v in vals):
        raise argparse.ArgumentTypeError("caps must be non-negative")
    return vals  # type: ignore[return-value]


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def default_edge_sum(theorem: str, n: int) -> int:
    return {"be": 2 * n - 3, "lemma7": lemma7_bound(n), "cor8": n}.get(theorem, n)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="packtriple", description="List packing of graph triples.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find a packing or report that none exists")
    s.add_argument("file")
    s.add_argument("--method", choices=("brute", "backtrack", "constructive"), default="backtrack")

    c = sub.add_parser("check", help="report which theorem hypotheses hold")
    c.add_argument("file")

    g = sub.add_parser("gen", help="write a triple from a named family")
    g.add_argument("--family", required=True, type=str.upper, choices=FAMILY_TAGS)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--mp", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="check a theorem over enumerated triples")
    v.add_argument("--theorem", required=True, choices=THEOREMS)
    v.add_argument("--n", required=True, type=_positive)
    v.add_argument("--max-edge-sum", type=int, help="default: the theorem's edge bound (n for ss_product)")
    v.add_argument("--caps", type=_caps, help="degree caps D1,D2,D3; - leaves one uncapped")
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="enumerate every triple (default)")
    mode.add_argument("--samples", type=_positive)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=_positive, default=1)
    v.add_argument("--engine", choices=("auto", "object", "kernel"), default="auto")
    v.add_argument("--constructive", action="store_true", help="also run the theorem's own packer")
    v.add_argument("--out-dir", help="directory for counterexample triple files")
    v.add_argument("--summary", action="store_true", help="print only the one-line summary")

    b = sub.add_parser("badpairs", help="write the seven exceptional pairs as triple files")
    b.add_argument("-o", "--output", required=True, metavar="DIR")
    return p


def _solve(args, out) -> int:
    t = _read_triple(args.file)
    if args.method == "brute":
        f = brute_force_pack(t)
    elif args.method == "backtrack":
        f = backtrack_pack(t)
    else:
        _, f = constructive_pack(t)
    if f is None:
        out.write("no-packing\n")
        return EXIT_NO_PACKING
    assert is_packing(t, f)
    out.write(format_packing(f) + "\n")
    return EXIT_OK


def _check(args, out) -> int:
    t = _read_triple(args.file)
    for name, rep in zip(THEOREMS, check_all(t)):
        out.write((rep.line() if rep else f"{name} hypothesis=- exception=- predicted=no_prediction") + "\n")
    return EXIT_OK


def _gen(args, out) -> int:
    try:
        t = family_triple(args.family, n=args.n, m=args.m, mp=args.mp, k=args.k)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _write(args.output, format_triple(t, comment=args.family), out)
    return EXIT_OK


def _verify(args, out) -> int:
    mes = args.max_edge_sum if args.max_edge_sum is not None else default_edge_sum(args.theorem, args.n)
    try:
        if args.samples:
            spec = EnumSpec.sample(args.n, mes, args.samples, args.seed, degree_caps=args.caps)
        else:
            spec = EnumSpec(args.n, mes, degree_caps=args.caps)
        rep = verify_theorem(args.theorem, spec, workers=args.workers, engine=args.engine,
                             out_dir=args.out_dir, constructive=args.constructive)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    out.write(rep.summary() + "\n" if args.summary else rep.render())
    return EXIT_OK if not rep.counterexamples else EXIT_NO_PACKING


def _badpairs(args, out) -> int:
    try:
        os.makedirs(args.output, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create {args.output}: {exc.strerror}") from exc
    for i in range(1, 8):
        path = os.path.join(args.output, f"be_bad_pair_{i}.triple")
        _write(path, format_triple(be_bad_pair_triple(i), comment=f"BE{i}"), out)
        out.write(path + "\n")
    return EXIT_OK


COMMANDS = {"solve": _solve, "check": _check, "gen": _gen, "verify": _verify, "badpairs": _badpairs}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return COMMANDS[args.command](args, out)
    except (CliError, GuardError) as exc:
        err.write(f"packtriple: error: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
