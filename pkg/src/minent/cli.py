"""Command-line front end.

Exit codes: 0 true/valid/accept, 1 false/invalid/reject, 2 usage or internal error.
The tableau node budget can be overridden with MINENT_NODE_BUDGET.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import run_bench
from .formula import ParseError, parse_sequent
from .proof import ProofError, check, dump_proof, load_proof
from .semantics import OracleLimitError, holds
from .tableau import DEFAULT_STRATEGY, STATUSES, STRATEGIES, TableauError, build_tableau, validate_tableau
from .translate import translate

OK, FAIL, USAGE = 0, 1, 2


def _counts(t) -> str:
    counts = t.status_counts()
    return " ".join(f"{s}={counts[s]}" for s in STATUSES)


def cmd_oracle(args) -> int:
    value = holds(parse_sequent(args.sequent))
    print("true" if value else "false")
    return OK if value else FAIL


def cmd_prove(args) -> int:
    t = build_tableau(parse_sequent(args.sequent), args.strategy)
    valid = validate_tableau(t)
    if args.emit == "json":
        print(json.dumps(t.to_dict(), indent=1))
    else:
        print("VALID" if valid else "INVALID")
        print(f"nodes={t.size} branches={len(t.leaves)} {_counts(t)}")
    return OK if valid else FAIL


def cmd_translate(args) -> int:
    s = parse_sequent(args.sequent)
    t = build_tableau(s, args.strategy)
    if not validate_tableau(t):
        print("INVALID")
        return FAIL
    proof = translate(t)
    result = check(proof)
    if not result.ok or proof.steps[proof.conclusion].sequent != s:
        print(f"internal error: translated proof rejected at step {result.step}", file=sys.stderr)
        return USAGE
    if args.emit:
        Path(args.emit).write_text(dump_proof(proof) + "\n")
    print("VALID")
    if args.stats:
        print(f"tableau_nodes={t.size} branches={len(t.leaves)} {_counts(t)}")
        print(f"proof_steps={proof.num_steps} proof_symbols={proof.symbols}")
    return OK


def cmd_check_proof(args) -> int:
    try:
        proof = load_proof(Path(args.file).read_text())
    except (ValueError, KeyError, TypeError, ParseError) as exc:
        print(f"malformed proof file: {exc}", file=sys.stderr)
        return USAGE
    result = check(proof)
    if result.ok:
        print(f"accept {proof.steps[proof.conclusion].sequent}")
        return OK
    print("reject")
    print(f"step {result.step}: {result.reason}", file=sys.stderr)
    return FAIL


def cmd_bench(args) -> int:
    kw = {"budget": args.budget, "strategy": args.strategy}
    if args.family == "phi":
        kw["max_n"] = args.max_n
    elif args.family == "random":
        kw.update(seed=args.seed, count=args.count)
    else:
        kw["path"] = Path(args.path)
    records = run_bench(args.family, Path(args.out), **kw)
    flags = {}
    for r in records:
        key = r.flag.split(":")[0] or "ok"
        flags[key] = flags.get(key, 0) + 1
    print(f"{len(records)} records written to {args.out}: "
          + " ".join(f"{k}={v}" for k, v in sorted(flags.items())))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minent", description="Minimal entailment toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("oracle", help="decide a sequent by model enumeration")
    q.add_argument("sequent")
    q.set_defaults(func=cmd_oracle)

    strategies = sorted(STRATEGIES)
    q = sub.add_parser("prove", help="build an OTAB tableau")
    q.add_argument("sequent")
    q.add_argument("--emit", choices=["json"])
    q.add_argument("--strategy", choices=strategies, default=DEFAULT_STRATEGY)
    q.set_defaults(func=cmd_prove)

    q = sub.add_parser("translate", help="translate the tableau into a checked MLK proof")
    q.add_argument("sequent")
    q.add_argument("--emit", metavar="FILE", help="write the proof as JSON")
    q.add_argument("--stats", action="store_true")
    q.add_argument("--strategy", choices=strategies, default=DEFAULT_STRATEGY)
    q.set_defaults(func=cmd_translate)

    q = sub.add_parser("check-proof", help="check a serialized proof")
    q.add_argument("file")
    q.set_defaults(func=cmd_check_proof)

    q = sub.add_parser("bench", help="run a benchmark family")
    q.add_argument("family", choices=["phi", "random", "corpus"])
    q.add_argument("--out", required=True)
    q.add_argument("--max-n", type=int, default=4)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=100)
    q.add_argument("--path", help="corpus file, one sequent per line")
    q.add_argument("--budget", type=int, help="tableau node budget per instance")
    q.add_argument("--strategy", choices=strategies, default=DEFAULT_STRATEGY)
    q.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.command == "bench" and args.family == "corpus" and not args.path:
        print("bench corpus needs --path", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except (ParseError, TableauError, OracleLimitError, ProofError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
