"""Command-line front end: ``subneg <command> ...``.

Exit codes: 0 success / provable, 1 unprovable or invalid proof,
2 naive search exhausted, 64 usage error, 65 unparsable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import MAX_SIZE, find_countermodel
from .formula import ParseError, parse
from .g3 import Provable, naive_prove
from .hist import decide
from .interpolation import NotProvable, interpolate
from .logics import Logic
from .proofs import ProofCheckError, ProofFormatError, check, deserialize, serialize
from .sequents import parse_goal, parse_split
from .transforms import reduce_negations, tilde

EXIT_OK, EXIT_NO, EXIT_EXHAUSTED = 0, 1, 2
EXIT_USAGE, EXIT_DATAERR = 64, 65

LOGIC_NAMES = [lg.value for lg in Logic]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _cmd_prove(args) -> int:
    logic = Logic.from_name(args.logic)
    seq = parse_goal(args.target)
    start = time.perf_counter()
    if args.naive:
        result = naive_prove(seq, logic, args.fuel)
        proof = result.proof if isinstance(result, Provable) else None
        verdict = "PROVABLE" if proof is not None else "EXHAUSTED"
        stats = {"fuel": args.fuel}
        code = EXIT_OK if proof is not None else EXIT_EXHAUSTED
    else:
        decision = decide(seq, logic)
        proof, verdict = decision.proof, decision.verdict
        stats = decision.stats.as_dict()
        code = EXIT_OK if proof is not None else EXIT_NO
    stats["seconds"] = round(time.perf_counter() - start, 6)
    if args.proof and proof is not None:
        with open(args.proof, "wb") as fh:
            fh.write(serialize(proof))
    if args.json:
        payload = {"verdict": verdict, "logic": logic.value, "sequent": str(seq)}
        if args.stats:
            payload["stats"] = stats
        print(json.dumps(payload, sort_keys=True))
    else:
        print(verdict)
        if args.stats:
            for key, value in stats.items():
                print(f"{key}: {value}")
    return code


def _cmd_check(args) -> int:
    logic = Logic.from_name(args.logic)
    try:
        with open(args.proof_file, "rb") as fh:
            tree = deserialize(fh.read())
        check(tree, logic)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO
    except ProofFormatError as exc:
        print(f"malformed proof: {exc}", file=sys.stderr)
        _emit(args, "INVALID", {"valid": False, "error": str(exc)})
        return EXIT_NO
    except ProofCheckError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        _emit(args, "INVALID", {"valid": False, "error": str(exc)})
        return EXIT_NO
    _emit(args, "VALID", {"valid": True, "conclusion": str(tree.conclusion), "height": tree.height})
    return EXIT_OK


def _cmd_interpolate(args) -> int:
    logic = Logic.from_name(args.logic)
    split = parse_split(args.split)
    try:
        res = interpolate(split, logic)
    except NotProvable:
        print(f"not provable in {logic.label}: {split.merged()}", file=sys.stderr)
        _emit(args, "UNPROVABLE", {"verdict": "UNPROVABLE"})
        return EXIT_NO
    left, right = res.left_check.verdict, res.right_check.verdict
    text = f"{res.interpolant}\nleft: {left}\nright: {right}"
    _emit(args, text, {"interpolant": str(res.interpolant), "left": left, "right": right})
    return EXIT_OK


def _cmd_translate(args) -> int:
    out = tilde(parse(args.formula))
    _emit(args, str(out), {"translation": str(out)})
    return EXIT_OK


def _cmd_simplify(args) -> int:
    out = reduce_negations(parse(args.formula))
    _emit(args, str(out), {"simplified": str(out)})
    return EXIT_OK


def _cmd_countermodel(args) -> int:
    logic = Logic.from_name(args.logic)
    if not 1 <= args.max_size <= MAX_SIZE:
        raise UsageError(f"--max-size must be between 1 and {MAX_SIZE}")
    found = find_countermodel(parse_goal(args.target), logic, args.max_size)
    if found is None:
        _emit(args, "NONE", {"countermodel": None})
        return EXIT_NO
    alg, val = found
    text = alg.describe() + "\nvaluation: " + " ".join(f"{k}={v}" for k, v in sorted(val.items()))
    payload = {"countermodel": {"size": alg.size, "leq": [[int(x) for x in row] for row in alg.leq],
                                "neg": list(alg.neg), "top": alg.top, "valuation": val}}
    _emit(args, text, payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subneg", description="Proof search for logics with weak negations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help_text, logic=True, logic_choices=LOGIC_NAMES):
        p = sub.add_parser(name, help=help_text)
        if logic:
            p.add_argument("--logic", required=True, choices=logic_choices)
        p.add_argument("--json", action="store_true", help="structured output")
        p.set_defaults(func=func)
        return p

    p = command("prove", _cmd_prove, "decide a sequent or formula")
    p.add_argument("--naive", action="store_true", help="use the fuel-bounded G3 search")
    p.add_argument("--fuel", type=int, default=30)
    p.add_argument("--proof", metavar="FILE", help="write the proof as JSON")
    p.add_argument("--stats", action="store_true")
    p.add_argument("target", metavar="SEQUENT_OR_FORMULA")

    p = command("check", _cmd_check, "validate a serialized proof")
    p.add_argument("proof_file", metavar="PROOF_JSON")

    p = command("interpolate", _cmd_interpolate, "interpolant for 'G ; D => f'")
    p.add_argument("split", metavar="SPLIT_SEQUENT")

    p = command("translate", _cmd_translate, "MPC to CoPC translation", logic=False)
    p.add_argument("formula")

    p = command("simplify", _cmd_simplify, "shorten negation towers", logic_choices=["copc", "mpc"])
    p.add_argument("formula")

    p = command("countermodel", _cmd_countermodel, "search for a refuting finite algebra")
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("target", metavar="SEQUENT")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "fuel", 1) < 1:
            raise UsageError("--fuel must be positive")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_DATAERR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
