"""Command-line front-end.

Exit codes: 0 success or SAT, 1 UNSAT, 2 usage or input error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .fileformat import NetworkFormatError, format_network, read_network
from .fragments import Verdict, classify, decide_tractable
from .network import Network, algebraic_closure, find_closed_scenario
from .planner import InfeasibleEndpoints, VariableMismatch, plan
from .projections import SemanticsKind
from .verify import verify_all

EXIT_OK, EXIT_UNSAT, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3

_KINDS = {k.value: k for k in SemanticsKind}


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so ``main`` can return codes."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _print_witness(label: str, witness: Network) -> None:
    print(label)
    sys.stdout.write(format_network(witness))


def cmd_closure(args: argparse.Namespace) -> int:
    closed = algebraic_closure(read_network(args.file))
    sys.stdout.write(format_network(closed))
    return EXIT_UNSAT if closed.trivially_unsatisfiable() else EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    print(classify(read_network(args.file)))
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    net = read_network(args.file)
    if not args.force_search:
        decision = decide_tractable(net)
        if decision.verdict is Verdict.UNSAT:
            print(f"UNSAT ({decision.pattern})")
            return EXIT_UNSAT
        if decision.verdict is Verdict.SAT:
            _print_witness(f"SAT ({decision.pattern})", decision.witness)
            return EXIT_OK
    witness = find_closed_scenario(net)
    if witness is None:
        print("UNSAT (search)")
        return EXIT_UNSAT
    _print_witness("SAT (search)", witness)
    return EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    start, goal = read_network(args.start), read_network(args.goal)
    constraints = read_network(args.constraints) if args.constraints else None
    try:
        result = plan(start, goal, args.steps, _KINDS[args.semantics], constraints)
    except InfeasibleEndpoints as exc:
        print(f"UNSAT ({exc})")
        return EXIT_UNSAT
    if not result.sat:
        print(f"UNSAT ({result.method})")
        return EXIT_UNSAT
    _print_witness(f"SAT ({result.method})", result.witness)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify_all(flip_partition_parity=args.flip_partition_parity)
    print(report)
    return EXIT_OK if report.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trcc8",
                     description="Reason about sequences of RCC8 relations over time.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log search details")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("closure", help="print the algebraic closure of a network")
    p.add_argument("file")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("classify", help="list the fragments each slice belongs to")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="decide weak satisfiability and print a witness")
    p.add_argument("file")
    p.add_argument("--force-search", action="store_true",
                   help="skip the closure-only decision and backtrack")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("plan", help="find a sequence taking one scenario to another")
    p.add_argument("--start", required=True, help="length-1 scenario file")
    p.add_argument("--goal", required=True, help="length-1 scenario file")
    p.add_argument("--steps", required=True, type=int, help="sequence length m")
    p.add_argument("--constraints", help="network applied at every index (length 1 or m)")
    p.add_argument("--semantics", choices=sorted(_KINDS), default="neighbour")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify-paper", help="re-check the reference results")
    p.add_argument("--flip-partition-parity", action="store_true",
                   help="swap instant/interval positions (should make a check fail)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (NetworkFormatError, VariableMismatch, OSError, ValueError) as exc:
        print(f"trcc8: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
