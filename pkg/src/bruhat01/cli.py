"""Command-line front end.

Exit codes: 0 success, 1 negative verdict from a test-like subcommand,
2 usage error, 3 class too large or search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .coincidence import (
    ROUTES, CounterexampleCertificate, counterexample, orders_coincide,
    verify_certificate, verify_theorem,
)
from .enumeration import DEFAULT_CAP, ClassSpec, ClassTooLarge, count, enumerate_class
from .matrix import BinaryMatrix
from .orders import (
    DEFAULT_BUDGET, PAIRWISE_CAP, BudgetExhausted, bruhat_leq, build_hasse, secondary_leq,
)
from .partitions import gale_ryser_feasible, ryser_witness, verify_lemma_family

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


@dataclass
class CliConfig:
    subcommand: str
    fmt: str = "text"
    cap: int | None = None
    budget: int = DEFAULT_BUDGET
    seed: int | None = None  # reserved
    threads: int = 1


def _margins(text: str) -> tuple[int, ...]:
    text = text.strip()
    try:
        return tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_class_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-n", type=int, help="size of A(n, k)")
    p.add_argument("-k", type=int, help="row/column sum of A(n, k)")
    p.add_argument("-R", type=_margins, help="row sums, e.g. 2,2,2")
    p.add_argument("-S", type=_margins, help="column sums, e.g. 2,2,2")


def _class_spec(parser: argparse.ArgumentParser, args) -> ClassSpec:
    square = args.n is not None or args.k is not None
    margins = args.R is not None or args.S is not None
    if square and margins:
        parser.error("-n/-k and -R/-S are mutually exclusive")
    try:
        if square:
            if args.n is None or args.k is None:
                parser.error("-n and -k must be given together")
            return ClassSpec.square(args.n, args.k)
        if args.R is None or args.S is None:
            parser.error("give either -n and -k, or -R and -S")
        return ClassSpec(args.R, args.S)
    except ValueError as exc:
        parser.error(str(exc))


def _read_matrix(parser, path: str) -> BinaryMatrix:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return BinaryMatrix.from_text(text)
    except (OSError, ValueError) as exc:
        parser.error(f"cannot read matrix from {path}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhat01",
        description="Bruhat and secondary Bruhat orders on classes of (0,1)-matrices.")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $BRUHAT01_THREADS or 1)")
    parser.add_argument("--seed", type=int, default=None, help="reserved; unused")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("feasible", help="Gale-Ryser test for A(R, S) != empty")
    p.add_argument("-R", type=_margins, required=True)
    p.add_argument("-S", type=_margins, required=True)

    p = sub.add_parser("enumerate", help="count or list the members of a class")
    _add_class_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("witness", help="one matrix with the given margins")
    _add_class_args(p)

    p = sub.add_parser("compare", help="compare two matrices in both orders")
    p.add_argument("--a", required=True, metavar="FILE")
    p.add_argument("--b", required=True, metavar="FILE")
    p.add_argument("--order", choices=("bruhat", "secondary", "both"), default="both")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("hasse", help="Hasse diagram of either order")
    _add_class_args(p)
    p.add_argument("--order", choices=("bruhat", "secondary"), required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--cap", type=int, default=PAIRWISE_CAP)

    p = sub.add_parser("coincide", help="decide whether the two orders coincide on a class")
    _add_class_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cap", type=int, default=PAIRWISE_CAP)

    p = sub.add_parser("counterexample", help="certificate that the orders differ on A(n, k)")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--route", choices=ROUTES)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("verify-certificate", help="re-check a certificate JSON file")
    p.add_argument("file", metavar="FILE")

    p = sub.add_parser("verify-theorem", help="table of expected vs observed coincidence")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cap", type=int, default=PAIRWISE_CAP)

    p = sub.add_parser("lemma-family", help="prefix differences for the special margins")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _config(args) -> CliConfig:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("BRUHAT01_THREADS", "1"))
    return CliConfig(
        subcommand=args.subcommand,
        fmt=getattr(args, "format", "text"),
        cap=getattr(args, "cap", None),
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        seed=args.seed,
        threads=max(1, threads),
    )


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(args)
    emit = lambda s="": print(s, file=out)
    cmd = cfg.subcommand

    try:
        if cmd == "feasible":
            ok = gale_ryser_feasible(args.R, args.S)
            emit("feasible" if ok else "infeasible")
            return EXIT_OK if ok else EXIT_NEGATIVE

        if cmd == "enumerate":
            spec = _class_spec(parser, args)
            if args.list:
                first = True
                for mat in enumerate_class(spec, cap=cfg.cap):
                    if not first:
                        emit()
                    out.write(mat.to_text())
                    first = False
            else:
                emit(str(count(spec)))
            return EXIT_OK

        if cmd == "witness":
            spec = _class_spec(parser, args)
            try:
                out.write(ryser_witness(spec.R, spec.S).to_text())
            except ValueError as exc:
                print(f"infeasible: {exc}", file=sys.stderr)
                return EXIT_NEGATIVE
            return EXIT_OK

        if cmd == "compare":
            A, B = _read_matrix(parser, args.a), _read_matrix(parser, args.b)
            if A.shape != B.shape or A.row_sums != B.row_sums or A.col_sums != B.col_sums:
                parser.error("the two matrices must lie in the same class")
            result = {}
            if args.order in ("bruhat", "both"):
                result["bruhat"] = {"a_leq_b": bruhat_leq(A, B), "b_leq_a": bruhat_leq(B, A)}
            if args.order in ("secondary", "both"):
                result["secondary"] = {"a_leq_b": secondary_leq(A, B, cfg.budget),
                                       "b_leq_a": secondary_leq(B, A, cfg.budget)}
            if cfg.fmt == "json":
                emit(_dump(result))
            else:
                for kind, r in result.items():
                    emit(f"{kind}: a <= b {str(r['a_leq_b']).lower()}, b <= a {str(r['b_leq_a']).lower()}")
            return EXIT_OK

        if cmd == "hasse":
            spec = _class_spec(parser, args)
            diagram = build_hasse(spec, args.order, cap=cfg.cap)
            if cfg.fmt == "json":
                emit(_dump(diagram.to_json()))
            else:
                out.write(diagram.to_dot())
            return EXIT_OK

        if cmd == "coincide":
            spec = _class_spec(parser, args)
            res = orders_coincide(spec, cap=cfg.cap)
            if cfg.fmt == "json":
                emit(_dump(res.to_json()))
            else:
                emit(res.status)
                if res.witness is not None:
                    a, c = res.witness
                    emit("bruhat-below, not secondary-below:")
                    out.write(a.to_text())
                    emit()
                    out.write(c.to_text())
            return {"coincide": EXIT_OK, "differ": EXIT_NEGATIVE}.get(res.status, EXIT_LIMIT)

        if cmd == "counterexample":
            try:
                cert = counterexample(args.n, args.k, args.route)
            except ValueError as exc:
                parser.error(str(exc))
            obj = cert.to_json()
            code = EXIT_OK
            if args.verify:
                report = verify_certificate(cert)
                obj["verified"] = report.passed
                obj["checks"] = report.to_json()["checks"]
                code = EXIT_OK if report.passed else EXIT_NEGATIVE
            emit(_dump(obj))
            return code

        if cmd == "verify-certificate":
            text = sys.stdin.read() if args.file == "-" else open(args.file).read()
            report = verify_certificate(CounterexampleCertificate.from_json(text))
            emit(str(report))
            emit("verified" if report.passed else "NOT verified")
            return EXIT_OK if report.passed else EXIT_NEGATIVE

        if cmd == "verify-theorem":
            rows = verify_theorem(args.max_n, cap=cfg.cap, threads=cfg.threads)
            if cfg.fmt == "json":
                emit(_dump([r.to_json() for r in rows]))
            else:
                emit(f"{'n':>3} {'k':>3}  {'expected':<9} {'observed':<11} method")
                for r in rows:
                    emit(f"{r.n:>3} {r.k:>3}  {r.expected:<9} {r.observed:<11} {r.method}")
            return EXIT_OK if all(r.agrees for r in rows) else EXIT_NEGATIVE

        if cmd == "lemma-family":
            try:
                report = verify_lemma_family(args.k, args.m)
            except ValueError as exc:
                parser.error(str(exc))
            if cfg.fmt == "json":
                emit(_dump(report.to_json()))
            else:
                emit(f"R  = {report.R}")
                emit(f"R* = {report.R_conj}")
                emit("prefix differences (s = 1..k-1): " + " ".join(map(str, report.differences)))
                for name, (obs, formula, ok) in report.closed_forms.items():
                    emit(f"{name}: observed {obs}, closed form {formula}, {'match' if ok else 'MISMATCH'}")
                emit(f"R strictly below R*: {str(report.strictly_below).lower()}")
                emit("passed" if report.passed else "FAILED")
            return EXIT_OK if report.passed else EXIT_NEGATIVE
    except (ClassTooLarge, BudgetExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT

    parser.error(f"unknown subcommand {cmd}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
