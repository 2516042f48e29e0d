"""
Command-line front end, installed as ``superjordan``.

Exit codes: 0 when every check passes (open claims only gather evidence), 1 when a mathematical
check fails, 2 for usage, parse and parameter errors.
"""
import argparse
import time
from typing import Optional, Sequence

import numpy as np

from error_function import AlgebraFileError, NoRealization, SuperJordanError
from general_function import generate_log
from linalg_function import as_vector, graded_subspace, scalar_to_string, to_scalar
from superalgebra_function import (
    Superalgebra, VerificationReport, basis_vector, check_associative, check_jordan_super,
    check_superinvolution, element_from_matrix, realize)
from catalog_function import CATALOG, build_from_spec, build_superinvolution, matrix_superalgebra, q_n
from generation_function import Verdict, assoc_closure, jordan_closure, maximality_check, parse_mode
from osp_function import OSP_LABELS, vm_form, vm_module, verify_embedding_claims
from maximal_function import registry_exit_code, run_registry
from polars_function import build_report_frame, summarize_status, failed_claims
from serialization_function import read_algebra, registry_report, report_file, write_algebra, write_json

log = generate_log(name=__name__)


def _format_matrix(matrix: np.ndarray) -> str:
    cells = [[scalar_to_string(x) for x in row] for row in matrix]
    width = max((len(cell) for row in cells for cell in row), default=1)
    return "\n".join("  [" + " ".join(cell.rjust(width) for cell in row) + "]" for row in cells)


def _parse_vector(algebra: Superalgebra, text: str) -> np.ndarray:
    """A basis label (``e``, ``e12``) or comma-separated rational coordinates."""
    text = text.strip()
    if text in algebra.labels:
        return basis_vector(algebra, algebra.index(text))
    try:
        values = [to_scalar(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise AlgebraFileError(f"{text!r} is neither a basis label nor a rational vector") from None
    return as_vector(values, algebra.dim)


def _print_report(report: VerificationReport):
    state = "passed" if report.passed else "FAILED"
    print(f"{report.check} on {report.subject}: {state}")
    if report.counterexample:
        print(f"  counterexample: {', '.join(str(x) for x in report.counterexample)}")
    for key, value in report.details.items():
        print(f"  {key}: {value}")


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.catalog_cmd == "list":
        for name, description in CATALOG.items():
            print(f"{name:<26} {description}")
        return 0
    algebra = build_from_spec(args.spec)
    involution = build_superinvolution(args.spec, args.superinvolution) if args.superinvolution else None
    even, odd = algebra.dims
    print(f"{algebra.name}: dim {algebra.dim} ({even}|{odd})")
    if args.out:
        write_algebra(args.out, algebra, involution)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    algebra, involution = read_algebra(args.file)
    if args.identity == "jordan":
        report = check_jordan_super(algebra)
    elif args.identity == "associative":
        report = check_associative(algebra)
    else:
        if involution is None:
            raise AlgebraFileError(f"{args.file} carries no superinvolution")
        report = check_superinvolution(involution)
    _print_report(report)
    return 0 if report.passed else 1


def _associative_ambient(algebra: Superalgebra, vectors: list[np.ndarray]) -> tuple[Superalgebra, list[np.ndarray]]:
    if algebra.associative:
        return algebra, vectors
    realization = algebra.realization
    if realization is None:
        raise NoRealization(f"{algebra.name} is not associative and has no matrix realization")
    if realization.queer:
        ambient = q_n(realization.block_sizes[0])
    else:
        ambient = matrix_superalgebra(*realization.block_sizes)
    return ambient, [element_from_matrix(ambient, realize(algebra, v)) for v in vectors]


def cmd_closure(args: argparse.Namespace) -> int:
    algebra, _ = read_algebra(args.algebra)
    vectors = [_parse_vector(algebra, text) for text in args.span]
    if args.assoc:
        ambient, vectors = _associative_ambient(algebra, vectors)
        result = assoc_closure(ambient, vectors)
    else:
        ambient = algebra
        result = jordan_closure(algebra, vectors)
    even, odd = result.subspace.dims
    kind = "associative" if args.assoc else "Jordan"
    print(f"{kind} closure in {ambient.name}: dim {result.dim} ({even}|{odd}), {result.rounds} rounds")
    if not result.graded:
        print("  the closure is not graded; the dimensions are those of its graded hull")
    if args.dump:
        for row in result.subspace.basis:
            print("  " + ",".join(scalar_to_string(x) for x in row))
    return 0


def cmd_maximal(args: argparse.Namespace) -> int:
    algebra, _ = read_algebra(args.algebra)
    mode = parse_mode(args.mode)
    subalgebra = graded_subspace(algebra.parities, [_parse_vector(algebra, text) for text in args.sub])
    start = time.perf_counter()
    report = maximality_check(algebra, subalgebra, mode, threads=args.threads)
    seconds = time.perf_counter() - start
    print(f"{report.verdict.value}: B {report.subalgebra_dims} in {algebra.name} {report.algebra_dims}, mode {mode}")
    witness = report.counterexample
    if witness is not None:
        print(f"  witness {','.join(scalar_to_string(x) for x in witness.vector)} generates dim {witness.closure_dim}")
    if report.verdict == Verdict.INCONCLUSIVE:
        log.warning(f"inconclusive in mode {mode}: {report.details}")
    if args.report:
        write_json(args.report, report_file(args.claim or algebra.name, report, seconds))
    return 1 if report.verdict == Verdict.COUNTEREXAMPLE else 0


def cmd_registry(args: argparse.Namespace) -> int:
    results = run_registry(args.filter, modes=args.mode, threads=args.threads)
    if not results:
        log.warning(f"no claim matches {args.filter!r}")
    records = [result.to_dict() for result in results]
    frame = build_report_frame(records)
    print(frame.select("claim_id", "status", "verdicts", "seconds"))
    print(summarize_status(frame))
    for claim_id in failed_claims(frame):
        log.error(f"{claim_id} failed")
    if args.json:
        write_json(args.json, registry_report(records))
    return registry_exit_code(results)


def cmd_osp(args: argparse.Namespace) -> int:
    module = vm_module(args.m)
    for label in OSP_LABELS:
        print(f"rho({label}) =")
        print(_format_matrix(module.rho[label]))
    if args.form:
        print("invariant form =")
        print(_format_matrix(vm_form(module).gram))
    if args.embed is not None:
        report = verify_embedding_claims(args.m, to_scalar(args.embed))
        _print_report(report)
        return 0 if report.passed else 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superjordan", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--log-level", default=None, help="Overrides the LOG_LEVEL setting")
    sub = parser.add_subparsers(dest="cmd", required=True)

    catalog = sub.add_parser("catalog", help="List or build catalog algebras")
    catalog_sub = catalog.add_subparsers(dest="catalog_cmd", required=True)
    catalog_sub.add_parser("list")
    build = catalog_sub.add_parser("build")
    build.add_argument("spec", help="Catalog name, e.g. Dt:-2 or M:2,1")
    build.add_argument("--out", default="", help="AlgebraFile to write")
    build.add_argument("--superinvolution", choices=("transpose", "orthosymplectic"), default=None)
    catalog.set_defaults(func=cmd_catalog)

    check = sub.add_parser("check", help="Check an identity on an algebra file")
    check.add_argument("identity", choices=("jordan", "associative", "superinvolution"))
    check.add_argument("file")
    check.set_defaults(func=cmd_check)

    closure = sub.add_parser("closure", help="Subalgebra generated by vectors")
    closure.add_argument("--algebra", required=True)
    closure.add_argument("--span", nargs="+", required=True, help="Labels or comma-separated coordinates")
    closure.add_argument("--assoc", action="store_true", help="Associative closure in the matrix model")
    closure.add_argument("--dump", action="store_true", help="Print the echelon basis")
    closure.set_defaults(func=cmd_closure)

    maximal = sub.add_parser("maximal", help="Maximality check of a subalgebra")
    maximal.add_argument("--algebra", required=True)
    maximal.add_argument("--sub", nargs="+", required=True, help="Spanning vectors of the subalgebra")
    maximal.add_argument("--mode", default="basis", help="basis, random:<trials>:<seed> or modp:<p>")
    maximal.add_argument("--report", default="", help="ReportFile to write")
    maximal.add_argument("--claim", default="", help="Claim id recorded in the report")
    maximal.add_argument("--threads", type=int, default=None)
    maximal.set_defaults(func=cmd_maximal)

    registry = sub.add_parser("registry", help="Claims registry")
    registry_sub = registry.add_subparsers(dest="registry_cmd", required=True)
    run = registry_sub.add_parser("run")
    run.add_argument("--filter", default="*", help="Glob over claim ids")
    run.add_argument("--mode", action="append", default=None, help="Repeatable; defaults to basis")
    run.add_argument("--json", default="", help="Registry report to write")
    run.add_argument("--threads", type=int, default=None)
    registry.set_defaults(func=cmd_registry)

    osp = sub.add_parser("osp", help="osp(1,2) modules V(m)")
    osp_sub = osp.add_subparsers(dest="osp_cmd", required=True)
    vm = osp_sub.add_parser("vm")
    vm.add_argument("--m", type=int, required=True)
    vm.add_argument("--form", action="store_true", help="Print the invariant bilinear form")
    vm.add_argument("--embed", default=None, help="Verify the embedding of D_t, e.g. --embed=-2/3")
    osp.set_defaults(func=cmd_osp)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return int(error.code or 0)
    if args.log_level:
        generate_log(name="superjordan", log_level=args.log_level.upper())
    try:
        return args.func(args)
    except SuperJordanError as error:
        log.error(f"{type(error).__name__}: {error}")
        return 2
    except ValueError as error:
        log.error(str(error))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
