"""Command-line entry point: python -m src.cli <command> ..."""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from src.config import settings
from src.core.class_manager import ClassManager
from src.curves.isogeny import PrimeIsogeny, all_prime_isogenies, isogenies_of_degree
from src.curves.torsion import torsion_structure
from src.curves.weier import WeierstrassModel, short_model
from src.models.enums import EntryStatus
from src.schemas import GraphReport, IsogenyReport, PointReport, RationalValue, TorsionReport, VerifySummary
from src.utils.exceptions import (
    CurveParseError,
    FixtureError,
    InvariantViolationError,
    SingularCurveError,
    SporadicDataError,
    UnsupportedInputError,
)
from src.utils.logger import logger
from src.utils.parsing import parse_curve_input

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_IO = 3

manager = ClassManager()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def run_classify(E: WeierstrassModel) -> GraphReport:
    return manager.classify(E).to_report()


def run_verify_tables(fixture_path: Optional[str] = None, workers: Optional[int] = None, all_vertices: bool = False) -> VerifySummary:
    return manager.verify_tables(fixture_path, workers, all_vertices)


def torsion_report(E: WeierstrassModel) -> TorsionReport:
    torsion = torsion_structure(E)
    return TorsionReport(
        a=[str(a) for a in E.a_invariants],
        torsion=torsion.label,
        order=torsion.order,
        generators=[PointReport(x=str(P.x), y=str(P.y)) for P in torsion.generators],
    )


def isogeny_report(phi: PrimeIsogeny) -> IsogenyReport:
    return IsogenyReport(
        degree=phi.degree,
        source=phi.kernel.source,
        kernel_polynomial=str(phi.kernel.kernel_polynomial),
        codomain=[str(a) for a in phi.codomain.a_invariants],
        codomain_j=RationalValue.from_fraction(phi.codomain.j_invariant),
    )


def emit_dot(report: GraphReport) -> str:
    lines = ["graph isogeny_class {"]
    for index, vertex in enumerate(report.vertices):
        lines.append(f'  {index} [label="{vertex.torsion}"];')
    for edge in report.edges:
        lines.append(f'  {edge.u} -- {edge.v} [label="{edge.ell}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _summary_text(report: GraphReport) -> str:
    lines = [
        f"shape:  {report.shape}",
        f"config: ({','.join(report.config)})",
        f"row:    {report.table_row}",
    ]
    if report.cm is not None:
        lines.append(f"cm:     d_K={report.cm.dK}")
    for index, (vertex, counts) in enumerate(zip(report.vertices, report.counts)):
        lines.append(f"  E{index + 1} [{','.join(vertex.a)}] torsion {vertex.torsion} C={counts.C}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isogeny-atlas", description="Isogeny-torsion graphs of elliptic curves over Q")
    parser.add_argument("--log-level", default=None, help="Override ISOGENY_ATLAS_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_curve(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("curve", help="[a1,a2,a3,a4,a6] or [A,B]")
        sub.add_argument("--short", action="store_true", help="Interpret the input as [A,B]")
        sub.add_argument("--json", action="store_true", help="Emit JSON")
        return sub

    with_curve("classify", "Classify the isogeny-torsion graph of a curve")
    graph = with_curve("graph", "Emit the isogeny-torsion graph")
    graph.add_argument("--format", choices=("json", "dot"), default="json")
    with_curve("torsion", "Rational torsion subgroup with generators")
    isogenies = with_curve("isogenies", "Rational prime-degree isogenies out of a curve")
    isogenies.add_argument("--ell", type=int, default=None, help="Only this prime degree")

    verify = commands.add_parser("verify-tables", help="Check a fixture corpus against the classification")
    verify.add_argument("path", nargs="?", default=None, help=f"JSON Lines fixtures (default {settings.fixture_path})")
    verify.add_argument("--workers", type=int, default=None)
    verify.add_argument("--all-vertices", action="store_true", help="Also rebuild each class from every vertex")
    verify.add_argument("--json", action="store_true", help="Emit JSON")
    return parser


def _dispatch(args) -> int:
    if args.command == "verify-tables":
        summary = run_verify_tables(args.path, args.workers, args.all_vertices)
        if args.json:
            print(summary.model_dump_json(indent=2))
        else:
            for result in summary.results:
                line = f"{result.status.value:8s} {result.label}"
                if result.status != EntryStatus.PASS:
                    line += f"  expected {result.expected_shape} {result.expected_config}, got {result.shape} {result.config}"
                    if result.detail:
                        line += f" ({result.detail})"
                print(line)
            print(f"{summary.passed}/{summary.total} passed")
        return EXIT_OK if summary.ok else EXIT_INVARIANT

    E = parse_curve_input(args.curve, args.short)
    if args.command == "classify":
        report = run_classify(E)
        print(report.model_dump_json(indent=2) if args.json else _summary_text(report))
    elif args.command == "graph":
        report = run_classify(E)
        if args.format == "dot":
            sys.stdout.write(emit_dot(report))
        else:
            print(report.model_dump_json(indent=2))
    elif args.command == "torsion":
        report = torsion_report(E)
        if args.json:
            print(report.model_dump_json(indent=2))
        else:
            points = ", ".join(f"({P.x}, {P.y})" for P in report.generators)
            print(f"{report.torsion} order {report.order}" + (f" generators {points}" if points else ""))
    elif args.command == "isogenies":
        found = isogenies_of_degree(E, args.ell) if args.ell else all_prime_isogenies(E)
        reports = [isogeny_report(phi) for phi in found]
        if args.json:
            print("[" + ",".join(r.model_dump_json() for r in reports) + "]")
        else:
            short, _ = short_model(E)
            print(f"short model: y^2 = x^3 + ({short.a4})x + ({short.a6})")
            for r in reports:
                print(f"  degree {r.degree:3d}  kernel {r.kernel_polynomial}  codomain [{','.join(r.codomain)}]")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        logger.setLevel(args.log_level.upper())
    try:
        return _dispatch(args)
    except (CurveParseError, SingularCurveError, UnsupportedInputError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except InvariantViolationError as e:
        logger.error(f"invariant {e.invariant} violated: {e.detail}")
        return EXIT_INVARIANT
    except (SporadicDataError, FixtureError, OSError) as e:
        logger.error(str(e))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
