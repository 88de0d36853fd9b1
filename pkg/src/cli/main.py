import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import BaseModel

from cli.commands import errorbound, mstat, normal_cone, parse_point, run_checks
from cli.reproduce import EXAMPLES, reproduce
from core import VerificationError, settings
from core.settings import OutputFormat
from errorbound import write_csv
from model import OrthoProgram, load_program
from schema import CqName, NormalConeKind, OrthoCqName, RunConfig

logger = logging.getLogger(__name__)

USAGE_ERROR = 3


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 3 like every other input error."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _scheme_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-rank", type=float, help="relative rank threshold for float data")
    p.add_argument("--tol-feas", type=float, help="feasibility tolerance")
    p.add_argument("--radius0", help="largest sequence radius, e.g. 1/100")
    p.add_argument("--levels", type=int, help="number of radius halvings")
    p.add_argument("--directions", type=int, help="random directions besides the axes")
    p.add_argument("--seed", type=int, help="seed of the direction generator")
    p.add_argument("--cap", type=int, help="upper bound on enumerated branches")


def _program_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", type=Path, help="program file")
    p.add_argument(
        "--at",
        required=True,
        help="point as comma separated rationals; write --at=-1,0 for a leading minus",
    )


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="mpdc", description="Verify MPDC constraint qualifications")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=None,
        help=f"output format (default {settings.OUTPUT_FORMAT})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run constraint qualification checkers")
    _program_flags(p)
    p.add_argument(
        "--cq",
        action="append",
        default=[],
        help="checker name, repeatable or comma separated (default rcpld)",
    )
    p.add_argument("--all", action="store_true", help="run every checker that applies")
    _scheme_flags(p)

    p = sub.add_parser("normal-cone", help="regular or limiting normal cone of a block")
    _program_flags(p)
    p.add_argument("--block", type=int, default=1, help="one-based block index")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--limiting", action="store_true", help="limiting cone (default)")
    group.add_argument("--regular", action="store_true", help="regular cone")

    p = sub.add_parser("mstat", help="look for an M-stationarity certificate")
    _program_flags(p)
    p.add_argument("--all", action="store_true", help="every branch-distinct certificate")
    _scheme_flags(p)

    p = sub.add_parser("errorbound", help="empirical error-bound modulus")
    _program_flags(p)
    p.add_argument("--eps", default="1/10", help="sampling radius")
    p.add_argument("-n", "--samples", type=int, default=1000, help="samples in the ball")
    p.add_argument("--seed", type=int, help="sampling seed")
    p.add_argument("--csv", type=Path, help="write the samples to this CSV file")

    p = sub.add_parser("reproduce", help="rerun a worked example")
    p.add_argument("example", choices=sorted(EXAMPLES))
    _scheme_flags(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_settings(
        rank_tol=getattr(args, "tol_rank", None),
        feas_tol=getattr(args, "tol_feas", None),
        radius0=getattr(args, "radius0", None),
        levels=getattr(args, "levels", None),
        directions=getattr(args, "directions", None),
        seed=getattr(args, "seed", None),
        candidate_cap=getattr(args, "cap", None),
        output_format=args.format,
    )


def _cq_names(args: argparse.Namespace, program) -> list[str]:
    names = [n.strip() for item in args.cq for n in item.split(",") if n.strip()]
    if args.all:
        names = [c.value for c in CqName]
        if isinstance(program, OrthoProgram):
            names += [c.value for c in OrthoCqName if c.value.startswith(program.kind.value)]
    return names or [CqName.RCPLD.value]


def _emit(report: BaseModel, config: RunConfig) -> None:
    if config.output_format == OutputFormat.JSON:
        print(report.model_dump_json(indent=2))
    else:
        print(report.pretty_repr())


def _run(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.command == "reproduce":
        found, diff = reproduce(args.example, config)
        print(json.dumps(found, indent=2))
        if diff:
            print(f"differs from the committed summary: {', '.join(diff)}", file=sys.stderr)
            return 1
        if config.output_format == OutputFormat.TEXT:
            print(f"{args.example}: matches the committed summary")
        return 0

    program = load_program(args.file)
    x = parse_point(args.at)
    match args.command:
        case "check":
            result = run_checks(program, x, _cq_names(args, program), config)
            if config.output_format == OutputFormat.JSON:
                print(result.model_dump_json(indent=2))
            else:
                print("\n".join(r.pretty_repr() for r in result.reports))
            return result.exit_code
        case "normal-cone":
            kind = NormalConeKind.REGULAR if args.regular else NormalConeKind.LIMITING
            _emit(normal_cone(program, x, args.block - 1, kind, config), config)
            return 0
        case "mstat":
            report = mstat(program, x, config, every=args.all)
            _emit(report, config)
            return 0 if report.stationary else 1
        case "errorbound":
            est = errorbound(program, x, args.eps, args.samples, args.seed, config)
            _emit(est, config)
            if args.csv is not None:
                write_csv(est, args.csv)
            return 0
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = {0: settings.LOG_LEVEL, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except (VerificationError, ValueError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
