import argparse
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Optional

import sentry_sdk

from genfrac.commands import RunSpec, run_command
from genfrac.config import SuiteConfig, build_suite_config, load_config_file
from genfrac.constants import (
    HYPOTHESIS_MESSAGE,
    ExitCode,
    Orientation,
    exit_code_for,
)
from genfrac.errors import ExpressionSyntaxError, GenFracError, HypothesisError
from genfrac.report import FORMATS, OutputFormat, render
from genfrac.theorems import checks

logger = logging.getLogger(__package__)


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, help="flat `key = value` config file")
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=FORMATS,
        default=OutputFormat.TABLE,
    )
    parser.add_argument(
        "--orientation",
        choices=(Orientation.CONSISTENT, Orientation.PAPER),
        help="printed form of the quotient rule deciding its verdict",
    )
    parser.add_argument(
        "--log-level",
        default=os.environ.get("LOG_LEVEL", "WARNING"),
        type=str.upper,
    )
    parser.add_argument("--kernel", help="preset name or expression in x")
    parser.add_argument("--kernel-start", type=float, default=0.0)
    parser.add_argument("--alpha", type=float)
    return parser


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="genfrac",
        description="The generalized conformable fractional derivative and integral.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    deriv = subparsers.add_parser("deriv", parents=[common])
    deriv.add_argument("--f", required=True)
    deriv.add_argument("--t", type=float, required=True)

    integ = subparsers.add_parser("integ", parents=[common])
    integ.add_argument("--f", required=True)
    integ.add_argument("--a", type=float, required=True)
    integ.add_argument("--b", type=float, required=True)

    verify = subparsers.add_parser("verify", parents=[common])
    verify.add_argument("--f")
    verify.add_argument("--g")
    verify.add_argument("--a", type=float)
    verify.add_argument("--b", type=float)
    verify.add_argument(
        "--theorem",
        dest="theorems",
        action="append",
        choices=checks.theorems,
        default=[],
    )
    verify.add_argument(
        "--alpha-grid",
        type=float,
        nargs="+",
        default=[],
        help="orders to run the suite for",
    )

    table = subparsers.add_parser("table", parents=[common])
    table.add_argument("--x", dest="t", type=float, required=True)
    table.add_argument("--param-a", type=float, default=1.0)
    table.add_argument("--param-b", type=float, default=1.0)

    for name in ("rolle", "mvt"):
        witness = subparsers.add_parser(name, parents=[common])
        witness.add_argument("--f", required=True)
        witness.add_argument("--a", type=float, required=True)
        witness.add_argument("--b", type=float, required=True)

    return parser


def _config(args: argparse.Namespace) -> SuiteConfig:
    config = load_config_file(args.config) if args.config else SuiteConfig()
    if args.orientation is not None:
        config = build_suite_config(
            {"suite": {"orientation": args.orientation}}, config
        )
    return config


def _run_spec(args: argparse.Namespace) -> RunSpec:
    return RunSpec(
        command=args.command,
        f=getattr(args, "f", None),
        g=getattr(args, "g", None),
        kernel=args.kernel,
        kernel_start=args.kernel_start,
        alpha=args.alpha,
        t=getattr(args, "t", None),
        a=getattr(args, "a", None),
        b=getattr(args, "b", None),
        param_a=getattr(args, "param_a", 1.0),
        param_b=getattr(args, "param_b", 1.0),
        theorems=tuple(getattr(args, "theorems", ())),
        alpha_grid=tuple(getattr(args, "alpha_grid", ())),
        output_format=args.output_format,
        config=_config(args),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        format="[%(levelname)s] %(message)s",
        level=args.log_level,
        handlers=[logging.StreamHandler()],
    )
    sentry_sdk.init(dsn=os.environ.get("SENTRY_DSN"))
    try:
        spec = _run_spec(args)
        output = run_command(spec)
    except ExpressionSyntaxError as exc:
        print(exc.diagnostic.render(exc.source), file=sys.stderr)
        return ExitCode.PARSE_ERROR
    except HypothesisError as exc:
        message = HYPOTHESIS_MESSAGE.format(theorem=args.command, detail=exc)
        print(message, end="", file=sys.stderr)
        return ExitCode.HYPOTHESIS_VIOLATED
    except GenFracError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except Exception:
        logger.exception("command=%s failed unexpectedly", args.command)
        sentry_sdk.capture_exception()
        raise
    sys.stdout.write(render(output, spec.output_format))
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
