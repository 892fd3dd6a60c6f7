"""
Command-line entry point.

Subcommands:
    selftest                      built-in property suites
    validate-domain <config>      injectivity certificate for the configured domain
    approx <config> [--degree N]  one pipeline run, report and coefficients as JSON
    convergence <config>          one row per configured degree, written as CSV
    continuity <config>           boundary continuity diagnostic

Exit codes: 0 success, 1 config error, 2 numerical failure, 3 selftest failure.
"""

import argparse
import logging
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from config import settings
from sphere_mergelyan.errors import ConfigError, SphereMergelyanError
from sphere_mergelyan.harness.experiments import (
    default_output,
    load_config,
    run_approx,
    run_continuity,
    run_convergence,
    run_validate,
)
from sphere_mergelyan.harness.logging_setup import setup_logging
from sphere_mergelyan.harness.plotting import write_svg
from sphere_mergelyan.harness.selftest import run_selftest
from sphere_mergelyan.sphere_metrics import chordal_distance_array

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_SELFTEST = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphere-mergelyan",
        description="Polynomial approximation on Jordan domains in the chordal and disc metrics",
    )
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker threads for grid evaluation (default: SPHERE_MERGELYAN_JOBS or 1)")
    parser.add_argument("--seed", type=int, default=0, help="seed for the selftest samplers")
    parser.add_argument("--log-level", default=None, help="override the configured log level")
    sub = parser.add_subparsers(dest="command", required=True)

    selftest = sub.add_parser("selftest", help="run the built-in property suites")
    # Debug hook: multiply chi by this factor to exercise the failure path
    selftest.add_argument("--chi-scale", type=float, default=None, help=argparse.SUPPRESS)

    validate = sub.add_parser("validate-domain", help="certify that psi is injective on the closed disc")
    validate.add_argument("config")
    validate.add_argument("-m", type=int, default=1024, help="boundary samples (>= 64)")

    approx = sub.add_parser("approx", help="run one pipeline and write the report as JSON")
    approx.add_argument("config")
    approx.add_argument("--degree", type=int, default=None)
    approx.add_argument("--output", default=None)

    convergence = sub.add_parser("convergence", help="run every configured degree and write a CSV")
    convergence.add_argument("config")
    convergence.add_argument("--output", default=None)
    convergence.add_argument("--svg", action="store_true", help="also write a degree/total chart")
    convergence.add_argument("--timings", action="store_true", help="fill the seconds column")

    continuity = sub.add_parser("continuity", help="boundary continuity diagnostic")
    continuity.add_argument("config")
    continuity.add_argument("-m", type=int, default=None, help="coarsest boundary resolution (>= 64)")
    return parser


def _scaled_chordal(scale: float):
    def chordal(a, b):
        return scale * chordal_distance_array(a, b)

    return chordal


def _cmd_selftest(args) -> int:
    chordal = _scaled_chordal(args.chi_scale) if args.chi_scale is not None else None
    summary = run_selftest(seed=args.seed, chordal=chordal)
    return EXIT_OK if summary.passed else EXIT_SELFTEST


def _cmd_validate(args) -> int:
    report = run_validate(load_config(args.config), args.m)
    print(report.model_dump_json(indent=2))
    return EXIT_OK if report.passed else EXIT_NUMERICAL


def _cmd_approx(args, jobs: int) -> int:
    config = load_config(args.config)
    output = args.output or (
        Path(config.output).with_suffix(".json") if config.output else default_output(args.config, ".json")
    )
    result = run_approx(config, degree=args.degree, jobs=jobs, output=output)
    stages = result.report.stage_errors
    logger.info(f"Degree {result.report.degree}: total {stages.total:.3e}")
    return EXIT_OK


def _cmd_convergence(args, jobs: int) -> int:
    config = load_config(args.config)
    output = Path(args.output or config.output or default_output(args.config))
    table = run_convergence(config, jobs=jobs, output=output, timings=args.timings or None)
    if args.svg or config.svg:
        write_svg(table, output.with_suffix(".svg"))
    if table.failed:
        for degree, error in table.failed.items():
            logger.error(f"  degree {degree}: {error}")
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_continuity(args) -> int:
    report = run_continuity(load_config(args.config), args.m)
    print(report.model_dump_json(indent=2))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level)
    jobs = args.jobs if args.jobs is not None else settings.jobs
    if jobs < 1:
        logger.error(f"--jobs must be positive, got {jobs}")
        return EXIT_CONFIG

    try:
        if args.command == "selftest":
            return _cmd_selftest(args)
        if args.command == "validate-domain":
            return _cmd_validate(args)
        if args.command == "approx":
            return _cmd_approx(args, jobs)
        if args.command == "convergence":
            return _cmd_convergence(args, jobs)
        return _cmd_continuity(args)
    except ConfigError as e:
        logger.error(f"Config error: {e}")
        return EXIT_CONFIG
    except SphereMergelyanError as e:
        logger.error(f"Numerical failure: {type(e).__name__}: {e}")
        return EXIT_NUMERICAL
    except Exception as e:
        logger.error(f"FATAL ERROR: {e}")
        logger.error(traceback.format_exc())
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
