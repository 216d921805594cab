"""
Main entry point for spinpath.

This module provides the main() function that serves as the entry point
when spinpath is run as a module or installed package. Reports go to stdout
(or --output), logs to stderr.
"""

import argparse
import ast
import sys
import time
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .components.checks import (
    RunManifest,
    SuiteContext,
    bernoulli_convergence,
    build_report,
    check_report,
    default_registry,
    pmf_diagnostics,
    render_report,
    to_jsonable,
    write_report,
)
from .components.groupoid import LocalOperator, Region
from .components.interaction import ParsedModel, enlarged_region, load_model, split
from .components.paths import SeriesResult, exp_mc, exp_oracle, exp_series
from .core.config import configure_settings
from .core.errors import CheckError, ModelParseError, SpinpathError
from .core.events import CheckCompletedEvent, EventBus, SampleBlockCompletedEvent
from .core.logging import configure_logging, get_logger

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130

SUITES = ("kms", "dlr", "specification", "lemmas")
MC_SIGMAS = 4.0


class UsageError(Exception):
    """Invalid flag values detected after parsing."""


def parse_region(text: str) -> Region:
    """
    Region flag syntax: "0:2" (inclusive interval), "0,1,2" or "(0,0);(0,1)".
    """
    text = text.strip()
    try:
        if ":" in text:
            lower, upper = (int(part) for part in text.split(":"))
            return Region.box(lower, upper)
        if "(" in text:
            return Region(tuple(ast.literal_eval(part.strip()) for part in text.split(";") if part.strip()))
        return Region(tuple(int(part) for part in text.split(",") if part.strip()))
    except (ValueError, SyntaxError) as e:
        raise UsageError(f"Cannot parse region {text!r}: {e}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinpath",
        description="Finite-volume quantum spin systems through jump paths",
    )
    parser.add_argument("--version", action="version", version=f"spinpath {__version__}")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log progress to stderr")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument(
        "--log-file", action="store_true", help="Also write logs to the user log directory"
    )
    parser.add_argument("--workers", type=int, help="Worker threads (overrides SPINPATH_WORKERS)")
    parser.add_argument("--output", "-o", type=Path, help="Write the report to FILE")

    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Validate a model file")
    validate.add_argument("model", type=Path)

    gibbs = commands.add_parser("gibbs", help="Evaluate e^{-β(H+W)} on a region")
    gibbs.add_argument("model", type=Path)
    gibbs.add_argument("--beta", type=float, default=1.0)
    gibbs.add_argument("--region", required=True)
    gibbs.add_argument("--ambient")
    gibbs.add_argument("--method", choices=("oracle", "series", "mc"), default="oracle")
    gibbs.add_argument("--order", type=int)
    gibbs.add_argument("--samples", type=int, default=10000)
    gibbs.add_argument("--seed", type=int, default=0)
    gibbs.add_argument("--compare", action="store_true", help="Report the deviation from the oracle")

    check = commands.add_parser("check", help="Run a check suite")
    check.add_argument("model", type=Path)
    check.add_argument("--suite", choices=SUITES, required=True)
    check.add_argument("--beta", type=float, default=1.0)
    check.add_argument("--region", required=True)
    check.add_argument("--ambient")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--trials", type=int, default=3)
    check.add_argument("--evaluator", choices=("oracle", "series"), default="oracle")
    check.add_argument("--order", type=int)
    check.add_argument(
        "--inject-corruption",
        action="store_true",
        help="Corrupt boundary densities before the specification checks",
    )

    pp = commands.add_parser("pp", help="Point-process diagnostics")
    pp.add_argument("--test", choices=("pmf", "convergence"), default="pmf")
    pp.add_argument("--rate", type=float, action="append")
    pp.add_argument("--samples", type=int, default=100000)
    pp.add_argument("--seed", type=int, default=0)

    return parser


def setup_logging(args: argparse.Namespace) -> None:
    level = "DEBUG" if args.debug else ("INFO" if args.verbose else "WARNING")
    configure_logging(
        level=level,
        console_output=True,
        file_output=args.log_file,
        debug_mode=args.debug,
    )


def create_event_bus(args: argparse.Namespace) -> EventBus:
    logger = get_logger(__name__)
    event_bus = EventBus()
    event_bus.set_debug_mode(args.debug)

    def on_check(event: CheckCompletedEvent) -> None:
        status = "pass" if event.passed else "FAIL"
        logger.info(f"[{event.suite}] {event.check}: {event.residual:.3g} ({status})")

    def on_block(event: SampleBlockCompletedEvent) -> None:
        logger.debug(f"Monte Carlo block {event.block_index + 1}/{event.total_blocks}")

    event_bus.subscribe(CheckCompletedEvent, on_check)
    event_bus.subscribe(SampleBlockCompletedEvent, on_block)
    return event_bus


def _parameters(args: argparse.Namespace, *names: str) -> dict[str, Any]:
    return {name: getattr(args, name) for name in names}


def _finish(report: dict[str, Any], started: float, args: argparse.Namespace) -> None:
    report["manifest"]["timing"]["wall_time"] = time.perf_counter() - started
    write_report(render_report(report), args.output)


def cmd_validate(args: argparse.Namespace, started: float) -> int:
    parsed = load_model(args.model)
    manifest = RunManifest("validate", {"model": str(args.model)}, parsed.digest)
    report = build_report(
        manifest,
        {
            "valid": parsed.is_valid,
            "terms": len(parsed.interaction),
            "violations": [
                {"line": v.line_number, "kind": v.kind, "message": v.message}
                for v in parsed.violations
            ],
        },
    )
    _finish(report, started, args)
    for violation in parsed.violations:
        print(f"{args.model}: {violation}", file=sys.stderr)
    return EXIT_OK if parsed.is_valid else EXIT_FAILED


def _require_valid(parsed: ParsedModel) -> bool:
    for violation in parsed.violations:
        print(f"{parsed.source}: {violation}", file=sys.stderr)
    return parsed.is_valid


def _within_bounds(result: SeriesResult, oracle: LocalOperator) -> tuple[float, bool]:
    difference = result.value.to_matrix() - oracle.to_matrix()
    deviation = float(np.abs(difference).max(initial=0.0))
    if result.evaluator == "mc":
        sigma = np.abs(LocalOperator(oracle.region, result.standard_error).to_matrix())
        allowed = MC_SIGMAS * sigma + 1e-12
        return deviation, bool(np.all(np.abs(difference) <= allowed))
    return deviation, deviation <= result.tail_bound + 1e-12


def cmd_gibbs(args: argparse.Namespace, event_bus: EventBus, started: float) -> int:
    if args.beta < 0:
        raise UsageError(f"--beta must be non-negative, got {args.beta}")
    if args.method == "mc" and args.samples < 1:
        raise UsageError(f"--samples must be positive, got {args.samples}")
    if args.order is not None and args.order < 0:
        raise UsageError(f"--order must be non-negative, got {args.order}")
    parsed = load_model(args.model)
    if not _require_valid(parsed):
        return EXIT_FAILED
    region = parse_region(args.region)
    ambient = parse_region(args.ambient) if args.ambient else None
    bundle = split(parsed.interaction, region, ambient)

    if args.method == "series":
        result = exp_series(bundle, args.beta, args.order, event_bus=event_bus)
    elif args.method == "mc":
        result = exp_mc(bundle, args.beta, args.samples, args.seed, event_bus=event_bus)
    else:
        result = SeriesResult(exp_oracle(bundle, args.beta, event_bus), 0, 0.0, "oracle")

    body: dict[str, Any] = {
        "region": str(bundle.enlarged),
        "method": result.evaluator,
        "order": result.order,
        "tail_bound": result.tail_bound,
        "partition_function": result.value.trace(),
        "density": result.value.to_matrix(),
    }
    if result.standard_error is not None:
        body["standard_error"] = np.abs(
            LocalOperator(bundle.enlarged, result.standard_error).to_matrix()
        )
    exit_code = EXIT_OK
    if args.compare:
        deviation, ok = _within_bounds(result, exp_oracle(bundle, args.beta))
        body["comparison"] = {"max_deviation": deviation, "within_bounds": ok}
        exit_code = EXIT_OK if ok else EXIT_FAILED

    manifest = RunManifest(
        "gibbs",
        _parameters(args, "beta", "region", "ambient", "method", "order", "samples", "seed"),
        parsed.digest,
    )
    _finish(build_report(manifest, body), started, args)
    return exit_code


def cmd_check(args: argparse.Namespace, event_bus: EventBus, started: float) -> int:
    if args.trials < 1:
        raise UsageError(f"--trials must be positive, got {args.trials}")
    parsed = load_model(args.model)
    if not _require_valid(parsed):
        return EXIT_FAILED
    phi = parsed.interaction
    region = parse_region(args.region)
    ambient = parse_region(args.ambient) if args.ambient else enlarged_region(region, phi)
    context = SuiteContext(
        phi,
        args.beta,
        region,
        ambient,
        seed=args.seed,
        trials=args.trials,
        evaluator=args.evaluator,
        order=args.order,
        inject_corruption=args.inject_corruption,
        event_bus=event_bus,
    )
    # fail on bad regions or β before any suite starts
    context.parameters()
    registry = default_registry(event_bus)
    results = registry.run_suite(args.suite, context)
    manifest = RunManifest(
        "check",
        {
            **_parameters(args, "suite", "beta", "region", "seed", "trials", "evaluator", "order"),
            "ambient": str(ambient),
            "inject_corruption": args.inject_corruption,
        },
        parsed.digest,
    )
    _finish(check_report(manifest, args.suite, results), started, args)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def cmd_pp(args: argparse.Namespace, started: float) -> int:
    rates = args.rate or ([0.5, 1.0, 2.0] if args.test == "pmf" else [1.0])
    if args.samples < 1:
        raise UsageError(f"--samples must be positive, got {args.samples}")
    if any(rate <= 0 for rate in rates):
        raise UsageError("--rate must be positive")
    if args.test == "pmf":
        results, details = pmf_diagnostics(rates, args.samples, args.seed)
    else:
        results, details = [], {}
        for rate in rates:
            found, info = bernoulli_convergence(rate)
            results.extend(found)
            details[f"{rate:g}"] = info
    manifest = RunManifest(
        "pp", {"test": args.test, "rates": rates, "samples": args.samples, "seed": args.seed}
    )
    report = check_report(manifest, f"pp-{args.test}", results)
    report["details"] = to_jsonable(details)
    _finish(report, started, args)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    """
    Main entry point for spinpath.

    Returns:
        Exit code: 0 pass, 1 check failure or invalid model, 2 usage or parse error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    started = time.perf_counter()
    setup_logging(args)
    logger = get_logger(__name__)
    try:
        if args.workers is not None:
            configure_settings(workers=args.workers)
        event_bus = create_event_bus(args)
        logger.debug(f"Running {args.command}")
        if args.command == "validate":
            return cmd_validate(args, started)
        if args.command == "gibbs":
            return cmd_gibbs(args, event_bus, started)
        if args.command == "check":
            return cmd_check(args, event_bus, started)
        return cmd_pp(args, started)

    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        return EXIT_INTERRUPTED
    except (UsageError, ModelParseError, FileNotFoundError) as e:
        print(f"spinpath: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CheckError as e:
        logger.error(f"Check suite failed: {e}", exc_info=True)
        return EXIT_FAILED
    except (SpinpathError, ValueError) as e:
        print(f"spinpath: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        print(f"\nError: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
