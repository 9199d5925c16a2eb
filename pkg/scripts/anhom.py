"""
Command-line front end for experiment files and the built-in demos.

Usage
-----
  anhom validate experiments/three-slit.json
  anhom coevents experiments/three-slit.json
  anhom coevents experiments/coin-2.json --epsilon 0.3
  anhom classical-domain experiments/three-slit.json
  anhom predict experiments/coin-2.json --event all_heads --epsilon 0.3
  anhom --output json demo double-slit --epsilon 1e-3
  anhom demo coin --n 10

Exit codes
----------
  0  success
  1  the model fails validation
  2  parse or usage error (malformed file, unknown event, dimension mismatch)
  3  an exhaustive scan would exceed the cap
  4  Omega is null, so no preclusive co-event exists
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

# Allow running from repo root without installing the package
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from anhomomorphic.coevent import (
    classical_domain,
    enumerate_appc,
    enumerate_ppc,
    maximal_null_sets,
)
from anhomomorphic.config import AnalysisConfig
from anhomomorphic.cournot import predict
from anhomomorphic.demos import DEMOS, checks_as_dicts, domain_check, verdict_as_dict
from anhomomorphic.errors import (
    AnhomomorphicError,
    CapExceededError,
    ModelValidationError,
    TotalPreclusionError,
)
from anhomomorphic.experiment import ExperimentFile, Report, parse_experiment
from anhomomorphic.measure import DecoherenceFunctional, mu_event, validate_decoherence
from anhomomorphic.utils import label_lists, setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_MODEL = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_TOTAL_PRECLUSION = 4


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anhom", description="Anhomomorphic logic on finite history spaces"
    )
    parser.add_argument("--output", choices=["text", "json"], default="text")
    parser.add_argument(
        "--tolerance", type=_positive_float, default=None, help="Numerical tolerance"
    )
    parser.add_argument(
        "--cap", type=_positive_int, default=None, help="Largest n for 2^n scans"
    )
    parser.add_argument("--log-dir", default=None, help="Also write a log file here")
    parser.add_argument("-v", "--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Check the decoherence functional axioms")
    p.add_argument("experiment")

    p = sub.add_parser("coevents", help="Enumerate primitive preclusive co-events")
    p.add_argument("experiment")
    p.add_argument(
        "--epsilon", type=float, default=0.0, help="0 for exact preclusion, > 0 for mu < epsilon"
    )

    p = sub.add_parser("classical-domain", help="Finest classical domain of the PPC co-events")
    p.add_argument("experiment")

    p = sub.add_parser("predict", help="Weak-Cournot verdict on a named event")
    p.add_argument("experiment")
    p.add_argument("--event", required=True)
    p.add_argument("--epsilon", type=float, default=None, help="Defaults to the file's epsilon")

    p = sub.add_parser("demo", help="Run a built-in worked example")
    p.add_argument("name", choices=sorted(DEMOS))
    p.add_argument("--n", type=int, default=None, help="Number of tosses (coin demo)")
    p.add_argument("--epsilon", type=float, default=None)
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


class _Context:
    """Experiment model plus the tolerance and cap in force for this run."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.experiment: ExperimentFile = parse_experiment(args.experiment)
        opts = self.experiment.options
        self.tolerance: float = opts.tolerance if args.tolerance is None else args.tolerance
        self.cap: int = opts.cap if args.cap is None else args.cap
        self.decoherence: DecoherenceFunctional = self.experiment.decoherence(self.tolerance)

    def report(self, command: str) -> Report:
        return Report(command, self.experiment.name)

    def require_valid(self, report: Report) -> bool:
        validation = validate_decoherence(self.decoherence, self.tolerance, self.cap)
        report.results["validation"] = checks_as_dicts(validation)
        if not validation.passed:
            names = ", ".join(c.name for c in validation.failures)
            report.warnings.append(f"model fails validation: {names}")
        return validation.passed


def cmd_validate(args: argparse.Namespace, cfg: AnalysisConfig) -> tuple[Report, int]:
    ctx = _Context(args)
    report = ctx.report("validate")
    validation = validate_decoherence(
        ctx.decoherence,
        tolerance=ctx.tolerance,
        cap=ctx.cap,
        sum_rule=True,
        sum_rule_cap=cfg.sum_rule_cap,
    )
    report.results["histories"] = ctx.decoherence.n
    report.results["checks"] = checks_as_dicts(validation)
    report.results["passed"] = validation.passed
    if ctx.decoherence.n > cfg.sum_rule_cap:
        report.warnings.append(
            f"sum rule not checked: {ctx.decoherence.n} histories exceeds {cfg.sum_rule_cap}"
        )
    if any(c.skipped for c in validation.checks):
        report.warnings.append("sum rule not checked: functional is not Hermitian")
    if any(c.partial for c in validation.checks):
        report.warnings.append("weak positivity checked on singletons and Omega only")
    return report, EXIT_OK if validation.passed else EXIT_INVALID_MODEL


def cmd_coevents(args: argparse.Namespace, cfg: AnalysisConfig) -> tuple[Report, int]:
    ctx = _Context(args)
    report = ctx.report("coevents")
    if not ctx.require_valid(report):
        return report, EXIT_INVALID_MODEL

    d, tol, cap = ctx.decoherence, ctx.tolerance, ctx.cap
    family = maximal_null_sets(d, args.epsilon, tolerance=tol, cap=cap)
    if args.epsilon > 0:
        coevents = enumerate_appc(d, args.epsilon, tolerance=tol, cap=cap)
    else:
        coevents = enumerate_ppc(d, tolerance=tol, cap=cap)
    report.results["epsilon"] = args.epsilon
    report.results["maximal_null_sets"] = label_lists(family.maximal_null_sets)
    report.results["duals"] = label_lists(c.dual for c in coevents)
    return report, EXIT_OK


def cmd_classical_domain(args: argparse.Namespace, cfg: AnalysisConfig) -> tuple[Report, int]:
    ctx = _Context(args)
    report = ctx.report("classical-domain")
    if not ctx.require_valid(report):
        return report, EXIT_INVALID_MODEL

    coevents = enumerate_ppc(ctx.decoherence, tolerance=ctx.tolerance, cap=ctx.cap)
    domain = classical_domain(coevents)
    report.results["duals"] = label_lists(c.dual for c in coevents)
    report.results["blocks"] = domain.partition.as_labels()
    report.results["domain_check"] = domain_check(coevents, domain.partition, cfg)
    report.results["events"] = 1 << len(domain.blocks)
    return report, EXIT_OK


def cmd_predict(args: argparse.Namespace, cfg: AnalysisConfig) -> tuple[Report, int]:
    ctx = _Context(args)
    report = ctx.report("predict")
    event = ctx.experiment.event(args.event)
    if not ctx.require_valid(report):
        return report, EXIT_INVALID_MODEL

    epsilon = ctx.experiment.options.epsilon if args.epsilon is None else args.epsilon
    verdict = predict(lambda e: mu_event(ctx.decoherence, e, ctx.tolerance), event, epsilon)
    report.results["event"] = {"name": args.event, "histories": event.labels}
    report.results["verdict"] = verdict_as_dict(verdict)
    return report, EXIT_OK


def cmd_demo(args: argparse.Namespace, cfg: AnalysisConfig) -> tuple[Report, int]:
    if args.tolerance is not None:
        cfg.tolerance = args.tolerance
    if args.cap is not None:
        cfg.cap = args.cap

    warnings = []
    if args.name == "coin":
        result = DEMOS["coin"](cfg, tosses=args.n, epsilon=args.epsilon)
    else:
        if args.n is not None:
            warnings.append(f"--n only applies to the coin demo; ignored for {args.name}")
        if args.name == "double-slit":
            result = DEMOS["double-slit"](cfg, epsilon=args.epsilon)
        else:
            if args.epsilon is not None:
                warnings.append("--epsilon does not apply to the three-slit demo; ignored")
            result = DEMOS["three-slit"](cfg)
    report = Report("demo", args.name, result.results, warnings + result.warnings)
    return report, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "coevents": cmd_coevents,
    "classical-domain": cmd_classical_domain,
    "predict": cmd_predict,
    "demo": cmd_demo,
}


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def _exit_code(exc: AnhomomorphicError) -> int:
    if isinstance(exc, ModelValidationError):
        return EXIT_INVALID_MODEL
    if isinstance(exc, CapExceededError):
        return EXIT_CAP
    if isinstance(exc, TotalPreclusionError):
        return EXIT_TOTAL_PRECLUSION
    return EXIT_USAGE


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch, write the report to stdout and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    setup_logging("anhom", log_dir=args.log_dir, verbose=args.verbose)
    cfg = AnalysisConfig()
    try:
        report, code = COMMANDS[args.command](args, cfg)
    except AnhomomorphicError as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        sys.stderr.write(f"anhom {args.command}: {exc}\n")
        return _exit_code(exc)

    sys.stdout.write(report.render(args.output))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
