"""
COMMAND LINE FRONT END
Commands: run, scan, validate, list-scenarios.
Exit codes: 0 ok, 2 unknown scenario, 3 invalid config, 4 numeric failure,
1 anything unexpected.
"""
import argparse
import json
import logging
import sys
import time
from typing import Any, Dict, List, Optional

import polars as pl

from .pipeline import create_scenario_pipeline
from .scenarios import (
    Scenario,
    apply_override_strings,
    builtin_scenarios,
    resolve_scenario,
    scenario_to_dict,
    validate_scenario,
)
from .shared import Result, SimSettings, setup_logging
from .shared.errors import (
    ConfigFormatError,
    InvalidScenarioError,
    SimulationError,
    UnknownScenarioError,
)
from .storage import ArtifactWriter, ManifestRegistry

logger = logging.getLogger("CLI")

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_UNKNOWN_SCENARIO = 2
EXIT_INVALID_CONFIG = 3
EXIT_NUMERIC = 4


def exit_code_for(error: Any) -> int:
    if isinstance(error, UnknownScenarioError):
        return EXIT_UNKNOWN_SCENARIO
    if isinstance(error, (InvalidScenarioError, ConfigFormatError)):
        return EXIT_INVALID_CONFIG
    if isinstance(error, SimulationError):
        return EXIT_NUMERIC
    return EXIT_UNEXPECTED


def _fail(error: Any) -> int:
    print(f"error: {error}", file=sys.stderr)
    if isinstance(error, InvalidScenarioError):
        for violation in error.violations:
            print(f"  - {violation}", file=sys.stderr)
    return exit_code_for(error)


def _emit(rows: List[Dict[str, Any]], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows if len(rows) != 1 else rows[0], indent=2, sort_keys=True))
    else:
        print(pl.DataFrame(rows).write_csv(), end="")


# ====================== SCENARIO RESOLUTION ======================

def _override_strings(args: argparse.Namespace) -> List[str]:
    overrides = list(args.set or [])
    if args.grid_points is not None:
        overrides.append(f"grid.n_points={args.grid_points}")
    if args.span_mhz is not None:
        overrides.append(f"grid.span_mhz={args.span_mhz}")
    return overrides


def _resolve(args: argparse.Namespace) -> Scenario:
    scenario = resolve_scenario(args.scenario)
    return apply_override_strings(scenario, _override_strings(args))


def _write_manifest(command: str, out_dir: str, scenario: Scenario, artifacts, started: float, overrides) -> Result:
    registry = ManifestRegistry(out_dir)
    manifest = registry.build(command, scenario_to_dict(scenario), artifacts, time.time() - started, overrides)
    return registry.write(manifest)


# ====================== COMMANDS ======================

def cmd_run(args: argparse.Namespace, settings: SimSettings) -> int:
    started = time.time()
    scenario = _resolve(args)
    writer = ArtifactWriter(args.out, scenario_to_dict(scenario))
    pipeline = create_scenario_pipeline(writer, extended=args.extended, settings=settings).unwrap()

    result = pipeline.execute(scenario)
    if result.is_err():
        return _fail(result.error)
    outcome = result.unwrap()

    written = _write_manifest("run", args.out, scenario, outcome.artifacts, started, _override_strings(args))
    if written.is_err():
        return _fail(written.error)

    _emit([{
        "scenario": scenario.name,
        "filter_width_50pct_mhz": outcome.transmission.bandwidth_50pct_mhz,
        "zero_delay_value": outcome.trace.zero_delay_value,
        "beat_peak_mhz": outcome.spectrum.peak_freq_mhz,
        "tau_ns": outcome.fit.tau_ns,
        "reduced_chi2": outcome.fit.reduced_chi2,
        "motional_v_t_mps": outcome.motional_fit.v_t_mps,
        "motional_reduced_chi2": outcome.motional_fit.reduced_chi2,
        "manifest": str(written.unwrap()),
    }], args.format)
    return EXIT_OK


def _parse_values(raw: Optional[str], scenario: Scenario, kind: str) -> List[float]:
    if raw is None:
        if scenario.scan is not None and scenario.scan.kind == kind:
            return list(scenario.scan.values)
        raise ConfigFormatError("no scan values given and the scenario has no matching scan plan", kind=kind)
    try:
        return [float(item) for item in raw.split(",") if item.strip()]
    except ValueError as e:
        raise ConfigFormatError("scan values must be comma-separated numbers", values=raw) from e


def cmd_scan(args: argparse.Namespace, settings: SimSettings) -> int:
    started = time.time()
    scenario = _resolve(args)
    values = _parse_values(args.values, scenario, args.kind)
    writer = ArtifactWriter(args.out, scenario_to_dict(scenario))
    pipeline = create_scenario_pipeline(writer, settings=settings).unwrap()

    result = pipeline.execute_scan(scenario, args.kind, values, args.od_cap)
    if result.is_err():
        return _fail(result.error)
    outcome = result.unwrap()

    overrides = _override_strings(args) + [f"scan.{args.kind}={','.join(repr(v) for v in values)}"]
    written = _write_manifest("scan", args.out, scenario, outcome.artifacts, started, overrides)
    if written.is_err():
        return _fail(written.error)

    _emit(outcome.curve.to_frame().to_dicts(), args.format)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, settings: SimSettings) -> int:
    scenario = _resolve(args)
    found = validate_scenario(scenario)
    if found:
        return _fail(InvalidScenarioError(scenario.name, found))
    print(f"{scenario.name}: ok")
    return EXIT_OK


def cmd_list(args: argparse.Namespace, settings: SimSettings) -> int:
    _emit([{"name": s.name, "description": s.description} for s in builtin_scenarios()], args.format)
    return EXIT_OK


# ====================== PARSER ======================

def _scenario_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("scenario", help="Builtin name or path to a YAML scenario file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="Dotted-path override (repeatable)")
    p.add_argument("--grid-points", type=int, default=None, help="Override grid.n_points")
    p.add_argument("--span-mhz", type=float, default=None, help="Override grid.span_mhz")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vaporlab",
        description="Biphoton cross-correlation simulator for warm-vapor four-wave mixing.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv", help="Printed summary format")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="Run one scenario and write its artifacts")
    _scenario_options(run)
    run.add_argument("--out", default="results", help="Output directory")
    run.add_argument("--extended", action="store_true", help="Also write susceptibility and kernel CSVs")
    run.set_defaults(handler=cmd_run)

    scan = sub.add_parser("scan", parents=[common], help="Scan od, density or extra filter width over a base scenario")
    scan.add_argument("kind", choices=["od", "density", "filter_width"])
    _scenario_options(scan)
    scan.add_argument("values", nargs="?", default=None, help="Comma-separated values; defaults to the scenario's scan plan")
    scan.add_argument("--out", default="results", help="Output directory")
    scan.add_argument("--od-cap", type=float, default=None, help="Largest extra-cell od for filter_width scans")
    scan.set_defaults(handler=cmd_scan)

    validate = sub.add_parser("validate", parents=[common], help="Check a scenario without running it")
    _scenario_options(validate)
    validate.set_defaults(handler=cmd_validate)

    listing = sub.add_parser("list-scenarios", parents=[common], help="List builtin scenarios")
    listing.set_defaults(handler=cmd_list)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = SimSettings()
    setup_logging("DEBUG" if args.verbose else settings.log_level, settings.log_dir, tag="VaporLab")
    try:
        return args.handler(args, settings)
    except SimulationError as e:
        return _fail(e)
    except Exception as e:
        logger.critical(f"Unexpected failure: {e}", exc_info=True)
        return _fail(e)


if __name__ == "__main__":
    sys.exit(main())
