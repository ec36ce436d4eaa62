#!/usr/bin/env python3

import argparse
import logging
import os
import sys
from typing import List, Optional

from config_manager import ConfigManager, RunConfig
from constants import DEAD_BAND, HOT_REFERENCES
from errors import ConfigError, SimulationError
from experiment_selector import ExperimentSelector
from experiments.diagnostics import (
    arrow_complexity_report,
    arrow_metric_report,
    grid_similarity_report,
    synchronization_report,
)
from experiments.records import GridRecord
from metrics import effective_temperature
from output_writer import emit_csv, emit_plot, load_records
from utils import format_fraction, parse_complex, print_table, setup_logging


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


ARG_TYPES = {"float": float, "int": int, "complex": _complex_arg}


def build_parser(selector: ExperimentSelector) -> argparse.ArgumentParser:
    """Build the parser; experiment flags are generated from each experiment's parameter table"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', type=str,
                        help='Path to a JSON run configuration')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='Enable verbose logging')
    common.add_argument('--log-file', type=str,
                        help='Path to log file')

    arrow = argparse.ArgumentParser(add_help=False)
    arrow.add_argument('--hot-reference', choices=HOT_REFERENCES, default=None,
                       help='How the hotter qubit is chosen at each sample')
    arrow.add_argument('--dead-band', type=float, default=None,
                       help=f'Derivative magnitude treated as stalled (default {DEAD_BAND})')

    parser = argparse.ArgumentParser(description='Quantum state complexity and the thermodynamic arrow of time',
                                     allow_abbrev=False)
    subparsers = parser.add_subparsers(dest='command', metavar='command')

    for info in selector.list_experiments():
        kind = info["kind"]
        parents = [common, arrow] if kind == "two-qubit" else [common]
        sub = subparsers.add_parser(kind, help=info["description"], parents=parents, allow_abbrev=False)
        for name, spec in selector.get_experiment_params(kind).items():
            sub.add_argument(_flag(name), dest=name, type=ARG_TYPES.get(spec["type"], str), default=None,
                             help=f'{spec["description"]} (default {spec["value"]})')
        sub.add_argument('--out', type=str, default=None,
                         help='Output path prefix; writes <out>.csv and <out>.svg')
        sub.add_argument('--plot', action='store_true', default=None,
                         help='Also write an SVG figure')
        sub.add_argument('--jobs', type=int, default=None,
                         help='Worker threads for grid sweeps')

    report = subparsers.add_parser('report', help='Run the diagnostics on an existing CSV',
                                   parents=[common, arrow], allow_abbrev=False)
    report.add_argument('csv', help='CSV written by one of the experiments')
    report.add_argument('--hot-label', choices=("A", "B"), default=None,
                        help='Initially hotter qubit, used with --hot-reference initial')
    report.add_argument('--window', type=float, default=None,
                        help='Synchronization window for traces (default two samples)')

    subparsers.add_parser('list', help='List available experiments', parents=[common], allow_abbrev=False)

    params = subparsers.add_parser('params', help='Show the parameters of an experiment',
                                   parents=[common], allow_abbrev=False)
    params.add_argument('experiment', choices=sorted(selector.experiments))

    return parser


def parse_args(argv: Optional[List[str]] = None, selector: Optional[ExperimentSelector] = None) -> RunConfig:
    """
    Parse command line arguments into a RunConfig

    Flags override config-file values, which override the experiment
    defaults. Invalid values exit with a usage error naming the flag.
    """
    selector = selector or ExperimentSelector()
    parser = build_parser(selector)
    args = parser.parse_args(argv)

    if args.command is None:
        parser.error("a command is required")

    overrides = {
        "verbose": args.verbose,
        "log_file": args.log_file,
        "hot_reference": getattr(args, "hot_reference", None),
        "dead_band": getattr(args, "dead_band", None),
    }
    if args.command in selector.experiments:
        overrides["params"] = {name: getattr(args, name) for name in selector.get_experiment_params(args.command)}
        overrides.update(out=args.out, plot=args.plot, jobs=args.jobs)
    elif args.command == "report":
        overrides.update(source=args.csv, hot_label=args.hot_label, window=args.window)
    elif args.command == "params":
        overrides["source"] = args.experiment

    try:
        return ConfigManager(args.config).build_run_config(args.command, overrides, selector)
    except ConfigError as e:
        if e.param:
            parser.error(f"argument {_flag(e.param)}: {e}")
        parser.error(str(e))


def _emit_outputs(records, config: RunConfig) -> None:
    """Write the SVG (when requested) and the CSV; a failure removes whatever was already written"""
    written = []
    try:
        if config.plot:
            written.append(emit_plot(records, f"{config.out}.svg"))
        written.append(emit_csv(records, f"{config.out}.csv"))
    except Exception:
        for path in written:
            os.remove(path)
        raise


def run_experiment(config: RunConfig, selector: ExperimentSelector) -> int:
    """Run one experiment and write its CSV (and SVG when requested)"""
    logger = logging.getLogger("qarrow")
    logger.info(f"Starting {config.kind} with {config.params}")

    experiment = selector.create_experiment(config.kind, config.params, config.jobs)
    records = experiment.run()
    _emit_outputs(records, config)

    if config.kind == "two-qubit" and len(records) >= 3:
        report = arrow_complexity_report(records, dead_band=config.dead_band,
                                         hot_reference=config.hot_reference,
                                         hot_label=experiment.scenario.hot_label)
        logger.info(f"Arrow/complexity consistency: {report.matched}/{report.considered} samples")
    return 0


def _report_two_qubit(records, config: RunConfig) -> None:
    rows = []
    for metric in ("complexity", "concurrence", "eof"):
        report = arrow_metric_report(records, metric, dead_band=config.dead_band,
                                     hot_reference=config.hot_reference, hot_label=config.hot_label)
        mismatches = ", ".join(f"{t:.4g}" for t in report.mismatched_times[:8])
        if len(report.mismatched_times) > 8:
            mismatches += ", ..."
        rows.append([metric, report.considered, report.matched, format_fraction(report.consistency), mismatches])
    print_table(["metric", "samples", "consistent", "fraction", "mismatched times"], rows,
                title=f"Arrow of time ({config.hot_reference} hot reference)")

    # With H = diag(0, 1) the energy is the excited population
    first = records[0]
    print(f"Initial local temperatures: T_A = {effective_temperature(first.e_a):.6g}, "
          f"T_B = {effective_temperature(first.e_b):.6g}")


def _report_trace(records, config: RunConfig) -> None:
    sync = synchronization_report(records, window=config.window, dead_band=config.dead_band)
    rows = [[key, f"{t:.4g}", near_key or "-", "-" if near_t is None else f"{near_t:.4g}", "yes" if ok else "no"]
            for key, t, near_key, near_t, ok in sync.pairs]
    print_table(["energy", "turning point", "nearest complexity", "at", "synchronous"], rows,
                title=f"Turning points (window {sync.window:.4g})")
    print(f"Synchronous fraction: {format_fraction(sync.matched_fraction)}")


def _report_grid(records) -> None:
    similarity = grid_similarity_report(records)
    rows = [[key, f"{lo:.6g}", f"{hi:.6g}"] for key, (lo, hi) in similarity.ranges.items()]
    print_table(["surface", "min", "max"], rows, title="Surface ranges")
    rows = [[e, c, f"{rho:.4f}"] for (e, c), rho in similarity.correlations.items()]
    print_table(["energy", "complexity", "spearman"], rows, title="Rank correlation")


def run_report(config: RunConfig) -> int:
    """Diagnostics for an existing CSV, picked by its schema"""
    records = load_records(config.source)
    if isinstance(records[0], GridRecord):
        _report_grid(records)
    elif records[0].is_three_qubit:
        _report_trace(records, config)
    else:
        _report_two_qubit(records, config)
    return 0


def list_experiments(selector: ExperimentSelector) -> int:
    rows = [[info["kind"], info["name"], info["description"]] for info in selector.list_experiments()]
    print_table(["kind", "name", "description"], rows, title="Available experiments")
    return 0


def show_params(selector: ExperimentSelector, kind: str) -> int:
    rows = [[_flag(name), spec["value"], spec["type"], spec["description"]]
            for name, spec in selector.get_experiment_params(kind).items()]
    print_table(["flag", "default", "type", "description"], rows, title=f"Parameters of {kind}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application"""
    selector = ExperimentSelector()
    config = parse_args(argv, selector)

    # Setup logging
    log_level = logging.DEBUG if config.verbose else logging.INFO
    setup_logging(log_level, config.log_file)

    logger = logging.getLogger("qarrow")

    try:
        if config.kind == "report":
            return run_report(config)
        if config.kind == "list":
            return list_experiments(selector)
        if config.kind == "params":
            return show_params(selector, config.source)
        return run_experiment(config, selector)

    except SimulationError as e:
        logger.error(f"{config.kind} failed: {e}")
        return 1
    except KeyboardInterrupt:
        logger.info("Shutting down due to keyboard interrupt")
        return 130
    except Exception as e:
        logger.error(f"Error in main: {e}", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
