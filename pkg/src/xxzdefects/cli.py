"""Command line entry point: ``xxzdefects {sweep,evolve,compare,spectrum,oracle}``.

Exit codes: 0 success, 1 configuration error, 2 numeric error.
"""
import argparse
import logging
import os
import sys

from . import csvio, experiments
from .config import MODES, load_config
from .errors import ConfigError, InvalidArgumentError, NumericError, ResourceError

log = logging.getLogger("xxzdefects")

ORACLE_TOL = 1e-9


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xxzdefects",
        description="Defect-pair entanglement in an XXZ ring with two detuned qubits.",
    )
    parser.add_argument("command", choices=MODES)
    parser.add_argument("--config", required=True, help="YAML run configuration")
    parser.add_argument("--out", help="output CSV (overrides output_path in the config)")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads for grid runs (default: all cores)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def _run(args, cfg):
    out = args.out or cfg.output_path
    threads = args.threads or cfg.threads or os.cpu_count()
    spec = cfg.chain
    if args.command == "sweep":
        rows = experiments.sweep_cmax(spec, cfg.delta_grid, cfg.n_list, cfg.pair, threads)
        if out:
            csvio.write_sweep_csv(rows, out)
        log.info("sweep: %d rows", len(rows))
    elif args.command == "evolve":
        dyn = experiments.register_dynamics(
            spec, cfg.initial_register, cfg.t_grid, cfg.tracked_registers, cfg.pair
        )
        if out:
            csvio.write_dynamics_csv(dyn.rows(), out)
        instants = experiments.find_bell_instants(dyn.t, dyn.concurrence)
        print("bell instants: " + " ".join(f"{t:.6g}" for t in instants[:10]))
    elif args.command == "compare":
        rows = experiments.compare_numeric_analytic(
            spec.L, cfg.delta_grid, d=spec.d, J=spec.J, epsilon=spec.epsilon,
            n0=spec.defect_sites[0],
        )
        if out:
            csvio.write_compare_csv(rows, out)
        for r in rows:
            print(f"Delta={r.delta:g} numeric={r.numeric_c_max:.4f} analytic={r.analytic_c_max:.4f}")
    elif args.command == "spectrum":
        spectra = experiments.spectrum(spec, cfg.n_list)
        if out:
            csvio.write_spectrum_csv(spectra, out)
    elif args.command == "oracle":
        res = experiments.oracle_full_vs_sector(spec)
        print(f"max discrepancy {res.discrepancy:.3e} (|H| = {res.norm:.6g}, dim {res.dimension})")
        if res.discrepancy > ORACLE_TOL * max(res.norm, 1.0):
            _error(f"oracle discrepancy above {ORACLE_TOL:g} |H|")
            return 2
    return 0


def _error(message):
    print(f"xxzdefects: {message}", file=sys.stderr)


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args.config, args.command)
    except OSError as exc:
        _error(f"cannot read config: {exc}")
        return 1
    except ConfigError as exc:
        _error(f"config error: {exc}")
        return 1
    if cfg.mode != args.command:
        _error(f"config mode {cfg.mode!r} does not match command {args.command!r}")
        return 1
    try:
        return _run(args, cfg)
    except (InvalidArgumentError, ConfigError) as exc:
        _error(f"invalid input: {exc}")
        return 1
    except (NumericError, ResourceError) as exc:
        _error(f"numeric failure: {exc}")
        return 2


def main():
    sys.exit(cli_main())
