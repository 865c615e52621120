"""
Main entry point for the photocell simulator.
"""

import argparse
import logging
import sys
from typing import List, Optional

from .cli.jobs import run_subcommand
from .cli.manifest import SUBCOMMANDS, RunManifest
from .config import Config, load_config
from .errors import ConfigError, PhotocellError
from .experiments.sweep import default_gamma_grid

logger = logging.getLogger(__name__)


def setup_logging(config: dict):
    """
    Configure logging based on configuration.

    Args:
        config: Logging configuration dictionary
    """
    level = config.get("level", "INFO")
    format_type = config.get("format", "text")

    if format_type == "json":
        # JSON structured logging
        import json

        class JsonFormatter(logging.Formatter):
            def format(self, record):
                log_obj = {
                    "timestamp": self.formatTime(record, self.datefmt),
                    "level": record.levelname,
                    "logger": record.name,
                    "message": record.getMessage(),
                }

                if record.exc_info:
                    log_obj["exception"] = self.formatException(record.exc_info)

                return json.dumps(log_obj)

        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(JsonFormatter())

        logging.root.handlers = [handler]
        logging.root.setLevel(level)
    else:
        # Text logging
        logging.basicConfig(
            level=level,
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
            stream=sys.stderr,
        )


def parse_grid(text: str) -> List[float]:
    """
    Parse a 'lo:hi:count' log grid.

    Raises:
        ConfigError: If the text is malformed
    """
    try:
        lo, hi, count = text.split(":")
        return [float(g) for g in default_gamma_grid(float(lo), float(hi), int(count))]
    except ValueError as e:
        raise ConfigError(f"Invalid --grid {text!r}, expected lo:hi:count ({e})") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photocell", description="N-donor quantum photocell simulator"
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    help_texts = {
        "steady": "Steady-state populations and observables",
        "sweep": "j-V and P-V characteristics, one CSV per donor count",
        "mpp": "Open-circuit voltage and maximum power point per donor count",
        "scan": "Normalised current at fixed voltage against donor count",
        "calibrate": "Fit the hot-bath occupation to the voltage landmarks",
        "transient": "Population trajectory from the ground state",
    }
    for name in SUBCOMMANDS:
        sub = subparsers.add_parser(name, help=help_texts[name])
        sub.add_argument("--config", help="YAML config file (defaults when omitted)")
        sub.add_argument("--out", required=True, help="Output directory")
        sub.add_argument("--donors", type=int, help="Donor count N")
        sub.add_argument("--grid", help="Load grid lo:hi:count, log-spaced in eV")
        sub.add_argument("--v-target", type=float, help="Fixed voltage for scan (V)")
        sub.add_argument("--scale", type=float, help="Factor for the scaled j/P columns")
        sub.add_argument("--workers", type=int, help="Threads for independent solves")
        sub.add_argument(
            "--thermal", action="store_true", help="Hot bath at T_c, no load (steady/transient)"
        )

    return parser


def build_manifest(args: argparse.Namespace, config: Config) -> RunManifest:
    """Resolve command-line arguments and config into a run manifest."""
    photocell = config.photocell(args.donors)
    if args.thermal:
        photocell = photocell.thermalized()

    if args.donors is not None:
        donor_counts = [args.donors]
        scan_donors = list(range(1, args.donors + 1))
    else:
        donor_counts = config.int_list("sweep.donor_counts")
        scan_donors = config.int_list("sweep.scan_donors")

    grid = parse_grid(args.grid) if args.grid else [float(g) for g in config.gamma_grid()]
    power_scale = args.scale if args.scale is not None else config.get("sweep.power_scale")
    v_target = args.v_target if args.v_target is not None else config.get("sweep.v_target")

    settings = {
        "gamma_grid": grid,
        "open_circuit_ladder": config.float_list("sweep.open_circuit_ladder"),
        "donor_counts": donor_counts,
        "scan_donors": scan_donors,
        "v_target": float(v_target),
        "power_scale": None if power_scale is None else float(power_scale),
        "calibration_v_oc": float(config.get("calibration.v_oc")),
        "calibration_v_mpp": float(config.get("calibration.v_mpp")),
        "calibration_points": int(config.get("calibration.points")),
        "t_final": float(config.get("transient.t_final")),
        "time_points": int(config.get("transient.points")),
        "transient_method": str(config.get("transient.method")),
        "thermal": bool(args.thermal),
    }
    workers = args.workers if args.workers is not None else config.get("runtime.workers", 1)

    return RunManifest(
        config_path=args.config,
        subcommand=args.command,
        photocell=photocell,
        output_dir=args.out,
        settings=settings,
        workers=max(1, int(workers)),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    try:
        config = load_config(args.config)
    except ConfigError as e:
        setup_logging({})
        logger.error(f"Configuration error: {e}")
        return e.exit_code

    # Setup logging
    setup_logging(config.get_section("logging"))
    logger.info(f"Starting {args.command}")

    try:
        manifest = build_manifest(args, config)
    except PhotocellError as e:
        logger.error(f"Configuration error: {e}")
        return e.exit_code
    except (TypeError, ValueError) as e:
        logger.error(f"Configuration error: {e}")
        return ConfigError.exit_code

    return run_subcommand(manifest)


if __name__ == "__main__":
    sys.exit(main())
