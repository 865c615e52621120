"""
Subcommand jobs: run one experiment and write its result files.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, List

import numpy as np

from ..errors import InvalidArgumentError, PhotocellError, UndefinedVoltageError
from ..experiments.calibration import CalibrationTargets, calibrate_hot_occupation
from ..experiments.scan import donor_scan, power_ratio_report, superlinearity_diagnostics
from ..experiments.sweep import jv_sweep, solve_operating_point, solve_populations
from ..generator.channels import jump_channels
from ..generator.rate_matrix import rate_matrix
from ..solver.propagation import ground_state_populations, propagate_trajectory
from .manifest import RunManifest
from .writers import write_csv, write_json

logger = logging.getLogger(__name__)

SWEEP_HEADER = ["Gamma_eV", "V_volts", "j_natural", "j_norm", "P_natural"]
SCALED_HEADER = ["j_scaled", "P_scaled"]


class JobRunner:
    """Runs the job of a manifest and records the files it wrote."""

    def __init__(self, manifest: RunManifest):
        """
        Initialize job runner.

        Args:
            manifest: Resolved run description
        """
        self.manifest = manifest
        self.settings = manifest.settings
        self.out_dir = Path(manifest.output_dir)
        self.written: List[Path] = []
        self.jobs: Dict[str, Callable[[], None]] = {
            "steady": self._run_steady_job,
            "sweep": self._run_sweep_job,
            "mpp": self._run_mpp_job,
            "scan": self._run_scan_job,
            "calibrate": self._run_calibrate_job,
            "transient": self._run_transient_job,
        }

    def _write_csv(self, name: str, header, rows) -> None:
        self.written.append(write_csv(self.out_dir / name, header, rows))

    def _write_json(self, name: str, obj) -> None:
        self.written.append(write_json(self.out_dir / name, obj))

    def _donor_configs(self):
        cfg = self.manifest.photocell
        return [cfg.resized(n) for n in self.settings["donor_counts"]]

    def _run_steady_job(self):
        """Populations and observables of one configuration."""
        cfg = self.manifest.photocell
        p = solve_populations(cfg)
        labels = cfg.basis.labels
        n = cfg.donor_count

        self._write_csv(
            f"steady_N{n}.csv",
            ["state", "population"],
            [(label, float(value)) for label, value in zip(labels, p.values)],
        )

        try:
            point = solve_operating_point(cfg, cfg.rates.Gamma).to_dict()
        except UndefinedVoltageError as e:
            logger.warning(f"No operating point: {e}")
            point = None

        self._write_json(
            f"steady_N{n}.json",
            {
                "donor_count": n,
                "populations": p.to_dict(labels),
                "operating_point": point,
                "hot_occupations": list(cfg.hot_occupations()),
                "channels": [channel.to_dict() for channel in jump_channels(cfg)],
            },
        )

    def _sweep_rows(self, sweep):
        scale = self.settings.get("power_scale")
        for point in sweep.points:
            row = [point.Gamma, point.V, point.j, point.j_norm, point.P]
            if scale is not None:
                row += [point.j_norm * scale, point.P * scale]
            yield row

    def _run_sweep_job(self):
        """One j-V characteristic file per donor count."""
        header = SWEEP_HEADER + (SCALED_HEADER if self.settings.get("power_scale") is not None else [])
        grid = self.settings["gamma_grid"]
        for cfg in self._donor_configs():
            sweep = jv_sweep(
                cfg, grid, workers=self.manifest.workers, ladder=self.settings["open_circuit_ladder"]
            )
            n = cfg.donor_count
            self._write_csv(f"sweep_N{n}.csv", header, self._sweep_rows(sweep))
            self._write_json(
                f"sweep_N{n}_dropped.json",
                {"donor_count": n, "dropped": list(sweep.dropped), "markers": sweep.markers()},
            )

    def _run_mpp_job(self):
        """Open-circuit voltage and maximum power point per donor count."""
        grid = self.settings["gamma_grid"]
        results = {}
        mpps = {}
        for cfg in self._donor_configs():
            sweep = jv_sweep(
                cfg, grid, workers=self.manifest.workers, ladder=self.settings["open_circuit_ladder"]
            )
            if sweep.mpp is None:
                raise InvalidArgumentError(
                    f"Sweep for N={cfg.donor_count} has {len(sweep.points)} points; "
                    f"the maximum power point needs 3"
                )
            results[str(cfg.donor_count)] = sweep.markers()
            mpps[cfg.donor_count] = sweep.mpp

        self._write_json("mpp.json", {"per_N": results, "power_ratio": power_ratio_report(mpps)})

    def _run_scan_job(self):
        """Normalised current at fixed voltage against donor count."""
        scan = donor_scan(
            self.manifest.photocell,
            self.settings["scan_donors"],
            self.settings["v_target"],
            workers=self.manifest.workers,
            grid=self.settings["gamma_grid"],
            ladder=self.settings["open_circuit_ladder"],
        )
        self._write_csv(
            "scan.csv",
            ["N", "Gamma_star_eV", "j_norm"],
            [(e.donor_count, e.Gamma_star, e.j_norm) for e in scan.successful()],
        )
        self._write_json(
            "scan_diagnostics.json",
            {
                "V_fixed": scan.V_fixed,
                "entries": [entry.to_dict() for entry in scan.entries],
                "superlinearity": superlinearity_diagnostics(scan).to_dict(),
            },
        )

    def _run_calibrate_job(self):
        """Hot occupation that best matches the voltage landmarks."""
        targets = CalibrationTargets(
            v_oc=self.settings["calibration_v_oc"], v_mpp=self.settings["calibration_v_mpp"]
        )
        result = calibrate_hot_occupation(
            self.manifest.photocell,
            targets,
            n_points=self.settings["calibration_points"],
            grid=self.settings["gamma_grid"],
            workers=self.manifest.workers,
            ladder=self.settings["open_circuit_ladder"],
        )
        self._write_json("calibrate.json", result.to_dict())

    def _run_transient_job(self):
        """Population trajectory from the all-ground state."""
        cfg = self.manifest.photocell
        M = rate_matrix(cfg)
        t_final = self.settings["t_final"]
        count = self.settings["time_points"]
        times = np.concatenate(([0.0], np.logspace(np.log10(t_final) - 10, np.log10(t_final), count - 1)))
        times[-1] = t_final

        trajectory = propagate_trajectory(
            M,
            ground_state_populations(M.dimension),
            t_final,
            rtol=cfg.solver_tolerances.propagation_rtol,
            method=self.settings["transient_method"],
            t_eval=times,
        )
        self._write_csv(
            f"transient_N{cfg.donor_count}.csv",
            ["t"] + [f"p_{label}" for label in cfg.basis.labels],
            [[t, *populations] for t, populations in zip(trajectory.times, trajectory.populations())],
        )

    def run(self) -> List[Path]:
        """
        Execute the manifest's subcommand and write manifest.json last.

        Returns:
            Paths of all written files
        """
        subcommand = self.manifest.subcommand
        job = self.jobs.get(subcommand)
        if job is None:
            raise InvalidArgumentError(f"Unknown subcommand {subcommand!r}")

        logger.info(f"Starting {subcommand} job (config hash {self.manifest.config_hash[:12]})")
        job()
        self._write_json("manifest.json", self.manifest.to_dict())
        logger.info(f"{subcommand} job completed: {len(self.written)} files written")
        return self.written


def run_subcommand(manifest: RunManifest) -> int:
    """
    Run ``manifest`` and map failures to exit codes.

    Returns:
        0 when every output was written, else the failure class's exit code
    """
    try:
        JobRunner(manifest).run()
        return 0

    except PhotocellError as e:
        logger.error(f"{manifest.subcommand} failed: {e}")
        return e.exit_code

    except Exception as e:
        logger.error(f"{manifest.subcommand} failed: {e}", exc_info=True)
        return 1
