"""
Configuration management for the photocell simulator.
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import yaml

from .errors import ConfigError
from .experiments.sweep import default_gamma_grid
from .model.basis import build_basis
from .model.defaults import CALIBRATED_HOT_OCCUPATION
from .model.models import BathSpec, LevelScheme, PhotocellConfig, RateSet, SolverTolerances
from .model.validation import ensure_valid


class Config:
    """Configuration manager with YAML and environment variable support."""

    DEFAULT_CONFIG = {
        "donor_count": 3,
        "energies": {"E_b": 0.0, "E_a": 1.8, "E_alpha": 1.6, "E_beta": 0.2},
        "rates": {
            "gamma_h": 0.62e-6,
            "gamma_c": 6e-3,
            "Gamma_c": 0.025,
            "Gamma": 0.12,
            "chi": 0.2,
            "J": 0.0,
        },
        "bath": {"T_c": 300.0, "n_h": CALIBRATED_HOT_OCCUPATION, "T_h": None},
        "solver": {
            "steady_state_residual": 1e-12,
            "propagation_rtol": 1e-8,
            "root_find_vtol": 1e-6,
            "steady_state_method": "gth",
        },
        "sweep": {
            "gamma_min": 1e-12,
            "gamma_max": 1e2,
            "points": 200,
            "open_circuit_ladder": [1e-12, 1e-13, 1e-14],
            "donor_counts": [3, 6, 9],
            "scan_donors": [1, 2, 3, 4, 5, 6, 7, 8, 9],
            "v_target": 1.35,
            "power_scale": None,
        },
        "calibration": {"v_oc": 1.67, "v_mpp": 1.35, "points": 81},
        "transient": {"t_final": 1e10, "points": 101, "method": "Radau"},
        "logging": {"level": "INFO", "format": "text"},  # 'text' or 'json'
        "runtime": {"workers": 1},
    }

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            config_path: Path to YAML config file (optional)

        Raises:
            ConfigError: If the file is missing, malformed or has unknown keys
        """
        self.config = copy.deepcopy(self.DEFAULT_CONFIG)
        self.path = config_path

        # Load from YAML file if provided
        if config_path is not None:
            if not Path(config_path).is_file():
                raise ConfigError(f"Config file not found: {config_path}")
            self._load_yaml(config_path)

        # Override with environment variables
        self._load_env_vars()

    def _load_yaml(self, path: str):
        """Load configuration from YAML file."""
        with open(path, "r") as f:
            try:
                yaml_config = yaml.safe_load(f)
            except yaml.YAMLError as e:
                mark = getattr(e, "problem_mark", None)
                where = f" at line {mark.line + 1}" if mark is not None else ""
                raise ConfigError(f"Cannot parse {path}{where}: {e}") from e

        if yaml_config is None:
            return
        if not isinstance(yaml_config, dict):
            raise ConfigError(f"{path}: top level must be a mapping")
        self._merge_config(self.config, yaml_config)

    def _merge_config(self, base: Dict, override: Dict, prefix: str = ""):
        """Recursively merge override config into base config, rejecting unknown keys."""
        for key, value in override.items():
            path = f"{prefix}{key}"
            if key not in base:
                raise ConfigError(f"Unknown config key: {path}")
            if isinstance(base[key], dict):
                if not isinstance(value, dict):
                    raise ConfigError(f"Config key {path} must be a section")
                self._merge_config(base[key], value, prefix=f"{path}.")
            elif isinstance(value, dict):
                raise ConfigError(f"Config key {path} must be a value, not a section")
            else:
                base[key] = value

        # An explicit hot temperature replaces the default occupation
        bath = override.get("bath") if prefix == "" else None
        if isinstance(bath, dict) and "T_h" in bath and "n_h" not in bath:
            base["bath"]["n_h"] = None

    def _load_env_vars(self):
        """Load configuration from environment variables."""
        # Logging
        if "PHOTOCELL_LOG_LEVEL" in os.environ:
            self.config["logging"]["level"] = os.environ["PHOTOCELL_LOG_LEVEL"].upper()

        if "PHOTOCELL_LOG_FORMAT" in os.environ:
            self.config["logging"]["format"] = os.environ["PHOTOCELL_LOG_FORMAT"].lower()

        # Runtime
        if "PHOTOCELL_WORKERS" in os.environ:
            try:
                self.config["runtime"]["workers"] = int(os.environ["PHOTOCELL_WORKERS"])
            except ValueError as e:
                raise ConfigError(f"PHOTOCELL_WORKERS must be an integer: {e}") from e

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-notation path.

        Args:
            key_path: Configuration key path (e.g., 'bath.T_c')
            default: Default value if key not found

        Returns:
            Configuration value

        Example:
            config.get('bath.T_c')  # Returns 300.0
        """
        keys = key_path.split(".")
        value = self.config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    def get_section(self, section: str) -> Dict:
        """
        Get entire configuration section.

        Args:
            section: Section name (e.g., 'rates')

        Returns:
            Configuration section dictionary
        """
        return self.config.get(section, {})

    def to_dict(self) -> Dict:
        """Get complete configuration as dictionary."""
        return copy.deepcopy(self.config)

    def _number(self, key_path: str) -> float:
        value = self.get(key_path)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"Config key {key_path} must be a number, got {value!r}")
        return float(value)

    def _per_donor(self, key_path: str, donor_count: int) -> tuple:
        value = self.get(key_path)
        if isinstance(value, list):
            if len(value) != donor_count:
                raise ConfigError(
                    f"Config key {key_path} lists {len(value)} values for {donor_count} donors"
                )
            items = value
        else:
            items = [value] * donor_count
        for item in items:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ConfigError(f"Config key {key_path} must be numeric, got {item!r}")
        return tuple(float(item) for item in items)

    def _optional_number(self, key_path: str) -> Optional[float]:
        return None if self.get(key_path) is None else self._number(key_path)

    def donor_count(self, override: Optional[int] = None) -> int:
        value = override if override is not None else self.get("donor_count")
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ConfigError(f"donor_count must be a positive integer, got {value!r}")
        return value

    def photocell(self, donor_count: Optional[int] = None) -> PhotocellConfig:
        """
        Build and validate the physical configuration.

        Args:
            donor_count: Overrides the file's donor_count when given

        Raises:
            ConfigError: If a value has the wrong type or an invariant is violated
        """
        n = self.donor_count(donor_count)
        cfg = PhotocellConfig(
            basis=build_basis(n),
            levels=LevelScheme(
                E_b=self._number("energies.E_b"),
                E_a=self._per_donor("energies.E_a", n),
                E_alpha=self._number("energies.E_alpha"),
                E_beta=self._number("energies.E_beta"),
            ),
            rates=RateSet(
                gamma_h=self._per_donor("rates.gamma_h", n),
                gamma_c=self._per_donor("rates.gamma_c", n),
                Gamma_c=self._number("rates.Gamma_c"),
                Gamma=self._number("rates.Gamma"),
                chi=self._number("rates.chi"),
                J=self._number("rates.J"),
            ),
            baths=BathSpec(
                T_c=self._number("bath.T_c"),
                n_h=self._optional_number("bath.n_h"),
                T_h=self._optional_number("bath.T_h"),
            ),
            solver_tolerances=SolverTolerances(
                steady_state_residual=self._number("solver.steady_state_residual"),
                propagation_rtol=self._number("solver.propagation_rtol"),
                root_find_vtol=self._number("solver.root_find_vtol"),
                steady_state_method=str(self.get("solver.steady_state_method")),
            ),
        )
        return ensure_valid(cfg)

    def gamma_grid(self) -> np.ndarray:
        """Load grid from the sweep section."""
        points = self.get("sweep.points")
        if isinstance(points, bool) or not isinstance(points, int):
            raise ConfigError(f"sweep.points must be an integer, got {points!r}")
        try:
            return default_gamma_grid(
                self._number("sweep.gamma_min"), self._number("sweep.gamma_max"), points
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def int_list(self, key_path: str) -> List[int]:
        value = self.get(key_path)
        if not isinstance(value, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in value
        ):
            raise ConfigError(f"Config key {key_path} must be a list of integers")
        return list(value)

    def float_list(self, key_path: str) -> List[float]:
        value = self.get(key_path)
        if not isinstance(value, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
        ):
            raise ConfigError(f"Config key {key_path} must be a list of numbers")
        return [float(v) for v in value]


def load_config(config_path: Optional[str] = None) -> Config:
    """
    Load configuration from file and environment.

    Args:
        config_path: Path to YAML config file (optional)

    Returns:
        Config instance
    """
    return Config(config_path)


def parse_config(path: str, donor_count: Optional[int] = None) -> PhotocellConfig:
    """Read ``path`` and return its validated PhotocellConfig."""
    return load_config(path).photocell(donor_count)
