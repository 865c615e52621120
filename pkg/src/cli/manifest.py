"""
Run manifest: everything that determines the bytes a subcommand writes.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .. import __version__
from ..model.models import PhotocellConfig
from ..utils.serialization import sha256_hex

SUBCOMMANDS = ("steady", "sweep", "mpp", "scan", "calibrate", "transient")


@dataclass(frozen=True)
class RunManifest:
    """
    One CLI invocation.

    ``settings`` holds the experiment parameters (grid, voltages, donor counts);
    ``workers`` only affects speed and is left out of the hash.
    """

    config_path: Optional[str]
    subcommand: str
    photocell: PhotocellConfig
    output_dir: str
    settings: Dict[str, Any] = field(default_factory=dict)
    workers: int = 1
    tool_version: str = __version__

    @property
    def config_hash(self) -> str:
        return sha256_hex(
            {
                "subcommand": self.subcommand,
                "photocell": self.photocell.to_dict(),
                "settings": self.settings,
            }
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "config_path": self.config_path,
            "subcommand": self.subcommand,
            "photocell": self.photocell.to_dict(),
            "settings": self.settings,
            "output_dir": self.output_dir,
            "tool_version": self.tool_version,
            "config_hash": self.config_hash,
        }
