"""
Incoherent jump channels of the photocell.

Each channel moves population from one basis state to another at a fixed
total rate (bare rate times the thermal factor n or n + 1).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List

from ..model.models import PhotocellConfig

logger = logging.getLogger(__name__)


class ChannelKind(str, Enum):
    """Physical origin of a jump channel."""

    HOT_ABSORB = "hot_absorb"
    HOT_EMIT = "hot_emit"
    COLD_TRANSFER_DOWN = "cold_transfer_down"
    COLD_TRANSFER_UP = "cold_transfer_up"
    TRAP_DECAY = "trap_decay"
    TRAP_EXCITE = "trap_excite"
    WORK = "work"
    RECOMBINATION = "recombination"


@dataclass(frozen=True)
class JumpChannel:
    """Transition source -> target at ``rate`` eV."""

    source: int
    target: int
    rate: float
    kind: ChannelKind

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "source": self.source,
            "target": self.target,
            "rate": self.rate,
            "kind": self.kind.value,
        }


def jump_channels(cfg: PhotocellConfig) -> List[JumpChannel]:
    """
    Enumerate the 4N + 4 jump channels of ``cfg``.

    Order: the four channels of donor 1, donor 2, ..., then trap decay,
    trap excitation, work and recombination.

    Args:
        cfg: Photocell configuration

    Returns:
        List of JumpChannel
    """
    basis = cfg.basis
    rates = cfg.rates
    b, alpha, beta = basis.ground, basis.alpha, basis.beta

    n_hot = cfg.hot_occupations()
    n_cold = cfg.cold_donor_occupations()
    n_trap = cfg.trap_occupation()

    channels: List[JumpChannel] = []
    for i, a in enumerate(basis.donors):
        gamma_h = rates.gamma_h[i]
        gamma_c = rates.gamma_c[i]
        channels.extend(
            [
                JumpChannel(b, a, gamma_h * n_hot[i], ChannelKind.HOT_ABSORB),
                JumpChannel(a, b, gamma_h * (n_hot[i] + 1), ChannelKind.HOT_EMIT),
                JumpChannel(
                    a, alpha, gamma_c * (n_cold[i] + 1), ChannelKind.COLD_TRANSFER_DOWN
                ),
                JumpChannel(alpha, a, gamma_c * n_cold[i], ChannelKind.COLD_TRANSFER_UP),
            ]
        )

    channels.extend(
        [
            JumpChannel(beta, b, rates.Gamma_c * (n_trap + 1), ChannelKind.TRAP_DECAY),
            JumpChannel(b, beta, rates.Gamma_c * n_trap, ChannelKind.TRAP_EXCITE),
            JumpChannel(alpha, beta, rates.Gamma, ChannelKind.WORK),
            # alpha -> b: the electron returns to the ground state without doing work
            JumpChannel(alpha, b, rates.chi * rates.Gamma, ChannelKind.RECOMBINATION),
        ]
    )

    logger.debug(f"Built {len(channels)} jump channels for N={basis.donor_count}")
    return channels
