"""
State basis of the N-donor photocell: ground, donor excitations, acceptor states.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Tuple

from ..errors import InvalidArgumentError

GROUND = "b"
ALPHA = "alpha"
BETA = "beta"


def donor_label(i: int) -> str:
    """Label of the excited state of donor ``i`` (1-based)."""
    return f"a_{i}"


@dataclass(frozen=True)
class StateBasis:
    """Ordered basis [b, a_1 ... a_N, alpha, beta]."""

    donor_count: int
    labels: Tuple[str, ...]
    index: Mapping[str, int] = field(compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.labels)

    @property
    def ground(self) -> int:
        return self.index[GROUND]

    @property
    def alpha(self) -> int:
        return self.index[ALPHA]

    @property
    def beta(self) -> int:
        return self.index[BETA]

    def donor(self, i: int) -> int:
        """Position of donor ``i`` (1-based)."""
        return self.index[donor_label(i)]

    @property
    def donors(self) -> Tuple[int, ...]:
        return tuple(self.donor(i) for i in range(1, self.donor_count + 1))

    def label(self, k: int) -> str:
        return self.labels[k]


def build_basis(donor_count: int) -> StateBasis:
    """
    Build the canonical basis for ``donor_count`` donors.

    Args:
        donor_count: Number of donors N (at least 1)

    Returns:
        StateBasis of dimension N + 3

    Raises:
        InvalidArgumentError: If N < 1
    """
    if isinstance(donor_count, bool) or not isinstance(donor_count, int) or donor_count < 1:
        raise InvalidArgumentError(
            f"donor_count must be a positive integer, got {donor_count!r}"
        )

    labels = (
        (GROUND,)
        + tuple(donor_label(i) for i in range(1, donor_count + 1))
        + (ALPHA, BETA)
    )
    index = MappingProxyType({label: k for k, label in enumerate(labels)})
    return StateBasis(donor_count=donor_count, labels=labels, index=index)
