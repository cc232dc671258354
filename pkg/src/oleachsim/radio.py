"""First-order radio energy model.

Transmission energy has a fixed electronics term plus an amplifier term
that switches regime at the crossover distance d0: free space (d^2)
below d0, multipath (d^4) at or above it.  Both regimes dissipate the
same energy exactly at d0, so the boundary assignment does not change
any value.  Reception and aggregation are distance independent.
"""

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import ConfigError


@dataclass(frozen=True)
class RadioParams:
    """Radio constants, all expressed per bit.

    e_elec:  electronics energy (J/bit), charged on transmit and receive
    eps_fs:  free-space amplifier energy (J/bit/m^2), short range
    eps_amp: multipath amplifier energy (J/bit/m^4), long range
    e_da:    data aggregation energy (J/bit per fused signal)
    """

    e_elec: float = 50e-12
    eps_fs: float = 10e-12
    eps_amp: float = 0.0013e-12
    e_da: float = 5e-12

    @cached_property
    def d0(self) -> float:
        """Crossover distance in meters, sqrt(eps_fs / eps_amp)."""
        return math.sqrt(self.eps_fs / self.eps_amp)

    def validate(self, require_crossover: bool = True) -> None:
        """Reject non-positive constants; by default also require
        eps_fs > eps_amp so the crossover distance lies above 1 m."""
        for name in ("e_elec", "eps_fs", "eps_amp", "e_da"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"{name} must be > 0, got {value!r}")
        if require_crossover and self.eps_fs <= self.eps_amp:
            raise ConfigError(
                "eps_fs must exceed eps_amp so the crossover distance is above 1 m"
            )


def crossover_distance(params: RadioParams) -> float:
    """Distance at which the two amplifier regimes dissipate equally."""
    params.validate(require_crossover=False)
    return params.d0


def tx_cost(bits: float, dist: float, params: RadioParams) -> float:
    """Energy in joules to transmit a packet of `bits` over `dist` meters.

    Uses the free-space branch below the crossover distance and the
    multipath branch at or above it.
    """
    if dist < params.d0:
        return bits * params.e_elec + bits * params.eps_fs * dist * dist
    return bits * params.e_elec + bits * params.eps_amp * dist ** 4


def rx_cost(bits: float, params: RadioParams) -> float:
    """Energy in joules to receive a packet of `bits`."""
    return bits * params.e_elec


def aggregation_cost(bits: float, n_signals: int, params: RadioParams) -> float:
    """Energy to fuse `n_signals` readings of `bits` each into one packet.

    The aggregator's own reading counts as one of the signals.
    """
    return n_signals * bits * params.e_da
