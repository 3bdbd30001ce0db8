"""Path loss, thermal noise and downlink SINR at the reference UE.

Everything is linear scale. Received power is ``P_tx * G * L(d, h) * B`` in
watts; noise is thermal noise in watts, so the SINR is the plain ratio of
serving power to noise plus the power of every other AP.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants

from .antenna import AntennaPattern, db_to_linear, dbm_to_watts, directivity_gain
from .blockage import BodyModel, BodyOrientation, attenuation_factor, is_blocked
from .deployment import Deployment

REFERENCE_TEMPERATURE_K = 290.0


def free_space_ref_loss(carrier_freq_hz: float) -> float:
    """Friis power factor at 1 m, ``(c / (4 pi f))**2``."""
    if carrier_freq_hz <= 0.0:
        raise ValueError(f"carrier frequency must be positive, got {carrier_freq_hz!r}")
    return (constants.c / (4.0 * math.pi * carrier_freq_hz)) ** 2


def noise_power(bandwidth_hz: float, noise_figure_db: float) -> float:
    """Thermal noise power in watts at 290 K."""
    if bandwidth_hz <= 0.0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth_hz!r}")
    return constants.k * REFERENCE_TEMPERATURE_K * bandwidth_hz * db_to_linear(noise_figure_db)


@dataclass(frozen=True)
class RadioConfig:
    tx_power_w: float = 0.1
    carrier_freq_hz: float = 60e9
    bandwidth_hz: float = 100e6
    noise_figure_linear: float = db_to_linear(9.0)
    pathloss_exponent: float = 2.0
    ref_loss_1m: float = field(init=False)
    noise_power_w: float = field(init=False)

    def __post_init__(self):
        for name in ("tx_power_w", "carrier_freq_hz", "bandwidth_hz", "noise_figure_linear",
                     "pathloss_exponent"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        object.__setattr__(self, "ref_loss_1m", free_space_ref_loss(self.carrier_freq_hz))
        object.__setattr__(
            self, "noise_power_w",
            constants.k * REFERENCE_TEMPERATURE_K * self.bandwidth_hz * self.noise_figure_linear)

    @classmethod
    def from_db(cls, tx_power_dbm=20.0, carrier_freq_hz=60e9, bandwidth_hz=100e6,
                noise_figure_db=9.0, pathloss_exponent=2.0) -> "RadioConfig":
        return cls(dbm_to_watts(tx_power_dbm), carrier_freq_hz, bandwidth_hz,
                   db_to_linear(noise_figure_db), pathloss_exponent)


def path_loss(ground_distance_m, ap_height_m: float, config: RadioConfig):
    """``L0 * R**-alpha`` with R the 3-D AP-UE distance. Accepts arrays."""
    if ap_height_m <= 0.0:
        raise ValueError(f"AP height must be positive, got {ap_height_m!r}")
    d = np.asarray(ground_distance_m, dtype=float)
    loss = config.ref_loss_1m * (d * d + ap_height_m * ap_height_m) ** (-config.pathloss_exponent / 2.0)
    return float(loss) if loss.ndim == 0 else loss


@dataclass(frozen=True)
class LinkState:
    ap_index: int
    ground_distance_m: float
    gain: float
    blockage: float
    received_power_w: float


def link_states(deployment: Deployment, ue_position, orientation, pattern: AntennaPattern,
                body: BodyModel, radio: RadioConfig) -> list[LinkState]:
    """Per-AP link state for one UE snapshot, straight from the model definitions."""
    if isinstance(orientation, BodyOrientation):
        orientation = orientation.azimuth_rad
    rel = deployment.ap_positions - np.asarray(ue_position, dtype=float)
    dist = np.hypot(rel[:, 0], rel[:, 1])
    azimuth = np.arctan2(rel[:, 1], rel[:, 0]) % (2.0 * math.pi)
    gain = directivity_gain(dist, pattern)
    blockage = attenuation_factor(
        is_blocked(dist, azimuth, orientation, body, deployment.ap_height_m), body)
    power = radio.tx_power_w * gain * path_loss(dist, deployment.ap_height_m, radio) * blockage
    return [LinkState(k, float(dist[k]), float(gain[k]), float(blockage[k]), float(power[k]))
            for k in range(deployment.n_aps)]


def sinr(serving_index: int, links, config: RadioConfig) -> float:
    """Serving power over thermal noise plus all other received power."""
    if not links:
        raise ValueError("empty link list")
    powers = np.array([link.received_power_w for link in links])
    position = next((k for k, link in enumerate(links) if link.ap_index == serving_index), None)
    if position is None:
        raise ValueError(f"serving AP {serving_index} not among the links")
    interference = np.sum(np.delete(powers, position))
    return float(powers[position] / (config.noise_power_w + interference))
