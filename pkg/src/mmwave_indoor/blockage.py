"""Self-body blockage: the user's own body shadowing the device.

The body is a slab of width ``body_width_m`` standing ``dist_to_body_m`` behind
the device and reaching ``dist_top_head_m`` above it. A link to an AP is
blocked when the AP lies outside the self-block free zone (vertical test) and
its azimuth falls inside the angular sector subtended by the body (horizontal
test).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BodyModel:
    """Body geometry relative to the device plus the through-body power factor.

    Attributes:
        body_width_m: shoulder width of the blocking slab.
        dist_to_body_m: horizontal device-to-body distance; 0 means the device
            sits against the body (pocket, wearable).
        dist_top_head_m: vertical distance from the device up to the top of
            the head.
        body_attenuation: linear power factor applied to blocked links.
    """

    body_width_m: float = 0.40
    dist_to_body_m: float = 0.30
    dist_top_head_m: float = 0.40
    body_attenuation: float = 1e-4

    def __post_init__(self):
        if self.body_width_m <= 0.0:
            raise ValueError(f"body width must be positive, got {self.body_width_m!r}")
        if self.dist_to_body_m < 0.0:
            raise ValueError(f"device-to-body distance must be >= 0, got {self.dist_to_body_m!r}")
        if self.dist_top_head_m <= 0.0:
            raise ValueError(f"device-to-head-top distance must be positive, got {self.dist_top_head_m!r}")
        if not 0.0 < self.body_attenuation <= 1.0:
            raise ValueError(f"body attenuation must lie in (0, 1], got {self.body_attenuation!r}")

    @property
    def blockage_angle_rad(self) -> float:
        """Full azimuth sector hidden by the body; pi when the device touches it."""
        return 2.0 * math.atan2(self.body_width_m, 2.0 * self.dist_to_body_m)

    def block_free_radius(self, ap_height_m: float) -> float:
        return block_free_radius(ap_height_m, self)


@dataclass(frozen=True)
class BodyOrientation:
    """Azimuth pointing from the UE toward the body centre, wrapped to [0, 2*pi)."""

    azimuth_rad: float

    def __post_init__(self):
        object.__setattr__(self, "azimuth_rad", float(self.azimuth_rad) % TWO_PI)


def block_free_radius(ap_height_m: float, body: BodyModel) -> float:
    """Ground radius around an AP inside which the body can never shadow it."""
    if ap_height_m <= 0.0:
        raise ValueError(f"AP height must be positive, got {ap_height_m!r}")
    if body.dist_top_head_m <= 0.0:
        raise ValueError("device-to-head-top distance must be positive")
    return ap_height_m * body.dist_to_body_m / body.dist_top_head_m


def self_block_probability(body: BodyModel) -> float:
    """Probability that a uniformly oriented body covers a given far AP."""
    return math.atan2(body.body_width_m, 2.0 * body.dist_to_body_m) / math.pi


def angular_difference(a, b):
    """Absolute wrapped difference of two azimuths, in [0, pi]."""
    return np.abs((np.asarray(a) - np.asarray(b) + math.pi) % TWO_PI - math.pi)


def is_blocked(ue_to_ap_ground_distance_m, ue_to_ap_azimuth_rad, orientation, body: BodyModel,
               ap_height_m: float):
    """Whether the body shadows the UE-AP link.

    ``orientation`` may be a :class:`BodyOrientation` or raw azimuths in
    radians. Both comparisons are boundary inclusive on the angular side and
    strict on the radial side. Broadcasts over array arguments.
    """
    if isinstance(orientation, BodyOrientation):
        orientation = orientation.azimuth_rad
    outside = np.asarray(ue_to_ap_ground_distance_m) > block_free_radius(ap_height_m, body)
    in_sector = angular_difference(ue_to_ap_azimuth_rad, orientation) <= body.blockage_angle_rad / 2.0
    blocked = outside & in_sector
    return bool(blocked) if blocked.ndim == 0 else blocked


def attenuation_factor(blocked, body: BodyModel):
    """Linear power factor for a link: the body attenuation if blocked, else 1."""
    factor = np.where(blocked, body.body_attenuation, 1.0)
    return float(factor) if factor.ndim == 0 else factor
