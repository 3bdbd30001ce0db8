"""Cone-bulb directivity model for ceiling-mounted, downward-pointing APs.

The main lobe is a cone of uniform gain ``M`` with full opening angle equal to
the beamwidth; everything else gets the side-lobe gain ``m``. Gains are
normalised over the unit sphere, so ``M`` follows from the beamwidth and ``m``.
All gains are linear power ratios; dB only appears in the conversion helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_MIN_BEAMWIDTH = math.radians(1.0)


def db_to_linear(value_db):
    """Power ratio from decibels. Works on scalars and arrays."""
    if np.ndim(value_db):
        return 10.0 ** (np.asarray(value_db, dtype=float) / 10.0)
    return 10.0 ** (float(value_db) / 10.0)


def linear_to_db(value):
    """Decibels from a (positive) power ratio."""
    return 10.0 * np.log10(value)


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def cap_fraction(beamwidth_rad: float) -> float:
    """Fraction A/S of the sphere covered by a cone of the given full angle."""
    return (1.0 - math.cos(beamwidth_rad / 2.0)) / 2.0


def main_lobe_gain(beamwidth_rad: float, side_lobe_gain: float,
                   min_beamwidth_rad: float = DEFAULT_MIN_BEAMWIDTH) -> float:
    """Main-lobe gain that makes the cone-bulb pattern integrate to one.

    Args:
        beamwidth_rad: full cone angle, in ``(0, 2*pi]``.
        side_lobe_gain: linear side-lobe gain in ``[0, 1)``.
        min_beamwidth_rad: narrowest accepted beam; the gain diverges as the
            beamwidth goes to zero.

    Returns:
        Linear main-lobe gain ``M >= 1``.
    """
    if not 0.0 < beamwidth_rad <= 2.0 * math.pi:
        raise ValueError(f"beamwidth must lie in (0, 2*pi] rad, got {beamwidth_rad!r}")
    if beamwidth_rad < min_beamwidth_rad:
        raise ValueError(
            f"beamwidth {math.degrees(beamwidth_rad):.6g} deg is below the minimum "
            f"{math.degrees(min_beamwidth_rad):.6g} deg")
    if not 0.0 <= side_lobe_gain < 1.0:
        raise ValueError(f"side-lobe gain must lie in [0, 1), got {side_lobe_gain!r}")
    c = math.cos(beamwidth_rad / 2.0)
    return (2.0 - side_lobe_gain * (1.0 + c)) / (1.0 - c)


def illumination_radius(beamwidth_rad: float, ap_height_m: float) -> float:
    """Radius of the main-lobe footprint on the UE plane, ``h * tan(bw / 2)``."""
    if not 0.0 < beamwidth_rad < math.pi:
        raise ValueError(
            f"footprint is bounded only for beamwidths in (0, pi) rad, got {beamwidth_rad!r}")
    if ap_height_m <= 0.0:
        raise ValueError(f"AP height must be positive, got {ap_height_m!r}")
    return ap_height_m * math.tan(beamwidth_rad / 2.0)


@dataclass(frozen=True)
class AntennaPattern:
    """Cone-bulb pattern of an AP mounted ``ap_height_m`` above the UE plane.

    Beamwidths of pi or more light up the whole floor, which is represented
    by an infinite illumination radius.
    """

    beamwidth_rad: float
    side_lobe_gain: float = 0.1
    ap_height_m: float = 10.0
    min_beamwidth_rad: float = DEFAULT_MIN_BEAMWIDTH
    main_lobe_gain: float = field(init=False)
    illumination_radius_m: float = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.side_lobe_gain < 1.0:
            raise ValueError(f"side-lobe gain must lie in (0, 1), got {self.side_lobe_gain!r}")
        if not 0.0 < self.beamwidth_rad < 2.0 * math.pi:
            raise ValueError(f"beamwidth must lie in (0, 2*pi) rad, got {self.beamwidth_rad!r}")
        gain = main_lobe_gain(self.beamwidth_rad, self.side_lobe_gain, self.min_beamwidth_rad)
        if gain <= self.side_lobe_gain:
            raise ValueError("main-lobe gain does not exceed the side-lobe gain")
        if self.beamwidth_rad < math.pi:
            radius = illumination_radius(self.beamwidth_rad, self.ap_height_m)
        elif self.ap_height_m > 0.0:
            radius = math.inf
        else:
            raise ValueError(f"AP height must be positive, got {self.ap_height_m!r}")
        object.__setattr__(self, "main_lobe_gain", gain)
        object.__setattr__(self, "illumination_radius_m", radius)

    @classmethod
    def from_degrees(cls, beamwidth_deg: float, side_lobe_gain_db: float = -10.0,
                     ap_height_m: float = 10.0, **kwargs) -> "AntennaPattern":
        return cls(math.radians(beamwidth_deg), db_to_linear(side_lobe_gain_db), ap_height_m, **kwargs)

    @property
    def beamwidth_deg(self) -> float:
        return math.degrees(self.beamwidth_rad)


def directivity_gain(ue_ground_distance_m, pattern: AntennaPattern):
    """Gain seen by a UE at the given ground distance from the AP's foot point.

    The footprint boundary belongs to the main lobe. Accepts arrays.
    """
    inside = np.asarray(ue_ground_distance_m) <= pattern.illumination_radius_m
    gain = np.where(inside, pattern.main_lobe_gain, pattern.side_lobe_gain)
    return float(gain) if gain.ndim == 0 else gain
