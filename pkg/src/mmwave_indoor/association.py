"""Serving-AP selection."""

from __future__ import annotations

import enum

import numpy as np

from .deployment import Deployment


class AssociationPolicy(enum.Enum):
    MIN_DISTANCE_3D = "min-dist"
    MAX_RECEIVED_POWER = "max-power"

    @classmethod
    def parse(cls, text: str) -> "AssociationPolicy":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown association policy {text!r} (expected one of {names})") from None


def associate(links, deployment: Deployment, policy: AssociationPolicy) -> int:
    """AP index serving the UE; ties go to the lowest AP index."""
    if not links:
        raise ValueError("empty link list")
    index = np.array([link.ap_index for link in links])
    if policy is AssociationPolicy.MIN_DISTANCE_3D:
        ground = np.array([link.ground_distance_m for link in links])
        slant = np.sqrt(ground ** 2 + deployment.ap_height_m ** 2)
        by_slant = _first_best(index, slant, minimise=True)
        by_ground = _first_best(index, ground, minimise=True)
        # a common AP height makes both orderings identical
        assert by_slant == by_ground, (by_slant, by_ground)
        return by_slant
    if policy is AssociationPolicy.MAX_RECEIVED_POWER:
        power = np.array([link.received_power_w for link in links])
        return _first_best(index, power, minimise=False)
    raise ValueError(f"unsupported policy {policy!r}")


def _first_best(index, values, minimise):
    best = values.min() if minimise else values.max()
    return int(index[values == best].min())
