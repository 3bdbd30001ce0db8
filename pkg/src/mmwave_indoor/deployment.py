"""Hexagonal AP layout over a square venue and UE placement in the central cell."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .blockage import BodyOrientation

SQRT3 = math.sqrt(3.0)

# Offsets of the six nearest lattice neighbours, in units of the inter-site distance.
_NEIGHBOUR_OFFSETS = np.array([
    [1.0, 0.0], [0.5, SQRT3 / 2], [-0.5, SQRT3 / 2],
    [-1.0, 0.0], [-0.5, -SQRT3 / 2], [0.5, -SQRT3 / 2],
])


@dataclass(frozen=True, eq=False)
class Deployment:
    """AP ground positions (metres), venue-centred, with the AP height above the UE plane."""

    inter_site_distance_m: float
    ap_height_m: float
    area_side_m: float
    ap_positions: np.ndarray
    central_ap_index: int
    # Index of each of the six lattice neighbours of the central AP, -1 if outside the venue.
    neighbour_indices: tuple = field(default=(-1,) * 6)

    def __post_init__(self):
        if self.inter_site_distance_m <= 0.0 or self.ap_height_m <= 0.0:
            raise ValueError("inter-site distance and AP height must be positive")
        if self.area_side_m < self.inter_site_distance_m:
            raise ValueError("venue side must be at least the inter-site distance")
        positions = np.asarray(self.ap_positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 2 or len(positions) == 0:
            raise ValueError("ap_positions must be a non-empty (n, 2) array")
        positions.setflags(write=False)
        object.__setattr__(self, "ap_positions", positions)

    @property
    def n_aps(self) -> int:
        return len(self.ap_positions)

    @property
    def central_position(self) -> np.ndarray:
        return self.ap_positions[self.central_ap_index]

    @property
    def neighbour_positions(self) -> np.ndarray:
        """Lattice positions of the central AP's six neighbours, present in the venue or not."""
        return self.central_position + self.inter_site_distance_m * _NEIGHBOUR_OFFSETS

    @property
    def cell_area_m2(self) -> float:
        return cell_area(self.inter_site_distance_m)

    def cell_bounding_box(self):
        """(xmin, ymin, xmax, ymax) of the central hexagonal cell."""
        cx, cy = self.central_position
        half_w = self.inter_site_distance_m / 2.0
        half_h = self.inter_site_distance_m / SQRT3
        return cx - half_w, cy - half_h, cx + half_w, cy + half_h


def cell_area(d_s: float) -> float:
    """Area of one hexagonal cell for inter-site distance ``d_s``."""
    if d_s <= 0.0:
        raise ValueError(f"inter-site distance must be positive, got {d_s!r}")
    return SQRT3 / 2.0 * d_s * d_s


def generate_hex_grid(d_s: float, area_side: float = 400.0, ap_height: float = 10.0) -> Deployment:
    """Triangular lattice of APs covering the square ``[-L/2, L/2]^2``.

    One AP sits at the venue centre. Points are ordered row by row (lattice
    row index, then column index), so the output is fully deterministic.
    """
    if d_s <= 0.0:
        raise ValueError(f"inter-site distance must be positive, got {d_s!r}")
    if ap_height <= 0.0:
        raise ValueError(f"AP height must be positive, got {ap_height!r}")
    if area_side < d_s:
        raise ValueError(f"venue side {area_side!r} is smaller than the inter-site distance {d_s!r}")

    half = area_side / 2.0
    tol = 1e-9 * area_side
    row_pitch = d_s * SQRT3 / 2.0
    n_rows = int(math.floor((half + tol) / row_pitch))
    rows = []
    for j in range(-n_rows, n_rows + 1):
        # x = (i + j/2) * d_s must satisfy |x| <= half
        lo = math.ceil((-half - tol) / d_s - j / 2.0)
        hi = math.floor((half + tol) / d_s - j / 2.0)
        i = np.arange(lo, hi + 1)
        rows.append(np.column_stack([(i + j / 2.0) * d_s, np.full(len(i), j * row_pitch)]))
    positions = np.concatenate(rows)

    dist2 = np.einsum("ij,ij->i", positions, positions)
    central = int(np.argmin(dist2))
    neighbours = []
    for offset in _NEIGHBOUR_OFFSETS * d_s:
        gap = np.hypot(*(positions - offset).T)
        k = int(np.argmin(gap))
        neighbours.append(k if gap[k] < 1e-6 * d_s else -1)
    return Deployment(d_s, ap_height, area_side, positions, central, tuple(neighbours))


def in_central_cell(deployment: Deployment, points) -> np.ndarray:
    """Mask of points whose nearest AP is the central one.

    Only the six lattice neighbours can compete with the central AP, so the
    test is exact for the full grid. Equidistant points go to the AP with the
    lower index; neighbours outside the venue count as higher-indexed.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    centre = deployment.central_position
    d_centre = np.sum((points - centre) ** 2, axis=1)
    ok = np.ones(len(points), dtype=bool)
    for idx, nb in zip(deployment.neighbour_indices, deployment.neighbour_positions):
        d_nb = np.sum((points - nb) ** 2, axis=1)
        if 0 <= idx < deployment.central_ap_index:
            ok &= d_centre < d_nb
        else:
            ok &= d_centre <= d_nb
    return ok


def box_point(deployment: Deployment, u, v):
    """Map unit-square coordinates onto the central cell's bounding box."""
    xmin, ymin, xmax, ymax = deployment.cell_bounding_box()
    return xmin + np.asarray(u) * (xmax - xmin), ymin + np.asarray(v) * (ymax - ymin)


def sample_ue_position(deployment: Deployment, rng) -> np.ndarray:
    """Uniform point in the central hexagonal cell, by rejection from its bounding box.

    ``rng`` is any object with a numpy-style ``random(size)`` method. Each
    attempt consumes two uniforms (x then y).
    """
    while True:
        u, v = rng.random(2)
        point = np.array(box_point(deployment, u, v))
        if in_central_cell(deployment, point)[0]:
            return point


@dataclass(frozen=True)
class UePlacement:
    position: np.ndarray
    body_orientation: BodyOrientation
