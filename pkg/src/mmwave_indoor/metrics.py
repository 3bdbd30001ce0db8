"""Coverage, area spectral efficiency and the beamwidth/density trade-off."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True, eq=False)
class SampleSet:
    """SINR draws (linear) for one simulated configuration.

    ``serving_blocked`` optionally records, per realization, whether the
    serving link was shadowed by the body.
    """

    sinr_values: np.ndarray
    config_key: tuple = ()
    serving_blocked: np.ndarray | None = None

    def __post_init__(self):
        values = np.asarray(self.sinr_values, dtype=float).ravel()
        if np.any(values < 0.0) or np.any(np.isnan(values)):
            raise ValueError("SINR samples must be non-negative numbers")
        object.__setattr__(self, "sinr_values", values)
        if self.serving_blocked is not None:
            blocked = np.asarray(self.serving_blocked, dtype=bool).ravel()
            if blocked.shape != values.shape:
                raise ValueError("serving_blocked must align with sinr_values")
            object.__setattr__(self, "serving_blocked", blocked)

    @property
    def realization_count(self) -> int:
        return len(self.sinr_values)

    def merge(self, other: "SampleSet") -> "SampleSet":
        """Concatenate two partitions of the same configuration."""
        if self.config_key != other.config_key:
            raise ValueError("cannot merge samples of different configurations")
        blocked = None
        if self.serving_blocked is not None and other.serving_blocked is not None:
            blocked = np.concatenate([self.serving_blocked, other.serving_blocked])
        return SampleSet(np.concatenate([self.sinr_values, other.sinr_values]), self.config_key, blocked)


def _check_nonempty(samples: SampleSet):
    if samples.realization_count == 0:
        raise ValueError("empty sample set")


def coverage(samples: SampleSet, threshold_db: float) -> float:
    """Fraction of samples with SINR strictly above the threshold."""
    _check_nonempty(samples)
    threshold = 10.0 ** (threshold_db / 10.0)
    return float(np.count_nonzero(samples.sinr_values > threshold)) / samples.realization_count


def spectral_efficiency(samples: SampleSet) -> float:
    """Mean of log2(1 + SINR), bits/s/Hz."""
    _check_nonempty(samples)
    return float(np.mean(np.log2(1.0 + samples.sinr_values)))


def ase(samples: SampleSet, cell_area_m2: float) -> float:
    """Area spectral efficiency in bits/s/Hz/m^2."""
    if not cell_area_m2 > 0.0:
        raise ValueError(f"cell area must be positive, got {cell_area_m2!r}")
    return spectral_efficiency(samples) / cell_area_m2


@dataclass(frozen=True)
class ResultRow:
    d_s_m: float
    theta_bw_deg: float
    threshold_db: float
    scenario: str
    association: str
    coverage: float
    ase_bps_hz_m2: float
    realizations: int
    seed: int

    def sort_key(self):
        return (self.d_s_m, self.theta_bw_deg, self.threshold_db, self.scenario, self.association)


@dataclass(frozen=True)
class SweepResult:
    """Result rows kept sorted by (d_s, beamwidth, threshold, scenario, association)."""

    rows: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(self.rows, key=ResultRow.sort_key)))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def merge(self, other: "SweepResult") -> "SweepResult":
        return SweepResult(self.rows + other.rows)

    def select(self, d_s_m=None, theta_bw_deg=None, threshold_db=None, scenario=None,
               association=None) -> "SweepResult":
        """Rows matching every given key. Float keys match to 1e-9 relative."""
        def keep(row):
            for name, want in (("d_s_m", d_s_m), ("theta_bw_deg", theta_bw_deg),
                               ("threshold_db", threshold_db)):
                if want is not None and not math.isclose(getattr(row, name), want, rel_tol=1e-9, abs_tol=1e-12):
                    return False
            if scenario is not None and row.scenario != scenario:
                return False
            if association is not None and row.association != _policy_name(association):
                return False
            return True
        return SweepResult(tuple(r for r in self.rows if keep(r)))

    def values(self, name):
        return sorted({getattr(r, name) for r in self.rows})

    def families(self):
        """Distinct (scenario, association) pairs present."""
        return sorted({(r.scenario, r.association) for r in self.rows})


def _policy_name(policy):
    return getattr(policy, "value", policy)


def _single_family(rows: SweepResult):
    families = rows.families()
    if len(families) > 1:
        raise ValueError(f"ambiguous selection, several scenario/association pairs: {families}")


def peak_coverage_beamwidth(sweep: SweepResult, d_s: float, threshold_db: float,
                            scenario=None, association=None):
    """Swept beamwidth (degrees) with the highest coverage, and that coverage.

    Ties resolve to the narrower beam.
    """
    rows = sweep.select(d_s_m=d_s, threshold_db=threshold_db, scenario=scenario, association=association)
    if not len(rows):
        raise ValueError(f"no rows for d_s={d_s!r} m at threshold {threshold_db!r} dB")
    _single_family(rows)
    best = min(rows, key=lambda r: (-r.coverage, r.theta_bw_deg))
    return best.theta_bw_deg, best.coverage


class TradeoffPoint(NamedTuple):
    d_s_m: float
    theta_bw_deg: float
    coverage: float
    ase_bps_hz_m2: float


def tradeoff_curve(sweep: SweepResult, threshold_db: float, scenario=None, association=None):
    """Peak coverage per inter-site distance paired with the ASE of that same configuration."""
    rows = sweep.select(threshold_db=threshold_db, scenario=scenario, association=association)
    _single_family(rows)
    points = []
    for d_s in rows.values("d_s_m"):
        theta, cov = peak_coverage_beamwidth(rows, d_s, threshold_db)
        row = rows.select(d_s_m=d_s, theta_bw_deg=theta).rows[0]
        points.append(TradeoffPoint(d_s, theta, cov, row.ase_bps_hz_m2))
    return points

