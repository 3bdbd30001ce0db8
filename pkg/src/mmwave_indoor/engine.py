"""Seeded Monte Carlo driver and parameter sweeps.

Randomness is counter based: snapshot ``i`` of a stream with seed ``s`` draws
from a Philox generator keyed by ``s`` with ``i`` in its counter, so any
snapshot can be regenerated on its own and results never depend on how the
work is split across threads.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from . import _kernel
from .antenna import AntennaPattern, db_to_linear
from .association import AssociationPolicy
from .blockage import BodyModel
from .channel import RadioConfig
from .deployment import Deployment, box_point, generate_hex_grid, in_central_cell
from .metrics import ResultRow, SampleSet, SweepResult, ase, coverage

THREADS_ENV = "MMWAVE_SIM_THREADS"
DEFAULT_REALIZATIONS = 20_000

# uniforms fetched per snapshot up front: one orientation plus candidate points
_DRAWS_PER_SNAPSHOT = 16
# distance resolution of the footprint lookup table in the kernel
_TABLE_STEP_M = 0.05


class Scenario(enum.Enum):
    HAND = "hand"
    POCKET = "pocket"

    @property
    def dist_to_body_m(self) -> float:
        return 0.30 if self is Scenario.HAND else 0.0

    @classmethod
    def parse(cls, text) -> "Scenario":
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise ValueError(f"unknown scenario {text!r} (expected hand or pocket)") from None


@dataclass(frozen=True)
class ScenarioConfig:
    """Physical parameters of one study. Defaults reproduce the reference setup.

    ``dist_to_body_m`` left as None takes the scenario's value (30 cm for
    hand, 0 for pocket).
    """

    scenario: Scenario = Scenario.HAND
    body_width_m: float = 0.40
    dist_to_body_m: float | None = None
    dist_top_head_m: float = 0.40
    body_loss_db: float = 40.0
    tx_power_dbm: float = 20.0
    carrier_freq_hz: float = 60e9
    bandwidth_hz: float = 100e6
    noise_figure_db: float = 9.0
    pathloss_exponent: float = 2.0
    side_lobe_gain_db: float = -10.0
    ap_height_m: float = 10.0
    area_side_m: float = 400.0
    min_beamwidth_deg: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario.parse(self.scenario))
        if self.body_loss_db < 0.0:
            raise ValueError(f"body_loss_db must be >= 0, got {self.body_loss_db!r}")
        if not 0.0 < db_to_linear(self.side_lobe_gain_db) < 1.0:
            raise ValueError(f"side_lobe_gain_db must be negative, got {self.side_lobe_gain_db!r}")
        if self.ap_height_m <= 0.0:
            raise ValueError(f"ap_height_m must be positive, got {self.ap_height_m!r}")
        if self.area_side_m <= 0.0:
            raise ValueError(f"area_side_m must be positive, got {self.area_side_m!r}")
        if not 0.0 < self.min_beamwidth_deg < 180.0:
            raise ValueError(f"min_beamwidth_deg must lie in (0, 180), got {self.min_beamwidth_deg!r}")
        self.body()
        self.radio()

    def with_scenario(self, scenario) -> "ScenarioConfig":
        return replace(self, scenario=Scenario.parse(scenario))

    def body(self) -> BodyModel:
        d = self.scenario.dist_to_body_m if self.dist_to_body_m is None else self.dist_to_body_m
        return BodyModel(self.body_width_m, d, self.dist_top_head_m, db_to_linear(-self.body_loss_db))

    def radio(self) -> RadioConfig:
        return RadioConfig.from_db(self.tx_power_dbm, self.carrier_freq_hz, self.bandwidth_hz,
                                   self.noise_figure_db, self.pathloss_exponent)

    def pattern(self, theta_bw_deg: float) -> AntennaPattern:
        return AntennaPattern(math.radians(theta_bw_deg), db_to_linear(self.side_lobe_gain_db),
                              self.ap_height_m, math.radians(self.min_beamwidth_deg))

    def deployment(self, d_s_m: float) -> Deployment:
        return generate_hex_grid(d_s_m, self.area_side_m, self.ap_height_m)


@dataclass(frozen=True)
class RunSpec:
    """Sweep grid. Empty ``scenarios`` means: only the ScenarioConfig's own scenario."""

    d_s_m: tuple = (6.8,)
    theta_bw_deg: tuple = (41.0,)
    threshold_db: tuple = (-5.0,)
    policies: tuple = (AssociationPolicy.MIN_DISTANCE_3D,)
    realizations: int = DEFAULT_REALIZATIONS
    master_seed: int = 0
    scenarios: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "d_s_m", tuple(float(v) for v in self.d_s_m))
        object.__setattr__(self, "theta_bw_deg", tuple(float(v) for v in self.theta_bw_deg))
        object.__setattr__(self, "threshold_db", tuple(float(v) for v in self.threshold_db))
        object.__setattr__(self, "policies", tuple(
            p if isinstance(p, AssociationPolicy) else AssociationPolicy.parse(p) for p in self.policies))
        object.__setattr__(self, "scenarios", tuple(Scenario.parse(s) for s in self.scenarios))
        for name in ("d_s_m", "theta_bw_deg", "threshold_db", "policies"):
            if not getattr(self, name):
                raise ValueError(f"{name} must not be empty")
        if int(self.realizations) < 1:
            raise ValueError(f"realizations must be >= 1, got {self.realizations!r}")
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise ValueError(f"master_seed must be an unsigned 64-bit integer, got {self.master_seed!r}")


def resolve_workers(workers: int | None = None) -> int:
    """Explicit count, else ``MMWAVE_SIM_THREADS``, else the CPU count."""
    if workers is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        workers = int(env) if env else 0
    if workers < 0:
        raise ValueError(f"worker count must be >= 0, got {workers!r}")
    return workers or os.cpu_count() or 1


def derive_seed(master_seed: int, *indices: int) -> int:
    """Child stream seed from a master seed and structured indices."""
    seq = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(i) for i in indices))
    return int(seq.generate_state(1, np.uint64)[0])


def _stream_key(stream_seed: int) -> np.ndarray:
    return np.random.SeedSequence(int(stream_seed)).generate_state(2, np.uint64)


def realization_stream(stream_seed: int, index: int) -> np.random.Generator:
    """Independent generator for snapshot ``index`` of the stream ``stream_seed``."""
    return np.random.Generator(np.random.Philox(key=_stream_key(stream_seed), counter=[0, 0, index, 0]))


def _raw_to_unit(raw):
    return (raw >> np.uint64(11)).astype(float) * (1.0 / 9007199254740992.0)


def draw_snapshots(deployment: Deployment, stream_seed: int, start: int, stop: int):
    """UE positions and body azimuths for snapshots ``start..stop-1``.

    Identical to calling ``realization_stream(seed, i)`` and drawing the body
    azimuth first, then points via :func:`sample_ue_position`.
    """
    key = _stream_key(stream_seed)
    n = stop - start
    raw = np.empty((n, _DRAWS_PER_SNAPSHOT), dtype=np.uint64)
    for j in range(n):
        raw[j] = np.random.Philox(key=key, counter=[0, 0, start + j, 0]).random_raw(_DRAWS_PER_SNAPSHOT)
    u = _raw_to_unit(raw)
    azimuth = (2.0 * math.pi * u[:, 0]) % (2.0 * math.pi)

    n_cand = (_DRAWS_PER_SNAPSHOT - 1) // 2
    cx, cy = box_point(deployment, u[:, 1:1 + 2 * n_cand:2], u[:, 2:2 + 2 * n_cand:2])
    ok = in_central_cell(deployment, np.column_stack([cx.ravel(), cy.ravel()])).reshape(n, n_cand)
    first = np.argmax(ok, axis=1)
    rows = np.arange(n)
    position = np.column_stack([cx[rows, first], cy[rows, first]])
    for j in np.flatnonzero(~ok.any(axis=1)):
        rng = realization_stream(stream_seed, start + j)
        rng.random(1 + 2 * n_cand)
        while True:
            x, y = box_point(deployment, *rng.random(2))
            if in_central_cell(deployment, (x, y))[0]:
                position[j] = x, y
                break
    return position, azimuth


class BeamSweepSamples(NamedTuple):
    """SINR and serving-link blockage, shape (snapshots, beams, 2 policies)."""

    sinr: np.ndarray
    serving_blocked: np.ndarray
    patterns: tuple

    def samples(self, beam: int, policy: AssociationPolicy, config_key=()) -> SampleSet:
        col = _policy_column(policy)
        return SampleSet(self.sinr[:, beam, col], config_key, self.serving_blocked[:, beam, col])


def _policy_column(policy: AssociationPolicy) -> int:
    if policy is AssociationPolicy.MIN_DISTANCE_3D:
        return _kernel.MIN_DIST
    return _kernel.MAX_POWER


def simulate_beams(deployment: Deployment, patterns, body: BodyModel, radio: RadioConfig,
                   realizations: int, stream_seed: int, workers: int | None = None) -> BeamSweepSamples:
    """Run the same snapshots against several beamwidths and both association policies.

    All patterns must share the side-lobe gain and the deployment's AP height.
    """
    patterns = tuple(patterns)
    if realizations < 1:
        raise ValueError(f"realizations must be >= 1, got {realizations!r}")
    if not patterns:
        raise ValueError("at least one antenna pattern is required")
    side = patterns[0].side_lobe_gain
    for p in patterns:
        if p.side_lobe_gain != side:
            raise ValueError("all patterns must share the side-lobe gain")
        if not math.isclose(p.ap_height_m, deployment.ap_height_m):
            raise ValueError(
                f"pattern AP height {p.ap_height_m} m differs from deployment {deployment.ap_height_m} m")

    order = np.argsort([p.illumination_radius_m for p in patterns], kind="stable")
    radius2 = np.array([patterns[k].illumination_radius_m for k in order]) ** 2
    main = np.array([patterns[k].main_lobe_gain for k in order])

    n = int(realizations)
    positions, azimuth = draw_snapshots(deployment, stream_seed, 0, n)
    sinr = np.empty((n, len(patterns), 2))
    blocked = np.empty((n, len(patterns), 2), dtype=bool)

    ap = deployment.ap_positions
    ap_x = np.ascontiguousarray(ap[:, 0])
    ap_y = np.ascontiguousarray(ap[:, 1])
    ue_x = np.ascontiguousarray(positions[:, 0])
    ue_y = np.ascontiguousarray(positions[:, 1])
    cos_o = np.cos(azimuth)
    sin_o = np.sin(azimuth)
    free_radius = body.block_free_radius(deployment.ap_height_m)
    cos_half = max(math.cos(body.blockage_angle_rad / 2.0), 0.0)
    scale = radio.tx_power_w * radio.ref_loss_1m
    reach = np.sqrt(np.sum((ap - deployment.central_position) ** 2, axis=1)).max()
    reach += deployment.inter_site_distance_m
    table = _kernel.make_bin_table(np.sqrt(radius2), _TABLE_STEP_M, min(reach, np.sqrt(radius2[-1])))

    def work(lo, hi):
        _kernel.evaluate_snapshots(
            ap_x, ap_y, ue_x[lo:hi], ue_y[lo:hi], cos_o[lo:hi], sin_o[lo:hi],
            deployment.ap_height_m ** 2, float(radio.pathloss_exponent),
            free_radius ** 2, cos_half, body.body_attenuation,
            radius2, main, side, scale, radio.noise_power_w,
            table, _TABLE_STEP_M, sinr[lo:hi], blocked[lo:hi])

    n_workers = min(resolve_workers(workers), n)
    bounds = np.linspace(0, n, n_workers + 1).astype(int)
    if n_workers == 1:
        work(0, n)
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            for fut in [pool.submit(work, lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:])]:
                fut.result()

    inverse = np.empty_like(order)
    inverse[order] = np.arange(len(order))
    return BeamSweepSamples(sinr[:, inverse], blocked[:, inverse], patterns)


def run_cell(deployment: Deployment, pattern: AntennaPattern, body: BodyModel, radio: RadioConfig,
             policy: AssociationPolicy, realizations: int, stream_seed: int,
             workers: int | None = None) -> SampleSet:
    """SINR samples of one configuration under one association policy."""
    out = simulate_beams(deployment, [pattern], body, radio, realizations, stream_seed, workers)
    key = (deployment.inter_site_distance_m, pattern.beamwidth_rad, body.dist_to_body_m,
           policy.value, int(stream_seed))
    return out.samples(0, policy, key)


def run_sweep(spec: RunSpec, scenario: ScenarioConfig, workers: int | None = None) -> SweepResult:
    """Cartesian sweep over inter-site distance, beamwidth, policy and threshold.

    Snapshots are shared across beamwidths, policies and scenarios of the same
    inter-site distance (common random numbers); the stream seed depends on
    the master seed and the inter-site distance index only.
    """
    scenarios = [scenario.with_scenario(s) for s in spec.scenarios] or [scenario]
    patterns = []
    for theta in spec.theta_bw_deg:
        try:
            patterns.append(scenario.pattern(theta))
        except ValueError as err:
            raise ValueError(f"invalid grid point theta_bw={theta:g} deg: {err}") from err
    rows = []
    for i, d_s in enumerate(spec.d_s_m):
        try:
            deployment = scenario.deployment(d_s)
        except ValueError as err:
            raise ValueError(f"invalid grid point d_s={d_s:g} m: {err}") from err
        stream_seed = derive_seed(spec.master_seed, i)
        area = deployment.cell_area_m2
        for config in scenarios:
            out = simulate_beams(deployment, patterns, config.body(), config.radio(),
                                 spec.realizations, stream_seed, workers)
            for k, theta in enumerate(spec.theta_bw_deg):
                for policy in spec.policies:
                    samples = out.samples(k, policy)
                    cell_ase = ase(samples, area)
                    for threshold in spec.threshold_db:
                        rows.append(ResultRow(d_s, theta, threshold, config.scenario.value, policy.value,
                                              coverage(samples, threshold), cell_ase,
                                              spec.realizations, int(spec.master_seed)))
    return SweepResult(tuple(rows))
