import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from mmwave_indoor.antenna import AntennaPattern
from mmwave_indoor.association import AssociationPolicy, associate
from mmwave_indoor.metrics import peak_coverage_beamwidth
from mmwave_indoor.blockage import BodyModel
from mmwave_indoor.channel import RadioConfig, link_states, sinr
from mmwave_indoor.deployment import generate_hex_grid, sample_ue_position
from mmwave_indoor.engine import (RunSpec, Scenario, ScenarioConfig, derive_seed, draw_snapshots,
                                  realization_stream, resolve_workers, run_cell, run_sweep, simulate_beams)

POLICIES = (AssociationPolicy.MIN_DISTANCE_3D, AssociationPolicy.MAX_RECEIVED_POWER)


def test_scenario_defaults():
    hand = ScenarioConfig()
    assert hand.body().dist_to_body_m == 0.3
    assert hand.body().body_attenuation == pytest.approx(1e-4)
    assert ScenarioConfig(Scenario.POCKET).body().dist_to_body_m == 0.0
    assert ScenarioConfig("pocket", dist_to_body_m=0.1).body().dist_to_body_m == 0.1
    radio = hand.radio()
    assert radio.tx_power_w == pytest.approx(0.1)
    assert hand.pattern(41).illumination_radius_m == pytest.approx(3.738846794848047, rel=1e-12)
    assert hand.pattern(41).side_lobe_gain == pytest.approx(0.1)


@pytest.mark.parametrize("kwargs", [dict(side_lobe_gain_db=0.0), dict(ap_height_m=0.0), dict(body_loss_db=-1.0),
                                    dict(body_width_m=0.0), dict(scenario="sitting")])
def test_scenario_validation(kwargs):
    with pytest.raises(ValueError):
        ScenarioConfig(**kwargs)


def test_run_spec_validation():
    with pytest.raises(ValueError):
        RunSpec(realizations=0)
    with pytest.raises(ValueError):
        RunSpec(d_s_m=())
    with pytest.raises(ValueError):
        RunSpec(master_seed=-1)
    assert RunSpec(policies=("max-power",)).policies == (AssociationPolicy.MAX_RECEIVED_POWER,)


def test_resolve_workers(monkeypatch):
    monkeypatch.setenv("MMWAVE_SIM_THREADS", "3")
    assert resolve_workers() == 3
    assert resolve_workers(2) == 2
    monkeypatch.setenv("MMWAVE_SIM_THREADS", "0")
    assert resolve_workers() >= 1
    with pytest.raises(ValueError):
        resolve_workers(-1)


def test_seed_derivation_is_structured():
    assert derive_seed(7, 0) == derive_seed(7, 0)
    assert len({derive_seed(7, 0), derive_seed(7, 1), derive_seed(8, 0), derive_seed(7, 0, 0)}) == 4


def test_batched_draws_match_per_realization_streams():
    dep = generate_hex_grid(6.8, 400.0)
    positions, azimuth = draw_snapshots(dep, 1234, 50, 250)
    for j in (0, 17, 199):
        rng = realization_stream(1234, 50 + j)
        assert azimuth[j] == 2 * math.pi * rng.random()
        assert_array_equal(positions[j], sample_ue_position(dep, rng))
    again, _ = draw_snapshots(dep, 1234, 150, 151)
    assert_array_equal(again[0], positions[100])


def reference_sinr(dep, position, az, patterns, body, radio):
    """SINR through the straightforward per-link route, shape (beams, policies)."""
    out = np.empty((len(patterns), 2))
    for k, pattern in enumerate(patterns):
        links = link_states(dep, position, az, pattern, body, radio)
        for c, policy in enumerate(POLICIES):
            out[k, c] = sinr(associate(links, dep, policy), links, radio)
    return out


@pytest.mark.parametrize("scenario", [Scenario.HAND, Scenario.POCKET])
def test_kernel_matches_reference_route(scenario):
    config = ScenarioConfig(scenario, area_side_m=120.0)
    dep = config.deployment(11.0)
    thetas = (1.0, 10.0, 41.0, 90.0, 150.0, 179.0)
    patterns = [config.pattern(t) for t in thetas]
    out = simulate_beams(dep, patterns, config.body(), config.radio(), 120, 99, workers=1)
    positions, azimuth = draw_snapshots(dep, 99, 0, 120)
    for i in range(0, 120, 7):
        ref = reference_sinr(dep, positions[i], azimuth[i], patterns, config.body(), config.radio())
        assert_allclose(out.sinr[i], ref, rtol=1e-10)


def test_kernel_pattern_order_does_not_matter():
    config = ScenarioConfig(area_side_m=80.0)
    dep = config.deployment(6.8)
    patterns = [config.pattern(t) for t in (90.0, 20.0, 41.0)]
    a = simulate_beams(dep, patterns, config.body(), config.radio(), 200, 5, workers=1)
    b = simulate_beams(dep, patterns[::-1], config.body(), config.radio(), 200, 5, workers=1)
    assert_array_equal(a.sinr, b.sinr[:, ::-1])


def test_seven_ap_toy_geometry_only():
    dep = generate_hex_grid(10.0, 20.0)
    assert dep.n_aps == 7
    body = BodyModel(body_attenuation=1.0)
    radio = RadioConfig(noise_figure_linear=1e-30)
    pattern = AntennaPattern(math.radians(1.0), 0.1, 10.0)
    out = simulate_beams(dep, [pattern], body, radio, 500, 3, workers=1)
    positions, _ = draw_snapshots(dep, 3, 0, 500)
    # all links on the side lobe, no body loss, no noise: SINR is a pure distance ratio
    inv = 1.0 / (np.sum((positions[:, None, :] - dep.ap_positions[None]) ** 2, axis=2) + 100.0)
    serving = inv[:, dep.central_ap_index]
    expected = serving / (inv.sum(axis=1) - serving)
    inside = np.hypot(*positions.T) <= pattern.illumination_radius_m
    assert_allclose(out.sinr[~inside, 0, 0], expected[~inside], rtol=1e-9)
    assert_allclose(out.sinr[~inside, 0, 1], expected[~inside], rtol=1e-9)


def test_run_cell_reproducible_and_keyed():
    config = ScenarioConfig(area_side_m=100.0)
    dep = config.deployment(6.8)
    args = (dep, config.pattern(41), config.body(), config.radio(), AssociationPolicy.MIN_DISTANCE_3D)
    a = run_cell(*args, 300, 17)
    b = run_cell(*args, 300, 17, workers=3)
    assert a.sinr_values.tobytes() == b.sinr_values.tobytes()
    assert a.config_key == (6.8, math.radians(41), 0.3, "min-dist", 17)
    with pytest.raises(ValueError):
        run_cell(*args, 0, 17)


def test_pocket_single_isolated_ap_blocked_half_the_time():
    config = ScenarioConfig(Scenario.POCKET, area_side_m=400.0)
    dep = config.deployment(400.0)
    assert dep.n_aps == 1
    n = 1_000_000
    out = simulate_beams(dep, [config.pattern(10.0)], config.body(), config.radio(), n, 2024)
    blocked = out.serving_blocked[:, 0, 0].mean()
    # every UE in the cell sits outside the zero-radius free zone
    assert abs(blocked - 0.5) < 3 * math.sqrt(0.25 / n)


def test_run_sweep_row_count_and_errors():
    config = ScenarioConfig(area_side_m=60.0)
    spec = RunSpec(d_s_m=(6.8, 10.0), theta_bw_deg=(20.0, 41.0, 90.0), threshold_db=(-5.0, 0.0),
                   realizations=50, master_seed=4)
    result = run_sweep(spec, config)
    assert len(result) == 12
    assert all(r.realizations == 50 and r.seed == 4 for r in result)
    with pytest.raises(ValueError, match="theta_bw=0.5"):
        run_sweep(RunSpec(theta_bw_deg=(0.5,), realizations=5), config)
    with pytest.raises(ValueError, match="d_s=100"):
        run_sweep(RunSpec(d_s_m=(100.0,), realizations=5), config)


def test_sweep_uses_common_snapshots_across_scenarios():
    config = ScenarioConfig(area_side_m=60.0)
    spec = RunSpec(d_s_m=(6.8,), theta_bw_deg=(41.0,), realizations=400, scenarios=("hand", "pocket"),
                   policies=POLICIES)
    result = run_sweep(spec, config)
    assert result.families() == [("hand", "max-power"), ("hand", "min-dist"),
                                 ("pocket", "max-power"), ("pocket", "min-dist")]
    for r in result:
        assert 0.0 <= r.coverage <= 1.0 and r.ase_bps_hz_m2 >= 0.0


def test_pocket_needs_wider_beam_than_hand():
    spec = RunSpec(d_s_m=(10.04,), theta_bw_deg=tuple(float(t) for t in range(30, 121)), threshold_db=(0.0,),
                   policies=(AssociationPolicy.MAX_RECEIVED_POWER,), realizations=20_000, master_seed=2017,
                   scenarios=("hand", "pocket"))
    result = run_sweep(spec, ScenarioConfig())
    hand, _ = peak_coverage_beamwidth(result, 10.04, 0.0, scenario="hand")
    pocket, _ = peak_coverage_beamwidth(result, 10.04, 0.0, scenario="pocket")
    assert pocket >= hand + 15.0
    assert 70.0 <= pocket <= 90.0
