# %% [markdown]
# # Which beamwidth covers a 6.8 m grid best?
#
# Hand-held phones, nearest-AP association, SINR threshold -5 dB. Narrow
# beams leave the cell corners on the side lobe; once the footprint covers
# the whole hexagon, coverage saturates.

# %%
from mmwave_indoor import AssociationPolicy, RunSpec, ScenarioConfig, peak_coverage_beamwidth, run_sweep

config = ScenarioConfig("hand")
print(f"footprint at 41 deg: {config.pattern(41).illumination_radius_m:.2f} m")
spec = RunSpec(d_s_m=(6.8,), theta_bw_deg=tuple(range(20, 61, 2)), threshold_db=(-5.0, 0.0),
               policies=(AssociationPolicy.MIN_DISTANCE_3D,), realizations=10_000, master_seed=1)
result = run_sweep(spec, config)

# %%
for row in result.select(threshold_db=-5.0):
    print(f"{row.theta_bw_deg:4.0f} deg  coverage {row.coverage:.4f}  ASE {row.ase_bps_hz_m2:.3f}")
print("best beamwidth at -5 dB:", peak_coverage_beamwidth(result, 6.8, -5.0))
print("best beamwidth at  0 dB:", peak_coverage_beamwidth(result, 6.8, 0.0))
