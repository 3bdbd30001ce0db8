# %% [markdown]
# # Coverage versus area spectral efficiency
#
# For each grid density pick the beamwidth with the best coverage at 0 dB
# (max-power association) and note the ASE it delivers. Dense, narrow-beam
# grids serve hand-held phones well; pocketed phones need sparser grids
# with wide beams, which costs a lot of ASE. Chart: tradeoff.svg.

# %%
from mmwave_indoor import AssociationPolicy, RunSpec, ScenarioConfig, run_sweep, tradeoff_curve
from mmwave_indoor.svg import render_svg

spec = RunSpec(d_s_m=(2.0, 3.0, 4.0, 6.0, 8.0, 10.0, 14.0, 20.0, 30.0, 40.0),
               theta_bw_deg=tuple(float(t) for t in range(5, 180, 5)), threshold_db=(0.0,),
               policies=(AssociationPolicy.MAX_RECEIVED_POWER,), realizations=3_000, master_seed=4,
               scenarios=("hand", "pocket"))
result = run_sweep(spec, ScenarioConfig())

# %%
for scenario in ("hand", "pocket"):
    print(scenario)
    for p in tradeoff_curve(result, 0.0, scenario, AssociationPolicy.MAX_RECEIVED_POWER):
        print(f"  d_S/2 {p.d_s_m / 2:5.1f} m  best beam {p.theta_bw_deg:5.0f} deg  "
              f"coverage {p.coverage:.3f}  ASE {p.ase_bps_hz_m2:.4f}")

render_svg(result, "tradeoff", "tradeoff.svg")
print("wrote tradeoff.svg")
