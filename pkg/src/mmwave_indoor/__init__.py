"""Monte Carlo coverage and spectral-efficiency study of indoor mmWave networks
with ceiling-mounted, fixed-beam access points and self-body blockage."""

from .antenna import (AntennaPattern, DEFAULT_MIN_BEAMWIDTH, db_to_linear, directivity_gain,
                      illumination_radius, linear_to_db, main_lobe_gain)
from .association import AssociationPolicy, associate
from .blockage import (BodyModel, BodyOrientation, attenuation_factor, block_free_radius, is_blocked,
                       self_block_probability)
from .channel import LinkState, RadioConfig, free_space_ref_loss, link_states, noise_power, path_loss, sinr
from .deployment import Deployment, UePlacement, cell_area, generate_hex_grid, sample_ue_position
from .engine import (RunSpec, Scenario, ScenarioConfig, derive_seed, realization_stream, run_cell,
                     run_sweep, simulate_beams)
from .metrics import (ResultRow, SampleSet, SweepResult, TradeoffPoint, ase, coverage,
                      peak_coverage_beamwidth, tradeoff_curve)

__version__ = "0.1.0"

__all__ = [
    "AntennaPattern", "DEFAULT_MIN_BEAMWIDTH", "db_to_linear", "directivity_gain", "illumination_radius",
    "linear_to_db", "main_lobe_gain",
    "AssociationPolicy", "associate",
    "BodyModel", "BodyOrientation", "attenuation_factor", "block_free_radius", "is_blocked",
    "self_block_probability",
    "LinkState", "RadioConfig", "free_space_ref_loss", "link_states", "noise_power", "path_loss", "sinr",
    "Deployment", "UePlacement", "cell_area", "generate_hex_grid", "sample_ue_position",
    "RunSpec", "Scenario", "ScenarioConfig", "derive_seed", "realization_stream", "run_cell", "run_sweep",
    "simulate_beams",
    "ResultRow", "SampleSet", "SweepResult", "TradeoffPoint", "ase", "coverage", "peak_coverage_beamwidth",
    "tradeoff_curve",
]
