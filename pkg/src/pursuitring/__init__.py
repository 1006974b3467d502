"""pursuitring: multi-pursuer single-evader pursuit simulation.

Slower pursuers encircle and capture one faster free-moving evader. The
package provides the evader-centered ring geometry, the distributed pursuit
law with its encirclement/hunting trade-off, potential-field distance
maintenance, capture-condition certificates, a deterministic fixed-step
engine with trace serialization and replay, and a live session service where
a human steers the evader.
"""

from .capture import (
    CaptureCertificate,
    CaptureParams,
    capture_check,
    lemma1_holds,
    lemma2_holds,
    theorem2_certificate,
)
from .control import (
    ConsensusMatrix,
    ControlState,
    PursuerSpec,
    consensus_matrix,
    encirclement_rate,
    gains_from_beta,
    hunting_factor,
    integrate_epsilon_flow,
    pursuit_velocity,
    surrounding_factor,
    tradeoff_beta,
)
from .engine import (
    Frame,
    Rollout,
    SimConfig,
    SimTrace,
    Verdict,
    config_from_scenario,
    metrics_series,
    run,
    step,
)
from .evaders import EvaderSpec, build_strategy, flee_velocity
from .fields import (
    FieldParams,
    NeighborSets,
    collision_potential,
    combined_velocity,
    correction_velocity,
    maintenance_potential,
)
from .geometry import (
    ApolloniusDisk,
    MeetingLocus,
    PolarCoord,
    RingView,
    Vec2,
    apollonius_disk,
    included_angle,
    occupied_angle,
    required_pursuer_count,
    ring_view,
    to_local_polar,
)
from .kernels import BACKEND
from .scenario import ScenarioDoc, load_scenario, resolve_scenario, save_scenario
from .traceio import load_trace, replay_report, save_trace

__version__ = "0.1.0"

__all__ = [
    "ApolloniusDisk",
    "BACKEND",
    "CaptureCertificate",
    "CaptureParams",
    "ConsensusMatrix",
    "ControlState",
    "EvaderSpec",
    "FieldParams",
    "Frame",
    "MeetingLocus",
    "NeighborSets",
    "PolarCoord",
    "PursuerSpec",
    "RingView",
    "Rollout",
    "ScenarioDoc",
    "SimConfig",
    "SimTrace",
    "Vec2",
    "Verdict",
    "apollonius_disk",
    "build_strategy",
    "capture_check",
    "collision_potential",
    "combined_velocity",
    "config_from_scenario",
    "consensus_matrix",
    "correction_velocity",
    "encirclement_rate",
    "flee_velocity",
    "gains_from_beta",
    "hunting_factor",
    "included_angle",
    "integrate_epsilon_flow",
    "lemma1_holds",
    "lemma2_holds",
    "load_scenario",
    "load_trace",
    "maintenance_potential",
    "metrics_series",
    "occupied_angle",
    "pursuit_velocity",
    "replay_report",
    "required_pursuer_count",
    "resolve_scenario",
    "ring_view",
    "run",
    "save_scenario",
    "save_trace",
    "step",
    "theorem2_certificate",
    "to_local_polar",
]
