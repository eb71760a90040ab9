"""grassfeel: human-in-the-loop design of midair ultrasound haptic stimuli.

Submodules
----------
params      seven-parameter domain and unit-cube normalization
waveform    three-band additive synthesis and drive envelope
trajectory  stepped-circle focal schedule with a swept center
acoustics   phased-array geometry, focusing phases, pressure fields
optimizer   preference GP, posterior mode, expected improvement, slider segments
oracle      synthetic user for closed-loop benchmarks
scene       parameter-to-grass-scene mapping for the visualization
session     interactive state machine, event log, deterministic replay
service     FastAPI WebSocket + REST wrapper around one session
benchmark   headless runs and the random-segment baseline
"""

from .params import (
    HapticParams,
    ParamDescriptor,
    ParamDomain,
    default_domain,
    to_normalized,
    to_physical,
)
from .waveform import RenderConfig, SampleBlock, WaveformSpec, envelope, render_block, sample, spec_from_params
from .trajectory import FocusFrame, StmConfig, focus_at, points_per_revolution, schedule
from .acoustics import (
    AcousticConfig,
    ArrayConfig,
    ScanGrid,
    TransducerArray,
    build_array,
    field_scan,
    focus_phases,
    pressure_at,
)
from .optimizer import (
    GPConfig,
    OptimizerState,
    PreferenceTriple,
    SliderSegment,
    argmax_ei,
    expected_improvement,
    incorporate_choice,
    log_posterior,
    map_estimate,
    new_state,
    next_slider,
    posterior_predict,
    slider_point,
)
from .oracle import ChoicePolicy, LatentGoodness, choose, goodness
from .scene import GrassBandSpec, GrassSceneSpec, scene_from_params
from .session import Mode, ReplayDivergence, Session, SessionConfig, replay
from .benchmark import run_headless

__version__ = "0.1.0"

__all__ = [
    "AcousticConfig",
    "ArrayConfig",
    "ChoicePolicy",
    "FocusFrame",
    "GPConfig",
    "GrassBandSpec",
    "GrassSceneSpec",
    "HapticParams",
    "LatentGoodness",
    "Mode",
    "OptimizerState",
    "ParamDescriptor",
    "ParamDomain",
    "PreferenceTriple",
    "RenderConfig",
    "ReplayDivergence",
    "SampleBlock",
    "ScanGrid",
    "Session",
    "SessionConfig",
    "SliderSegment",
    "StmConfig",
    "TransducerArray",
    "WaveformSpec",
    "argmax_ei",
    "build_array",
    "choose",
    "default_domain",
    "envelope",
    "expected_improvement",
    "field_scan",
    "focus_at",
    "focus_phases",
    "goodness",
    "incorporate_choice",
    "log_posterior",
    "map_estimate",
    "new_state",
    "next_slider",
    "points_per_revolution",
    "posterior_predict",
    "pressure_at",
    "render_block",
    "replay",
    "run_headless",
    "sample",
    "scene_from_params",
    "schedule",
    "slider_point",
    "spec_from_params",
    "to_normalized",
    "to_physical",
]
