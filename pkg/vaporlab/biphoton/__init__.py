from .spec import DecayPath, BiphotonSpec, MotionalParams, CorrelationTrace, default_pumps
from .amplitude import (
    PairAmplitude,
    source_spectrum,
    pair_amplitude,
    closed_form_amplitude,
    zero_delay_density,
    joint_amplitude,
)
from .correlation import ccf, motional_suppression, bin_edges, DEFAULT_TRACE_WINDOW_NS
from .geometry import PhaseMatch, phase_match, grating_intensity, velocity_class_width

__all__ = [
    "DecayPath",
    "BiphotonSpec",
    "MotionalParams",
    "CorrelationTrace",
    "default_pumps",
    "PairAmplitude",
    "source_spectrum",
    "pair_amplitude",
    "closed_form_amplitude",
    "zero_delay_density",
    "joint_amplitude",
    "ccf",
    "motional_suppression",
    "bin_edges",
    "DEFAULT_TRACE_WINDOW_NS",
    "PhaseMatch",
    "phase_match",
    "grating_intensity",
    "velocity_class_width",
]
