from .profile import SusceptibilityProfile, ThermalDistribution
from .lorentzian import lorentzian_chi
from .doppler import doppler_average, shift_per_velocity_mhz
from .driven import (
    DrivenSystemSpec,
    ClassResponse,
    build_liouvillian,
    driven_steady_state,
    probe_response,
)

__all__ = [
    "SusceptibilityProfile",
    "ThermalDistribution",
    "lorentzian_chi",
    "doppler_average",
    "shift_per_velocity_mhz",
    "DrivenSystemSpec",
    "ClassResponse",
    "build_liouvillian",
    "driven_steady_state",
    "probe_response",
]
