"""
FILTER TRANSMISSION ENGINE
Focus: t(nu) = exp(-(od/2) r(nu)) and its causal time kernel.
Location: vaporlab/filter/transmission.py

r is the filter response normalized to the peak absorption of the undriven
line, so the undriven peak intensity transmission is exactly e^-od.
The dispersive part of r is rebuilt from its absorptive part with a
discrete Hilbert transform, so the kernel is causal on the periodic grid.
"""
import logging
import math

import numpy as np
from scipy.optimize import brentq
from scipy.signal import hilbert

from ..response.doppler import doppler_average
from ..response.driven import probe_response
from ..response.lorentzian import lorentzian_chi
from ..response.profile import SusceptibilityProfile
from ..scheme.constants import wavenumber_radpm
from ..scheme.grid import FrequencyGrid
from ..shared.errors import DomainError, GridMismatchError
from .spec import FilterSpec, FilterTransmission

logger = logging.getLogger("FilterEngine")

LN2 = math.log(2.0)
ATTENUATION_CAP = 1e6


# ====================== RESPONSE ======================

def causal_response(absorption: np.ndarray) -> np.ndarray:
    """
    Complex response whose real part is the given centred absorption and
    whose kernel vanishes at negative delay (discrete Kramers-Kronig).
    """
    return np.fft.fftshift(hilbert(np.fft.ifftshift(absorption)))


def _raw_response(spec: FilterSpec, grid: FrequencyGrid) -> tuple[np.ndarray, np.ndarray]:
    """(chi, undriven chi) of the filter medium on the grid."""
    if spec.model == "two_level_doppler":
        def chi_single(detunings: np.ndarray, velocity: float) -> np.ndarray:
            return lorentzian_chi(detunings - spec.center_detuning_mhz, spec.linewidth_mhz)

        profile = doppler_average(
            chi_single, spec.thermal, wavenumber_radpm(spec.wavelength_nm), grid, shift_only=True
        )
        return profile.values, profile.values

    driven = spec.driven
    pumped = probe_response(driven, spec.thermal, grid, spec.center_detuning_mhz)
    if driven.pump.rabi_mhz == 0.0:
        return pumped.values, pumped.values
    bare = probe_response(driven.undriven(), spec.thermal, grid, spec.center_detuning_mhz)
    return pumped.values, bare.values


def normalized_response(spec: FilterSpec, grid: FrequencyGrid) -> SusceptibilityProfile:
    """r(nu): -chi / max(-Re chi_undriven), causal. Independent of od."""
    spec.ensure_valid()
    if spec.model == "none":
        return SusceptibilityProfile(grid, np.zeros(grid.n_points, dtype=complex))

    chi, bare = _raw_response(spec, grid)
    peak = float(np.max(-bare.real))
    if not peak > 0:
        raise DomainError("undriven filter line has no absorption", model=spec.model, peak=peak)
    return SusceptibilityProfile(grid, causal_response(-chi.real / peak))


# ====================== TRANSMISSION ======================

def half_transmission_width(log_attenuation: np.ndarray, resolution_mhz: float) -> float:
    """
    Measure (MHz) of the set where -ln|t|^2 > ln 2, i.e. intensity < 50%,
    with linear interpolation of the crossings.
    """
    g = np.minimum(log_attenuation - LN2, ATTENUATION_CAP)
    a, b = g[:-1], g[1:]
    inside = (a > 0) & (b > 0)
    crossing = (a > 0) != (b > 0)
    pos = np.where(a > 0, a, b)[crossing]
    neg = np.where(a > 0, b, a)[crossing]
    return float(resolution_mhz * (np.count_nonzero(inside) + np.sum(pos / (pos - neg))))


def filter_width_from_response(response: SusceptibilityProfile, od: float) -> float:
    return half_transmission_width(od * response.values.real, response.grid.resolution_mhz)


def time_kernel(transmission: FilterTransmission) -> FilterTransmission:
    """T_m = (1/N) FFT(ifftshift(t))_m, FFT order. A flat filter gives the unit impulse."""
    n = transmission.grid.n_points
    if transmission.model == "none":
        kernel = np.zeros(n, dtype=complex)
        kernel[0] = 1.0
    else:
        kernel = np.fft.fft(np.fft.ifftshift(transmission.t_values)) / n
    return transmission.with_kernel(kernel)


def transmission_from_response(spec: FilterSpec, response: SusceptibilityProfile) -> FilterTransmission:
    grid = response.grid
    if spec.model == "none":
        t_values = np.ones(grid.n_points, dtype=complex)
        width = 0.0
    else:
        t_values = np.exp(-0.5 * spec.od * response.values)
        width = filter_width_from_response(response, spec.od)

    result = time_kernel(FilterTransmission(grid, spec.model, t_values, bandwidth_50pct_mhz=width))
    if result.gain_detected:
        logger.warning(f"Filter gain detected | model={spec.model} max|t|={result.max_gain:.6f}")
    logger.debug(f"Transmission built | model={spec.model} od={spec.od} width={width:.2f} MHz")
    return result


def build_transmission(spec: FilterSpec, grid: FrequencyGrid) -> FilterTransmission:
    return transmission_from_response(spec, normalized_response(spec, grid))


def filter_width_mhz(spec: FilterSpec, grid: FrequencyGrid) -> float:
    """Full width of the region where intensity transmission is below 50%."""
    if spec.model == "none" or spec.od == 0.0:
        return 0.0
    return filter_width_from_response(normalized_response(spec, grid), spec.od)


def od_for_width(response: SusceptibilityProfile, width_mhz: float, od_cap: float) -> float:
    """
    Optical depth realizing a 50% width on a fixed normalized response.
    Raises DomainError when the width needs more than od_cap.
    """
    if width_mhz <= 0:
        return 0.0
    reachable = filter_width_from_response(response, od_cap)
    if reachable < width_mhz:
        raise DomainError("filter width unreachable", width_mhz=width_mhz, od_cap=od_cap, max_width_mhz=reachable)
    return brentq(
        lambda od: filter_width_from_response(response, od) - width_mhz,
        LN2 * (1.0 + 1e-12), od_cap, xtol=1e-10, rtol=1e-10,
    )


def compose(first: FilterTransmission, second: FilterTransmission) -> FilterTransmission:
    """Two filters in series on one grid."""
    if not first.grid.same_as(second.grid):
        raise GridMismatchError("cannot compose filters on different grids")
    if first.model == "none":
        return second
    if second.model == "none":
        return first
    t_values = first.t_values * second.t_values
    log_attenuation = -np.log(np.maximum(np.abs(t_values) ** 2, np.finfo(float).tiny))
    width = half_transmission_width(log_attenuation, first.grid.resolution_mhz)
    return time_kernel(FilterTransmission(first.grid, f"{first.model}+{second.model}", t_values, bandwidth_50pct_mhz=width))
