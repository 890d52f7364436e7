"""
PAIR AMPLITUDE ENGINE
Focus: filtered conditional amplitude of the lower photon.
Location: vaporlab/biphoton/amplitude.py

Time dependence is e^{-i 2pi nu t}. Each decay path contributes the
impulse-invariant Lorentzian dt / (1 - exp(-(Gamma + i 2pi (delta - nu)) dt)),
whose discrete transform is exactly A exp(-(i 2pi delta + Gamma) t) on the
grid's delay samples.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from ..filter.spec import FilterTransmission
from ..scheme.constants import TWO_PI
from ..scheme.grid import FrequencyGrid
from ..shared.errors import GridMismatchError
from .spec import BiphotonSpec

logger = logging.getLogger("PairAmplitude")


@dataclass(frozen=True)
class PairAmplitude:
    """psi(tau) on the grid's centred delay axis (dimensionless)."""
    delays_ns: np.ndarray
    values: np.ndarray

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def at(self, delays_ns: ArrayLike) -> np.ndarray:
        tau = np.asarray(delays_ns, dtype=float)
        return np.interp(tau, self.delays_ns, self.values.real, left=0.0, right=0.0) + 1j * np.interp(
            tau, self.delays_ns, self.values.imag, left=0.0, right=0.0
        )


def source_spectrum(spec: BiphotonSpec, grid: FrequencyGrid) -> np.ndarray:
    """Phi_0(nu) in us, summed over decay paths, centred grid order."""
    spec.ensure_valid()
    nu = grid.detunings_mhz
    dt = grid.dt_us
    phi = np.zeros(grid.n_points, dtype=complex)
    for path in spec.paths:
        if path.amplitude == 0:
            continue
        z = (path.amplitude_rate + 1j * TWO_PI * (path.center_detuning_mhz - nu)) * dt
        phi += path.amplitude * dt / (-np.expm1(-z))
    return phi


def pair_amplitude(
    spec: BiphotonSpec,
    filt: FilterTransmission,
    grid: Optional[FrequencyGrid] = None,
) -> PairAmplitude:
    """psi = dnu * FFT(ifftshift(Phi_0 * t)), returned on the centred delay axis."""
    if grid is not None and not grid.same_as(filt.grid):
        raise GridMismatchError(
            "filter grid differs from evaluation grid",
            filter_points=filt.grid.n_points,
            grid_points=grid.n_points,
        )
    grid = filt.grid
    spectrum = source_spectrum(spec, grid) * filt.t_values
    psi = grid.resolution_mhz * np.fft.fft(np.fft.ifftshift(spectrum))
    return PairAmplitude(grid.delays_ns, np.fft.fftshift(psi))


def closed_form_amplitude(spec: BiphotonSpec, delays_ns: ArrayLike) -> np.ndarray:
    """Unfiltered psi(tau) = sum_j A_j exp(-(i 2pi delta_j + Gamma_j) tau) for tau >= 0."""
    tau_us = np.asarray(delays_ns, dtype=float) * 1e-3
    out = np.zeros(tau_us.shape, dtype=complex)
    causal = tau_us >= 0
    for path in spec.paths:
        rate = path.amplitude_rate + 1j * TWO_PI * path.center_detuning_mhz
        out[causal] += path.amplitude * np.exp(-rate * tau_us[causal])
    return out


def zero_delay_density(spec: BiphotonSpec) -> float:
    """
    |psi(0+)|^2 = |sum_j A_j|^2. Fixed by the far-detuned spectrum, so any
    filter that turns transparent away from resonance leaves it unchanged.
    """
    return float(np.abs(closed_form_amplitude(spec, [0.0])[0]) ** 2)


def joint_amplitude(
    spec: BiphotonSpec,
    filt: FilterTransmission,
    t1_ns: ArrayLike,
    t2_ns: ArrayLike,
    psi: Optional[PairAmplitude] = None,
) -> np.ndarray:
    """
    Two-time amplitude theta(t1) exp(-(i 2pi delta_2g + Gamma_a) t1) psi(t2 - t1).
    Broadcasts over t1 and t2; pass psi to reuse a computed pair amplitude.
    """
    t1 = np.asarray(t1_ns, dtype=float)
    t2 = np.asarray(t2_ns, dtype=float)
    if psi is None:
        psi = pair_amplitude(spec, filt)
    upper_rate = np.pi * spec.upper_linewidth_mhz + 1j * TWO_PI * spec.two_photon_detuning_mhz
    emission = np.where(t1 >= 0, np.exp(-upper_rate * np.maximum(t1, 0.0) * 1e-3), 0.0)
    return emission * psi.at(t2 - t1)
