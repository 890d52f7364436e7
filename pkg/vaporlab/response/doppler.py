"""
DOPPLER AVERAGING ENGINE
Focus: Maxwell-Boltzmann average of a single-class response on the grid.
Location: vaporlab/response/doppler.py

The velocity axis (+-CELL_EXTENT thermal speeds) is cut into n_classes
equal cells. Inside a cell the class response is evaluated once, at the
cell centre, and the Doppler shift is integrated exactly: the Gaussian
mass falling in each grid bin of shift is convolved with the response.
Responses whose only velocity dependence is the shift use a single
convolution with the full Gaussian.
"""
import logging
from typing import Callable, Tuple

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import erf

from ..scheme.constants import TWO_PI
from ..scheme.grid import FrequencyGrid
from ..shared.errors import DomainError
from .profile import SusceptibilityProfile, ThermalDistribution

logger = logging.getLogger("DopplerAverage")

CELL_EXTENT = 4.5

ChiSingle = Callable[[np.ndarray, float], np.ndarray]


def shift_per_velocity_mhz(k_radpm: float) -> float:
    """Doppler shift k v / 2pi in MHz for v = 1 m/s."""
    return k_radpm / TWO_PI * 1e-6


def _bin_masses(lo_mhz: float, hi_mhz: float, s_t: float, res: float) -> Tuple[int, np.ndarray]:
    """Gaussian mass of shift in [lo, hi] split over grid bins j*res +- res/2."""
    j_lo = int(np.floor(lo_mhz / res + 0.5))
    j_hi = int(np.ceil(hi_mhz / res - 0.5))
    j = np.arange(j_lo, j_hi + 1)
    left = np.maximum((j - 0.5) * res, lo_mhz)
    right = np.minimum((j + 0.5) * res, hi_mhz)
    masses = 0.5 * (erf(right / s_t) - erf(left / s_t))
    return j_lo, np.clip(masses, 0.0, None)


def _shift_convolve(chi: np.ndarray, j_lo: int, masses: np.ndarray) -> np.ndarray:
    """out[n] = sum_l masses[l] * chi[n - j_lo - l], zero outside the grid."""
    full = fftconvolve(chi, masses)
    idx = np.arange(chi.size) - j_lo
    valid = (idx >= 0) & (idx < full.size)
    out = np.zeros(chi.size, dtype=complex)
    out[valid] = full[idx[valid]]
    return out


def doppler_average(
    chi_single: ChiSingle,
    dist: ThermalDistribution,
    k_radpm: float,
    grid: FrequencyGrid,
    shift_only: bool = False,
) -> SusceptibilityProfile:
    """
    Average chi_single(atom_frame_detunings, velocity) over a 1D
    Maxwell-Boltzmann distribution (weight exp(-v^2/v_t^2)).

    shift_only=True declares that chi_single does not depend on velocity
    except through the Doppler shift, enabling the single-convolution path.
    """
    found = dist.violations("dist")
    if found:
        raise DomainError("invalid thermal distribution", violations=found)

    detunings = grid.detunings_mhz
    if dist.v_t_mps == 0.0:
        return SusceptibilityProfile(grid, np.asarray(chi_single(detunings, 0.0), dtype=complex))

    res = grid.resolution_mhz
    s_t = dist.v_t_mps * shift_per_velocity_mhz(k_radpm)
    reach = CELL_EXTENT * s_t
    norm = float(erf(CELL_EXTENT))

    if shift_only:
        j_lo, masses = _bin_masses(-reach, reach, s_t, res)
        values = _shift_convolve(np.asarray(chi_single(detunings, 0.0), dtype=complex), j_lo, masses)
        return SusceptibilityProfile(grid, values / norm)

    edges = np.linspace(-CELL_EXTENT, CELL_EXTENT, dist.n_classes + 1)
    values = np.zeros(grid.n_points, dtype=complex)
    for x_lo, x_hi in zip(edges[:-1], edges[1:]):
        velocity = 0.5 * (x_lo + x_hi) * dist.v_t_mps
        j_lo, masses = _bin_masses(x_lo * s_t, x_hi * s_t, s_t, res)
        chi_v = np.asarray(chi_single(detunings, velocity), dtype=complex)
        values += _shift_convolve(chi_v, j_lo, masses)

    logger.debug(f"Averaged {dist.n_classes} velocity cells | s_t={s_t:.1f} MHz")
    return SusceptibilityProfile(grid, values / norm)
