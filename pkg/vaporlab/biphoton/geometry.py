"""
SPIN-WAVE GEOMETRY
Phase matching of the four beams and the motional dephasing of the
collective grating.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..scheme.levels import BeamGeometry
from ..shared.errors import DomainError


@dataclass(frozen=True)
class PhaseMatch:
    direction: Tuple[float, float, float]
    angle_deg: float
    mismatch_radpm: float


def _wavevector(wavelength_nm: float, angle_deg: float) -> np.ndarray:
    k = 2.0 * np.pi / (wavelength_nm * 1e-9)
    theta = np.deg2rad(angle_deg)
    return k * np.array([np.sin(theta), 0.0, np.cos(theta)])


def phase_match(geom: BeamGeometry) -> PhaseMatch:
    """
    k4 = k1 + k2 - k3 in the x-z plane with z the lower-pump axis:
    k1 at +theta1, k2 at -theta2, k3 at +theta3.
    """
    lam1, lam2, lam3, lam4 = geom.wavelengths_nm
    k4 = (
        _wavevector(lam1, geom.theta1_deg)
        + _wavevector(lam2, -geom.theta2_deg)
        - _wavevector(lam3, geom.theta3_deg)
    )
    norm = float(np.linalg.norm(k4))
    mismatch = abs(norm - 2.0 * np.pi / (lam4 * 1e-9))
    angle = float(np.rad2deg(np.arctan2(k4[0], k4[2])))
    return PhaseMatch(tuple(float(c) for c in k4 / norm), angle, mismatch)


def grating_intensity(n_atoms: int, k_radpm: float, v_t_mps: float, t_ns) -> np.ndarray:
    """N + (N^2 - N) exp(-(k v_t t)^2 / 2): phased emission decaying to the incoherent floor."""
    if n_atoms < 1:
        raise DomainError("n_atoms must be >= 1", n_atoms=n_atoms)
    phase = k_radpm * v_t_mps * np.asarray(t_ns, dtype=float) * 1e-9
    return n_atoms + (n_atoms ** 2 - n_atoms) * np.exp(-0.5 * phase ** 2)


def velocity_class_width(two_photon_linewidth_mhz: float, two_photon_wavelength_nm: float) -> float:
    """Velocity spread (m/s) resolved by a two-photon linewidth: linewidth x wavelength."""
    if not (two_photon_linewidth_mhz > 0 and two_photon_wavelength_nm > 0):
        raise DomainError(
            "inputs must be > 0",
            linewidth_mhz=two_photon_linewidth_mhz,
            wavelength_nm=two_photon_wavelength_nm,
        )
    return two_photon_linewidth_mhz * 1e6 * two_photon_wavelength_nm * 1e-9
