"""
DRIVEN MULTILEVEL RESPONSE ENGINE
Focus: exact pump-only steady state, first-order probe susceptibility.
Location: vaporlab/response/driven.py

Frame: ground levels keep their offsets. Levels in the pump manifold
rotate with the pump, levels in the probe manifold rotate with the probe
reference transition. Rates inside the Liouvillian are angular (rad/us).
"""
import logging
from typing import List, Optional, Tuple

import numpy as np
import qutip as qt
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field

from ..scheme.constants import TWO_PI, IDLER_NM, doppler_shift_mhz_per_mps, wavenumber_radpm
from ..scheme.grid import FrequencyGrid
from ..scheme.levels import LevelScheme, PumpField
from ..shared.errors import DomainError, SingularSteadyStateError
from .doppler import doppler_average
from .profile import SusceptibilityProfile, ThermalDistribution

logger = logging.getLogger("DrivenResponse")

NULL_RCOND = 1e-9
EIGEN_COND_LIMIT = 1e8
SLOW_MODE_RTOL = 1e-10


class DrivenSystemSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    scheme: LevelScheme
    pump: PumpField
    pump_transition: Tuple[str, str]
    probe_transition: Tuple[str, str]
    pump_k_over_probe_k: Optional[float] = Field(None, description="Defaults to probe/pump wavelength ratio")
    ground_relaxation_mhz: float = Field(0.1, description="Transit-time repopulation of the ground levels")
    probe_wavelength_nm: float = Field(IDLER_NM, gt=0)

    @property
    def k_ratio(self) -> float:
        if self.pump_k_over_probe_k is not None:
            return self.pump_k_over_probe_k
        return self.probe_wavelength_nm / self.pump.wavelength_nm

    def undriven(self) -> "DrivenSystemSpec":
        return self.model_copy(update={"pump": self.pump.model_copy(update={"rabi_mhz": 0.0})})

    def violations(self, path: str) -> List[str]:
        found = self.scheme.violations(f"{path}.scheme")
        found.extend(self.pump.violations(f"{path}.pump"))
        if found:
            return found
        if self.scheme.find_transition(*self.probe_transition) is None:
            found.append(f"{path}.probe_transition: {self.probe_transition} not in scheme")
        if self.scheme.find_transition(*self.pump_transition) is None:
            found.append(f"{path}.pump_transition: {self.pump_transition} not in scheme")
        if tuple(self.pump_transition) == tuple(self.probe_transition):
            found.append(f"{path}.pump_transition: must differ from the probe transition")
        if not self.ground_relaxation_mhz >= 0:
            found.append(f"{path}.ground_relaxation_mhz: must be >= 0")
        if not self.scheme.ground_levels():
            found.append(f"{path}.scheme: needs at least one ground level")
        for lvl in self.scheme.levels:
            if not lvl.is_ground and not self.scheme.transitions_from(lvl.label):
                found.append(f"{path}.scheme: decaying level '{lvl.label}' has no decay channel")
        if self.pump_k_over_probe_k is not None and not self.pump_k_over_probe_k > 0:
            found.append(f"{path}.pump_k_over_probe_k: must be > 0")
        return found

    def ensure_valid(self) -> None:
        found = self.violations("driven")
        if found:
            raise DomainError("invalid driven system", scheme=self.scheme.label, violations=found)


# ====================== LIOUVILLIAN ======================

def _frame_energies(spec: DrivenSystemSpec, pump_detuning_mhz: float) -> np.ndarray:
    scheme = spec.scheme
    pump_upper, pump_lower = (scheme.level(x) for x in spec.pump_transition)
    probe_upper, probe_lower = (scheme.level(x) for x in spec.probe_transition)
    pump_gap = pump_upper.energy_offset_mhz - pump_lower.energy_offset_mhz
    probe_gap = probe_upper.energy_offset_mhz - probe_lower.energy_offset_mhz

    energies = []
    for lvl in scheme.levels:
        offset = lvl.energy_offset_mhz
        if lvl.is_ground:
            energies.append(offset)
        elif lvl.manifold_name == pump_upper.manifold_name:
            energies.append(offset - pump_gap - pump_detuning_mhz)
        elif lvl.manifold_name == probe_upper.manifold_name:
            energies.append(offset - probe_gap)
        else:
            energies.append(offset)
    return np.asarray(energies)


def _collapse_operators(spec: DrivenSystemSpec) -> List[np.ndarray]:
    scheme = spec.scheme
    idx = scheme.index()
    n = len(scheme.levels)
    ops: List[np.ndarray] = []

    for lvl in scheme.levels:
        if lvl.is_ground:
            continue
        channels = scheme.transitions_from(lvl.label)
        total = sum(tr.dipole ** 2 for tr in channels)
        rate = TWO_PI * lvl.population_decay_rate_mhz
        for tr in channels:
            op = np.zeros((n, n), dtype=complex)
            op[idx[tr.lower], idx[tr.upper]] = np.sqrt(rate * tr.dipole ** 2 / total)
            ops.append(op)

    grounds = scheme.ground_levels()
    relax = TWO_PI * spec.ground_relaxation_mhz
    if relax > 0:
        share = np.sqrt(relax / len(grounds))
        for g in grounds:
            for j in range(n):
                op = np.zeros((n, n), dtype=complex)
                op[idx[g.label], j] = share
                ops.append(op)
    return ops


def build_liouvillian(spec: DrivenSystemSpec, velocity_mps: float = 0.0) -> np.ndarray:
    """Pump-only Liouvillian (column-stacked, rad/us) for one velocity class."""
    scheme = spec.scheme
    idx = scheme.index()
    n = len(scheme.levels)

    probe_shift = velocity_mps * doppler_shift_mhz_per_mps(spec.probe_wavelength_nm)
    pump_detuning = spec.pump.detuning_mhz - spec.k_ratio * probe_shift

    h = np.diag(TWO_PI * _frame_energies(spec, pump_detuning)).astype(complex)
    pump_upper = scheme.level(spec.pump_transition[0])
    reference = scheme.find_transition(*spec.pump_transition).dipole
    for tr in scheme.transitions:
        if scheme.level(tr.upper).manifold_name != pump_upper.manifold_name or reference == 0:
            continue
        coupling = 0.5 * TWO_PI * spec.pump.rabi_mhz * tr.dipole / reference
        h[idx[tr.upper], idx[tr.lower]] += coupling
        h[idx[tr.lower], idx[tr.upper]] += coupling

    c_ops = [qt.Qobj(op) for op in _collapse_operators(spec)]
    return qt.liouvillian(qt.Qobj(h), c_ops).full()


# ====================== STEADY STATE ======================

def _steady_state_from(liouvillian: np.ndarray, n: int, label: str) -> np.ndarray:
    basis = scipy.linalg.null_space(liouvillian, rcond=NULL_RCOND)
    if basis.shape[1] != 1:
        raise SingularSteadyStateError(label, int(basis.shape[1]))
    rho = basis[:, 0].reshape((n, n), order="F")
    rho = rho / np.trace(rho)
    return 0.5 * (rho + rho.conj().T)


def driven_steady_state(spec: DrivenSystemSpec, velocity_mps: float = 0.0) -> np.ndarray:
    """
    Steady-state density matrix under the pump alone (RWA), for atoms moving
    at velocity_mps along the beams. Hermitian with unit trace.
    """
    spec.ensure_valid()
    n = len(spec.scheme.levels)
    return _steady_state_from(build_liouvillian(spec, velocity_mps), n, spec.scheme.label)


# ====================== PROBE RESPONSE ======================

def _probe_vectors(spec: DrivenSystemSpec, rho0: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Readout vector w and source vector vec([V+, rho0]) over probe-manifold transitions."""
    scheme = spec.scheme
    idx = scheme.index()
    n = len(scheme.levels)
    probe_manifold = scheme.level(spec.probe_transition[0]).manifold_name

    raising = np.zeros((n, n), dtype=complex)
    for tr in scheme.transitions:
        if scheme.level(tr.upper).manifold_name == probe_manifold:
            raising[idx[tr.upper], idx[tr.lower]] = tr.dipole
    source = raising @ rho0 - rho0 @ raising
    return raising.reshape(-1, order="F"), source.reshape(-1, order="F")


class ClassResponse:
    """
    First-order probe response of one velocity class,
    chi(delta) = 2pi * w . (L0 + i 2pi delta)^-1 [V+, rho0],
    factored once so any detuning array is cheap to evaluate.
    """

    def __init__(self, spec: DrivenSystemSpec, velocity_mps: float):
        n = len(spec.scheme.levels)
        liouvillian = build_liouvillian(spec, velocity_mps)
        self.rho0 = _steady_state_from(liouvillian, n, spec.scheme.label)
        readout, source = _probe_vectors(spec, self.rho0)

        eigvals, right = scipy.linalg.eig(liouvillian)
        self._schur: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None
        if np.linalg.cond(right) > EIGEN_COND_LIMIT:
            logger.debug(f"Ill-conditioned eigenbasis at v={velocity_mps:.2f}, using Schur form")
            tri, unitary = scipy.linalg.schur(liouvillian, output="complex")
            self._schur = (tri, readout @ unitary, unitary.conj().T @ source)
            return

        weights = TWO_PI * (readout @ right) * np.linalg.solve(right, source)
        scale = np.max(np.abs(eigvals))
        keep = np.abs(eigvals) > SLOW_MODE_RTOL * scale
        self.poles = eigvals[keep]
        self.residues = weights[keep]

    def __call__(self, detunings_mhz: np.ndarray) -> np.ndarray:
        omega = 1j * TWO_PI * np.asarray(detunings_mhz, dtype=float)
        if self._schur is not None:
            return self._evaluate_schur(omega)
        out = np.zeros(omega.shape, dtype=complex)
        for pole, residue in zip(self.poles, self.residues):
            out += residue / (pole + omega)
        return out

    def _evaluate_schur(self, omega: np.ndarray) -> np.ndarray:
        tri, left, right = self._schur
        size = tri.shape[0]
        scale = np.max(np.abs(np.diag(tri)))
        diag = np.diag(tri).copy()
        # Null mode carries no probe source; keep its denominator finite at zero detuning.
        diag[np.abs(diag) <= SLOW_MODE_RTOL * scale] = -SLOW_MODE_RTOL * scale
        y = np.zeros((size,) + omega.shape, dtype=complex)
        for j in range(size - 1, -1, -1):
            acc = right[j] - np.tensordot(tri[j, j + 1:], y[j + 1:], axes=1)
            y[j] = acc / (diag[j] + omega)
        return TWO_PI * np.tensordot(left, y, axes=1)


def probe_response(
    spec: DrivenSystemSpec,
    dist: ThermalDistribution,
    grid: FrequencyGrid,
    center_detuning_mhz: float = 0.0,
) -> SusceptibilityProfile:
    """Doppler-averaged first-order probe susceptibility with two-colour shifts."""
    spec.ensure_valid()

    def chi_single(detunings: np.ndarray, velocity: float) -> np.ndarray:
        return ClassResponse(spec, velocity)(detunings - center_detuning_mhz)

    profile = doppler_average(chi_single, dist, wavenumber_radpm(spec.probe_wavelength_nm), grid)
    logger.info(
        f"Probe response | scheme={spec.scheme.label} rabi={spec.pump.rabi_mhz} MHz "
        f"classes={dist.n_classes if dist.v_t_mps > 0 else 1}"
    )
    return profile
