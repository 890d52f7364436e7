"""
BEAT FIT ENGINE
Focus: decaying quantum-beat fits of correlation traces.
Location: vaporlab/analysis/fitting.py

Trial function  y0 + (a1 + a2 sin^2(pi f t + phi)) E(t)
    free decay      E = exp(-t / tau)
    motional        E = exp(-t / tau_nat - (k v_t t)^2 / 2)

Initial guesses come from variable projection on an (f, envelope) grid:
at every node the model is linear in (y0, a1, a2 cos 2phi, a2 sin 2phi),
solved by least squares. The best node seeds MINPACK Levenberg-Marquardt
with the analytic Jacobian.
"""
import logging
from typing import Callable, Literal, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from ..biphoton.spec import CorrelationTrace
from ..scheme.constants import IDLER_NM, wavenumber_radpm
from ..shared.errors import DomainError
from .results import BEAT_PARAMS, FitResult, MotionalFitResult
from .spectrum import select_window

logger = logging.getLogger("BeatFit")

Weights = Literal["uniform", "poisson"]

N_PARAMS = 6
# 3-45 ns at 1-ns bins gives 42 points, below 8 per parameter.
MIN_BINS_PER_PARAM = 6
XTOL = 1e-8
FTOL = 1e-15
GTOL = 1e-15
MAX_NFEV = 2000
RIDGE = 1e-12

# ====================== TRIAL FUNCTIONS ======================

def _phase(t_ns: np.ndarray, f_mhz: float, phi: float) -> np.ndarray:
    return np.pi * f_mhz * t_ns * 1e-3 + phi


def decaying_beat(t_ns: np.ndarray, y0: float, a1: float, a2: float, f_mhz: float, phi_rad: float, tau_ns: float) -> np.ndarray:
    x = _phase(t_ns, f_mhz, phi_rad)
    return y0 + (a1 + a2 * np.sin(x) ** 2) * np.exp(-t_ns / tau_ns)


def motional_beat(
    t_ns: np.ndarray, y0: float, a1: float, a2: float, f_mhz: float, phi_rad: float,
    v_t_mps: float, natural_tau_ns: float, k_radpm: float,
) -> np.ndarray:
    x = _phase(t_ns, f_mhz, phi_rad)
    envelope = np.exp(-t_ns / natural_tau_ns - 0.5 * (k_radpm * v_t_mps * t_ns * 1e-9) ** 2)
    return y0 + (a1 + a2 * np.sin(x) ** 2) * envelope


class _BeatModel:
    """
    Residuals and Jacobian for p = (y0, a1, a2, f, phi, s) where the last
    parameter shapes the envelope: the decay rate 1/tau (free model) or
    v_t (motional model).
    """

    def __init__(self, t: np.ndarray, y: np.ndarray, w: np.ndarray, envelope: str, natural_tau_ns: float = 1.0, k_radpm: float = 0.0):
        self.t, self.y, self.w = t, y, w
        self.envelope = envelope
        self.natural_tau_ns = natural_tau_ns
        self.kt = k_radpm * t * 1e-9

    def env(self, s: float) -> Tuple[np.ndarray, np.ndarray]:
        """Envelope and its derivative with respect to s."""
        if self.envelope == "free":
            e = np.exp(-s * self.t)
            return e, -self.t * e
        e = np.exp(-self.t / self.natural_tau_ns - 0.5 * (self.kt * s) ** 2)
        return e, -(self.kt ** 2) * s * e

    def model(self, p: np.ndarray) -> np.ndarray:
        y0, a1, a2, f, phi, s = p
        e, _ = self.env(s)
        return y0 + (a1 + a2 * np.sin(_phase(self.t, f, phi)) ** 2) * e

    def residual(self, p: np.ndarray) -> np.ndarray:
        return self.w * (self.model(p) - self.y)

    def jacobian(self, p: np.ndarray) -> np.ndarray:
        y0, a1, a2, f, phi, s = p
        x = _phase(self.t, f, phi)
        sin2, dsin = np.sin(x) ** 2, np.sin(2.0 * x)
        e, de = self.env(s)
        jac = np.column_stack([
            np.ones_like(self.t),
            e,
            sin2 * e,
            a2 * e * dsin * np.pi * self.t * 1e-3,
            a2 * e * dsin,
            (a1 + a2 * sin2) * de,
        ])
        return self.w[:, None] * jac


# ====================== INITIALIZATION ======================

def _project(t: np.ndarray, y: np.ndarray, w: np.ndarray, freqs: np.ndarray, envelope: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Linear least squares at every frequency for one envelope: (cost per f, coefficients)."""
    arg = 2.0 * np.pi * np.outer(freqs, t) * 1e-3
    basis = np.stack(
        [np.ones_like(arg), np.broadcast_to(envelope, arg.shape), envelope * np.cos(arg), envelope * np.sin(arg)],
        axis=-1,
    ) * w[None, :, None]
    yw = y * w
    gram = np.einsum("fni,fnj->fij", basis, basis)
    gram += RIDGE * np.trace(gram, axis1=1, axis2=2)[:, None, None] * np.eye(4)
    rhs = np.einsum("fni,n->fi", basis, yw)
    coef = np.linalg.solve(gram, rhs[..., None])[..., 0]
    cost = yw @ yw - np.einsum("fi,fi->f", rhs, coef)
    return cost, coef


def _from_linear(coef: np.ndarray) -> Tuple[float, float, float, float]:
    """(y0, b1, b2, b3) on [1, E, E cos, E sin] -> (y0, a1, a2, phi)."""
    y0, b1, b2, b3 = coef
    a2 = 2.0 * np.hypot(b2, b3)
    phi = 0.5 * np.arctan2(b3, -b2)
    return float(y0), float(b1 - 0.5 * a2), float(a2), float(np.mod(phi, np.pi))


def _grid_search(
    model: _BeatModel, freqs: np.ndarray, shapes: np.ndarray
) -> Tuple[float, float, np.ndarray, float]:
    best = (np.inf, 0.0, 0.0, np.zeros(4))
    for s in shapes:
        e, _ = model.env(s)
        cost, coef = _project(model.t, model.y, model.w, freqs, e)
        i = int(np.argmin(cost))
        if cost[i] < best[0]:
            best = (float(cost[i]), float(freqs[i]), float(s), coef[i])
    return best[1], best[2], best[3], best[0]


def _initial_guess(model: _BeatModel, bin_ns: float, shapes_coarse: np.ndarray, refine: Callable[[float], np.ndarray]) -> np.ndarray:
    n = model.t.size
    resolution = 1e3 / (n * bin_ns)
    freqs = np.arange(1, n // 2 + 1) * resolution
    f0, s0, _, _ = _grid_search(model, freqs, shapes_coarse)
    fine = np.linspace(max(f0 - resolution, 0.25 * resolution), f0 + resolution, 41)
    f1, s1, coef, _ = _grid_search(model, fine, refine(s0))
    y0, a1, a2, phi = _from_linear(coef)
    return np.array([y0, a1, a2, f1, phi, s1])


# ====================== SOLVER ======================

def _weights(values: np.ndarray, mode: str) -> np.ndarray:
    if mode == "uniform":
        return np.ones_like(values)
    if mode == "poisson":
        return 1.0 / np.sqrt(np.maximum(values, 1.0))
    raise DomainError("unknown weight mode", weights=mode)


def _canonical(p: np.ndarray) -> np.ndarray:
    """f > 0, a2 >= 0, phi in [0, pi) without changing the model."""
    y0, a1, a2, f, phi, s = p
    if a2 < 0:
        a1, a2, phi = a1 + a2, -a2, phi + 0.5 * np.pi
    if f < 0:
        f, phi = -f, -phi
    return np.array([y0, a1, a2, f, np.mod(phi, np.pi), s])


def _solve(model: _BeatModel, p0: np.ndarray, weights: str):
    result = least_squares(
        model.residual, p0, jac=model.jacobian, method="lm",
        xtol=XTOL, ftol=FTOL, gtol=GTOL, x_scale="jac", max_nfev=MAX_NFEV,
    )
    p = _canonical(result.x)
    jac = model.jacobian(p)
    dof = max(model.t.size - N_PARAMS, 1)
    chi2 = float(np.sum(model.residual(p) ** 2))
    reduced = chi2 / dof
    scale = reduced if weights == "uniform" else 1.0
    cov = np.linalg.pinv(jac.T @ jac) * scale
    sigma = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    return p, sigma, reduced, bool(result.success), int(result.nfev)


def _prepare(trace: CorrelationTrace, window_ns: Tuple[float, float], weights: str):
    t, y = select_window(trace, window_ns, N_PARAMS * MIN_BINS_PER_PARAM)
    return t, y, _weights(y, weights)


def fit_decaying_beat(
    trace: CorrelationTrace,
    window_ns: Tuple[float, float],
    initial_guess: Optional[Sequence[float]] = None,
    weights: Weights = "uniform",
) -> FitResult:
    """
    Six-parameter fit of y0 + (a1 + a2 sin^2(pi f t + phi)) exp(-t/tau).
    initial_guess follows BEAT_PARAMS order.
    """
    t, y, w = _prepare(trace, window_ns, weights)
    model = _BeatModel(t, y, w, "free")
    span = t[-1] - t[0] + trace.bin_ns

    if initial_guess is None:
        rates = 1.0 / np.geomspace(0.5 * trace.bin_ns, 20.0 * span, 48)
        p0 = _initial_guess(model, trace.bin_ns, rates, lambda r: np.geomspace(r / 1.5, r * 1.5, 41))
    else:
        guess = np.asarray(initial_guess, dtype=float)
        if guess.shape != (N_PARAMS,) or not guess[5] > 0:
            raise DomainError("initial_guess needs six values with tau_ns > 0", initial_guess=guess.tolist())
        p0 = np.append(guess[:5], 1.0 / guess[5])

    p, sigma, reduced, converged, nfev = _solve(model, p0, weights)
    rate = p[5]
    tau = 1.0 / rate if rate != 0 else np.inf
    uncertainties = dict(zip(BEAT_PARAMS[:5], (float(v) for v in sigma[:5])))
    uncertainties["tau_ns"] = float(sigma[5] * tau ** 2)
    if not (converged and tau > 0):
        logger.warning(f"Beat fit did not converge cleanly | tau={tau:.4g} nfev={nfev}")
        converged = converged and tau > 0

    return FitResult(
        y0=float(p[0]), a1=float(p[1]), a2=float(p[2]), f_mhz=float(p[3]), phi_rad=float(p[4]),
        tau_ns=float(tau), param_uncertainties=uncertainties, reduced_chi2=reduced,
        converged=converged, n_iterations=nfev, window_ns=tuple(window_ns), weights=weights,
    )


def fit_motional(
    trace: CorrelationTrace,
    window_ns: Tuple[float, float],
    natural_tau_ns: float,
    wavelength_nm: float = IDLER_NM,
    initial_guess: Optional[Sequence[float]] = None,
    weights: Weights = "uniform",
) -> MotionalFitResult:
    """
    Beat fit with tau pinned to natural_tau_ns and a Gaussian motional factor
    exp(-(k v_t t)^2 / 2); v_t is the free envelope parameter.
    initial_guess order: y0, a1, a2, f_mhz, phi_rad, v_t_mps.
    """
    if not natural_tau_ns > 0:
        raise DomainError("natural_tau_ns must be > 0", natural_tau_ns=natural_tau_ns)
    t, y, w = _prepare(trace, window_ns, weights)
    k = wavenumber_radpm(wavelength_nm)
    model = _BeatModel(t, y, w, "motional", natural_tau_ns=natural_tau_ns, k_radpm=k)

    if initial_guess is None:
        v_max = 6.0 / (k * max(t[-1], trace.bin_ns) * 1e-9)
        speeds = np.linspace(0.0, v_max, 41)
        step = speeds[1]
        p0 = _initial_guess(model, trace.bin_ns, speeds, lambda v: np.linspace(max(v - step, 0.0), v + step, 41))
        # A zero speed has a zero derivative; start the solver just off it.
        p0[5] = max(p0[5], 0.05 * step)
    else:
        p0 = np.asarray(initial_guess, dtype=float)
        if p0.shape != (N_PARAMS,):
            raise DomainError("initial_guess needs six values", initial_guess=p0.tolist())

    p, sigma, reduced, converged, nfev = _solve(model, p0, weights)
    names = BEAT_PARAMS[:5]
    return MotionalFitResult(
        v_t_mps=float(abs(p[5])),
        v_t_uncertainty_mps=float(sigma[5]),
        reduced_chi2=reduced,
        converged=converged,
        n_iterations=nfev,
        natural_tau_ns=natural_tau_ns,
        params={name: float(v) for name, v in zip(names, p[:5])},
        param_uncertainties={name: float(v) for name, v in zip(names, sigma[:5])},
        window_ns=tuple(window_ns),
    )
