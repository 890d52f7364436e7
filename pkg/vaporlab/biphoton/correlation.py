"""
CROSS-CORRELATION ENGINE
Focus: |psi|^2 with motional suppression, integrated per detector bin.
Location: vaporlab/biphoton/correlation.py
"""
import logging
from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from ..filter.spec import FilterTransmission
from ..shared.errors import WindowError
from .amplitude import PairAmplitude, pair_amplitude
from .spec import BiphotonSpec, CorrelationTrace, MotionalParams

logger = logging.getLogger("CorrelationEngine")

DEFAULT_TRACE_WINDOW_NS = (-20.0, 400.0)


def motional_suppression(delays_ns: ArrayLike, motional: MotionalParams) -> np.ndarray:
    """exp(-(k v_t tau)^2 / 2)."""
    phase = motional.k_radpm * motional.v_t_mps * np.asarray(delays_ns, dtype=float) * 1e-9
    return np.exp(-0.5 * phase ** 2)


def bin_edges(bin_ns: float, window_ns: Tuple[float, float]) -> np.ndarray:
    """Edges on integer multiples of bin_ns covering the window."""
    start, end = window_ns
    first = np.floor(start / bin_ns + 1e-9)
    last = np.ceil(end / bin_ns - 1e-9)
    if last - first < 1:
        raise WindowError("trace window shorter than one bin", window_ns=window_ns, bin_ns=bin_ns)
    return np.arange(first, last + 1) * bin_ns


def bin_density(delays_ns: np.ndarray, density: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Each sample holds its density until the next sample, so a causal trace keeps empty negative bins."""
    cumulative = np.concatenate(([0.0], np.cumsum(density[:-1] * np.diff(delays_ns))))
    return np.clip(np.diff(np.interp(edges, delays_ns, cumulative)), 0.0, None)


def ccf(
    spec: BiphotonSpec,
    filt: FilterTransmission,
    motional: MotionalParams,
    bin_ns: float,
    window_ns: Tuple[float, float] = DEFAULT_TRACE_WINDOW_NS,
    psi: Optional[PairAmplitude] = None,
) -> CorrelationTrace:
    """Un-normalized coincidence density per bin (ns units, delay of lower after upper photon)."""
    if psi is None:
        psi = pair_amplitude(spec, filt)
    half_window = 0.5 * filt.grid.window_us * 1e3
    if window_ns[0] < -half_window or window_ns[1] > half_window:
        raise WindowError("trace window exceeds the grid delay window", window_ns=window_ns, limit_ns=half_window)

    density = psi.intensity * motional_suppression(psi.delays_ns, motional)
    edges = bin_edges(bin_ns, window_ns)
    values = bin_density(psi.delays_ns, density, edges)
    trace = CorrelationTrace(bin_ns, 0.5 * (edges[:-1] + edges[1:]), values)
    logger.debug(f"CCF binned | bins={values.size} total={trace.total:.4g}")
    return trace
