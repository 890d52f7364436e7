"""
BEAT SPECTRUM
Power spectrum of a windowed trace. The peak search starts after the
low-frequency skirt of the decaying envelope (first local minimum).
"""
import logging
from typing import Tuple

import numpy as np
from scipy.signal import periodogram

from ..biphoton.spec import CorrelationTrace
from ..shared.errors import WindowError
from .results import BeatSpectrum

logger = logging.getLogger("BeatSpectrum")

MIN_SPECTRUM_BINS = 16


def select_window(trace: CorrelationTrace, window_ns: Tuple[float, float], min_bins: int) -> Tuple[np.ndarray, np.ndarray]:
    start, end = window_ns
    edges = trace.edges_ns
    if not start < end:
        raise WindowError("window start must precede its end", window_ns=window_ns)
    if start < edges[0] - 1e-9 or end > edges[-1] + 1e-9:
        raise WindowError(
            "window outside trace range", window_ns=window_ns, trace_range_ns=(float(edges[0]), float(edges[-1]))
        )
    delays, values = trace.select(window_ns)
    if values.size < min_bins:
        raise WindowError("window too short", window_ns=window_ns, n_bins=int(values.size), required=min_bins)
    return delays, values


def _skirt_end(power: np.ndarray) -> int:
    for i in range(1, power.size - 1):
        if power[i] <= power[i + 1]:
            return i
    return 1


def beat_spectrum(trace: CorrelationTrace, window_ns: Tuple[float, float]) -> BeatSpectrum:
    _, values = select_window(trace, window_ns, MIN_SPECTRUM_BINS)
    freqs, power = periodogram(
        values,
        fs=1.0 / trace.bin_ns,
        window="boxcar",
        detrend="constant",
        scaling="spectrum",
    )
    power = np.clip(power, 0.0, None)
    start = _skirt_end(power)
    peak = start + int(np.argmax(power[start:]))
    freqs_mhz = freqs * 1e3
    logger.debug(f"Beat spectrum | bins={values.size} peak={freqs_mhz[peak]:.2f} MHz")
    return BeatSpectrum(freqs_mhz, power, float(freqs_mhz[peak]), float(power[peak]))
