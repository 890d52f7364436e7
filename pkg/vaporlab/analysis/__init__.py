from .results import BEAT_PARAMS, FitResult, MotionalFitResult, BeatSpectrum, ScanPoint, ScanCurve
from .spectrum import MIN_SPECTRUM_BINS, select_window, beat_spectrum
from .fitting import decaying_beat, motional_beat, fit_decaying_beat, fit_motional
from .scans import equivalent_width_ns, scan_od, scan_density, scan_filter_width, run_scan

__all__ = [
    "BEAT_PARAMS",
    "FitResult",
    "MotionalFitResult",
    "BeatSpectrum",
    "ScanPoint",
    "ScanCurve",
    "MIN_SPECTRUM_BINS",
    "select_window",
    "beat_spectrum",
    "decaying_beat",
    "motional_beat",
    "fit_decaying_beat",
    "fit_motional",
    "equivalent_width_ns",
    "scan_od",
    "scan_density",
    "scan_filter_width",
    "run_scan",
]
