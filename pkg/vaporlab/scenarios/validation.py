"""
SCENARIO AUDIT
Violations are data: one entry per broken invariant, prefixed with the
path of the offending field.
"""
from typing import List, Tuple

from .scenario import Scenario


def _window(found: List[str], name: str, window: Tuple[float, float]) -> bool:
    if not window[0] < window[1]:
        found.append(f"{name}: start {window[0]} must be < end {window[1]}")
        return False
    return True


def validate_scenario(s: Scenario) -> List[str]:
    found: List[str] = []
    found.extend(s.grid.violations("grid"))
    found.extend(s.source.violations("source"))
    found.extend(s.filter.violations("filter"))
    if s.filter_cell is not None:
        found.extend(s.filter_cell.violations("filter_cell"))
    found.extend(s.motional.violations("motional"))
    found.extend(s.geometry.violations("geometry"))

    if not s.detector_bin_ns > 0:
        found.append(f"detector_bin_ns: {s.detector_bin_ns} must be > 0")

    fit_ok = _window(found, "fit_window_ns", s.fit_window_ns)
    beat_ok = _window(found, "beat_window_ns", s.beat_window_ns)
    trace_ok = _window(found, "trace_window_ns", s.trace_window_ns)

    if trace_ok and not s.grid.violations("grid"):
        half = 0.5 * s.grid.window_us * 1e3
        if s.trace_window_ns[0] < -half or s.trace_window_ns[1] > half:
            found.append(f"trace_window_ns: must lie inside +-{half:g} ns of the grid")
    if trace_ok:
        lo, hi = s.trace_window_ns
        if fit_ok and (s.fit_window_ns[0] < lo or s.fit_window_ns[1] > hi):
            found.append("fit_window_ns: must lie inside trace_window_ns")
        if beat_ok and (s.beat_window_ns[0] < lo or s.beat_window_ns[1] > hi):
            found.append("beat_window_ns: must lie inside trace_window_ns")

    if s.scan is not None:
        if not s.scan.values:
            found.append("scan.values: at least one value required")
        if not s.scan.od_cap > 0:
            found.append("scan.od_cap: must be > 0")
        if any(v < 0 for v in s.scan.values):
            found.append("scan.values: must be >= 0")
    return found
