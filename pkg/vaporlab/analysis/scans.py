"""
SCAN ENGINE
Focus: coincidence curves over one scenario parameter.
Location: vaporlab/analysis/scans.py

Points are independent and run on a thread pool; results are collated in
input order, so a scan is deterministic for any worker count.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

from ..biphoton.amplitude import zero_delay_density
from ..biphoton.correlation import ccf
from ..biphoton.spec import CorrelationTrace
from ..filter.spec import FilterTransmission
from ..filter.transmission import (
    build_transmission,
    compose,
    normalized_response,
    od_for_width,
    transmission_from_response,
)
from ..scenarios.scenario import Scenario
from ..shared.errors import DomainError, InvalidScenarioError
from ..shared.result import safe_call
from ..shared.settings import SimSettings, get_settings
from .fitting import fit_decaying_beat
from .results import ScanCurve, ScanPoint

logger = logging.getLogger("ScanEngine")

DEFAULT_OD_CAP = 50.0


def equivalent_width_ns(trace: CorrelationTrace, peak_density: Optional[float] = None) -> float:
    """
    Integral over peak density, in ns. Without peak_density the largest bin
    stands in for it, which under-reads a feature narrower than one bin.
    """
    if peak_density is None:
        peak_density = float(trace.values.max()) / trace.bin_ns if trace.values.size else 0.0
    if not peak_density > 0:
        raise DomainError("trace has no positive peak", peak_density=peak_density)
    return trace.total / peak_density


def _trace(base: Scenario, filt: FilterTransmission) -> CorrelationTrace:
    return ccf(base.source, filt, base.motional, base.detector_bin_ns, base.trace_window_ns)


def _require_values(base: Scenario, values: Sequence[float]) -> List[float]:
    if not values:
        raise InvalidScenarioError(base.name, ["scan.values: at least one value required"])
    negative = [v for v in values if v < 0]
    if negative:
        raise InvalidScenarioError(base.name, [f"scan.values: must be >= 0, got {negative}"])
    return [float(v) for v in values]


def _run_points(
    values: List[float], point: Callable[[float], ScanPoint], settings: Optional[SimSettings]
) -> List[ScanPoint]:
    settings = settings or get_settings()
    workers = settings.worker_count(len(values))
    logger.info(f"Scanning {len(values)} points on {workers} worker(s)")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(point, values))


# ====================== SCANS ======================

def scan_od(base: Scenario, ods: Sequence[float], settings: Optional[SimSettings] = None) -> ScanCurve:
    """
    Equivalent width of the CCF for each source-cell optical depth, taken
    against the zero-delay density, which the cell leaves unchanged.
    """
    values = _require_values(base, ods)
    if base.filter.model != "two_level_doppler":
        raise DomainError("od scan needs a two_level_doppler filter", model=base.filter.model)
    response = normalized_response(base.filter, base.grid)
    peak_density = zero_delay_density(base.source)

    def point(od: float) -> ScanPoint:
        filt = transmission_from_response(base.filter.model_copy(update={"od": od}), response)
        trace = _trace(base, filt)
        width = equivalent_width_ns(trace, peak_density)
        logger.debug(f"od={od:g} -> equivalent width {width:.4f} ns")
        return ScanPoint(value=od, metric=width, od=od, trace=trace)

    return ScanCurve(kind="od", base=base.name, points=_run_points(values, point, settings))


def scan_density(base: Scenario, ods: Sequence[float], settings: Optional[SimSettings] = None) -> ScanCurve:
    """
    Free-fit decay constant (ns) for each source-cell optical depth. Any
    filter model; the normalized response is built once and only the
    optical depth changes between points.
    """
    values = _require_values(base, ods)
    if base.filter.model == "none":
        raise DomainError("density scan needs a filter medium", model=base.filter.model)
    response = normalized_response(base.filter, base.grid)

    def point(od: float) -> ScanPoint:
        filt = transmission_from_response(base.filter.model_copy(update={"od": od}), response)
        trace = _trace(base, filt)
        fit = fit_decaying_beat(trace, base.fit_window_ns)
        logger.debug(f"od={od:g} -> tau {fit.tau_ns:.4f} ns (converged={fit.converged})")
        return ScanPoint(value=od, metric=fit.tau_ns, od=od, trace=trace)

    return ScanCurve(kind="density", base=base.name, points=_run_points(values, point, settings))


def scan_filter_width(
    base: Scenario,
    widths_mhz: Sequence[float],
    od_cap: Optional[float] = None,
    settings: Optional[SimSettings] = None,
) -> ScanCurve:
    """
    Zero-delay coincidences behind an extra filter cell of each 50% width.
    The extra cell repeats the source cell's Doppler line at the od that
    realizes the width; widths needing more than od_cap are flagged.
    """
    values = _require_values(base, widths_mhz)
    if base.filter.model != "two_level_doppler":
        raise DomainError("filter-width scan needs a two_level_doppler source filter", model=base.filter.model)
    if od_cap is None:
        od_cap = base.scan.od_cap if base.scan is not None else DEFAULT_OD_CAP

    source = build_transmission(base.filter, base.grid)
    cell_response = normalized_response(base.filter, base.grid)

    def point(width: float) -> ScanPoint:
        if width == 0.0:
            trace = _trace(base, source)
            return ScanPoint(value=width, metric=trace.zero_delay_value, od=0.0, trace=trace)
        try:
            od = od_for_width(cell_response, width, od_cap)
        except DomainError as e:
            logger.warning(f"Width {width:g} MHz flagged: {e}")
            return ScanPoint(value=width, metric=None, od=None, reachable=False)
        cell = transmission_from_response(base.filter.model_copy(update={"od": od}), cell_response)
        trace = _trace(base, compose(source, cell))
        return ScanPoint(value=width, metric=trace.zero_delay_value, od=od, trace=trace)

    curve = ScanCurve(
        kind="filter_width",
        base=base.name,
        points=_run_points(values, point, settings),
        source_absorption_width_mhz=source.bandwidth_50pct_mhz,
    )
    logger.info(f"Source absorption width {source.bandwidth_50pct_mhz:.1f} MHz")
    return curve


@safe_call
def run_scan(
    base: Scenario,
    kind: str,
    values: Sequence[float],
    od_cap: Optional[float] = None,
    settings: Optional[SimSettings] = None,
) -> ScanCurve:
    """Result-returning dispatch used by the pipeline and CLI."""
    if kind == "od":
        return scan_od(base, values, settings)
    if kind == "density":
        return scan_density(base, values, settings)
    if kind == "filter_width":
        return scan_filter_width(base, values, od_cap, settings)
    raise DomainError("unknown scan kind", kind=kind, available=["od", "density", "filter_width"])
