"""
UNIT TEST: SCAN ENGINE
Focus: Correlation width vs optical depth, zero-delay coincidences vs filter-cell width.
"""
import sys
import logging
from datetime import datetime
from functools import lru_cache
from pathlib import Path

# --- PATH INJECTION ---
PROJECT_ROOT = Path(__file__).parent.parent.absolute()
sys.path.append(str(PROJECT_ROOT))

import numpy as np
import pytest

from vaporlab.analysis import (
    ScanCurve,
    ScanPoint,
    equivalent_width_ns,
    run_scan,
    scan_density,
    scan_filter_width,
    scan_od,
)
from vaporlab.biphoton import CorrelationTrace, ccf
from vaporlab.filter import FilterSpec, build_transmission
from vaporlab.scenarios import get_builtin
from vaporlab.shared import DomainError, InvalidScenarioError, SimSettings

# --- SETUP LOGGING ---
def setup_logging():
    log_dir = PROJECT_ROOT / "logs"
    log_dir.mkdir(exist_ok=True)
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    log_filename = log_dir / f"TestScans_{timestamp}.log"

    logging.basicConfig(
        format='%(asctime)s | %(levelname)-8s | %(name)-15s | %(message)s',
        datefmt='%H:%M:%S',
        level=logging.INFO,
        handlers=[
            logging.StreamHandler(),
            logging.FileHandler(str(log_filename), mode='w')
        ]
    )
    return logging.getLogger("TestScans")

logger = setup_logging()

SERIAL = SimSettings(threads=1)
PARALLEL = SimSettings(threads=4)


@lru_cache(maxsize=None)
def od_curve():
    scenario = get_builtin("od_scan")
    return scan_od(scenario, scenario.scan.values, settings=PARALLEL)


@lru_cache(maxsize=None)
def width_curve():
    scenario = get_builtin("filter_width_scan")
    return scan_filter_width(scenario, scenario.scan.values, settings=PARALLEL)


class TestScansLogic:

    def run(self) -> bool:
        logger.info("=== STARTING UNIT TEST: SCAN ENGINE ===")

        test_cases = [
            ("1. Equivalent Width     ", self.test_equivalent_width),
            ("2. Width vs Depth       ", self.test_od_scan_narrowing),
            ("3. Transparent Cell     ", self.test_od_zero_natural_width),
            ("4. Filter Width Curve   ", self.test_filter_width_curve),
            ("5. Plateau Then Drop    ", self.test_plateau_then_drop),
            ("6. Unreachable Width    ", self.test_unreachable_width),
            ("7. Worker Determinism   ", self.test_worker_determinism),
            ("8. Dispatch Errors      ", self.test_run_scan_errors),
            ("9. Density Invariance   ", self.test_density_scan_decay_constant),
            ("10. Biphoton Bandwidth  ", self.test_biphoton_bandwidth),
        ]

        results = []
        for name, func in test_cases:
            try:
                func()
                results.append((name, True, "ok"))
                logger.info(f"{name}: PASS")
            except AssertionError as e:
                results.append((name, False, str(e)))
                logger.error(f"{name}: FAIL ({e})")
            except Exception as e:
                logger.error(f"{name}: ERROR ({str(e)})", exc_info=True)
                results.append((name, False, str(e)))

        self.print_summary(results)
        return all(r[1] for r in results)

    # --- TEST CASES ---

    def test_equivalent_width(self) -> None:
        delays = np.arange(0.5, 10.0, 1.0)
        box = CorrelationTrace(1.0, delays, np.where(delays < 3.0, 2.0, 0.0))
        assert equivalent_width_ns(box) == pytest.approx(3.0)
        assert equivalent_width_ns(box, peak_density=4.0) == pytest.approx(1.5)
        with pytest.raises(DomainError):
            equivalent_width_ns(CorrelationTrace(1.0, delays, np.zeros(delays.size)))

    def test_od_scan_narrowing(self) -> None:
        curve = od_curve()
        widths = dict(zip(curve.values, curve.metrics))
        logger.info(f"Equivalent widths vs od: { {k: round(v, 3) for k, v in widths.items()} }")
        assert curve.values == [0.1, 1.0, 10.0, 20.0]
        assert widths[0.1] > widths[1.0] > widths[10.0] > widths[20.0]
        assert widths[20.0] <= 2.0
        assert all(p.trace is not None and p.od == p.value for p in curve.points)
    def test_od_zero_natural_width(self) -> None:
        scenario = get_builtin("od_scan")
        curve = scan_od(scenario, [0.0], settings=SERIAL)
        assert curve.metrics[0] == pytest.approx(26.3, rel=0.05)

    def test_filter_width_curve(self) -> None:
        curve = width_curve()
        metrics = curve.metrics
        logger.info(f"Zero-delay coincidences vs width: {[f'{m:.4g}' for m in metrics]}")
        assert all(p.reachable for p in curve.points)
        assert curve.points[0].od == 0.0
        assert all(b <= a * (1.0 + 1e-9) for a, b in zip(metrics, metrics[1:]))

        scenario = get_builtin("filter_width_scan")
        source = build_transmission(scenario.filter, scenario.grid)
        unfiltered = ccf(
            scenario.source, source, scenario.motional, scenario.detector_bin_ns, scenario.trace_window_ns
        ).zero_delay_value
        assert metrics[0] == unfiltered
        frame = curve.to_frame()
        assert frame.columns == ["value", "metric", "od", "reachable"]

    def test_plateau_then_drop(self) -> None:
        scenario = get_builtin("off_resonant")
        source_width = width_curve().source_absorption_width_mhz
        logger.info(f"Source absorption width {source_width:.1f} MHz")
        assert source_width > 0
        curve = scan_filter_width(
            scenario, [0.0, 0.5 * source_width, 2.0 * source_width], od_cap=1e5, settings=PARALLEL
        )
        base, half, double = curve.metrics
        logger.info(f"Relative coincidences: half width {half / base:.3f}, double width {double / base:.3f}")
        assert half >= 0.95 * base
        assert double <= 0.5 * base

    def test_unreachable_width(self) -> None:
        scenario = get_builtin("off_resonant")
        curve = scan_filter_width(scenario, [300.0, 5000.0], od_cap=50.0, settings=SERIAL)
        reachable, flagged = curve.points
        assert reachable.reachable and reachable.metric is not None and 0 < reachable.od < 50.0
        assert not flagged.reachable
        assert flagged.metric is None and flagged.od is None
        assert curve.to_frame()["reachable"].to_list() == [True, False]

    def test_worker_determinism(self) -> None:
        scenario = get_builtin("od_scan")
        serial = scan_od(scenario, scenario.scan.values, settings=SERIAL)
        assert serial.metrics == od_curve().metrics
        for a, b in zip(serial.points, od_curve().points):
            np.testing.assert_array_equal(a.trace.values, b.trace.values)

    def test_run_scan_errors(self) -> None:
        scenario = get_builtin("od_scan")
        empty = run_scan(scenario, "od", [])
        assert empty.is_err() and isinstance(empty.error, InvalidScenarioError)
        negative = run_scan(scenario, "filter_width", [-10.0])
        assert negative.is_err() and isinstance(negative.error, InvalidScenarioError)
        unknown = run_scan(scenario, "temperature", [1.0])
        assert unknown.is_err() and isinstance(unknown.error, DomainError)
        driven = run_scan(get_builtin("on_resonant"), "od", [1.0])
        assert driven.is_err() and isinstance(driven.error, DomainError)
        ok = run_scan(scenario, "od", [0.1], settings=SERIAL)
        assert ok.is_ok() and ok.unwrap().kind == "od"
        bare = get_builtin("off_resonant").model_copy(update={"filter": FilterSpec()})
        flat = run_scan(bare, "density", [1.0])
        assert flat.is_err() and isinstance(flat.error, DomainError)

    def test_density_scan_decay_constant(self) -> None:
        scenario = get_builtin("density_scan")
        curve = scan_density(scenario, scenario.scan.values, settings=PARALLEL)
        taus = curve.metrics
        logger.info(f"Fitted tau vs od: { {v: round(t, 3) for v, t in zip(curve.values, taus)} }")
        assert curve.kind == "density"
        assert curve.values == [0.1, 1.0, 10.0]
        assert max(taus) / min(taus) <= 1.05
        assert all(10.0 <= t <= 14.0 for t in taus)

    def test_biphoton_bandwidth(self) -> None:
        points = [ScanPoint(value=w, metric=m) for w, m in ((0.0, 1.0), (400.0, 0.8), (800.0, 0.4))]
        synthetic = ScanCurve(kind="filter_width", base="x", points=points, source_absorption_width_mhz=100.0)
        # Half of 1.0 is crossed three quarters of the way from 400 to 800.
        assert synthetic.biphoton_bandwidth_mhz == pytest.approx(0.5 * (700.0 - 100.0))
        assert ScanCurve(kind="od", base="x", points=points).biphoton_bandwidth_mhz is None
        shallow = [ScanPoint(value=w, metric=m) for w, m in ((0.0, 1.0), (400.0, 0.8))]
        assert ScanCurve(kind="filter_width", base="x", points=shallow, source_absorption_width_mhz=100.0).biphoton_bandwidth_mhz is None

        curve = width_curve()
        bandwidth = curve.biphoton_bandwidth_mhz
        logger.info(f"Biphoton bandwidth {bandwidth} MHz")
        assert bandwidth is not None
        assert 0.0 < bandwidth < 0.5 * max(curve.values)

    # --- CLI SUMMARY ---

    def print_summary(self, results):
        total = len(results)
        passed = sum(1 for r in results if r[1])
        print("\n" + "="*70)
        print("SCAN ENGINE TEST REPORT")
        print("="*70)
        for name, success, msg in results:
            status = "✓ PASS" if success else "✗ FAIL"
            print(f"{status:<8} {name:<25} | {msg}")
        print("-"*70)
        print(f"TOTAL: {passed}/{total} Passed")
        print("="*70 + "\n")


if __name__ == "__main__":
    success = TestScansLogic().run()
    sys.exit(0 if success else 1)
