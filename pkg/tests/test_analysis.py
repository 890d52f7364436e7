"""
UNIT TEST: ANALYSIS ENGINE
Focus: Beat spectrum, decaying-beat fits, motional fits and histogram ingestion.
"""
import sys
import logging
import tempfile
from datetime import datetime
from pathlib import Path

# --- PATH INJECTION ---
PROJECT_ROOT = Path(__file__).parent.parent.absolute()
sys.path.append(str(PROJECT_ROOT))

import numpy as np
import polars as pl
import pytest

from vaporlab.analysis import (
    BEAT_PARAMS,
    beat_spectrum,
    decaying_beat,
    fit_decaying_beat,
    fit_motional,
    motional_beat,
)
from vaporlab.biphoton import BiphotonSpec, CorrelationTrace, DecayPath, MotionalParams, ccf
from vaporlab.filter import FilterSpec, build_transmission
from vaporlab.scenarios import get_builtin
from vaporlab.scheme.constants import wavenumber_radpm
from vaporlab.scheme.grid import FrequencyGrid
from vaporlab.storage import read_histogram_csv
from vaporlab.shared import DomainError, WindowError

# --- SETUP LOGGING ---
def setup_logging():
    log_dir = PROJECT_ROOT / "logs"
    log_dir.mkdir(exist_ok=True)
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    log_filename = log_dir / f"TestAnalysis_{timestamp}.log"

    logging.basicConfig(
        format='%(asctime)s | %(levelname)-8s | %(name)-15s | %(message)s',
        datefmt='%H:%M:%S',
        level=logging.INFO,
        handlers=[
            logging.StreamHandler(),
            logging.FileHandler(str(log_filename), mode='w')
        ]
    )
    return logging.getLogger("TestAnalysis")

logger = setup_logging()

FIT_WINDOW = (3.0, 45.0)
BEAT_WINDOW = (3.0, 259.0)
NATURAL_TAU_NS = 1e3 / (2.0 * np.pi * 6.05)
K_780 = wavenumber_radpm(780.0)
TWO_PATHS = BiphotonSpec(paths=(DecayPath(), DecayPath(center_detuning_mhz=-120.6)))


def synthetic_trace(values_fn, start: float = -19.5, stop: float = 400.0) -> CorrelationTrace:
    delays = np.arange(start, stop, 1.0)
    return CorrelationTrace(1.0, delays, values_fn(delays))


def unfiltered_trace(v_t_mps: float) -> CorrelationTrace:
    flat = build_transmission(FilterSpec(), FrequencyGrid())
    return ccf(TWO_PATHS, flat, MotionalParams(v_t_mps=v_t_mps), bin_ns=1.0)


def on_resonant_trace() -> CorrelationTrace:
    scenario = get_builtin("on_resonant")
    driven = build_transmission(scenario.filter, scenario.grid)
    return ccf(scenario.source, driven, scenario.motional, scenario.detector_bin_ns, scenario.trace_window_ns)


def projection_oracle(trace: CorrelationTrace, window, freqs: np.ndarray, taus: np.ndarray) -> float:
    """Smallest residual sum of squares over an (f, tau) grid, linear parameters solved exactly."""
    t, y = trace.select(window)
    best = np.inf
    for tau in taus:
        e = np.exp(-t / tau)
        arg = 2.0 * np.pi * np.outer(freqs, t) * 1e-3
        basis = np.stack(
            [np.ones_like(arg), np.broadcast_to(e, arg.shape), e * np.cos(arg), e * np.sin(arg)], axis=-1
        )
        for b in basis:
            sol, res, _, _ = np.linalg.lstsq(b, y, rcond=None)
            rss = float(res[0]) if res.size else float(np.sum((b @ sol - y) ** 2))
            best = min(best, rss)
    return best


class TestAnalysisLogic:

    def run(self) -> bool:
        logger.info("=== STARTING UNIT TEST: ANALYSIS ENGINE ===")

        test_cases = [
            ("1. Beat Spectrum Peak   ", self.test_beat_spectrum_peak),
            ("2. Flat Trace Spectrum  ", self.test_flat_spectrum),
            ("3. Spectrum Parseval    ", self.test_spectrum_parseval),
            ("4. Window Guards        ", self.test_window_guards),
            ("5. Fit Self-Consistency ", self.test_fit_self_consistency),
            ("6. Noise Calibration    ", self.test_uncertainty_calibration),
            ("7. Motional Recovery    ", self.test_motional_recovery),
            ("8. Natural Lifetime Fit ", self.test_free_fit_natural),
            ("9. Motional Free Fit    ", self.test_free_fit_motional_trace),
            ("10. Chi2 Comparison     ", self.test_chi2_comparison),
            ("11. Histogram Ingest    ", self.test_histogram_ingest),
            ("12. Resonant Cell Fits  ", self.test_on_resonant_fits),
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

    def test_beat_spectrum_peak(self) -> None:
        trace = synthetic_trace(lambda t: np.where(t > 0, decaying_beat(t, 0.05, 1.0, 1.0, 120.6, 0.3, 15.0), 0.0))
        spectrum = beat_spectrum(trace, BEAT_WINDOW)
        assert spectrum.resolution_mhz == pytest.approx(1e3 / 256)
        assert abs(spectrum.peak_freq_mhz - 120.6) <= spectrum.resolution_mhz
        assert np.all(spectrum.power >= 0.0)
        assert spectrum.to_frame().columns == ["freq_mhz", "power"]

    def test_flat_spectrum(self) -> None:
        spectrum = beat_spectrum(synthetic_trace(lambda t: np.full(t.shape, 2.0)), BEAT_WINDOW)
        assert spectrum.peak_power < 1e-12

    def test_spectrum_parseval(self) -> None:
        rng = np.random.default_rng(11)
        trace = synthetic_trace(lambda t: rng.uniform(0.0, 5.0, t.size))
        spectrum = beat_spectrum(trace, BEAT_WINDOW)
        _, values = trace.select(BEAT_WINDOW)
        assert spectrum.power.sum() == pytest.approx(np.var(values), rel=1e-9)

    def test_window_guards(self) -> None:
        trace = synthetic_trace(lambda t: np.ones(t.shape))
        for window in [(3.0, 10.0), (-50.0, 100.0), (45.0, 3.0)]:
            with pytest.raises(WindowError):
                beat_spectrum(trace, window)
        with pytest.raises(WindowError):
            fit_decaying_beat(trace, (3.0, 20.0))
        with pytest.raises(DomainError):
            fit_decaying_beat(trace, FIT_WINDOW, weights="cauchy")
        with pytest.raises(DomainError):
            fit_motional(trace, FIT_WINDOW, natural_tau_ns=0.0)
        for guess in ([0.0, 1.0, 1.0, 120.0, 0.0, 0.0], [0.0, 1.0, 1.0, 120.0, 0.0, -12.0], [0.0, 1.0, 1.0]):
            with pytest.raises(DomainError):
                fit_decaying_beat(trace, FIT_WINDOW, initial_guess=guess)

    def test_fit_self_consistency(self) -> None:
        rng = np.random.default_rng(2024)
        worst = 0.0
        for _ in range(100):
            truth = np.array([
                rng.uniform(0.0, 0.2),
                rng.uniform(0.2, 1.0),
                rng.uniform(0.2, 1.0),
                rng.uniform(50.0, 200.0),
                rng.uniform(0.05, np.pi - 0.05),
                rng.uniform(5.0, 50.0),
            ])
            trace = synthetic_trace(lambda t: np.where(t > 0, decaying_beat(t, *truth), 0.0))
            fit = fit_decaying_beat(trace, FIT_WINDOW)
            assert fit.converged, f"no convergence for {truth}"
            scale = np.array([1.0, 1.0, 1.0, truth[3], 1.0, truth[5]])
            error = np.max(np.abs(np.array(fit.params) - truth) / scale)
            worst = max(worst, error)
        logger.info(f"Worst relative parameter error over 100 draws: {worst:.2e}")
        assert worst < 1e-3

    def test_uncertainty_calibration(self) -> None:
        rng = np.random.default_rng(99)
        truth = np.array([0.1, 0.5, 0.5, 120.6, 0.7, 12.0])
        clean = synthetic_trace(lambda t: np.where(t > 0, decaying_beat(t, *truth), 0.0), stop=60.0)
        sigma = 0.01 * clean.values.max()
        hits = np.zeros(len(BEAT_PARAMS))
        trials = 200
        for _ in range(trials):
            noisy = CorrelationTrace(1.0, clean.delays_ns, np.clip(clean.values + rng.normal(0.0, sigma, clean.values.size), 0.0, None))
            fit = fit_decaying_beat(noisy, FIT_WINDOW, initial_guess=truth)
            errors = np.abs(np.array(fit.params) - truth)
            quoted = np.array([fit.param_uncertainties[name] for name in BEAT_PARAMS])
            hits += errors <= 3.0 * quoted
        coverage = hits / trials
        logger.info(f"3-sigma coverage per parameter: {dict(zip(BEAT_PARAMS, np.round(coverage, 3)))}")
        assert np.all(coverage >= 0.9)

    def test_motional_recovery(self) -> None:
        def generator(v_t: float):
            return lambda t: np.where(
                t > 0, motional_beat(t, 0.02, 1.0, 1.0, 120.6, 0.4, v_t, NATURAL_TAU_NS, K_780), 0.0
            )

        fit = fit_motional(synthetic_trace(generator(6.6)), FIT_WINDOW, NATURAL_TAU_NS)
        logger.info(f"Motional fit v_t = {fit.v_t_mps:.3f} m/s")
        assert fit.v_t_mps == pytest.approx(6.6, rel=0.03)
        assert fit.params["f_mhz"] == pytest.approx(120.6, rel=1e-3)

        still = fit_motional(synthetic_trace(generator(0.0)), FIT_WINDOW, NATURAL_TAU_NS)
        assert still.v_t_mps < 0.5

    def test_free_fit_natural(self) -> None:
        fit = fit_decaying_beat(unfiltered_trace(0.0), FIT_WINDOW)
        logger.info(f"Free fit without motion: tau = {fit.tau_ns:.3f} ns")
        assert fit.tau_ns == pytest.approx(26.3, rel=0.05)
        assert fit.f_mhz == pytest.approx(120.6, abs=0.5)

    def test_free_fit_motional_trace(self) -> None:
        """Motional dephasing shortens the apparent decay well below the natural lifetime."""
        trace = unfiltered_trace(6.6)
        fit = fit_decaying_beat(trace, FIT_WINDOW)
        logger.info(f"Free fit with v_t = 6.6 m/s: tau = {fit.tau_ns:.3f} ns, f = {fit.f_mhz:.2f} MHz")
        assert 10.0 <= fit.tau_ns <= 14.0
        assert fit.tau_ns < 0.8 * NATURAL_TAU_NS

        rss = fit.reduced_chi2 * (trace.select(FIT_WINDOW)[0].size - len(BEAT_PARAMS))
        oracle = projection_oracle(
            trace, FIT_WINDOW, np.arange(115.0, 126.0, 0.1), np.arange(6.0, 30.0, 0.1)
        )
        assert rss <= oracle * (1.0 + 1e-6) + 1e-15

    def test_chi2_comparison(self) -> None:
        rng = np.random.default_rng(7)
        expected = unfiltered_trace(6.6)
        scale = 20.0 / expected.values.max()
        counts = rng.poisson(expected.values * scale).astype(float)
        trace = CorrelationTrace(1.0, expected.delays_ns, counts)

        free = fit_decaying_beat(trace, FIT_WINDOW, weights="poisson")
        motional = fit_motional(trace, FIT_WINDOW, NATURAL_TAU_NS, weights="poisson")
        ratio = motional.reduced_chi2 / free.reduced_chi2
        logger.info(
            f"Reduced chi2 free={free.reduced_chi2:.3f} motional={motional.reduced_chi2:.3f} "
            f"v_t={motional.v_t_mps:.2f} m/s"
        )
        assert abs(ratio - 1.0) <= 0.1

    def test_on_resonant_fits(self) -> None:
        """Same checks as the unfiltered surrogate, on the driven-cell trace of the resonant source."""
        expected = on_resonant_trace()
        clean = fit_decaying_beat(expected, FIT_WINDOW)
        logger.info(f"On-resonant free fit: tau = {clean.tau_ns:.3f} ns, f = {clean.f_mhz:.2f} MHz")
        assert 10.0 <= clean.tau_ns <= 14.0

        rng = np.random.default_rng(7)
        scale = 20.0 / expected.values.max()
        trace = CorrelationTrace(1.0, expected.delays_ns, rng.poisson(expected.values * scale).astype(float))
        free = fit_decaying_beat(trace, FIT_WINDOW, weights="poisson")
        motional = fit_motional(trace, FIT_WINDOW, NATURAL_TAU_NS, weights="poisson")
        logger.info(
            f"On-resonant reduced chi2 free={free.reduced_chi2:.3f} motional={motional.reduced_chi2:.3f} "
            f"v_t={motional.v_t_mps:.2f} m/s"
        )
        assert abs(motional.reduced_chi2 / free.reduced_chi2 - 1.0) <= 0.1

    def test_histogram_ingest(self) -> None:
        delays = np.arange(-9.5, 60.0, 1.0)
        counts = np.round(100.0 * np.exp(-np.clip(delays, 0.0, None) / 12.0) * (delays > 0))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "measured.csv"
            pl.DataFrame({"delay_ns": delays[::-1], "counts": counts[::-1]}).write_csv(path)
            trace = read_histogram_csv(path)
            assert trace.bin_ns == pytest.approx(1.0)
            np.testing.assert_array_equal(trace.delays_ns, delays)
            np.testing.assert_array_equal(trace.values, counts)
            assert trace.zero_delay_value == counts.max()

            exported = Path(tmp) / "trace.csv"
            exported.write_text("# format_version: 1\n" + pl.DataFrame({"delay_ns": delays, "value": counts}).write_csv())
            assert read_histogram_csv(exported).total == pytest.approx(counts.sum())

            broken = Path(tmp) / "broken.csv"
            pl.DataFrame({"time": delays, "counts": counts}).write_csv(broken)
            with pytest.raises(DomainError):
                read_histogram_csv(broken)

    # --- CLI SUMMARY ---

    def print_summary(self, results):
        total = len(results)
        passed = sum(1 for r in results if r[1])
        print("\n" + "="*70)
        print("ANALYSIS ENGINE TEST REPORT")
        print("="*70)
        for name, success, msg in results:
            status = "✓ PASS" if success else "✗ FAIL"
            print(f"{status:<8} {name:<25} | {msg}")
        print("-"*70)
        print(f"TOTAL: {passed}/{total} Passed")
        print("="*70 + "\n")


if __name__ == "__main__":
    success = TestAnalysisLogic().run()
    sys.exit(0 if success else 1)
