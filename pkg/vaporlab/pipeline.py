"""
SCENARIO PIPELINE ORCHESTRATOR
filter -> biphoton -> analysis -> artifacts, fail-fast, with a step audit trail.
"""
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, TYPE_CHECKING

from .analysis import (
    BeatSpectrum,
    FitResult,
    MotionalFitResult,
    ScanCurve,
    beat_spectrum,
    fit_decaying_beat,
    fit_motional,
    run_scan,
)
from .biphoton import CorrelationTrace, PairAmplitude, ccf, pair_amplitude, phase_match
from .filter import (
    FilterTransmission,
    build_transmission,
    compose,
    normalized_response,
    transmission_from_response,
)
from .response import SusceptibilityProfile
from .scenarios import Scenario, validate_scenario
from .shared import Err, Ok, Result
from .shared.errors import InvalidScenarioError, SimulationError
from .shared.settings import SimSettings

if TYPE_CHECKING:
    from .protocols import ArtifactSink

logger = logging.getLogger("ScenarioPipeline")


@dataclass
class RunOutcome:
    scenario: Scenario
    response: SusceptibilityProfile
    transmission: FilterTransmission
    psi: PairAmplitude
    trace: CorrelationTrace
    spectrum: BeatSpectrum
    fit: FitResult
    motional_fit: MotionalFitResult
    phase_match: Dict[str, Any] = field(default_factory=dict)
    artifacts: List[Path] = field(default_factory=list)


@dataclass
class ScanOutcome:
    scenario: Scenario
    curve: ScanCurve
    artifacts: List[Path] = field(default_factory=list)


class ScenarioPipeline:
    """
    Runs one scenario end to end. Numeric stages raise typed errors; the
    pipeline turns them into Err results and stops at the first failure.
    """

    def __init__(
        self,
        sink: Optional['ArtifactSink'] = None,
        extended: bool = False,
        settings: Optional[SimSettings] = None,
    ):
        self.sink = sink
        self.extended = extended
        self.settings = settings
        self._steps_log: List[Dict[str, Any]] = []
        logger.debug(f"Pipeline initialized. Storage: {bool(self.sink)}, extended: {extended}")

    def get_step_names(self) -> List[str]:
        return [step["name"] for step in self._steps_log]

    @property
    def steps(self) -> List[Dict[str, Any]]:
        return list(self._steps_log)

    # ====================== RUN ======================

    def execute(self, scenario: Scenario) -> 'Result[RunOutcome, Exception]':
        self._steps_log = []
        start_time = time.time()
        try:
            logger.info(f"Starting scenario '{scenario.name}'")
            checked = self._step("validation", lambda: self._validate(scenario))
            if checked.is_err():
                return checked

            filtered = self._step("filter", lambda: self._filter(scenario))
            if filtered.is_err():
                return filtered
            response, transmission = filtered.unwrap()

            correlated = self._step("biphoton", lambda: self._biphoton(scenario, transmission))
            if correlated.is_err():
                return correlated
            psi, trace = correlated.unwrap()

            analysed = self._step("analysis", lambda: self._analysis(scenario, trace))
            if analysed.is_err():
                return analysed
            spectrum, fit, motional = analysed.unwrap()

            match = phase_match(scenario.geometry)
            outcome = RunOutcome(
                scenario=scenario, response=response, transmission=transmission, psi=psi, trace=trace,
                spectrum=spectrum, fit=fit, motional_fit=motional,
                phase_match={"direction": list(match.direction), "angle_deg": match.angle_deg,
                             "mismatch_radpm": match.mismatch_radpm},
            )

            if self.sink is not None:
                stored = self._step("storage", lambda: self._store_run(outcome))
                if stored.is_err():
                    return stored
                outcome.artifacts = stored.unwrap()

            logger.info(f"Pipeline Completed in {time.time() - start_time:.2f}s. Steps: {len(self._steps_log)}")
            return Ok(outcome)

        except Exception as e:
            logger.critical(f"Pipeline Critical Crash: {e}", exc_info=True)
            return Err(e)

    def execute_scan(
        self,
        scenario: Scenario,
        kind: str,
        values: Sequence[float],
        od_cap: Optional[float] = None,
    ) -> 'Result[ScanOutcome, Exception]':
        self._steps_log = []
        try:
            checked = self._step("validation", lambda: self._validate(scenario))
            if checked.is_err():
                return checked

            t0 = time.time()
            scanned = run_scan(scenario, kind, values, od_cap, self.settings)
            if scanned.is_err():
                self._log_step("scan", "failed", time.time() - t0, error=str(scanned.error))
                return scanned
            self._log_step("scan", "success", time.time() - t0, kind=kind, points=len(values))
            outcome = ScanOutcome(scenario=scenario, curve=scanned.unwrap())

            if self.sink is not None:
                stored = self._step("storage", lambda: self._store_scan(outcome))
                if stored.is_err():
                    return stored
                outcome.artifacts = stored.unwrap()
            return Ok(outcome)

        except Exception as e:
            logger.critical(f"Scan Critical Crash: {e}", exc_info=True)
            return Err(e)

    # ====================== INTERNAL STEPS ======================

    def _step(self, name: str, body: Callable[[], Any]) -> 'Result[Any, Exception]':
        t0 = time.time()
        try:
            value = body()
        except SimulationError as e:
            self._log_step(name, "failed", time.time() - t0, error=str(e))
            return Err(e)
        self._log_step(name, "success", time.time() - t0)
        return Ok(value)

    @staticmethod
    def _validate(scenario: Scenario) -> None:
        found = validate_scenario(scenario)
        if found:
            raise InvalidScenarioError(scenario.name, found)

    @staticmethod
    def _filter(scenario: Scenario):
        response = normalized_response(scenario.filter, scenario.grid)
        transmission = transmission_from_response(scenario.filter, response)
        if scenario.filter_cell is not None:
            transmission = compose(transmission, build_transmission(scenario.filter_cell, scenario.grid))
        return response, transmission

    @staticmethod
    def _biphoton(scenario: Scenario, transmission: FilterTransmission):
        psi = pair_amplitude(scenario.source, transmission)
        trace = ccf(
            scenario.source, transmission, scenario.motional,
            scenario.detector_bin_ns, scenario.trace_window_ns, psi=psi,
        )
        return psi, trace

    @staticmethod
    def _analysis(scenario: Scenario, trace: CorrelationTrace):
        spectrum = beat_spectrum(trace, scenario.beat_window_ns)
        fit = fit_decaying_beat(trace, scenario.fit_window_ns)
        motional = fit_motional(
            trace, scenario.fit_window_ns, scenario.natural_tau_ns, scenario.motional.wavelength_nm
        )
        return spectrum, fit, motional

    def _store_run(self, outcome: RunOutcome) -> List[Path]:
        writes = [
            self.sink.write_frame("trace.csv", outcome.trace.to_frame()),
            self.sink.write_frame("transmission.csv", outcome.transmission.to_frame()),
            self.sink.write_frame("spectrum.csv", outcome.spectrum.to_frame()),
            self.sink.write_json("fit.json", {
                "beat_fit": outcome.fit.to_dict(),
                "motional_fit": outcome.motional_fit.to_dict(),
                "beat_peak_mhz": outcome.spectrum.peak_freq_mhz,
                "filter_width_50pct_mhz": outcome.transmission.bandwidth_50pct_mhz,
                "filter_max_gain": outcome.transmission.max_gain,
                "phase_match": outcome.phase_match,
            }),
        ]
        if self.extended:
            writes.append(self.sink.write_frame("susceptibility.csv", outcome.response.to_frame()))
            writes.append(self.sink.write_frame("kernel.csv", outcome.transmission.kernel_frame()))
        return self._collect(writes)

    def _store_scan(self, outcome: ScanOutcome) -> List[Path]:
        curve = outcome.curve
        writes = [self.sink.write_frame("scan_summary.csv", curve.to_frame())]
        for i, point in enumerate(curve.points):
            if point.trace is not None:
                writes.append(self.sink.write_frame(f"scan_point_{i:03d}_trace.csv", point.trace.to_frame()))
        writes.append(self.sink.write_json("scan.json", {
            "kind": curve.kind,
            "values": curve.values,
            "metrics": curve.metrics,
            "source_absorption_width_mhz": curve.source_absorption_width_mhz,
            "biphoton_bandwidth_mhz": curve.biphoton_bandwidth_mhz,
        }))
        return self._collect(writes)

    @staticmethod
    def _collect(writes: List['Result[Path, str]']) -> List[Path]:
        failed = [w.error for w in writes if w.is_err()]
        if failed:
            raise SimulationError("artifact write failed", errors=failed)
        return [w.unwrap() for w in writes]

    def _log_step(self, name: str, status: str, elapsed: float, **info):
        entry = {
            "name": name,
            "status": status,
            "elapsed": elapsed,
            **info
        }
        self._steps_log.append(entry)
        if status == "failed":
            logger.error(f"Step {name} Failed: {info.get('error')}")
        elif status == "success":
            logger.debug(f"Step {name} OK ({elapsed:.3f}s)")


# ====================== FACTORY ======================

def create_scenario_pipeline(
    sink: Optional['ArtifactSink'] = None,
    extended: bool = False,
    settings: Optional[SimSettings] = None,
) -> 'Result[ScenarioPipeline, str]':
    """Safe factory; the sink must implement ArtifactSink."""
    from .protocols import ArtifactSink

    if sink is not None and not isinstance(sink, ArtifactSink):
        return Err(f"Sink must implement ArtifactSink, got {type(sink)}")
    return Ok(ScenarioPipeline(sink, extended, settings))


__all__ = ["RunOutcome", "ScanOutcome", "ScenarioPipeline", "create_scenario_pipeline"]
