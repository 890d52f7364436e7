"""
UNIT TEST: SCHEME & SCENARIOS
Focus: Grid axes, level-scheme audits, scenario YAML round trip and overrides.
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
import pytest

from vaporlab.scheme.grid import FrequencyGrid
from vaporlab.scheme.levels import Level, LevelScheme, PumpField, Transition
from vaporlab.scenarios import (
    apply_override_strings,
    builtin_scenarios,
    dump_scenario,
    get_builtin,
    load_scenario_file,
    parse_override,
    parse_scenario,
    resolve_scenario,
    save_scenario_file,
    validate_scenario,
)
from vaporlab.shared import ConfigFormatError, DomainError, UnknownScenarioError

# --- SETUP LOGGING ---
def setup_logging():
    log_dir = PROJECT_ROOT / "logs"
    log_dir.mkdir(exist_ok=True)
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    log_filename = log_dir / f"TestScheme_{timestamp}.log"

    logging.basicConfig(
        format='%(asctime)s | %(levelname)-8s | %(name)-15s | %(message)s',
        datefmt='%H:%M:%S',
        level=logging.INFO,
        handlers=[
            logging.StreamHandler(),
            logging.FileHandler(str(log_filename), mode='w')
        ]
    )
    return logging.getLogger("TestScheme")

logger = setup_logging()


class TestSchemeLogic:

    def run(self) -> bool:
        logger.info("=== STARTING UNIT TEST: SCHEME & SCENARIOS ===")

        test_cases = [
            ("1. Grid Axes            ", self.test_grid_axes),
            ("2. Grid Audit           ", self.test_grid_violations),
            ("3. Scheme Lookups       ", self.test_scheme_lookups),
            ("4. Pump Audit           ", self.test_pump_violations),
            ("5. Builtins             ", self.test_builtins),
            ("6. YAML Round Trip      ", self.test_yaml_round_trip),
            ("7. Format Version       ", self.test_format_version),
            ("8. Dotted Overrides     ", self.test_overrides),
            ("9. Bad Overrides        ", self.test_bad_overrides),
            ("10. Window Audit        ", self.test_window_violations),
            ("11. Resolution          ", self.test_resolve),
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

    def test_grid_axes(self) -> None:
        grid = FrequencyGrid(span_mhz=16384.0, n_points=2 ** 14)
        assert grid.resolution_mhz == 1.0
        assert grid.dt_ns == pytest.approx(1e3 / 16384.0)
        assert grid.detunings_mhz[grid.center_index] == 0.0
        assert grid.delays_ns[grid.center_index] == 0.0
        assert grid.fft_delays_ns[0] == 0.0
        # Time window is the reciprocal of the resolution
        assert grid.window_us == pytest.approx(1.0 / grid.resolution_mhz)

    def test_grid_violations(self) -> None:
        assert FrequencyGrid().violations() == []
        assert FrequencyGrid(n_points=3000).violations()
        assert FrequencyGrid(n_points=2 ** 12).violations()
        assert FrequencyGrid(span_mhz=-1.0).violations()
        assert FrequencyGrid().same_as(FrequencyGrid())
        assert not FrequencyGrid().same_as(FrequencyGrid(n_points=2 ** 16))

    def test_scheme_lookups(self) -> None:
        scheme = LevelScheme(
            label="lambda",
            levels=(Level(label="g"), Level(label="e", population_decay_rate_mhz=6.0)),
            transitions=(Transition(upper="e", lower="g"),),
        )
        assert scheme.violations("scheme") == []
        assert scheme.level("e").manifold_name == "e"
        assert scheme.level("g").is_ground and not scheme.level("e").is_ground
        assert scheme.find_transition("e", "g") is not None
        assert scheme.find_transition("g", "e") is None
        with pytest.raises(DomainError):
            scheme.level("missing")

        broken = LevelScheme(
            label="broken",
            levels=(Level(label="g"), Level(label="g")),
            transitions=(Transition(upper="x", lower="g"),),
        )
        found = broken.violations("scheme")
        assert any("duplicate" in v for v in found)
        assert any("unknown level 'x'" in v for v in found)

    def test_pump_violations(self) -> None:
        assert PumpField(rabi_mhz=30.0).violations("pump") == []
        assert PumpField(rabi_mhz=-1.0).violations("pump")
        assert PumpField(direction=(0.0, 0.0, 2.0)).violations("pump")

    def test_builtins(self) -> None:
        names = [s.name for s in builtin_scenarios()]
        assert names == [
            "off_resonant",
            "on_resonant",
            "on_resonant_776",
            "filter_width_scan",
            "od_scan",
            "on_resonant_filtered",
            "density_scan",
        ]
        for s in builtin_scenarios():
            assert validate_scenario(s) == [], f"{s.name}: {validate_scenario(s)}"

        off = get_builtin("off_resonant")
        assert off.source.lower_pump.detuning_mhz == -1500.0
        assert off.filter.model == "two_level_doppler"
        assert off.natural_tau_ns == pytest.approx(26.31, abs=0.01)

        on = get_builtin("on_resonant")
        splitting = abs(on.source.paths[0].center_detuning_mhz - on.source.paths[1].center_detuning_mhz)
        assert splitting == pytest.approx(120.6)
        assert get_builtin("on_resonant_776").source.paths[0].amplitude == 0
        assert on.filter.driven.pump.rabi_mhz == 150.0
        assert on.filter_cell is None

        filtered = get_builtin("on_resonant_filtered")
        assert filtered.source == on.source and filtered.filter == on.filter
        assert filtered.filter_cell.model == "two_level_doppler"
        density = get_builtin("density_scan")
        assert density.scan.kind == "density" and density.scan.values == (0.1, 1.0, 10.0)

    def test_yaml_round_trip(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            for s in builtin_scenarios():
                path = save_scenario_file(s, Path(tmp) / f"{s.name}.yaml")
                assert load_scenario_file(path) == s

        text = dump_scenario(get_builtin("on_resonant"))
        assert text.startswith("format_version: 1")
        # Complex amplitudes are stored as [re, im]
        assert "- 1.0\n" in text and "- 0.0\n" in text

    def test_format_version(self) -> None:
        text = dump_scenario(get_builtin("off_resonant"))
        with pytest.raises(ConfigFormatError):
            parse_scenario(text.replace("format_version: 1", "format_version: 2"))
        with pytest.raises(ConfigFormatError):
            parse_scenario(text + "\nunexpected_key: 3\n")
        with pytest.raises(ConfigFormatError):
            parse_scenario("- just\n- a list\n")

    def test_overrides(self) -> None:
        base = get_builtin("on_resonant")
        changed = apply_override_strings(base, [
            "motional.v_t_mps=0",
            "filter.od=20",
            "source.paths.1.amplitude=[0.5, 0.5]",
        ])
        assert changed.motional.v_t_mps == 0.0
        assert changed.filter.od == 20.0
        assert changed.source.paths[1].amplitude == 0.5 + 0.5j
        assert base.filter.od == 10.0
        assert base.with_overrides(**{"filter.od": 3}).filter.od == 3.0
        assert parse_override("a.b=1.5") == ("a.b", 1.5)

    def test_bad_overrides(self) -> None:
        base = get_builtin("off_resonant")
        for bad in (["filter.nope=1"], ["source.paths.7.amplitude=0"], ["no_equals_sign"], ["grid.n_points=abc"]):
            with pytest.raises(ConfigFormatError):
                apply_override_strings(base, bad)

    def test_window_violations(self) -> None:
        base = get_builtin("off_resonant")
        found = validate_scenario(base.with_overrides(**{"fit_window_ns": [45, 3]}))
        assert any(v.startswith("fit_window_ns") for v in found)
        found = validate_scenario(base.with_overrides(**{"beat_window_ns": [3, 900]}))
        assert any(v.startswith("beat_window_ns") for v in found)
        found = validate_scenario(base.with_overrides(**{"filter.od": -1, "grid.n_points": 1000}))
        assert any(v.startswith("filter.od") for v in found)
        assert any(v.startswith("grid.n_points") for v in found)

    def test_resolve(self) -> None:
        assert resolve_scenario("od_scan").scan.values == (0.1, 1.0, 10.0, 20.0)
        with pytest.raises(UnknownScenarioError) as info:
            resolve_scenario("nonsense")
        assert "off_resonant" in str(info.value)
        with tempfile.TemporaryDirectory() as tmp:
            path = save_scenario_file(get_builtin("off_resonant"), Path(tmp) / "mine.yaml")
            assert resolve_scenario(str(path)).name == "off_resonant"

    # --- CLI SUMMARY ---

    def print_summary(self, results):
        total = len(results)
        passed = sum(1 for r in results if r[1])
        print("\n" + "="*70)
        print("SCHEME & SCENARIO TEST REPORT")
        print("="*70)
        for name, success, msg in results:
            status = "✓ PASS" if success else "✗ FAIL"
            print(f"{status:<8} {name:<25} | {msg}")
        print("-"*70)
        print(f"TOTAL: {passed}/{total} Passed")
        print("="*70 + "\n")


if __name__ == "__main__":
    sys.exit(0 if TestSchemeLogic().run() else 1)
