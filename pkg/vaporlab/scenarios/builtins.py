"""
BUILTIN SCENARIOS
The two pumping regimes of the warm-vapor source and the scans built on
them. Level data is configuration, not atomic-database ground truth.
"""
from typing import Dict, List

from ..biphoton.spec import BiphotonSpec, DecayPath, MotionalParams, default_pumps
from ..filter.spec import FilterSpec
from ..response.driven import DrivenSystemSpec
from ..scheme.constants import (
    D1_LINEWIDTH_MHZ,
    D2_LINEWIDTH_MHZ,
    EXCITED_HYPERFINE_SPLITTING_MHZ,
    GROUND_HYPERFINE_SPLITTING_MHZ,
    IDLER_NM,
    LOWER_PUMP_NM,
    MOTIONAL_SPEED_MPS,
    THERMAL_SPEED_MPS,
    UPPER_STATE_LINEWIDTH_MHZ,
)
from ..scheme.levels import Level, LevelScheme, PumpField, Transition
from ..shared.errors import UnknownScenarioError
from .scenario import ScanPlan, Scenario

OFF_RESONANT_DETUNING_MHZ = -1500.0
UPPER_PUMP_DETUNING_MHZ = 100.0
PUMP_RABI_MHZ = 150.0
SOURCE_OD = 10.0
# Hot-cell widths past ~1.4 GHz live in the Lorentzian wings.
FILTER_CELL_OD_CAP = 5000.0


def rb85_filter_scheme() -> LevelScheme:
    """Two ground manifolds, one pumped excited level, two probe levels split by the hyperfine gap."""
    return LevelScheme(
        label="rb85_d1_pump_d2_probe",
        levels=(
            Level(label="g3", energy_offset_mhz=0.0, manifold="5S1/2"),
            Level(label="g2", energy_offset_mhz=-GROUND_HYPERFINE_SPLITTING_MHZ, manifold="5S1/2"),
            Level(label="e", energy_offset_mhz=0.0, population_decay_rate_mhz=D1_LINEWIDTH_MHZ, manifold="5P1/2"),
            Level(label="b4", energy_offset_mhz=0.0, population_decay_rate_mhz=D2_LINEWIDTH_MHZ, manifold="5P3/2"),
            Level(
                label="b3",
                energy_offset_mhz=-EXCITED_HYPERFINE_SPLITTING_MHZ,
                population_decay_rate_mhz=D2_LINEWIDTH_MHZ,
                manifold="5P3/2",
            ),
        ),
        transitions=(
            Transition(upper="e", lower="g3"),
            Transition(upper="e", lower="g2"),
            Transition(upper="b4", lower="g3"),
            Transition(upper="b3", lower="g3"),
            Transition(upper="b3", lower="g2"),
        ),
    )


def _thermal_filter(**extra) -> FilterSpec:
    return FilterSpec(
        model="two_level_doppler",
        od=SOURCE_OD,
        linewidth_mhz=D2_LINEWIDTH_MHZ,
        v_t_mps=THERMAL_SPEED_MPS,
        wavelength_nm=IDLER_NM,
        **extra,
    )


def _driven_filter() -> FilterSpec:
    """
    Resonant D1 pump on g3 empties that ground level for velocity classes
    within a few Rabi frequencies of resonance. At PUMP_RABI_MHZ the hole
    in the D2 line is several hundred MHz wide, so near-resonant photons
    cross the cell with a sub-ns group delay and keep the natural decay.
    """
    driven = DrivenSystemSpec(
        scheme=rb85_filter_scheme(),
        pump=PumpField(detuning_mhz=0.0, rabi_mhz=PUMP_RABI_MHZ, wavelength_nm=LOWER_PUMP_NM),
        pump_transition=("e", "g3"),
        probe_transition=("b4", "g3"),
    )
    return FilterSpec(
        model="driven_multilevel",
        od=SOURCE_OD,
        linewidth_mhz=D2_LINEWIDTH_MHZ,
        v_t_mps=THERMAL_SPEED_MPS,
        wavelength_nm=IDLER_NM,
        driven=driven,
    )


def _off_resonant() -> Scenario:
    lower, upper = default_pumps(OFF_RESONANT_DETUNING_MHZ, -OFF_RESONANT_DETUNING_MHZ)
    return Scenario(
        name="off_resonant",
        description="Pump 1.5 GHz below the D1 line; source cell acts as a two-level Doppler filter",
        source=BiphotonSpec(
            paths=(DecayPath(center_detuning_mhz=0.0, linewidth_mhz=D2_LINEWIDTH_MHZ),),
            upper_linewidth_mhz=UPPER_STATE_LINEWIDTH_MHZ,
            two_photon_detuning_mhz=0.0,
            lower_pump=lower,
            upper_pump=upper,
        ),
        filter=_thermal_filter(),
        motional=MotionalParams(v_t_mps=0.0),
    )


def _on_resonant(name: str, description: str, f4_amplitude: complex) -> Scenario:
    lower, upper = default_pumps(0.0, UPPER_PUMP_DETUNING_MHZ)
    return Scenario(
        name=name,
        description=description,
        source=BiphotonSpec(
            paths=(
                DecayPath(center_detuning_mhz=0.0, amplitude=f4_amplitude, linewidth_mhz=D2_LINEWIDTH_MHZ),
                DecayPath(
                    center_detuning_mhz=-EXCITED_HYPERFINE_SPLITTING_MHZ,
                    amplitude=1.0,
                    linewidth_mhz=D2_LINEWIDTH_MHZ,
                ),
            ),
            upper_linewidth_mhz=UPPER_STATE_LINEWIDTH_MHZ,
            two_photon_detuning_mhz=UPPER_PUMP_DETUNING_MHZ,
            lower_pump=lower,
            upper_pump=upper,
        ),
        filter=_driven_filter(),
        motional=MotionalParams(v_t_mps=MOTIONAL_SPEED_MPS),
    )


def builtin_scenarios() -> List[Scenario]:
    off = _off_resonant()
    on = _on_resonant(
        "on_resonant",
        "Resonant D1 pump; two decay paths beat at the excited hyperfine splitting",
        1.0,
    )
    return [
        off,
        on,
        _on_resonant(
            "on_resonant_776",
            "Resonant D1 pump with the F'=4 path coupled out; single decay path",
            0.0,
        ),
        off.model_copy(update={
            "name": "filter_width_scan",
            "description": "Zero-delay coincidences versus extra filter-cell width",
            "scan": ScanPlan(
                kind="filter_width",
                values=(0.0, 150.0, 300.0, 450.0, 600.0, 800.0, 1000.0, 1200.0, 1600.0, 2000.0, 2400.0),
                od_cap=FILTER_CELL_OD_CAP,
            ),
        }),
        off.model_copy(update={
            "name": "od_scan",
            "description": "Correlation width versus source-cell optical depth",
            "scan": ScanPlan(kind="od", values=(0.1, 1.0, 10.0, 20.0)),
        }),
        on.model_copy(update={
            "name": "on_resonant_filtered",
            "description": "Resonant D1 pump behind an undriven filter cell; only far-detuned photons remain",
            "filter_cell": _thermal_filter(),
        }),
        on.model_copy(update={
            "name": "density_scan",
            "description": "Fitted decay constant versus source-cell optical depth, resonant pumping",
            "scan": ScanPlan(kind="density", values=(0.1, 1.0, 10.0)),
        }),
    ]


def builtin_map() -> Dict[str, Scenario]:
    return {s.name: s for s in builtin_scenarios()}


def get_builtin(name: str) -> Scenario:
    scenarios = builtin_map()
    if name not in scenarios:
        raise UnknownScenarioError(name, list(scenarios))
    return scenarios[name]
