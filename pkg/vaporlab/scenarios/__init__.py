from .scenario import Scenario, ScanPlan
from .validation import validate_scenario
from .builtins import builtin_scenarios, builtin_map, get_builtin, rb85_filter_scheme
from .config import (
    FORMAT_VERSION,
    scenario_to_dict,
    dump_scenario,
    parse_scenario,
    load_scenario_file,
    save_scenario_file,
    resolve_scenario,
    parse_override,
    apply_overrides,
    apply_override_strings,
)

__all__ = [
    "Scenario",
    "ScanPlan",
    "validate_scenario",
    "builtin_scenarios",
    "builtin_map",
    "get_builtin",
    "rb85_filter_scheme",
    "FORMAT_VERSION",
    "scenario_to_dict",
    "dump_scenario",
    "parse_scenario",
    "load_scenario_file",
    "save_scenario_file",
    "resolve_scenario",
    "parse_override",
    "apply_overrides",
    "apply_override_strings",
]
