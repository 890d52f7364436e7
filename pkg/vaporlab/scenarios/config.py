"""
SCENARIO CONFIG FILES
YAML documents mirroring Scenario one-to-one plus a mandatory
format_version key. Overrides use dotted paths (a.b.0.c=value).
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple, Union

import yaml
from pydantic import ValidationError

from ..shared.errors import ConfigFormatError, UnknownScenarioError
from .builtins import builtin_map
from .scenario import Scenario

logger = logging.getLogger("ScenarioConfig")

FORMAT_VERSION = 1


def scenario_to_dict(s: Scenario) -> Dict[str, Any]:
    return {"format_version": FORMAT_VERSION, **s.model_dump(mode="json")}


def dump_scenario(s: Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(s), sort_keys=False)


def _validated(data: Dict[str, Any], origin: str) -> Scenario:
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        details = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise ConfigFormatError("scenario does not match the schema", origin=origin, errors=details) from e


def parse_scenario(text: str, origin: str = "<string>") -> Scenario:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigFormatError("unreadable YAML", origin=origin, reason=str(e)) from e
    if not isinstance(data, dict):
        raise ConfigFormatError("scenario file must hold a mapping", origin=origin)
    version = data.pop("format_version", None)
    if version != FORMAT_VERSION:
        raise ConfigFormatError("unsupported format_version", origin=origin, found=version, expected=FORMAT_VERSION)
    return _validated(data, origin)


def load_scenario_file(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), origin=str(path))


def save_scenario_file(s: Scenario, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_scenario(s), encoding="utf-8")
    return path


def resolve_scenario(ref: str) -> Scenario:
    """Builtin name first, then a YAML file path."""
    scenarios = builtin_map()
    if ref in scenarios:
        return scenarios[ref]
    path = Path(ref)
    if path.is_file():
        logger.info(f"Loading scenario file: {path}")
        return load_scenario_file(path)
    raise UnknownScenarioError(ref, list(scenarios))


# ====================== OVERRIDES ======================

def parse_override(text: str) -> Tuple[str, Any]:
    key, sep, raw = text.partition("=")
    if not sep or not key.strip():
        raise ConfigFormatError("override must look like a.b.c=value", override=text)
    try:
        value = yaml.safe_load(raw) if raw.strip() else ""
    except yaml.YAMLError as e:
        raise ConfigFormatError("override value is not parseable", override=text) from e
    return key.strip(), value


def _set_path(node: Any, parts: List[str], value: Any, full_key: str) -> None:
    head, rest = parts[0], parts[1:]
    if isinstance(node, list):
        if not head.isdigit() or int(head) >= len(node):
            raise ConfigFormatError("override index out of range", key=full_key)
        if rest:
            _set_path(node[int(head)], rest, value, full_key)
        else:
            node[int(head)] = value
        return
    if not isinstance(node, dict) or head not in node:
        raise ConfigFormatError("unknown override path", key=full_key)
    if rest:
        _set_path(node[head], rest, value, full_key)
    else:
        node[head] = value


def apply_overrides(s: Scenario, overrides: Mapping[str, Any]) -> Scenario:
    if not overrides:
        return s
    data = s.model_dump(mode="json")
    for key, value in overrides.items():
        _set_path(data, key.split("."), value, key)
    return _validated(data, origin="overrides")


def apply_override_strings(s: Scenario, overrides: List[str]) -> Scenario:
    return apply_overrides(s, dict(parse_override(item) for item in overrides))
