"""Flat YAML configuration: documented keys, defaults, presets and the effective run bundle."""

import json
import logging
import re
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml

from noma_vr_offloader.agents.models import AgentConfig
from noma_vr_offloader.core.errors import ConfigError
from noma_vr_offloader.env.models import MAX_JOINT_ACTIONS, EnvConfig
from noma_vr_offloader.experiment.models import ExperimentSpec

logger = logging.getLogger(__name__)

SECTIONS = (("env", EnvConfig), ("agent", AgentConfig), ("experiment", ExperimentSpec))

PRESETS: Dict[str, Dict[str, Any]] = {
    "desk": {"total_steps": 30000, "seeds": (0, 1, 2), "eval_interval": 1000},
    "paper": {"total_steps": 200000, "seeds": tuple(range(11)), "eval_interval": 50},
}
DEFAULT_PRESET = "desk"

_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass(frozen=True)
class RunConfig:
    env: EnvConfig
    agent: AgentConfig
    experiment: ExperimentSpec


def parse_seeds(text: str) -> Tuple[int, ...]:
    """``A..B`` (inclusive) or a comma-separated list."""
    text = str(text).strip()
    match = _RANGE.match(text)
    if match:
        first, last = int(match.group(1)), int(match.group(2))
        if last < first:
            raise ConfigError(f"seed range '{text}' is empty")
        return tuple(range(first, last + 1))
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"seeds must be 'A..B' or a comma-separated list, got '{text}'")


def format_seeds(seeds: Tuple[int, ...]) -> str:
    seeds = tuple(seeds)
    if len(seeds) > 1 and seeds == tuple(range(seeds[0], seeds[-1] + 1)):
        return f"{seeds[0]}..{seeds[-1]}"
    return ",".join(str(s) for s in seeds)


def _key_types() -> Dict[str, Any]:
    types: Dict[str, Any] = {}
    for _, cls in SECTIONS:
        for f in fields(cls):
            types[f.name] = f.type
    return types


KEY_TYPES = _key_types()


def convert_value(key: str, raw: Any, line: Optional[int] = None) -> Any:
    """Convert a raw scalar (usually a string) to the documented type of ``key``."""
    where = f" (line {line})" if line is not None else ""
    if key not in KEY_TYPES:
        raise ConfigError(f"unknown config key '{key}'{where}")
    kind = KEY_TYPES[key]
    text = str(raw).strip()
    try:
        if kind is bool:
            if text.lower() in _TRUE:
                return True
            if text.lower() in _FALSE:
                return False
            raise ValueError(text)
        if kind is int:
            value = float(text)
            if not value.is_integer():
                raise ValueError(text)
            return int(value)
        if kind is float:
            return float(text)
        if key == "seeds":
            return parse_seeds(text)
        return text
    except ValueError:
        raise ConfigError(f"config key '{key}'{where}: cannot read '{text}' as {getattr(kind, '__name__', kind)}")


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return f'"{format_seeds(value)}"'
    if isinstance(value, str):
        return json.dumps(value)
    return str(value)


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, Any]:
    """Flat ``key: value`` mapping; values are converted per key with line numbers on errors."""
    try:
        node = yaml.compose(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = f" line {mark.line + 1}" if mark is not None else ""
        raise ConfigError(
            f"{source}{line}: expected one 'key: value' pair per line ({getattr(e, 'problem', e)})"
        )
    if node is None:
        return {}
    if not isinstance(node, yaml.MappingNode):
        line = node.start_mark.line + 1
        found = text.splitlines()[node.start_mark.line].strip()
        raise ConfigError(f"{source} line {line}: expected one 'key: value' pair per line, found '{found}'")

    values: Dict[str, Any] = {}
    for key_node, value_node in node.value:
        line = key_node.start_mark.line + 1
        key = str(key_node.value)
        if not isinstance(value_node, yaml.ScalarNode):
            raise ConfigError(f"{source} line {line}: key '{key}' must have a single value")
        if key in values:
            raise ConfigError(f"{source} line {line}: key '{key}' given twice")
        if key == "preset":
            if value_node.value not in PRESETS:
                raise ConfigError(f"{source} line {line}: unknown preset '{value_node.value}'")
            values[key] = value_node.value
            continue
        values[key] = convert_value(key, value_node.value, line)
    return values


class ConfigManager:
    """Layers documented defaults, a preset, a config file and explicit overrides."""

    DEFAULT_CONFIG_FILE = "vr_offloader.yaml"

    def __init__(self, config_path: Optional[Union[str, Path]] = None, preset: Optional[str] = None):
        self.config_path = Path(config_path) if config_path else None
        if preset is not None and preset not in PRESETS:
            raise ConfigError(f"unknown preset '{preset}'; expected one of {', '.join(PRESETS)}")
        self.preset = preset
        self._config: Dict[str, Any] = {}
        self._overrides: Dict[str, Any] = {}
        self._loaded = False

    def exists(self) -> bool:
        return self.config_path is not None and self.config_path.exists()

    def load(self) -> Dict[str, Any]:
        if self.config_path is None:
            self._config = {}
        elif not self.config_path.exists():
            raise ConfigError(f"config file not found: {self.config_path}")
        else:
            self._config = parse_config_text(self.config_path.read_text(), str(self.config_path))
            logger.debug(f"Loaded {len(self._config)} config keys from {self.config_path}")
        self._loaded = True
        return dict(self._config)

    def save(self, values: Dict[str, Any]) -> None:
        if self.config_path is None:
            raise ConfigError("no config path to save to")
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"{key}: {_format_value(value)}" for key, value in values.items()]
        self.config_path.write_text("\n".join(lines) + "\n")
        self._config = dict(values)
        logger.info(f"✅ Configuration saved to {self.config_path}")

    def set(self, key: str, value: Any) -> None:
        """Override one key; string values are converted like file values."""
        if isinstance(value, str):
            value = convert_value(key, value)
        elif key not in KEY_TYPES:
            raise ConfigError(f"unknown config key '{key}'")
        self._overrides[key] = value

    def update(self, updates: Dict[str, Any]) -> None:
        for key, value in updates.items():
            if value is not None:
                self.set(key, value)

    def layered(self) -> Dict[str, Any]:
        if not self._loaded:
            self.load()
        preset = self.preset or self._config.get("preset", DEFAULT_PRESET)
        merged: Dict[str, Any] = dict(PRESETS[preset])
        merged.update({k: v for k, v in self._config.items() if k != "preset"})
        merged.update(self._overrides)
        return merged

    def get(self, key: str, default: Any = None) -> Any:
        return self.layered().get(key, default)

    def effective(self) -> RunConfig:
        merged = self.layered()
        sections = []
        for _, cls in SECTIONS:
            names = {f.name for f in fields(cls)}
            sections.append(cls(**{k: v for k, v in merged.items() if k in names}))
        run = RunConfig(*sections)
        if run.experiment.agent != "random" and run.env.action_space_size > MAX_JOINT_ACTIONS:
            raise ConfigError(
                f"n_users={run.env.n_users}, n_channels={run.env.n_channels} give "
                f"{run.env.action_space_size} joint actions; learning agents support at most {MAX_JOINT_ACTIONS}"
            )
        return run

    @staticmethod
    def dump(run: RunConfig, path: Union[str, Path]) -> None:
        """Write every effective key; loading the file reproduces ``run`` exactly."""
        lines = []
        for section, _ in SECTIONS:
            lines.append(f"# {section}")
            for key, value in getattr(run, section).to_dict().items():
                lines.append(f"{key}: {_format_value(value)}")
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n")


def with_seed(run: RunConfig, seed: int) -> RunConfig:
    """The run bundle for one campaign seed: the env draws from ``seed`` as its master seed."""
    return replace(run, env=replace(run.env, rng_seed=seed))


def load_config(path: Union[str, Path], preset: Optional[str] = None) -> RunConfig:
    """Effective run bundle of a config file, with defaults for omitted keys."""
    return ConfigManager(path, preset=preset).effective()
