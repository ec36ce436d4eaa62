import json
import logging
import math
import os
from dataclasses import dataclass, field, fields
from typing import Any, Dict, Optional

from constants import DEAD_BAND, HOT_REFERENCES
from errors import ConfigError
from utils import parse_complex


@dataclass
class RunConfig:
    """
    Everything one CLI invocation needs

    `params` holds the experiment parameters with defaults already merged
    in; `source` is the CSV path for `report` and the experiment kind for
    `params`.
    """

    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    out: str = ""
    plot: bool = False
    jobs: int = 1
    hot_reference: str = "instantaneous"
    hot_label: str = "A"
    dead_band: float = DEAD_BAND
    window: Optional[float] = None
    source: Optional[str] = None
    verbose: bool = False
    log_file: Optional[str] = None

    def __post_init__(self):
        if not self.out:
            self.out = default_out(self.kind)
        if not isinstance(self.out, str) or not self.out.strip():
            raise ConfigError("output prefix must be non-empty", param="out")
        if isinstance(self.jobs, bool) or not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError(f"jobs must be a positive integer, got {self.jobs!r}", param="jobs")
        if self.hot_reference not in HOT_REFERENCES:
            raise ConfigError(f"hot reference must be one of {', '.join(HOT_REFERENCES)}", param="hot_reference")
        if self.hot_label not in ("A", "B"):
            raise ConfigError(f"hot label must be A or B, got {self.hot_label!r}", param="hot_label")
        if not (isinstance(self.dead_band, (int, float)) and self.dead_band >= 0):
            raise ConfigError(f"dead band must be non-negative, got {self.dead_band!r}", param="dead_band")
        if not isinstance(self.plot, bool):
            raise ConfigError(f"plot must be true or false, got {self.plot!r}", param="plot")
        if self.window is not None and not (isinstance(self.window, (int, float)) and self.window > 0):
            raise ConfigError(f"window must be positive, got {self.window!r}", param="window")


RUN_CONFIG_FIELDS = tuple(f.name for f in fields(RunConfig))


def default_out(kind: str) -> str:
    return kind.replace("-", "_")


def coerce_param(name: str, value: Any, type_name: str) -> Any:
    """
    Convert a raw parameter value (JSON or CLI) to its declared type

    Raises:
        ConfigError: value cannot represent the declared type
    """
    if isinstance(value, bool):
        raise ConfigError(f"{name} must be a {type_name}, got a boolean", param=name)
    try:
        if type_name == "int":
            number = float(value)
            if not number.is_integer():
                raise ValueError(f"{value!r} is not an integer")
            return int(number)
        if type_name == "float":
            number = float(value)
            if not math.isfinite(number):
                raise ValueError(f"{value!r} is not finite")
            return number
        if type_name == "complex":
            if isinstance(value, str):
                return parse_complex(value)
            if isinstance(value, (list, tuple)) and len(value) == 2:
                return complex(float(value[0]), float(value[1]))
            return complex(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid value for {name}: {e}", param=name) from None
    return value


class ConfigManager:
    """Loads a JSON run configuration and layers it between defaults and CLI flags"""

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = config_file
        self.logger = logging.getLogger(__name__)
        self.config = self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """
        Load configuration from file

        Returns:
            The document as a dict, empty when no file was given

        Raises:
            ConfigError: unreadable file, malformed JSON or unknown keys
        """
        if not self.config_file:
            return {}
        if not os.path.exists(self.config_file):
            raise ConfigError(f"config file {self.config_file} does not exist", param="config")
        try:
            with open(self.config_file, "r") as f:
                config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config file {self.config_file}: {e}", param="config") from None

        if not isinstance(config, dict):
            raise ConfigError(f"config file {self.config_file} must hold a JSON object", param="config")
        unknown = sorted(set(config) - set(RUN_CONFIG_FIELDS))
        if unknown:
            raise ConfigError(f"unknown keys in {self.config_file}: {', '.join(unknown)}", param="config")
        if not isinstance(config.get("params", {}), dict):
            raise ConfigError(f"'params' in {self.config_file} must be an object", param="config")

        self.logger.debug(f"Loaded config from {self.config_file}: {sorted(config)}")
        return config

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value"""
        return self.config.get(key, default)

    def build_run_config(self, kind: str, overrides: Optional[Dict[str, Any]] = None,
                         selector=None) -> RunConfig:
        """
        Merge built-in defaults, the config file and CLI overrides

        Args:
            kind: Subcommand name
            overrides: Values given on the command line; None means not given.
                Experiment parameters go under "params".
            selector: ExperimentSelector used to look up and validate the
                experiment's parameters (experiment kinds only)

        Returns:
            Validated RunConfig

        Raises:
            ConfigError: invalid value, with `param` naming it
        """
        overrides = dict(overrides or {})
        file_values = dict(self.config)

        file_kind = file_values.pop("kind", None)
        if file_kind is not None and file_kind != kind:
            raise ConfigError(f"config file is for '{file_kind}', not '{kind}'", param="config")

        file_params = file_values.pop("params", {})
        flag_params = overrides.pop("params", None) or {}

        settings = {k: v for k, v in file_values.items()}
        settings.update({k: v for k, v in overrides.items() if v is not None})

        params = {}
        if selector is not None and kind in selector.experiments:
            spec = selector.get_experiment_params(kind)
            params = {name: entry["value"] for name, entry in spec.items()}
            for name, raw in {**file_params, **{k: v for k, v in flag_params.items() if v is not None}}.items():
                if name not in spec:
                    raise ConfigError(f"unknown parameter '{name}' for {kind}", param=name)
                params[name] = coerce_param(name, raw, spec[name]["type"])
        elif file_params or flag_params:
            raise ConfigError(f"{kind} takes no experiment parameters", param="config")

        config = RunConfig(kind=kind, params=params, **settings)

        if selector is not None and kind in selector.experiments:
            # Constructing the experiment runs its parameter validation
            selector.create_experiment(kind, params, config.jobs)

        return config
