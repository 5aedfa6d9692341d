import logging
import os
from dataclasses import dataclass, fields, replace

from dotenv import dotenv_values

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "HYPERVERIFY_CONFIG"
DEFAULT_GRID = (0.0, 0.1, 0.25, 0.3, 0.4, 0.5, 0.6, 0.65, 0.7, 0.75, 0.9)
GRID_BOUNDS = (0.0, 0.95)
MIN_MC_SAMPLES = 10 ** 4
OUTPUT_FORMATS = ("csv", "json")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_grid(text):
    """Comma separated d values, e.g. ``"0, 0.25, 0.5"``."""
    if isinstance(text, (list, tuple)):
        return tuple(float(d) for d in text)
    return tuple(float(item) for item in text.split(",") if item.strip())


def parse_bool(text):
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError(f"not a boolean: {text!r}")


@dataclass(frozen=True)
class RunConfig:
    grid: tuple = DEFAULT_GRID
    tol: float = 1e-6
    mc_samples: int = 10 ** 6
    seed: int = 42
    slow_checks: bool = False
    output_format: str = "csv"
    output_path: str = None
    workers: int = 1

    def __post_init__(self):
        lo, hi = GRID_BOUNDS
        bad = [d for d in self.grid if not lo <= d <= hi]
        if bad:
            raise ValueError(f"grid values must lie in [{lo}, {hi}], got {bad}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.mc_samples < MIN_MC_SAMPLES:
            raise ValueError(f"mc_samples must be >= {MIN_MC_SAMPLES}, got {self.mc_samples}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


_PARSERS = {
    "grid": parse_grid,
    "tol": float,
    "mc_samples": lambda text: int(float(text)),
    "seed": int,
    "slow_checks": parse_bool,
    "output_format": lambda text: str(text).strip().lower(),
    "output_path": lambda text: str(text) if text else None,
    "workers": int,
}


def read_config_file(path):
    """Read a flat ``key = value`` file into typed RunConfig fields."""
    raw = dotenv_values(path)
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValueError(f"unknown config keys in {path}: {unknown}")
    parsed = {}
    for key, text in raw.items():
        if text is None:
            continue
        try:
            parsed[key] = _PARSERS[key](text)
        except ValueError as e:
            raise ValueError(f"bad value for {key} in {path}: {e}")
    return parsed


def load_config(path=None, **overrides):
    """
    Build a RunConfig from defaults, then the config file, then overrides.

    The file path defaults to the HYPERVERIFY_CONFIG environment variable;
    overrides equal to None are ignored.
    """
    path = path or os.environ.get(CONFIG_ENV_VAR)
    values = {}
    if path:
        if not os.path.isfile(path):
            raise ValueError(f"config file not found: {path}")
        values.update(read_config_file(path))
        logger.debug("Loaded config from %s: %s", path, sorted(values))
    values.update({key: value for key, value in overrides.items() if value is not None})
    if "grid" in values:
        values["grid"] = parse_grid(values["grid"])
    return replace(RunConfig(), **values)
