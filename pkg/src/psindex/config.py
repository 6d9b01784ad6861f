"""Run configuration: defaults, JSON overrides, and the PSINDEX_SEED variable."""

import json
import os
from dataclasses import asdict, dataclass, fields

from .errors import ConfigError
from .fourier import BAND_CAP, INVERSE_FLOOR, INVERSE_TOL
from .oracle import DEFAULT_MODES, DEFAULT_TOL
from .symbol import COND_MAX

SEED_ENV = "PSINDEX_SEED"


@dataclass(frozen=True)
class Config:
    depth: int = 4
    inverse_floor: float = INVERSE_FLOOR
    inverse_tol: float = INVERSE_TOL
    band_cap: int = BAND_CAP
    cond_max: float = COND_MAX
    oracle_modes: tuple = DEFAULT_MODES
    oracle_tol: float = DEFAULT_TOL
    integer_tol: float = 1e-6
    q: str = "canonical"
    format: str = "full"
    seed: int = 0

    def __post_init__(self):
        if self.depth < 1:
            raise ConfigError("depth must be positive", depth=self.depth)
        if self.format not in ("full", "kv"):
            raise ConfigError("format must be 'full' or 'kv'", format=self.format)
        object.__setattr__(self, "oracle_modes", tuple(int(k) for k in self.oracle_modes))

    def replace(self, **changes):
        data = asdict(self)
        data.update({k: v for k, v in changes.items() if v is not None})
        return Config(**data)


def load_config(path=None, environ=None):
    """Defaults, then the JSON file at ``path`` (unknown keys rejected), then the environment."""
    data = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}", path=str(path)) from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object", path=str(path))
        known = {f.name for f in fields(Config)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError("unknown config keys", keys=unknown)
    env = os.environ if environ is None else environ
    if env.get(SEED_ENV):
        try:
            data["seed"] = int(env[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer", value=env[SEED_ENV]) from None
    try:
        return Config(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
