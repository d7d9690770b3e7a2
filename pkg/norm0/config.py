"""Runtime configuration for the command line.

Precedence: command-line flag, then environment (NORM0_CACHE, NORM0_BUDGET, NORM0_FACTOR_CAP,
NORM0_ORACLE_CAP), then the defaults below.  Bad numeric values are clamped back to the
default with a warning instead of failing the run.
"""

from __future__ import annotations

import os
import warnings as _warnings
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping

from norm0.core.cache import DEFAULT_CACHE_DIR
from norm0.core.exact import DEFAULT_FACTOR_CAP
from norm0.core.gamma0 import DEFAULT_ORACLE_CAP
from norm0.core.group_engine import DEFAULT_BUDGET

FORMATS = ("text", "json")


def clamp_positive_int(value: object, name: str, *, default: int) -> int:
    """Parse a positive integer, warning and falling back to ``default`` otherwise."""
    if value is None or (isinstance(value, str) and not value.strip()):
        return default
    try:
        parsed = int(float(str(value).strip()))
    except (TypeError, ValueError):
        _warnings.warn(f"{name}={value!r} is not a number. Clamping to {default}.")
        return default
    if parsed < 1:
        _warnings.warn(f"{name}={parsed} is not positive. Clamping to {default}.")
        return default
    return parsed


@dataclass(frozen=True)
class CliConfig:
    cache_dir: Path = Path(DEFAULT_CACHE_DIR)
    factor_cap: int = DEFAULT_FACTOR_CAP
    budget: int = DEFAULT_BUDGET
    oracle_cap: int = DEFAULT_ORACLE_CAP
    output_format: str = "text"
    use_cache: bool = True

    def __post_init__(self) -> None:
        if self.output_format not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}, got {self.output_format!r}")
        for name in ("factor_cap", "budget", "oracle_cap"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_env(cls, env: Mapping[str, str] | None = None) -> "CliConfig":
        env = os.environ if env is None else env
        cache = (env.get("NORM0_CACHE") or "").strip()
        return cls(
            cache_dir=Path(cache) if cache else Path(DEFAULT_CACHE_DIR),
            factor_cap=clamp_positive_int(env.get("NORM0_FACTOR_CAP"), "NORM0_FACTOR_CAP", default=DEFAULT_FACTOR_CAP),
            budget=clamp_positive_int(env.get("NORM0_BUDGET"), "NORM0_BUDGET", default=DEFAULT_BUDGET),
            oracle_cap=clamp_positive_int(env.get("NORM0_ORACLE_CAP"), "NORM0_ORACLE_CAP", default=DEFAULT_ORACLE_CAP),
        )

    def with_overrides(
        self,
        *,
        cache_dir: str | None = None,
        no_cache: bool = False,
        budget: int | None = None,
        factor_cap: int | None = None,
        oracle_cap: int | None = None,
        output_format: str | None = None,
    ) -> "CliConfig":
        cfg = self
        if cache_dir:
            cfg = replace(cfg, cache_dir=Path(cache_dir))
        if no_cache:
            cfg = replace(cfg, use_cache=False)
        if budget is not None:
            cfg = replace(cfg, budget=clamp_positive_int(budget, "--budget", default=self.budget))
        if factor_cap is not None:
            cfg = replace(cfg, factor_cap=clamp_positive_int(factor_cap, "--factor-cap", default=self.factor_cap))
        if oracle_cap is not None:
            cfg = replace(cfg, oracle_cap=clamp_positive_int(oracle_cap, "--oracle-cap", default=self.oracle_cap))
        if output_format is not None:
            cfg = replace(cfg, output_format=output_format)
        return cfg
