"""Run configuration and its flat key/value file format.

Config files are plain text, one ``section.key = value`` per line, with ``#``
comments and blank lines ignored.  Example::

    grid.N = 128
    kernel.delta = 0.05
    potential.kind = double-well
    scheme.order = 2
    scheme.tau = 0.01
    scheme.eps = 0.05
    init.kind = cosine
    run.T_final = 1.0

Unknown keys are rejected so typos cannot silently fall back to defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

__all__ = ["RunConfig", "parse_config_text", "load_config", "with_overrides"]


@dataclass(frozen=True)
class RunConfig:
    """Everything a simulation, convergence study, or verification run needs."""

    # grid
    L: float = 1.0
    N: int = 128
    # kernel
    delta: float = 0.02
    # potential
    potential_kind: str = "double-well"
    theta: float = 0.8
    theta_c: float = 1.6
    # scheme
    order: int = 2
    tau: float = 0.01
    eps: float = 0.02
    predictor: str = "semi-implicit"
    kappa_override: float | None = None
    # initial condition
    init_kind: str = "cosine"
    R1: float = 0.8
    R2: float = 0.6
    center_x: float = 0.0
    center_y: float = 0.0
    amplitude: float = 0.5
    seed: int = 0
    scale: float = 1.0
    # run control
    T_final: float = 1.0
    snapshot_times: tuple[float, ...] = ()
    steady_stop: bool = False
    steady_threshold: float = 1e-8
    output_dir: str = "out"
    strict_mbp_tau: bool = False

    def __post_init__(self):
        for name in ("L", "delta", "tau", "eps", "scale", "steady_threshold"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.N < 4:
            raise ValueError(f"N must be at least 4, got {self.N}")
        if self.T_final < 0.0:
            raise ValueError(f"T_final must be nonnegative, got {self.T_final}")
        if self.order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {self.order}")
        for t in self.snapshot_times:
            if not 0.0 <= t <= self.T_final:
                raise ValueError(
                    f"snapshot time {t} outside the run interval [0, {self.T_final}]"
                )


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"cannot parse boolean from {text!r}")


def _parse_times(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(part) for part in text.split(","))


# config key -> (dataclass field, converter)
_KEYS = {
    "grid.L": ("L", float),
    "grid.N": ("N", int),
    "kernel.delta": ("delta", float),
    "potential.kind": ("potential_kind", str),
    "potential.theta": ("theta", float),
    "potential.theta_c": ("theta_c", float),
    "scheme.order": ("order", int),
    "scheme.tau": ("tau", float),
    "scheme.eps": ("eps", float),
    "scheme.predictor": ("predictor", str),
    "scheme.kappa_override": ("kappa_override", float),
    "init.kind": ("init_kind", str),
    "init.R1": ("R1", float),
    "init.R2": ("R2", float),
    "init.center_x": ("center_x", float),
    "init.center_y": ("center_y", float),
    "init.amplitude": ("amplitude", float),
    "init.seed": ("seed", int),
    "init.scale": ("scale", float),
    "run.T_final": ("T_final", float),
    "run.snapshot_times": ("snapshot_times", _parse_times),
    "run.steady_stop": ("steady_stop", _parse_bool),
    "run.steady_threshold": ("steady_threshold", float),
    "run.output_dir": ("output_dir", str),
    "run.strict_mbp_tau": ("strict_mbp_tau", _parse_bool),
}

_FIELD_NAMES = {f.name for f in fields(RunConfig)}
assert all(name in _FIELD_NAMES for name, _ in _KEYS.values())


def parse_config_text(text: str, source: str = "<string>") -> RunConfig:
    """Parse the flat key/value format into a RunConfig."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ValueError(f"{source}:{lineno}: unknown config key {key!r}")
        field_name, convert = _KEYS[key]
        try:
            values[field_name] = convert(value)
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: bad value for {key}: {exc}") from exc
    return RunConfig(**values)


def load_config(path: str | Path) -> RunConfig:
    """Read and parse a config file."""
    path = Path(path)
    return parse_config_text(path.read_text(), source=str(path))


def with_overrides(cfg: RunConfig, **kwargs) -> RunConfig:
    """Copy of cfg with the given fields replaced (None values are ignored)."""
    updates = {k: v for k, v in kwargs.items() if v is not None}
    return replace(cfg, **updates) if updates else cfg
