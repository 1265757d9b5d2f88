"""Negativity curves, parameter sweeps, and their deterministic CSV output.

A run is fully specified by an ExperimentConfig; all defaults live on the
dataclass so the CLI, the config file, and library callers agree. Curves are
sampled on a uniform time grid with the closed-form propagator, so every grid
point is computed independently: sweep entries may run concurrently and the
output is identical regardless of worker count. CSV files are written with
fixed 12-significant-digit formatting and '\\n' line endings, so repeated runs
are byte-identical.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, ContractViolation
from .modes import drift_matrix, initial_state, propagate
from .negativity import negativity
from .sites import GAMMA_MAX, ModelParams

LIFETIME_THRESHOLD = 1e-12

_SCALAR_FIELDS = ("epsilon", "temperature", "gamma", "squeeze_r", "t_max")
_LIST_FIELDS = ("gamma_list", "temperature_list")


def format_float(value: float) -> str:
    """Canonical CSV number format: 12 significant digits, '.' decimal."""
    return f"{float(value):.12g}"


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of a negativity run and of the two standard sweeps.

    The defaults reproduce the strongest entangling case: coldest default
    temperature, maximal CP-allowed coupling, unit squeeze. gamma_list and
    temperature_list only drive the corresponding sweep commands.
    """

    epsilon: float = 1.0
    temperature: float = 0.1
    gamma: float = 0.5
    squeeze_r: float = 1.0
    t_max: float = 5.0
    t_steps: int = 500
    gamma_list: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5)
    temperature_list: tuple[float, ...] = (0.1, 0.5, 1.0)

    def __post_init__(self) -> None:
        for name in _SCALAR_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{name}: expected a number, got {value!r}")
            object.__setattr__(self, name, float(value))
            if not np.isfinite(getattr(self, name)):
                raise ConfigError(f"{name}: must be finite, got {value!r}")
        if isinstance(self.t_steps, bool) or not isinstance(self.t_steps, int):
            raise ConfigError(f"t_steps: expected an integer, got {self.t_steps!r}")
        if self.t_steps < 2:
            raise ConfigError(f"t_steps: need at least 2 samples, got {self.t_steps}")
        if self.t_max <= 0:
            raise ConfigError(f"t_max: must be positive, got {self.t_max}")
        if self.gamma > GAMMA_MAX:
            raise ConfigError(
                f"gamma: {format_float(self.gamma)} violates complete positivity; "
                f"the dissipation matrix is positive only for gamma in [0, {GAMMA_MAX}]"
            )
        for name in _LIST_FIELDS:
            raw = getattr(self, name)
            if isinstance(raw, (str, bytes)) or not isinstance(raw, Iterable):
                raise ConfigError(f"{name}: expected a list of numbers, got {raw!r}")
            values = tuple(raw)
            if not values:
                raise ConfigError(f"{name}: must not be empty")
            for v in values:
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise ConfigError(f"{name}: expected a number, got {v!r}")
            object.__setattr__(self, name, tuple(float(v) for v in values))
        for g in self.gamma_list:
            if g > GAMMA_MAX:
                raise ConfigError(
                    f"gamma_list: {format_float(g)} violates complete positivity; "
                    f"the window is [0, {GAMMA_MAX}]"
                )
        for t in self.temperature_list:
            if t <= 0:
                raise ConfigError(
                    f"temperature_list: temperature {format_float(t)} is not "
                    "positive; at zero temperature the thermal fluctuation "
                    "structure contracts (eta -> 1) and the model is undefined"
                )
        # Surface parameter-domain problems now, with the field named, rather
        # than later inside the numerics.
        try:
            ModelParams(self.epsilon, self.temperature, self.gamma)
            for g in self.gamma_list:
                ModelParams(self.epsilon, self.temperature, g)
            for t in self.temperature_list:
                ModelParams(self.epsilon, t, self.gamma)
        except ContractViolation as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration field '{unknown[0]}'")
        cleaned = dict(data)
        if "t_steps" in cleaned:
            v = cleaned["t_steps"]
            if isinstance(v, bool):
                raise ConfigError(f"t_steps: expected an integer, got {v!r}")
            if isinstance(v, float):
                if not v.is_integer():
                    raise ConfigError(f"t_steps: expected an integer, got {v!r}")
                cleaned["t_steps"] = int(v)
        for name in _LIST_FIELDS:
            if name in cleaned and isinstance(cleaned[name], Iterable) and not isinstance(
                cleaned[name], (str, bytes)
            ):
                cleaned[name] = tuple(cleaned[name])
        return cls(**cleaned)

    def meta(self) -> dict[str, float | int]:
        return {
            "epsilon": self.epsilon,
            "temperature": self.temperature,
            "gamma": self.gamma,
            "squeeze_r": self.squeeze_r,
            "t_max": self.t_max,
            "t_steps": self.t_steps,
        }


@dataclass(frozen=True)
class NegativityCurve:
    """Sampled negativity curve with the configuration that produced it."""

    times: np.ndarray
    nu_min: np.ndarray
    log_negativity: np.ndarray
    meta: dict

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or len(t) != len(self.nu_min) or len(t) != len(
            self.log_negativity
        ):
            raise ContractViolation("curve arrays must be one-dimensional and aligned")
        if not np.all(np.diff(t) > 0):
            raise ContractViolation("curve times must be strictly increasing")

    @property
    def max_log_negativity(self) -> float:
        return float(self.log_negativity.max())

    def lifetime(self, threshold: float = LIFETIME_THRESHOLD) -> float:
        """Largest sampled time with E above threshold; 0.0 if none."""
        alive = np.nonzero(self.log_negativity > threshold)[0]
        if len(alive) == 0:
            return 0.0
        return float(self.times[alive[-1]])


def run_curve(config: ExperimentConfig) -> NegativityCurve:
    """Propagate the squeezed thermal state and record negativity over time."""
    params = ModelParams(config.epsilon, config.temperature, config.gamma)
    gen = drift_matrix(params)
    start = initial_state(params, config.squeeze_r)
    times = np.linspace(0.0, config.t_max, config.t_steps)
    nu = np.empty(len(times))
    ln_e = np.empty(len(times))
    for k, t in enumerate(times):
        result = negativity(propagate(start, gen, t))
        nu[k] = result.nu_min
        ln_e[k] = result.log_negativity
    return NegativityCurve(times=times, nu_min=nu, log_negativity=ln_e, meta=config.meta())


@dataclass(frozen=True)
class SweepResult:
    """Curves and (value, max E, lifetime) summary rows for one swept field."""

    parameter: str
    values: tuple[float, ...]
    curves: tuple[NegativityCurve, ...]
    summary: tuple[tuple[float, float, float], ...]
    meta: dict


def _sweep(
    config: ExperimentConfig,
    parameter: str,
    values: Sequence[float],
    workers: int,
) -> SweepResult:
    workers = max(1, int(workers))

    def one(value: float) -> NegativityCurve:
        return run_curve(replace(config, **{parameter: value}))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            curves = tuple(pool.map(one, values))
    else:
        curves = tuple(one(v) for v in values)
    summary = tuple(
        (float(v), c.max_log_negativity, c.lifetime())
        for v, c in zip(values, curves)
    )
    meta = config.meta()
    meta.pop(parameter, None)
    meta["swept"] = parameter
    return SweepResult(
        parameter=parameter,
        values=tuple(float(v) for v in values),
        curves=curves,
        summary=summary,
        meta=meta,
    )


def sweep_gamma(config: ExperimentConfig, workers: int = 1) -> SweepResult:
    """One curve per coupling in gamma_list, at the configured temperature."""
    return _sweep(config, "gamma", config.gamma_list, workers)


def sweep_temperature(config: ExperimentConfig, workers: int = 1) -> SweepResult:
    """One curve per temperature in temperature_list, at the configured gamma."""
    return _sweep(config, "temperature", config.temperature_list, workers)


def _header_lines(title: str, meta: dict) -> list[str]:
    lines = [f"# {title}"]
    for key, value in meta.items():
        if isinstance(value, str):
            lines.append(f"# {key} = {value}")
        else:
            lines.append(f"# {key} = {format_float(value)}")
    return lines


def curve_csv_text(curve: NegativityCurve) -> str:
    lines = _header_lines("negativity curve", curve.meta)
    lines.append("t,nu_min,E")
    for t, nu, e in zip(curve.times, curve.nu_min, curve.log_negativity):
        lines.append(f"{format_float(t)},{format_float(nu)},{format_float(e)}")
    return "\n".join(lines) + "\n"


def summary_csv_text(sweep: SweepResult) -> str:
    lines = _header_lines("sweep summary", sweep.meta)
    lines.append(f"{sweep.parameter},max_E,lifetime")
    for value, max_e, life in sweep.summary:
        lines.append(
            f"{format_float(value)},{format_float(max_e)},{format_float(life)}"
        )
    return "\n".join(lines) + "\n"


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="") as handle:
        handle.write(text)
