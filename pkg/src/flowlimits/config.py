"""Scenario configuration: INI-style files, strict validation, overrides.

One scenario per file. Sections and keys are fixed per scenario; unknown
names are rejected with the offending ``section.key`` so that typos never
silently fall back to defaults. Seeds for random-matrix scenarios must be
explicit (reproducibility policy).
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "ConfigError",
    "TimeGrid",
    "QubitBlock",
    "GoeBlock",
    "ResponseBlock",
    "QfiBlock",
    "CustomBlock",
    "ScenarioConfig",
    "SCENARIOS",
    "load_config",
    "apply_overrides",
    "describe_defaults",
]

SCENARIOS = (
    "qubit_autocorr",
    "goe_autocorr",
    "goe_fidelity",
    "response_qubit",
    "qfi_sweep",
    "custom_matrix",
)


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass(frozen=True)
class TimeGrid:
    t_min: float
    t_max: float
    n_points: int

    def __post_init__(self) -> None:
        if self.t_min < 0:
            raise ConfigError(f"time.t_min must be >= 0, got {self.t_min!r}")
        if not self.t_max > self.t_min:
            raise ConfigError(
                f"time.t_max must exceed time.t_min, got {self.t_max!r} <= {self.t_min!r}"
            )
        if self.n_points < 2:
            raise ConfigError(f"time.n_points must be >= 2, got {self.n_points!r}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_points)


@dataclass(frozen=True)
class QubitBlock:
    a: float
    b: float
    c: float
    beta: float
    k: float = 0.0


@dataclass(frozen=True)
class GoeBlock:
    dim: int
    sigma: float
    seed: int
    beta: float
    seed2: int | None = None


@dataclass(frozen=True)
class ResponseBlock:
    variant: str = "derived"


@dataclass(frozen=True)
class QfiBlock:
    betas: tuple[float, ...]


@dataclass(frozen=True)
class CustomBlock:
    h_file: str
    o_file: str
    beta: float


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    output_dir: str
    time: TimeGrid | None = None
    qubit: QubitBlock | None = None
    goe: GoeBlock | None = None
    response: ResponseBlock | None = None
    qfi: QfiBlock | None = None
    custom: CustomBlock | None = None
    source: str = "<memory>"


# section -> key -> (required, parser); "time" handled separately
_FLOAT_KEYS = {
    "qubit": {"a": True, "b": True, "c": True, "beta": True, "k": False},
    "goe": {"sigma": True, "beta": True},
    "custom": {"beta": True},
}

_SCENARIO_SECTIONS = {
    "qubit_autocorr": {"scenario", "time", "qubit", "output"},
    "goe_autocorr": {"scenario", "time", "goe", "output"},
    "goe_fidelity": {"scenario", "time", "goe", "output"},
    "response_qubit": {"scenario", "time", "qubit", "response", "output"},
    "qfi_sweep": {"scenario", "qubit", "qfi", "output", "time"},
    "custom_matrix": {"scenario", "time", "custom", "output"},
}

_SECTION_KEYS = {
    "scenario": {"name"},
    "time": {"t_min", "t_max", "n_points"},
    "qubit": {"a", "b", "c", "k", "beta"},
    "goe": {"dim", "sigma", "seed", "seed2", "beta"},
    "response": {"variant"},
    "qfi": {"betas"},
    "custom": {"h_file", "o_file", "beta"},
    "output": {"dir"},
}


def _get_float(parser: configparser.ConfigParser, section: str, key: str) -> float:
    raw = parser.get(section, key)
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key} must be a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{section}.{key} must be finite, got {raw!r}")
    return value


def _get_int(parser: configparser.ConfigParser, section: str, key: str) -> int:
    raw = parser.get(section, key)
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key} must be an integer, got {raw!r}") from None


def _require(parser: configparser.ConfigParser, section: str, key: str, why: str = "") -> None:
    if not parser.has_option(section, key):
        hint = f" ({why})" if why else ""
        raise ConfigError(f"missing required field {section}.{key}{hint}")


def apply_overrides(parser: configparser.ConfigParser, overrides: tuple[str, ...]) -> None:
    """Apply ``section.key=value`` override strings onto a parsed config."""
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form section.key=value")
        target, value = item.split("=", 1)
        if "." not in target:
            raise ConfigError(f"override {item!r} is not of the form section.key=value")
        section, key = target.strip().split(".", 1)
        key = key.strip()
        if section not in _SECTION_KEYS or key not in _SECTION_KEYS[section]:
            raise ConfigError(f"override names unknown field {section}.{key}")
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, key, value.strip())


def _check_unknown(parser: configparser.ConfigParser, scenario: str) -> None:
    allowed = _SCENARIO_SECTIONS[scenario]
    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ConfigError(f"unknown section [{section}]")
        if section not in allowed:
            raise ConfigError(f"section [{section}] does not belong to scenario {scenario!r}")
        for key in parser.options(section):
            if key not in _SECTION_KEYS[section]:
                raise ConfigError(f"unknown field {section}.{key}")


def _parse_time(parser: configparser.ConfigParser) -> TimeGrid:
    for key in ("t_min", "t_max", "n_points"):
        _require(parser, "time", key)
    return TimeGrid(
        t_min=_get_float(parser, "time", "t_min"),
        t_max=_get_float(parser, "time", "t_max"),
        n_points=_get_int(parser, "time", "n_points"),
    )


def _parse_qubit(parser: configparser.ConfigParser, need_beta: bool = True) -> QubitBlock:
    for key in ("a", "b", "c"):
        _require(parser, "qubit", key)
    if need_beta:
        _require(parser, "qubit", "beta")
    beta = _get_float(parser, "qubit", "beta") if parser.has_option("qubit", "beta") else 0.0
    if beta < 0:
        raise ConfigError(f"qubit.beta must be >= 0, got {beta!r}")
    block = QubitBlock(
        a=_get_float(parser, "qubit", "a"),
        b=_get_float(parser, "qubit", "b"),
        c=_get_float(parser, "qubit", "c"),
        k=_get_float(parser, "qubit", "k") if parser.has_option("qubit", "k") else 0.0,
        beta=beta,
    )
    if block.a == 0.0 and block.b == 0.0 and block.c == 0.0:
        raise ConfigError("qubit.a, qubit.b, qubit.c cannot all vanish")
    return block


def _parse_goe(parser: configparser.ConfigParser, need_seed2: bool) -> GoeBlock:
    for key in ("dim", "sigma", "beta"):
        _require(parser, "goe", key)
    _require(parser, "goe", "seed", "random-matrix scenarios need an explicit seed")
    if need_seed2:
        _require(parser, "goe", "seed2", "this scenario draws two matrices")
    dim = _get_int(parser, "goe", "dim")
    sigma = _get_float(parser, "goe", "sigma")
    beta = _get_float(parser, "goe", "beta")
    if dim < 2:
        raise ConfigError(f"goe.dim must be >= 2, got {dim!r}")
    if sigma <= 0:
        raise ConfigError(f"goe.sigma must be positive, got {sigma!r}")
    if beta < 0:
        raise ConfigError(f"goe.beta must be >= 0, got {beta!r}")
    return GoeBlock(
        dim=dim,
        sigma=sigma,
        seed=_get_int(parser, "goe", "seed"),
        seed2=_get_int(parser, "goe", "seed2") if parser.has_option("goe", "seed2") else None,
        beta=beta,
    )


def _parse_qfi(parser: configparser.ConfigParser) -> QfiBlock:
    _require(parser, "qfi", "betas")
    raw = parser.get("qfi", "betas")
    betas = []
    for piece in raw.replace(";", ",").split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            b = float(piece)
        except ValueError:
            raise ConfigError(f"qfi.betas entry {piece!r} is not a number") from None
        if b <= 0:
            raise ConfigError(f"qfi.betas entries must be positive, got {b!r}")
        betas.append(b)
    if not betas:
        raise ConfigError("qfi.betas must list at least one inverse temperature")
    return QfiBlock(betas=tuple(betas))


def load_config(path: str | Path, overrides: tuple[str, ...] = ()) -> ScenarioConfig:
    """Parse and validate a scenario file, applying overrides first."""
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh, source=str(path))
    except FileNotFoundError:
        raise
    except (configparser.Error, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    apply_overrides(parser, tuple(overrides))

    if not parser.has_section("scenario"):
        raise ConfigError("missing [scenario] section")
    _require(parser, "scenario", "name")
    scenario = parser.get("scenario", "name").strip()
    if scenario not in SCENARIOS:
        raise ConfigError(
            f"scenario.name {scenario!r} is not one of {', '.join(SCENARIOS)}"
        )
    _check_unknown(parser, scenario)

    if not parser.has_section("output") or not parser.has_option("output", "dir"):
        raise ConfigError("missing required field output.dir")
    output_dir = parser.get("output", "dir").strip()
    if not output_dir:
        raise ConfigError("output.dir must not be empty")

    time = None
    if parser.has_section("time"):
        time = _parse_time(parser)
    if scenario != "qfi_sweep" and time is None:
        raise ConfigError(f"scenario {scenario!r} needs a [time] section")

    kwargs: dict = {}
    if scenario in ("qubit_autocorr", "response_qubit"):
        kwargs["qubit"] = _parse_qubit(parser)
    if scenario == "qfi_sweep":
        kwargs["qubit"] = (
            _parse_qubit(parser, need_beta=False)
            if parser.has_section("qubit")
            else QubitBlock(a=0.0, b=0.0, c=1.0, beta=0.0)
        )
        kwargs["qfi"] = _parse_qfi(parser)
    if scenario in ("goe_autocorr", "goe_fidelity"):
        kwargs["goe"] = _parse_goe(parser, need_seed2=(scenario == "goe_autocorr"))
    if scenario == "response_qubit":
        variant = (
            parser.get("response", "variant").strip()
            if parser.has_section("response") and parser.has_option("response", "variant")
            else "derived"
        )
        if variant not in ("derived", "as_printed"):
            raise ConfigError(
                f"response.variant must be 'derived' or 'as_printed', got {variant!r}"
            )
        kwargs["response"] = ResponseBlock(variant=variant)
    if scenario == "custom_matrix":
        for key in ("h_file", "o_file", "beta"):
            _require(parser, "custom", key)
        beta = _get_float(parser, "custom", "beta")
        if beta < 0:
            raise ConfigError(f"custom.beta must be >= 0, got {beta!r}")
        kwargs["custom"] = CustomBlock(
            h_file=parser.get("custom", "h_file").strip(),
            o_file=parser.get("custom", "o_file").strip(),
            beta=beta,
        )

    return ScenarioConfig(
        scenario=scenario, output_dir=output_dir, time=time, source=str(path), **kwargs
    )


def describe_defaults(cfg: ScenarioConfig) -> list[str]:
    """Human-readable echo of every resolved field, defaults included."""
    lines = [f"scenario.name = {cfg.scenario}", f"output.dir = {cfg.output_dir}"]
    if cfg.time is not None:
        lines += [
            f"time.t_min = {cfg.time.t_min!r}",
            f"time.t_max = {cfg.time.t_max!r}",
            f"time.n_points = {cfg.time.n_points}",
        ]
    if cfg.qubit is not None:
        q = cfg.qubit
        lines += [
            f"qubit.a = {q.a!r}",
            f"qubit.b = {q.b!r}",
            f"qubit.c = {q.c!r}",
            f"qubit.k = {q.k!r}",
            f"qubit.beta = {q.beta!r}",
        ]
    if cfg.goe is not None:
        g = cfg.goe
        lines += [
            f"goe.dim = {g.dim}",
            f"goe.sigma = {g.sigma!r}",
            f"goe.seed = {g.seed}",
            f"goe.beta = {g.beta!r}",
        ]
        if g.seed2 is not None:
            lines.append(f"goe.seed2 = {g.seed2}")
    if cfg.response is not None:
        lines.append(f"response.variant = {cfg.response.variant}")
    if cfg.qfi is not None:
        lines.append(f"qfi.betas = {', '.join(repr(b) for b in cfg.qfi.betas)}")
    if cfg.custom is not None:
        lines += [
            f"custom.h_file = {cfg.custom.h_file}",
            f"custom.o_file = {cfg.custom.o_file}",
            f"custom.beta = {cfg.custom.beta!r}",
        ]
    return lines
