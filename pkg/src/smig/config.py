"""Flat key-value run configuration with Table-1 small-anomaly defaults.

The on-disk format is dotted keys, one per line, '#' comments:

    medium.frequency_hz = 1.0e9
    anomaly.1.center_x_m = 0.01

Unknown keys are rejected, every key has a default, and
parse(serialize(c)) == c for every valid configuration.
"""

import hashlib
import math
from dataclasses import dataclass, replace

from . import em, forward, imaging
from .errors import ConfigError


@dataclass(frozen=True)
class MediumConfig:
    permittivity_rel: float = 20.0
    conductivity_s_per_m: float = 0.2
    frequency_hz: float = 1.0e9


@dataclass(frozen=True)
class ArrayConfig:
    count: int = 16
    radius_m: float = 0.09


@dataclass(frozen=True)
class AnomalyConfig:
    center_x_m: float = 0.01
    center_y_m: float = 0.03
    radius_m: float = 0.010
    permittivity_rel: float = 55.0
    conductivity_s_per_m: float = 1.2


@dataclass(frozen=True)
class GridConfig:
    x_min_m: float = -0.1
    x_max_m: float = 0.1
    y_min_m: float = -0.1
    y_max_m: float = 0.1
    step_m: float = 0.001


@dataclass(frozen=True)
class ImagingConfig:
    matrix_kind: str = "zero_diagonal"
    rank_mode: str = "relative_threshold"
    rank_threshold: float = 0.02
    rank_fixed_m: int | None = None
    contrast_denominator: str = "sigma_b"
    lossless_k: bool = False


@dataclass(frozen=True)
class SynthesisConfig:
    generator: str = "born"
    contamination_amplitude_rel: float = 5.0
    contamination_mode: str = "random"
    contamination_seed: int = 0
    noise_snr_db: float = math.inf
    noise_seed: int = 0


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "."
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    medium: MediumConfig = MediumConfig()
    array: ArrayConfig = ArrayConfig()
    anomalies: tuple = (AnomalyConfig(),)
    grid: GridConfig = GridConfig()
    imaging: ImagingConfig = ImagingConfig()
    synthesis: SynthesisConfig = SynthesisConfig()
    output: OutputConfig = OutputConfig()


def _parse_bool(text):
    if text in ("true", "True"):
        return True
    if text in ("false", "False"):
        return False
    raise ValueError("expected true/false, got %r" % (text,))


def _parse_opt_int(text):
    return None if text in ("none", "None", "") else int(text)


# key -> (section attr, field name, parse, serialize)
_SCHEMA = {}


def _register(section, prefix, fields):
    for name, (parse, fmt) in fields.items():
        _SCHEMA["%s.%s" % (prefix, name)] = (section, name, parse, fmt)


_FLOAT = (float, repr)
_INT = (int, repr)
_BOOL = (_parse_bool, lambda v: "true" if v else "false")
_STR = (str, str)
_OPT_INT = (_parse_opt_int, lambda v: "none" if v is None else repr(v))

_register("medium", "medium", {
    "permittivity_rel": _FLOAT,
    "conductivity_s_per_m": _FLOAT,
    "frequency_hz": _FLOAT,
})
_register("array", "array", {"count": _INT, "radius_m": _FLOAT})
_register("grid", "grid", {
    "x_min_m": _FLOAT, "x_max_m": _FLOAT, "y_min_m": _FLOAT, "y_max_m": _FLOAT,
    "step_m": _FLOAT,
})
_register("imaging", "imaging", {
    "matrix_kind": _STR, "rank_mode": _STR, "rank_threshold": _FLOAT,
    "rank_fixed_m": _OPT_INT, "contrast_denominator": _STR, "lossless_k": _BOOL,
})
_register("synthesis", "synthesis", {
    "generator": _STR, "contamination_amplitude_rel": _FLOAT,
    "contamination_mode": _STR, "contamination_seed": _INT,
    "noise_snr_db": _FLOAT, "noise_seed": _INT,
})
_register("output", "output", {"directory": _STR, "format": _STR})

_ANOMALY_FIELDS = {
    "center_x_m": _FLOAT, "center_y_m": _FLOAT, "radius_m": _FLOAT,
    "permittivity_rel": _FLOAT, "conductivity_s_per_m": _FLOAT,
}

_ENUM_KEYS = {
    "imaging.matrix_kind": ("full", "zero_diagonal"),
    "imaging.rank_mode": ("relative_threshold", "fixed"),
    "imaging.contrast_denominator": ("sigma_b", "eps_b"),
    "synthesis.generator": ("born", "exact_disc"),
    "synthesis.contamination_mode": ("constant", "random"),
    "output.format": ("csv", "pgm", "both"),
}


def _split_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("line %d: expected key = value, got %r" % (lineno, raw.strip()))
        key, value = line.split("=", 1)
        yield key.strip(), value.strip()


def _validate(cfg):
    if cfg.medium.permittivity_rel <= 0 or cfg.medium.frequency_hz <= 0:
        raise ConfigError("medium: permittivity and frequency must be positive")
    if cfg.medium.conductivity_s_per_m < 0:
        raise ConfigError("medium.conductivity_s_per_m must be >= 0")
    if cfg.array.count < 2:
        raise ConfigError("array.count must be >= 2")
    if cfg.array.radius_m <= 0:
        raise ConfigError("array.radius_m must be > 0")
    if not cfg.anomalies:
        raise ConfigError("at least one anomaly block is required")
    for i, a in enumerate(cfg.anomalies, start=1):
        if a.radius_m <= 0:
            raise ConfigError("anomaly.%d.radius_m must be > 0" % i)
        if a.permittivity_rel <= 0:
            raise ConfigError("anomaly.%d.permittivity_rel must be > 0" % i)
        if a.conductivity_s_per_m < 0:
            raise ConfigError("anomaly.%d.conductivity_s_per_m must be >= 0" % i)
    if cfg.grid.step_m <= 0:
        raise ConfigError("grid.step_m must be > 0")
    if cfg.grid.x_min_m >= cfg.grid.x_max_m or cfg.grid.y_min_m >= cfg.grid.y_max_m:
        raise ConfigError("grid bounds must satisfy min < max")
    if not 0.0 < cfg.imaging.rank_threshold < 1.0:
        raise ConfigError("imaging.rank_threshold must lie in (0, 1)")
    if cfg.imaging.rank_mode == "fixed" and (cfg.imaging.rank_fixed_m or 0) < 1:
        raise ConfigError("imaging.rank_fixed_m must be >= 1 in fixed mode")
    if cfg.synthesis.contamination_amplitude_rel < 0:
        raise ConfigError("synthesis.contamination_amplitude_rel must be >= 0")
    if math.isnan(cfg.synthesis.noise_snr_db):
        raise ConfigError("synthesis.noise_snr_db must be a number or inf")
    for key, allowed in _ENUM_KEYS.items():
        section, name, _, _ = _SCHEMA[key]
        value = getattr(getattr(cfg, section), name)
        if value not in allowed:
            raise ConfigError("%s must be one of %s, got %r" % (key, "/".join(allowed), value))
    return cfg


def _apply_pairs(cfg, pairs):
    sections = {name: dict(vars(getattr(cfg, name)))
                for name in ("medium", "array", "grid", "imaging", "synthesis", "output")}
    anomalies = {i + 1: dict(vars(a)) for i, a in enumerate(cfg.anomalies)}
    seen = set()
    for key, text in pairs:
        if key in seen:
            raise ConfigError("duplicate key %s" % key)
        seen.add(key)
        if key.startswith("anomaly."):
            parts = key.split(".")
            if len(parts) != 3 or parts[2] not in _ANOMALY_FIELDS:
                raise ConfigError("unknown key %s" % key)
            try:
                index = int(parts[1])
            except ValueError:
                raise ConfigError("unknown key %s" % key) from None
            if index < 1:
                raise ConfigError("anomaly indices start at 1, got %s" % key)
            parse, _ = _ANOMALY_FIELDS[parts[2]]
            block = anomalies.setdefault(index, dict(vars(AnomalyConfig())))
            try:
                block[parts[2]] = parse(text)
            except ValueError as exc:
                raise ConfigError("%s: %s" % (key, exc)) from None
            continue
        if key not in _SCHEMA:
            raise ConfigError("unknown key %s" % key)
        section, name, parse, _ = _SCHEMA[key]
        try:
            sections[section][name] = parse(text)
        except ValueError as exc:
            raise ConfigError("%s: %s" % (key, exc)) from None
    indices = sorted(anomalies)
    if indices != list(range(1, len(indices) + 1)):
        raise ConfigError("anomaly indices must be contiguous from 1, got %s" % indices)
    return _validate(RunConfig(
        medium=MediumConfig(**sections["medium"]),
        array=ArrayConfig(**sections["array"]),
        anomalies=tuple(AnomalyConfig(**anomalies[i]) for i in indices),
        grid=GridConfig(**sections["grid"]),
        imaging=ImagingConfig(**sections["imaging"]),
        synthesis=SynthesisConfig(**sections["synthesis"]),
        output=OutputConfig(**sections["output"]),
    ))


def parse_config(text):
    """Parse a key-value document; unset keys fall back to defaults."""
    return _apply_pairs(RunConfig(), _split_lines(text))


def apply_overrides(cfg, overrides):
    """Apply repeatable key=value override strings on top of a config."""
    pairs = []
    for item in overrides:
        if "=" not in item:
            raise ConfigError("override must be key=value, got %r" % (item,))
        key, value = item.split("=", 1)
        pairs.append((key.strip(), value.strip()))
    return _apply_pairs(cfg, pairs)


def serialize_config(cfg):
    """Canonical full-precision text form; inverse of parse_config."""
    lines = []
    for key in sorted(_SCHEMA):
        section, name, _, fmt = _SCHEMA[key]
        lines.append("%s = %s" % (key, fmt(getattr(getattr(cfg, section), name))))
    for i, a in enumerate(cfg.anomalies, start=1):
        for name in sorted(_ANOMALY_FIELDS):
            _, fmt = _ANOMALY_FIELDS[name]
            lines.append("anomaly.%d.%s = %s" % (i, name, fmt(getattr(a, name))))
    return "\n".join(lines) + "\n"


def config_hash(cfg):
    """Stable digest of the canonical serialization, for output sidecars."""
    return hashlib.sha256(serialize_config(cfg).encode()).hexdigest()


def build_medium(cfg):
    return em.MediumParams.from_relative(
        cfg.medium.permittivity_rel, cfg.medium.conductivity_s_per_m, cfg.medium.frequency_hz
    )


def build_array(cfg):
    return em.antenna_array(cfg.array.count, cfg.array.radius_m)


def build_anomalies(cfg):
    return [
        forward.Anomaly.from_relative(
            (a.center_x_m, a.center_y_m), a.radius_m, a.permittivity_rel, a.conductivity_s_per_m
        )
        for a in cfg.anomalies
    ]


def build_grid(cfg):
    g = cfg.grid
    return imaging.ImagingGrid(g.x_min_m, g.x_max_m, g.y_min_m, g.y_max_m, g.step_m)


def build_rank_policy(cfg):
    return imaging.RankPolicy(
        mode=cfg.imaging.rank_mode,
        threshold=cfg.imaging.rank_threshold,
        fixed_m=cfg.imaging.rank_fixed_m,
    )


def build_imaging_wavenumber(cfg):
    medium = build_medium(cfg)
    if cfg.imaging.lossless_k:
        return em.lossless_wavenumber(medium)
    return em.wavenumber(medium)


def with_seed(cfg, seed):
    """Retarget both random streams at one master seed (CLI --seed)."""
    return replace(cfg, synthesis=replace(
        cfg.synthesis, contamination_seed=seed, noise_seed=seed
    ))
