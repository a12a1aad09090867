"""Run configuration files (JSON or YAML) for the ``run`` subcommand."""

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

from .data import PRESETS, PreprocessSpec
from .engine import QgnsaConfig
from .errors import QgnsaError
from .evaluation import ALGORITHMS, config_hash
from .evoseed import GaConfig

ENGINE_CONFIGS = {"quantum": QgnsaConfig, "classical": GaConfig}


class ConfigError(QgnsaError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def _mapping(value, path):
    if not isinstance(value, dict):
        raise ConfigError(path, "expected a mapping")
    return value


def _reject_unknown(d, allowed, path):
    extra = sorted(set(d) - set(allowed))
    if extra:
        raise ConfigError(f"{path}.{extra[0]}", "unknown field")


def _typed(value, kind, path):
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ConfigError(path, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


@dataclass(frozen=True)
class SyntheticSource:
    m: int = 12
    n_self: int = 2000
    n_nonself: int = 500
    separation: float = 0.6
    seed: int | None = None

    def to_dict(self):
        return {"m": self.m, "n_self": self.n_self, "n_nonself": self.n_nonself,
                "separation": self.separation, "seed": self.seed}


@dataclass(frozen=True)
class CsvSource:
    path: str
    spec: PreprocessSpec
    preset: str | None = None

    def to_dict(self):
        if self.preset is not None:
            return {"path": self.path, "preset": self.preset}
        return {"path": self.path, "spec": self.spec.to_dict()}


@dataclass(frozen=True)
class RunBlock:
    name: str
    algorithm: str
    config: QgnsaConfig | GaConfig

    def to_dict(self):
        engine = self.config.to_dict()
        engine.pop("rng_seed")
        return {"name": self.name, "algorithm": self.algorithm, "config": engine}


@dataclass(frozen=True)
class Protocol:
    folds: int = 5
    repetitions: int = 5
    holdout_nonself: bool = True


@dataclass(frozen=True)
class RunConfig:
    dataset: SyntheticSource | CsvSource
    runs: tuple
    protocol: Protocol = field(default_factory=Protocol)
    seed: int = 0
    output_dir: str = "out"

    def to_dict(self):
        key = "synthetic" if isinstance(self.dataset, SyntheticSource) else "csv"
        return {
            "dataset": {key: self.dataset.to_dict()},
            "runs": [r.to_dict() for r in self.runs],
            "protocol": {f.name: getattr(self.protocol, f.name) for f in fields(Protocol)},
            "seed": self.seed,
            "output_dir": self.output_dir,
        }

    @property
    def hash(self):
        d = self.to_dict()
        d.pop("output_dir")
        return config_hash(d)

    @classmethod
    def from_dict(cls, d):
        d = _mapping(d, "config")
        _reject_unknown(d, ("dataset", "runs", "protocol", "seed", "output_dir"), "config")
        if "dataset" not in d:
            raise ConfigError("config.dataset", "missing")
        if "runs" not in d:
            raise ConfigError("config.runs", "missing")
        seed = _typed(d.get("seed", 0), int, "config.seed")
        return cls(
            dataset=_parse_dataset(d["dataset"]),
            runs=_parse_runs(d["runs"]),
            protocol=_parse_protocol(d.get("protocol", {})),
            seed=seed,
            output_dir=_typed(d.get("output_dir", "out"), str, "config.output_dir"),
        )


def _parse_dataset(d):
    d = _mapping(d, "config.dataset")
    sources = [k for k in ("synthetic", "csv") if k in d]
    _reject_unknown(d, ("synthetic", "csv"), "config.dataset")
    if len(sources) != 1:
        raise ConfigError("config.dataset", "exactly one of 'synthetic' or 'csv' is required")
    path = f"config.dataset.{sources[0]}"
    body = _mapping(d[sources[0]], path)
    if sources[0] == "synthetic":
        kinds = {"m": int, "n_self": int, "n_nonself": int, "separation": float, "seed": int}
        _reject_unknown(body, kinds, path)
        values = {k: _typed(v, kinds[k], f"{path}.{k}") for k, v in body.items()
                  if not (k == "seed" and v is None)}
        return SyntheticSource(**values)
    _reject_unknown(body, ("path", "preset", "spec"), path)
    if "path" not in body:
        raise ConfigError(f"{path}.path", "missing")
    if ("preset" in body) == ("spec" in body):
        raise ConfigError(path, "exactly one of 'preset' or 'spec' is required")
    if "preset" in body:
        preset = body["preset"]
        if preset not in PRESETS:
            raise ConfigError(f"{path}.preset", f"unknown preset {preset!r}")
        return CsvSource(_typed(body["path"], str, f"{path}.path"), PRESETS[preset], preset)
    try:
        spec = PreprocessSpec.from_dict(_mapping(body["spec"], f"{path}.spec"))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}.spec", str(exc)) from None
    return CsvSource(_typed(body["path"], str, f"{path}.path"), spec)


def _parse_runs(runs):
    if not isinstance(runs, list) or not runs:
        raise ConfigError("config.runs", "expected a non-empty list")
    blocks, names = [], set()
    for i, block in enumerate(runs):
        path = f"config.runs[{i}]"
        block = _mapping(block, path)
        _reject_unknown(block, ("name", "algorithm", "config"), path)
        algorithm = block.get("algorithm")
        if algorithm not in ALGORITHMS:
            raise ConfigError(f"{path}.algorithm", f"expected one of {sorted(ALGORITHMS)}")
        name = _typed(block.get("name", algorithm), str, f"{path}.name")
        if name in names or not name or "/" in name:
            raise ConfigError(f"{path}.name", f"run name {name!r} is empty, duplicated or contains '/'")
        names.add(name)
        cls = ENGINE_CONFIGS[algorithm]
        body = _mapping(block.get("config", {}), f"{path}.config")
        kinds = {f.name: f.type for f in fields(cls) if f.name != "rng_seed"}
        _reject_unknown(body, kinds, f"{path}.config")
        values = {}
        for k, v in body.items():
            values[k] = _typed(v, kinds[k], f"{path}.config.{k}")
        try:
            blocks.append(RunBlock(name, algorithm, cls(**values)))
        except ValueError as exc:
            raise ConfigError(f"{path}.config", str(exc)) from None
    return tuple(blocks)


def _parse_protocol(d):
    d = _mapping(d, "config.protocol")
    kinds = {"folds": int, "repetitions": int, "holdout_nonself": bool}
    _reject_unknown(d, kinds, "config.protocol")
    values = {k: _typed(v, kinds[k], f"config.protocol.{k}") for k, v in d.items()}
    for k in ("folds", "repetitions"):
        if values.get(k, 1) < 1:
            raise ConfigError(f"config.protocol.{k}", "must be positive")
    return Protocol(**values)


def load_config(path):
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix in (".yaml", ".yml"):
            raw = yaml.safe_load(text)
        else:
            raw = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError("config", f"cannot parse {path}: {exc}") from None
    return RunConfig.from_dict(raw)


def dump_config(config):
    return json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n"
