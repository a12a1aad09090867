"""
Tabular data handling: CSV ingestion, the sort/drop/scale/one-hot/split
preprocessing recipe, a synthetic stand-in dataset and seeded K-fold splits.
"""

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    DataError,
    EmptyFileError,
    InvalidInputError,
    MalformedRowError,
    MissingFileError,
    NonNumericCellError,
    UnknownColumnError,
)

__all__ = [
    "Table",
    "PreprocessSpec",
    "LabeledDataset",
    "PRESETS",
    "load_csv",
    "preprocess",
    "generate_synthetic",
    "kfold_indices",
    "kfold_split",
    "write_dataset",
    "read_dataset",
]

log = logging.getLogger(__name__)


@dataclass
class Table:
    """Raw CSV contents: string cells, header order and row order preserved."""

    columns: list[str]
    data: dict[str, list[str]]

    def __len__(self):
        return len(self.data[self.columns[0]]) if self.columns else 0

    def __getitem__(self, name):
        try:
            return self.data[name]
        except KeyError:
            raise UnknownColumnError(name) from None

    @classmethod
    def from_rows(cls, columns, rows):
        columns = list(columns)
        return cls(columns, {c: [r[i] for r in rows] for i, c in enumerate(columns)})


def load_csv(path):
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyFileError(f"{path} is empty") from None
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(header):
                raise MalformedRowError(reader.line_num, len(header), len(row))
            rows.append(row)
    return Table.from_rows(header, rows)


@dataclass(frozen=True)
class PreprocessSpec:
    label_column: str
    nonself_labels: frozenset
    sort_column: str | None = None
    drop_columns: tuple = ()
    normalize_columns: tuple = ()
    onehot_columns: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "nonself_labels", frozenset(self.nonself_labels))
        for name in ("drop_columns", "normalize_columns", "onehot_columns"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        groups = [self.drop_columns, self.normalize_columns, self.onehot_columns]
        seen = set()
        for group in groups:
            overlap = seen.intersection(group)
            if overlap or len(set(group)) != len(group):
                raise InvalidInputError(f"column listed twice in preprocess spec: {sorted(overlap) or group}")
            seen.update(group)
        if self.label_column in seen:
            raise InvalidInputError("label column cannot be dropped, normalized or one-hot encoded")
        if self.sort_column is not None and self.sort_column in seen | {self.label_column}:
            raise InvalidInputError("sort column is dropped after sorting and cannot be listed elsewhere")

    def to_dict(self):
        return {
            "label_column": self.label_column,
            "nonself_labels": sorted(self.nonself_labels),
            "sort_column": self.sort_column,
            "drop_columns": list(self.drop_columns),
            "normalize_columns": list(self.normalize_columns),
            "onehot_columns": list(self.onehot_columns),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


PRESETS = {
    "metaverse": PreprocessSpec(
        label_column="anomaly",
        nonself_labels={"high_risk"},
        sort_column="timestamp",
        drop_columns=("ip_prefix", "sending_address", "receiving_address", "risk_score", "transaction_type"),
        normalize_columns=("amount", "login_frequency", "session_duration", "hour_of_day"),
        onehot_columns=("location_region", "purchase_pattern", "age_group"),
    ),
}


@dataclass
class LabeledDataset:
    feature_names: list[str]
    self_samples: np.ndarray
    nonself_samples: np.ndarray
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        m = len(self.feature_names)
        self.self_samples = np.asarray(self.self_samples, dtype=float).reshape(-1, m)
        self.nonself_samples = np.asarray(self.nonself_samples, dtype=float).reshape(-1, m)

    @property
    def m(self):
        return len(self.feature_names)


def _parse_numbers(column, cells):
    out = np.empty(len(cells))
    for i, cell in enumerate(cells):
        try:
            out[i] = float(cell)
        except ValueError:
            raise NonNumericCellError(column, i, cell) from None
        if not np.isfinite(out[i]):
            raise NonNumericCellError(column, i, cell)
    return out


def _sort_order(cells):
    try:
        keys = [float(c) for c in cells]
    except ValueError:
        keys = cells
    return sorted(range(len(cells)), key=keys.__getitem__)


def min_max(values):
    """Scale to ``[0, 1]``; a constant column maps to all zeros."""
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def preprocess(table, spec):
    """Turn a raw :class:`Table` into a self/non-self split of ``[0, 1]`` features."""
    referenced = [spec.label_column, *spec.drop_columns, *spec.normalize_columns, *spec.onehot_columns]
    if spec.sort_column is not None:
        referenced.append(spec.sort_column)
    for name in referenced:
        if name not in table.data:
            raise UnknownColumnError(name)

    order = list(range(len(table)))
    if spec.sort_column is not None:
        order = _sort_order(table[spec.sort_column])

    skip = set(spec.drop_columns) | {spec.label_column, spec.sort_column}
    names, blocks = [], []
    for col in table.columns:
        if col in skip:
            continue
        cells = [table[col][i] for i in order]
        if col in spec.onehot_columns:
            for cat in sorted(set(cells)):
                names.append(f"{col}={cat}")
                blocks.append(np.array([c == cat for c in cells], dtype=float))
        elif col in spec.normalize_columns:
            names.append(col)
            blocks.append(min_max(_parse_numbers(col, cells)) if cells else np.empty(0))
        else:
            values = _parse_numbers(col, cells)
            if np.any((values < 0) | (values > 1)):
                raise DataError(f"column {col!r} is neither scaled nor encoded and leaves [0, 1]")
            names.append(col)
            blocks.append(values)

    features = np.column_stack(blocks) if blocks else np.empty((len(order), 0))
    labels = [table[spec.label_column][i] for i in order]
    nonself = np.array([lab in spec.nonself_labels for lab in labels], dtype=bool)
    log.info("preprocessed %d rows into %d features", len(order), len(names))
    return LabeledDataset(names, features[~nonself], features[nonself])


def generate_synthetic(m, n_self, n_nonself, separation, rng_seed=0, n_clusters=3, spread=0.05):
    """
    Clustered self data and displaced non-self clusters in ``[0, 1]^m``.

    Self samples come from ``n_clusters`` isotropic Gaussian blobs with centres
    in ``[0.25, 0.75]^m``. Non-self samples come from the same blobs with each
    centre moved ``separation`` along its own random unit direction. Values
    are clipped to the unit cube. ``separation = 0`` gives identical classes.
    """
    for name, value in (("m", m), ("n_self", n_self), ("n_nonself", n_nonself), ("n_clusters", n_clusters)):
        if int(value) != value or value < 1:
            raise InvalidInputError(f"{name} must be a positive integer, got {value!r}")
    if separation < 0:
        raise InvalidInputError(f"separation must be non-negative, got {separation!r}")
    if spread < 0:
        raise InvalidInputError(f"spread must be non-negative, got {spread!r}")

    rng = np.random.default_rng(rng_seed)
    centres = rng.uniform(0.25, 0.75, size=(n_clusters, m))
    directions = rng.normal(size=(n_clusters, m))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    shifted = centres + separation * directions

    def draw(c, count):
        which = rng.integers(n_clusters, size=count)
        return np.clip(c[which] + spread * rng.normal(size=(count, m)), 0.0, 1.0)

    notes = []
    if separation == 0:
        notes.append("separation is 0: self and non-self share one distribution")
    return LabeledDataset(
        [f"x{j}" for j in range(m)],
        draw(centres, int(n_self)),
        draw(shifted, int(n_nonself)),
        notes,
    )


def kfold_indices(n, k, rng_seed=0):
    """Shuffled partition of ``range(n)`` into ``k`` folds; sizes differ by at most one."""
    if int(k) != k or k < 1:
        raise InvalidInputError(f"k must be a positive integer, got {k!r}")
    if k > n:
        raise InvalidInputError(f"cannot split {n} samples into {k} folds")
    perm = np.random.default_rng(rng_seed).permutation(n)
    return np.array_split(perm, k)


def kfold_split(samples, k, rng_seed=0):
    samples = np.asarray(samples)
    return [samples[idx] for idx in kfold_indices(len(samples), k, rng_seed)]


def _write_matrix(path, names, values):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names)
        for row in values:
            writer.writerow([repr(float(v)) for v in row])


def write_dataset(dataset, directory, extra=None):
    """Write ``self.csv``, ``nonself.csv`` and ``manifest.json`` into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    _write_matrix(directory / "self.csv", dataset.feature_names, dataset.self_samples)
    _write_matrix(directory / "nonself.csv", dataset.feature_names, dataset.nonself_samples)
    manifest = {
        "feature_names": list(dataset.feature_names),
        "features": dataset.m,
        "self_rows": int(len(dataset.self_samples)),
        "nonself_rows": int(len(dataset.nonself_samples)),
        "notes": list(dataset.notes),
    }
    manifest.update(extra or {})
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def read_dataset(directory):
    directory = Path(directory)
    manifest_path = directory / "manifest.json"
    if not manifest_path.is_file():
        raise MissingFileError(f"no manifest in {directory}")
    manifest = json.loads(manifest_path.read_text())
    parts = []
    for name in ("self.csv", "nonself.csv"):
        table = load_csv(directory / name)
        if table.columns != manifest["feature_names"]:
            raise DataError(f"{name} header does not match manifest")
        parts.append(np.column_stack([_parse_numbers(c, table[c]) for c in table.columns])
                     if len(table) else np.empty((0, len(table.columns))))
    return LabeledDataset(manifest["feature_names"], parts[0], parts[1], manifest.get("notes", []))
