"""
Euclidean matching between detectors and samples.

A detector matches a sample when their Euclidean distance is at most the
threshold (inclusive). Distances accumulate squared differences feature by
feature in index order, which keeps results bit-identical to a plain Python
``sqrt(sum((a - b)**2 for ...))`` loop.
"""

import numpy as np

from .errors import DimensionError, InvalidInputError

__all__ = [
    "euclidean_distance",
    "pairwise_distances",
    "match_matrix",
    "quantum_fitness",
    "population_fitness",
    "censor_seeds",
    "detection_rate",
]

# Pair entries per block; small enough for the temporaries to stay in cache.
_BLOCK = 1 << 15


def _as_matrix(x, name):
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[None, :] if x.size else x.reshape(0, 0)
    if x.ndim != 2:
        raise DimensionError(f"{name} must be a vector or a 2-D array, got shape {x.shape}")
    return x


def _check_threshold(threshold):
    if not threshold > 0:
        raise InvalidInputError(f"threshold must be positive, got {threshold!r}")


def euclidean_distance(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError(f"cannot compare vectors of shapes {a.shape} and {b.shape}")
    acc = 0.0
    for x, y in zip(a.tolist(), b.tolist()):
        d = x - y
        acc += d * d
    return float(np.sqrt(acc))


def _squared_distances(a, b):
    out = np.zeros((a.shape[0], b.shape[0]))
    for j in range(a.shape[1]):
        d = a[:, j, None] - b[None, :, j]
        out += d * d
    return out


def pairwise_distances(a, b):
    """Distance matrix of shape ``(len(a), len(b))``."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape[0] and b.shape[0] and a.shape[1] != b.shape[1]:
        raise DimensionError(f"feature counts differ: {a.shape[1]} vs {b.shape[1]}")
    return np.sqrt(_squared_distances(a, b))


def _blocks(rows, cols):
    col_step = min(cols, _BLOCK) or 1
    row_step = max(1, _BLOCK // col_step)
    for r in range(0, rows, row_step):
        for c in range(0, cols, col_step):
            yield slice(r, min(r + row_step, rows)), slice(c, min(c + col_step, cols))


def match_matrix(detectors, samples, threshold):
    """Boolean ``(len(detectors), len(samples))`` matrix of matches."""
    _check_threshold(threshold)
    detectors = _as_matrix(detectors, "detectors")
    samples = _as_matrix(samples, "samples")
    out = np.zeros((detectors.shape[0], samples.shape[0]), dtype=bool)
    if out.size == 0:
        return out
    if detectors.shape[1] != samples.shape[1]:
        raise DimensionError(
            f"feature counts differ: {detectors.shape[1]} vs {samples.shape[1]}"
        )
    for rows, cols in _blocks(*out.shape):
        out[rows, cols] = np.sqrt(_squared_distances(detectors[rows], samples[cols])) <= threshold
    return out


def population_fitness(detectors, anomalies, threshold):
    """
    Fitness of each row of ``detectors`` against the anomaly set.

    Fitness is the share of anomalies within ``threshold``; a detector that
    coincides exactly with any anomaly scores 0.
    """
    _check_threshold(threshold)
    detectors = _as_matrix(detectors, "detectors")
    anomalies = _as_matrix(anomalies, "anomalies")
    if anomalies.shape[0] == 0:
        raise InvalidInputError("anomaly set is empty")
    if detectors.shape[1] != anomalies.shape[1]:
        raise DimensionError(
            f"feature counts differ: {detectors.shape[1]} vs {anomalies.shape[1]}"
        )
    counts = np.zeros(detectors.shape[0], dtype=np.int64)
    duplicate = np.zeros(detectors.shape[0], dtype=bool)
    for rows, cols in _blocks(detectors.shape[0], anomalies.shape[0]):
        sq = _squared_distances(detectors[rows], anomalies[cols])
        counts[rows] += np.count_nonzero(np.sqrt(sq) <= threshold, axis=1)
        for i, k in np.argwhere(sq == 0.0):
            # squared distance can underflow to 0 for distinct points
            if np.array_equal(detectors[rows.start + i], anomalies[cols.start + k]):
                duplicate[rows.start + i] = True
    fitness = counts / anomalies.shape[0]
    fitness[duplicate] = 0.0
    return fitness


def quantum_fitness(detector, anomalies, threshold):
    detector = np.asarray(detector, dtype=float)
    if detector.ndim != 1:
        raise DimensionError("detector must be a single vector")
    return float(population_fitness(detector[None, :], anomalies, threshold)[0])


def censor_seeds(seeds, self_set, threshold):
    """Keep the seeds that match no self sample; order is preserved."""
    seeds = _as_matrix(seeds, "seeds")
    self_set = _as_matrix(self_set, "self_set")
    if seeds.shape[0] == 0 or self_set.shape[0] == 0:
        _check_threshold(threshold)
        return seeds.copy()
    keep = ~match_matrix(seeds, self_set, threshold).any(axis=1)
    return seeds[keep]


def detection_rate(detector_set, anomalies, threshold):
    """Share of anomalies matched by at least one detector in the set."""
    _check_threshold(threshold)
    anomalies = _as_matrix(anomalies, "anomalies")
    if anomalies.shape[0] == 0:
        raise InvalidInputError("anomaly set is empty")
    detector_set = _as_matrix(detector_set, "detector_set")
    if detector_set.shape[0] == 0:
        return 0.0
    covered = match_matrix(detector_set, anomalies, threshold).any(axis=0)
    return int(np.count_nonzero(covered)) / anomalies.shape[0]
