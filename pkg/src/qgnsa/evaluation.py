"""
Confusion matrices, the seven point metrics and the K-fold x repetition
protocol that compares the quantum and classical engines on shared folds.
"""

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .data import kfold_indices
from .detection import match_matrix
from .engine import QgnsaConfig, run_qgnsa
from .errors import EngineError, InvalidInputError, QgnsaError
from .evoseed import GaConfig, run_evoseed

__all__ = [
    "METRICS",
    "ConfusionMatrix",
    "MetricsReport",
    "RunResult",
    "AggregateReport",
    "classify",
    "metrics",
    "summarize",
    "run_protocol",
    "derive_seed",
    "config_hash",
]

METRICS = ("fpr", "fnr", "accuracy", "precision", "recall", "f1", "specificity")
ALGORITHMS = {"quantum": 1, "classical": 2}
_FOLD_STREAM = 0


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def total(self):
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class MetricsReport:
    """Point metrics; ``None`` marks a metric whose denominator is zero."""

    fpr: float | None
    fnr: float | None
    accuracy: float | None
    precision: float | None
    recall: float | None
    f1: float | None
    specificity: float | None

    def to_dict(self):
        return asdict(self)


def _ratio(num, den):
    return None if den == 0 else num / den


def metrics(cm):
    tp, tn, fp, fn = cm.tp, cm.tn, cm.fp, cm.fn
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    # harmonic mean is undefined when either side is, or both are zero;
    # otherwise it reduces to 2TP / (2TP + FP + FN), a single rounding
    if precision is None or recall is None or tp == 0:
        f1 = None
    else:
        f1 = 2 * tp / (2 * tp + fp + fn)
    return MetricsReport(
        fpr=_ratio(fp, fp + tn),
        fnr=_ratio(fn, fn + tp),
        accuracy=_ratio(tp + tn, tp + tn + fp + fn),
        precision=precision,
        recall=recall,
        f1=f1,
        specificity=_ratio(tn, tn + fp),
    )


def _confusion(predicted, labels):
    predicted = np.asarray(predicted, dtype=bool)
    labels = np.asarray(labels, dtype=bool)
    return ConfusionMatrix(
        tp=int(np.count_nonzero(predicted & labels)),
        tn=int(np.count_nonzero(~predicted & ~labels)),
        fp=int(np.count_nonzero(predicted & ~labels)),
        fn=int(np.count_nonzero(~predicted & labels)),
    )


def classify(detectors, samples, labels, threshold):
    """
    Confusion matrix of a detector set on labelled test samples.

    ``labels[i]`` is True for a non-self sample. A sample is predicted
    non-self when at least one detector lies within ``threshold`` of it.
    """
    detectors = np.asarray(detectors, dtype=float)
    if detectors.size == 0:
        raise InvalidInputError("detector set is empty")
    samples = np.asarray(samples, dtype=float)
    labels = np.asarray(labels, dtype=bool)
    if len(samples) != len(labels):
        raise InvalidInputError("samples and labels differ in length")
    if len(samples) == 0:
        return ConfusionMatrix()
    predicted = match_matrix(detectors, samples, threshold).any(axis=0)
    return _confusion(predicted, labels)


def summarize(reports):
    """Mean and sample standard deviation per metric over defined values."""
    out = {}
    for name in METRICS:
        values = [getattr(r, name) for r in reports if getattr(r, name) is not None]
        mean = math.fsum(values) / len(values) if values else None
        std = float(np.std(values, ddof=1)) if len(values) > 1 else None
        out[name] = {"mean": mean, "std": std, "defined": len(values)}
    return out


def derive_seed(master_seed, *path):
    """Independent 64-bit seed for the stream identified by ``path``."""
    ss = np.random.SeedSequence([int(master_seed), *map(int, path)])
    return int(ss.generate_state(1, np.uint64)[0])


def config_hash(payload):
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class RunResult:
    fold: int
    repetition: int
    seed: int
    confusion: ConfusionMatrix
    metrics: MetricsReport
    train_fitness: float
    detectors: int

    @property
    def run_id(self):
        return f"{self.fold}_{self.repetition}"

    def to_dict(self):
        return {
            "fold": self.fold,
            "repetition": self.repetition,
            "seed": self.seed,
            "confusion": asdict(self.confusion),
            "metrics": self.metrics.to_dict(),
            "train_fitness": self.train_fitness,
            "detectors": self.detectors,
        }


@dataclass
class AggregateReport:
    algorithm: str
    config: dict
    config_hash: str
    folds: int
    repetitions: int
    master_seed: int
    holdout_nonself: bool
    runs: list[RunResult] = field(default_factory=list)

    @property
    def summary(self):
        return summarize([r.metrics for r in self.runs])

    def to_dict(self):
        return {
            "algorithm": self.algorithm,
            "config": self.config,
            "config_hash": self.config_hash,
            "folds": self.folds,
            "repetitions": self.repetitions,
            "master_seed": self.master_seed,
            "holdout_nonself": self.holdout_nonself,
            "runs": [r.to_dict() for r in self.runs],
            "summary": self.summary,
        }

    @classmethod
    def from_dict(cls, d):
        runs = [
            RunResult(
                fold=r["fold"],
                repetition=r["repetition"],
                seed=r["seed"],
                confusion=ConfusionMatrix(**r["confusion"]),
                metrics=MetricsReport(**r["metrics"]),
                train_fitness=r["train_fitness"],
                detectors=r["detectors"],
            )
            for r in d["runs"]
        ]
        fields = {k: d[k] for k in ("algorithm", "config", "config_hash", "folds",
                                    "repetitions", "master_seed", "holdout_nonself")}
        return cls(runs=runs, **fields)


def _execute(task):
    algorithm, config, fold, rep, train, train_self, test, labels = task
    try:
        if algorithm == "quantum":
            best, _ = run_qgnsa(train, config)
            detectors, fitness = best.detector[None, :], best.fitness
        else:
            detectors, trace = run_evoseed(train, train_self, config)
            fitness = trace.generations[-1].best_fitness
    except QgnsaError as exc:
        raise EngineError(
            f"{algorithm} engine failed on fold {fold}, repetition {rep}: {exc}",
            algorithm, fold, rep,
        ) from exc
    if len(detectors) == 0:
        # every seed was censored; nothing is flagged
        cm = _confusion(np.zeros(len(labels), dtype=bool), labels)
    else:
        cm = classify(detectors, test, labels, config.threshold)
    return RunResult(fold, rep, config.rng_seed, cm, metrics(cm), float(fitness), len(detectors))


def protocol_tasks(dataset, algorithm, config, folds, repetitions, master_seed, holdout_nonself):
    fold_seed = derive_seed(master_seed, _FOLD_STREAM)
    nonself_folds = kfold_indices(len(dataset.nonself_samples), folds, fold_seed)
    self_folds = kfold_indices(len(dataset.self_samples), folds, fold_seed)
    nonself, selfs = dataset.nonself_samples, dataset.self_samples
    code = ALGORITHMS[algorithm]
    for f in range(folds):
        train = nonself[nonself_folds[f]]
        train_self = selfs[np.concatenate([self_folds[g] for g in range(folds) if g != f])] \
            if folds > 1 else selfs
        if holdout_nonself and folds > 1:
            test_nonself = nonself[np.concatenate([nonself_folds[g] for g in range(folds) if g != f])]
        else:
            test_nonself = train
        test_self = selfs[self_folds[f]]
        test = np.concatenate([test_self, test_nonself])
        labels = np.r_[np.zeros(len(test_self), bool), np.ones(len(test_nonself), bool)]
        for r in range(repetitions):
            run_config = config.with_seed(derive_seed(master_seed, code, f, r))
            yield (algorithm, run_config, f, r, train, train_self, test, labels)


def run_protocol(dataset, algorithm, config=None, folds=5, repetitions=5, master_seed=0,
                 holdout_nonself=True, jobs=1):
    """
    Run one engine over ``folds`` x ``repetitions`` seeded trials.

    Fold ``f`` of the non-self set is the training anomaly set of every
    repetition on that fold. The self set is folded with the same ``k`` and
    the test partition is self fold ``f`` plus either the other non-self folds
    (``holdout_nonself=True``) or non-self fold ``f`` itself. With ``k = 1``
    there is nothing to hold out and the single fold is used for both.
    Fold assignment depends only on ``master_seed``, so both engines see the
    same folds. Results are ordered by (fold, repetition) regardless of
    ``jobs``.
    """
    if algorithm not in ALGORITHMS:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}")
    if config is None:
        config = QgnsaConfig() if algorithm == "quantum" else GaConfig()
    expected = QgnsaConfig if algorithm == "quantum" else GaConfig
    if not isinstance(config, expected):
        raise InvalidInputError(f"{algorithm} engine needs a {expected.__name__}")
    if int(repetitions) != repetitions or repetitions < 1:
        raise InvalidInputError("repetitions must be a positive integer")
    if folds > len(dataset.nonself_samples):
        raise InvalidInputError(f"cannot split {len(dataset.nonself_samples)} non-self samples into {folds} folds")

    tasks = protocol_tasks(dataset, algorithm, config, folds, repetitions, master_seed, holdout_nonself)
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(_execute, tasks))
    else:
        runs = [_execute(t) for t in tasks]

    payload = {k: v for k, v in config.to_dict().items() if k != "rng_seed"}
    payload.update(algorithm=algorithm, folds=folds, repetitions=repetitions,
                   holdout_nonself=holdout_nonself)
    return AggregateReport(
        algorithm=algorithm,
        config=config.to_dict(),
        config_hash=config_hash(payload),
        folds=folds,
        repetitions=repetitions,
        master_seed=int(master_seed),
        holdout_nonself=holdout_nonself,
        runs=runs,
    )
