"""
The quantum genetic negative selection loop.

Each generation measures the angle register ``population_size`` times, decodes
every shot into a detector, scores it against the training anomalies and keeps
the best candidate seen so far. A perfect candidate ends the run; otherwise the
register is rotated one ``adj`` step towards the best candidate's bits, or put
back into equal superposition if nothing has matched yet.
"""

from dataclasses import asdict, dataclass, replace

import numpy as np

from . import quantum
from .detection import population_fitness
from .encoding import decode, layout_for
from .errors import DimensionError, InvalidInputError
from .trace import RunTrace

__all__ = ["QgnsaConfig", "BestCandidate", "run_qgnsa"]


@dataclass(frozen=True)
class QgnsaConfig:
    """Parameters of one QGNSA run. Defaults are the first experiment's values."""

    max_gen: int = 10
    population_size: int = 10
    precision: int = 16
    threshold: float = 1.6
    adj: float = quantum.DEFAULT_ADJ
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("max_gen", "population_size", "precision"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidInputError(f"{name} must be a positive integer, got {value!r}")
        if not self.threshold > 0:
            raise InvalidInputError(f"threshold must be positive, got {self.threshold!r}")
        if not 0 < self.adj <= np.pi:
            raise InvalidInputError(f"adj must lie in (0, pi], got {self.adj!r}")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise InvalidInputError("rng_seed must fit in an unsigned 64-bit integer")

    def to_dict(self):
        return asdict(self)

    def with_seed(self, seed):
        return replace(self, rng_seed=int(seed))


@dataclass(frozen=True)
class BestCandidate:
    detector: np.ndarray
    bits: np.ndarray
    fitness: float
    generation_found: int


def run_qgnsa(train_anomalies, config, *, return_register=False):
    """
    Evolve a single detector for ``train_anomalies``.

    Parameters
    ----------
    train_anomalies : array_like, shape (N, M)
        Non-self training samples, already scaled to ``[0, 1]``.
    config : QgnsaConfig
    return_register : bool
        Also return the final :class:`~qgnsa.quantum.AngleRegister`.

    Returns
    -------
    best : BestCandidate
    trace : RunTrace
    """
    anomalies = np.asarray(train_anomalies, dtype=float)
    if anomalies.ndim != 2 or anomalies.shape[0] == 0:
        raise InvalidInputError("training anomaly set is empty")
    if anomalies.shape[1] == 0:
        raise DimensionError("training anomalies have no features")

    layout = layout_for(anomalies.shape[1], config.precision)
    rng = np.random.default_rng(config.rng_seed)
    register = quantum.new_register(layout.n)
    trace = RunTrace()
    best = None

    for t in range(config.max_gen):
        bits = quantum.sample(register, config.population_size, rng)
        detectors = decode(bits, layout)
        fitness = population_fitness(detectors, anomalies, config.threshold)

        if best is None:
            best = BestCandidate(detectors[0], bits[0], float(fitness[0]), t)
        # a sequential scan with strict ">" keeps the first maximum
        i = int(np.argmax(fitness))
        if fitness[i] > best.fitness:
            best = BestCandidate(detectors[i], bits[i], float(fitness[i]), t)

        if best.fitness == 1.0:
            trace.record(t, best.fitness, fitness, register.saturation())
            trace.terminated_early = True
            break
        if best.fitness == 0.0:
            register = quantum.reset_to_superposition(register)
        else:
            register = quantum.adjust(register, best.bits, config.adj)
        trace.record(t, best.fitness, fitness, register.saturation())

    if return_register:
        return best, trace, register
    return best, trace
