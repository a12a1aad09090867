"""
Classical evolutionary-seed real-valued negative selection.

Individuals are sets of ``K`` seed vectors in ``[0, 1]^M``; each seed is the
centre of a candidate detector. An individual's fitness is the detection rate
of its (optionally self-censored) seed set on the training anomalies. The
population evolves by tournament selection, per-position seed swapping
between consecutive pairs, per-seed random replacement, and elitist
replacement of the worst offspring.
"""

from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .detection import censor_seeds, detection_rate
from .errors import DimensionError, InvalidInputError
from .trace import RunTrace

__all__ = [
    "Individual",
    "GaConfig",
    "tournament_select",
    "crossover",
    "mutate",
    "evaluate",
    "run_evoseed",
]


@dataclass(eq=False)
class Individual:
    seeds: np.ndarray
    fitness: float | None = None

    def __post_init__(self):
        self.seeds = np.array(self.seeds, dtype=float, ndmin=2)

    @property
    def k(self):
        return self.seeds.shape[0]

    def copy(self):
        return Individual(self.seeds.copy(), self.fitness)


@dataclass(frozen=True)
class GaConfig:
    max_gen: int = 10
    population_size: int = 10
    seeds_per_individual: int = 1
    threshold: float = 1.6
    crossover_prob: float = 0.6
    mutation_prob: float = 0.4
    tournament_size: int = 2
    self_censoring: bool = False
    rng_seed: int = 0

    def __post_init__(self):
        if int(self.max_gen) != self.max_gen or self.max_gen < 0:
            raise InvalidInputError(f"max_gen must be a non-negative integer, got {self.max_gen!r}")
        for name in ("population_size", "seeds_per_individual", "tournament_size"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidInputError(f"{name} must be a positive integer, got {value!r}")
        if self.tournament_size > self.population_size:
            raise InvalidInputError("tournament_size cannot exceed population_size")
        if not self.threshold > 0:
            raise InvalidInputError(f"threshold must be positive, got {self.threshold!r}")
        for name in ("crossover_prob", "mutation_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidInputError(f"{name} must lie in [0, 1]")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise InvalidInputError("rng_seed must fit in an unsigned 64-bit integer")

    def to_dict(self):
        return asdict(self)

    def with_seed(self, seed):
        return replace(self, rng_seed=int(seed))


def tournament_select(population, size, rng):
    """Draw ``size`` distinct individuals and return the fittest (first drawn wins ties)."""
    if not population:
        raise InvalidInputError("cannot select from an empty population")
    if not 1 <= size <= len(population):
        raise InvalidInputError(f"tournament size {size} outside [1, {len(population)}]")
    drawn = rng.choice(len(population), size=size, replace=False)
    winner = population[drawn[0]]
    for i in drawn[1:]:
        if population[i].fitness > winner.fitness:
            winner = population[i]
    return winner


def crossover(a, b, prob, rng):
    """Swap seeds between ``a`` and ``b`` position by position with probability ``prob``."""
    if a.seeds.shape != b.seeds.shape:
        raise DimensionError(f"seed sets differ in shape: {a.seeds.shape} vs {b.seeds.shape}")
    swap = rng.random(a.k) < prob
    sa, sb = a.seeds.copy(), b.seeds.copy()
    sa[swap], sb[swap] = b.seeds[swap], a.seeds[swap]
    if not swap.any():
        return Individual(sa, a.fitness), Individual(sb, b.fitness)
    return Individual(sa), Individual(sb)


def mutate(ind, prob, rng):
    """Replace each seed with a fresh uniform vector with probability ``prob``."""
    hit = rng.random(ind.k) < prob
    if not hit.any():
        return Individual(ind.seeds.copy(), ind.fitness)
    seeds = ind.seeds.copy()
    seeds[hit] = rng.random((int(hit.sum()), seeds.shape[1]))
    return Individual(seeds)


def detector_set(ind, train_self, config):
    if config.self_censoring and train_self is not None and len(train_self):
        return censor_seeds(ind.seeds, train_self, config.threshold)
    return ind.seeds.copy()


def evaluate(ind, train_anomalies, train_self, config):
    ind.fitness = detection_rate(
        detector_set(ind, train_self, config), train_anomalies, config.threshold
    )
    return ind.fitness


def _best_index(population):
    return int(np.argmax([ind.fitness for ind in population]))


def run_evoseed(train_anomalies, train_self, config):
    """
    Evolve a detector set for ``train_anomalies``.

    ``train_self`` is only consulted when ``config.self_censoring`` is on and
    may be ``None`` otherwise. Returns the best individual's detector set
    (censored when enabled) and the run trace; trace entry 0 is the initial
    population and entry ``t`` the population after generation ``t``.
    """
    anomalies = np.asarray(train_anomalies, dtype=float)
    if anomalies.ndim != 2 or anomalies.shape[0] == 0:
        raise InvalidInputError("training anomaly set is empty")
    m = anomalies.shape[1]
    if m == 0:
        raise DimensionError("training anomalies have no features")
    self_set = None if train_self is None else np.asarray(train_self, dtype=float)

    rng = np.random.default_rng(config.rng_seed)
    population = [
        Individual(rng.random((config.seeds_per_individual, m)))
        for _ in range(config.population_size)
    ]
    for ind in population:
        evaluate(ind, anomalies, self_set, config)
    trace = RunTrace()
    best = population[_best_index(population)]
    trace.record(0, best.fitness, [i.fitness for i in population])

    for t in range(1, config.max_gen + 1):
        offspring = [
            tournament_select(population, config.tournament_size, rng).copy()
            for _ in range(config.population_size)
        ]
        for i in range(0, len(offspring) - 1, 2):
            offspring[i], offspring[i + 1] = crossover(
                offspring[i], offspring[i + 1], config.crossover_prob, rng
            )
        offspring = [mutate(ind, config.mutation_prob, rng) for ind in offspring]
        for ind in offspring:
            if ind.fitness is None:
                evaluate(ind, anomalies, self_set, config)

        new_best = offspring[_best_index(offspring)]
        if best.fitness > new_best.fitness:
            worst = int(np.argmin([ind.fitness for ind in offspring]))
            offspring[worst] = best.copy()
        population = offspring
        best = population[_best_index(population)]
        trace.record(t, best.fitness, [i.fitness for i in population])

    return detector_set(best, self_set, config), trace
