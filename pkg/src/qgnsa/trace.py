"""Per-generation records shared by both engines."""

from dataclasses import asdict, dataclass, field

import numpy as np


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best_fitness: float
    min_fitness: float
    mean_fitness: float
    max_fitness: float
    # share of qubit angles sitting on 0 or pi; None for the classical engine
    saturation: float | None = None


@dataclass
class RunTrace:
    generations: list[GenerationRecord] = field(default_factory=list)
    terminated_early: bool = False

    def record(self, generation, best, fitness, saturation=None):
        fitness = np.asarray(fitness, dtype=float)
        self.generations.append(
            GenerationRecord(
                generation=int(generation),
                best_fitness=float(best),
                min_fitness=float(fitness.min()),
                mean_fitness=float(fitness.mean()),
                max_fitness=float(fitness.max()),
                saturation=None if saturation is None else float(saturation),
            )
        )

    @property
    def best_series(self):
        return [g.best_fitness for g in self.generations]

    def __len__(self):
        return len(self.generations)

    def to_dict(self):
        return {
            "terminated_early": self.terminated_early,
            "generations": [asdict(g) for g in self.generations],
        }
