"""
# Evolving one detector

Run the quantum engine on the anomalies of a synthetic dataset and watch the
best fitness, the population spread and the share of saturated qubits move
from exploration to exploitation.
"""
from qgnsa import QgnsaConfig, generate_synthetic, run_qgnsa

data = generate_synthetic(m=6, n_self=500, n_nonself=150, separation=0.5, rng_seed=1)
config = QgnsaConfig(max_gen=30, population_size=10, precision=6, threshold=0.45, rng_seed=7)
best, trace = run_qgnsa(data.nonself_samples, config)

print("gen  best   min    mean   max    saturated")
for g in trace.generations:
    print(f"{g.generation:3d}  {g.best_fitness:.3f}  {g.min_fitness:.3f}  "
          f"{g.mean_fitness:.3f}  {g.max_fitness:.3f}  {g.saturation:.2f}")
print("terminated early:", trace.terminated_early)
print("best detector:", best.detector.round(3), "fitness", best.fitness,
      "found in generation", best.generation_found)
