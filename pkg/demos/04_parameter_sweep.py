"""
# The four parameter settings

Threshold 1.6 / 1.4 / 1.2 with precision 16 / 8 / 8, then 5 generations and
5 individuals with precision 4. The classical engine only follows the
threshold and generation/population changes. Lower thresholds trade recall
for specificity.
"""
from qgnsa import GaConfig, QgnsaConfig, generate_synthetic, run_protocol

data = generate_synthetic(m=12, n_self=2000, n_nonself=500, separation=1.0, rng_seed=3)

tests = {
    "test 1": (QgnsaConfig(threshold=1.6, precision=16), GaConfig(threshold=1.6)),
    "test 2": (QgnsaConfig(threshold=1.4, precision=8), GaConfig(threshold=1.4)),
    "test 3": (QgnsaConfig(threshold=1.2, precision=8), GaConfig(threshold=1.2)),
    "test 4": (QgnsaConfig(threshold=1.2, precision=4, max_gen=5, population_size=5),
               GaConfig(threshold=1.2, max_gen=5, population_size=5)),
}

print(f"{'':8s} {'engine':10s} {'recall':>7s} {'spec.':>7s} {'acc.':>7s} {'f1':>7s}")
for name, (qcfg, ccfg) in tests.items():
    for engine, cfg in (("quantum", qcfg), ("classical", ccfg)):
        s = run_protocol(data, engine, cfg, master_seed=1).summary
        fmt = lambda k: "n/a" if s[k]["mean"] is None else f"{s[k]['mean']:.3f}"
        print(f"{name:8s} {engine:10s} {fmt('recall'):>7s} {fmt('specificity'):>7s} "
              f"{fmt('accuracy'):>7s} {fmt('f1'):>7s}")
