"""
# Quantum vs classical on shared folds

Both engines go through the same 5-fold x 5-repetition protocol; fold
assignment depends only on the master seed, so the comparison is paired.
"""
from qgnsa import GaConfig, QgnsaConfig, generate_synthetic, run_protocol
from qgnsa.cli import render_report

data = generate_synthetic(m=12, n_self=2000, n_nonself=500, separation=0.6, rng_seed=0)

# The thresholds used on the real transaction data (1.2 to 1.6) cover most of
# this synthetic cube; 0.6 keeps both classes distinguishable here.
threshold = 0.6
results = {
    "quantum": run_protocol(data, "quantum", QgnsaConfig(threshold=threshold), master_seed=42).to_dict(),
    "classical": run_protocol(data, "classical", GaConfig(threshold=threshold), master_seed=42).to_dict(),
}
print(render_report({"results": results}))
