"""
# The angle register

Each qubit carries one rotation angle. Measuring gives 1 with probability
sin^2(theta / 2), so pi/2 is a fair coin, 0 always reads 0 and pi always
reads 1. Rotating the angles towards a target bitstring shrinks the spread
of the samples until the register only ever produces that bitstring.
"""
import numpy as np

from qgnsa import quantum
from qgnsa.encoding import decode, layout_for

rng = np.random.default_rng(0)

# %% Equal superposition: every bit is a fair coin
reg = quantum.new_register(8)
shots = quantum.sample(reg, 2000, rng)
print("P(1) per qubit at pi/2:", shots.mean(axis=0).round(3))

# %% Steering towards a target
target = np.array([1, 0, 1, 1, 0, 0, 1, 0], dtype=bool)
for step in range(11):
    shots = quantum.sample(reg, 500, rng)
    agree = np.all(shots == target, axis=1).mean()
    print(f"step {step:2d}  saturation={reg.saturation():.2f}  shots equal to target={agree:.3f}")
    reg = quantum.adjust(reg, target, quantum.DEFAULT_ADJ)

# %% Bits become detectors: 2 features x 4 qubits
layout = layout_for(2, 4)
print("decoded target:", decode(target, layout))
print("decoded random shots:\n", decode(quantum.sample(quantum.new_register(8), 4, rng), layout).round(3))
