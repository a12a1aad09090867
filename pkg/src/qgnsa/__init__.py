"""Quantum genetic negative selection for anomaly detection, with its classical baseline."""

__version__ = "0.1.0"

from .data import (
    LabeledDataset,
    PreprocessSpec,
    generate_synthetic,
    kfold_split,
    load_csv,
    preprocess,
)
from .detection import censor_seeds, detection_rate, euclidean_distance, quantum_fitness
from .encoding import QubitLayout, decode, layout_for
from .engine import BestCandidate, QgnsaConfig, run_qgnsa
from .evaluation import ConfusionMatrix, MetricsReport, classify, metrics, run_protocol
from .evoseed import GaConfig, Individual, run_evoseed
from .quantum import AngleRegister, adjust, new_register, reset_to_superposition, sample
from .trace import RunTrace
