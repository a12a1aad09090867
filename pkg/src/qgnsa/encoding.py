"""
Bit-group encoding of real-valued detectors.

A register of ``n = m * precision`` qubits is split into ``m`` consecutive
groups, one per feature (feature 0 first). Each group is read as an unsigned
integer, most-significant bit first, and scaled by ``1 / (2**precision - 1)``
so that both 0 and 1 are reachable:

    bits 000 -> 0.0, 001 -> 1/7, ..., 111 -> 1.0        (precision = 3)
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidSizeError

__all__ = ["QubitLayout", "layout_for", "decode", "encode", "grid"]

# Codes are accumulated in int64 and must stay exactly representable as float64.
MAX_PRECISION = 53


@dataclass(frozen=True)
class QubitLayout:
    m: int
    precision: int

    def __post_init__(self):
        for name in ("m", "precision"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidSizeError(f"{name} must be a positive integer, got {value!r}")
        if self.precision > MAX_PRECISION:
            raise InvalidSizeError(f"precision above {MAX_PRECISION} cannot be decoded exactly")

    @property
    def n(self):
        return self.m * self.precision

    @property
    def levels(self):
        """Number of distinct values a single feature can take."""
        return 2**self.precision

    @property
    def scale(self):
        return float(2**self.precision - 1)


def layout_for(m, precision):
    return QubitLayout(m, precision)


def _weights(precision):
    return (1 << np.arange(precision - 1, -1, -1, dtype=np.int64)).astype(np.int64)


def decode(bits, layout):
    """
    Map measured bitstrings to detectors in ``[0, 1]^m``.

    Accepts a single bitstring of shape ``(n,)`` or a batch of shape
    ``(shots, n)`` and returns an array of shape ``(m,)`` or ``(shots, m)``.
    """
    bits = np.asarray(bits)
    if bits.shape[-1:] != (layout.n,):
        raise DimensionError(f"expected {layout.n} bits, got shape {bits.shape}")
    groups = bits.reshape(bits.shape[:-1] + (layout.m, layout.precision)).astype(np.int64)
    codes = groups @ _weights(layout.precision)
    return codes / layout.scale


def encode(values, layout):
    """Inverse of :func:`decode` for values lying on the quantization grid.

    Off-grid values are rounded to the nearest grid point.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[-1:] != (layout.m,):
        raise DimensionError(f"expected {layout.m} values, got shape {values.shape}")
    codes = np.rint(np.clip(values, 0.0, 1.0) * layout.scale).astype(np.int64)
    shifts = np.arange(layout.precision - 1, -1, -1, dtype=np.int64)
    bits = (codes[..., None] >> shifts) & 1
    return bits.reshape(values.shape[:-1] + (layout.n,)).astype(bool)


def grid(precision):
    """All values one feature can decode to, ascending."""
    layout = QubitLayout(1, precision)
    return np.arange(layout.levels) / layout.scale
