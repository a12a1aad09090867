"""
Product-state simulation of a register of independently Y-rotated qubits.

Every qubit starts in |0>, receives a single ``Ry(theta)`` rotation and is
measured in the computational basis, so the joint distribution factorises:

    P(bit_i = 1) = sin^2(theta_i / 2)

independently per qubit and per shot. ``theta = pi/2`` is the equal
superposition, ``theta = 0`` always measures 0 and ``theta = pi`` always
measures 1. No entangling gates are involved, so sampling per qubit is exact
in distribution and the register size is only bounded by memory.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidInputError, InvalidSizeError

__all__ = [
    "AngleRegister",
    "new_register",
    "sample",
    "adjust",
    "reset_to_superposition",
    "DEFAULT_ADJ",
]

#: Default per-generation rotation step, in radians.
DEFAULT_ADJ = 0.05 * np.pi

# Angles closer than this to 0 or pi are snapped onto the bound, so repeated
# float steps cannot leave a qubit one ulp short of saturation.
_SNAP = 1e-12


@dataclass(frozen=True)
class AngleRegister:
    """Rotation angles of an ``n``-qubit register, each in ``[0, pi]``."""

    angles: np.ndarray

    def __post_init__(self):
        angles = np.array(self.angles, dtype=float)
        if angles.ndim != 1 or angles.size == 0:
            raise InvalidSizeError("register must hold at least one angle")
        if np.any(angles < 0.0) or np.any(angles > np.pi) or np.any(np.isnan(angles)):
            raise InvalidInputError("register angles must lie in [0, pi]")
        angles.setflags(write=False)
        object.__setattr__(self, "angles", angles)

    @property
    def n(self):
        return self.angles.size

    def __len__(self):
        return self.angles.size

    def __eq__(self, other):
        if not isinstance(other, AngleRegister):
            return NotImplemented
        return np.array_equal(self.angles, other.angles)

    __hash__ = None

    def probabilities(self):
        """Per-qubit probability of measuring 1."""
        return np.sin(self.angles / 2.0) ** 2

    def saturation(self):
        """Share of qubits whose angle sits exactly on 0 or pi."""
        a = self.angles
        return float(np.mean((a == 0.0) | (a == np.pi)))


def new_register(n):
    """Register of ``n`` qubits in equal superposition (all angles pi/2)."""
    if int(n) != n or n < 1:
        raise InvalidSizeError(f"register size must be a positive integer, got {n!r}")
    return AngleRegister(np.full(int(n), np.pi / 2))


def sample(register, shots, rng):
    """
    Measure the register ``shots`` times.

    Parameters
    ----------
    register : AngleRegister
    shots : int
        Number of full-register measurements.
    rng : numpy.random.Generator
        Source of randomness; consumes exactly ``shots * n`` uniforms.

    Returns
    -------
    ndarray of bool, shape (shots, n)
        One measured bitstring per row.
    """
    if int(shots) != shots or shots < 1:
        raise InvalidSizeError(f"shots must be a positive integer, got {shots!r}")
    p = register.probabilities()
    return rng.random((int(shots), register.n)) < p


def adjust(register, best, adj=DEFAULT_ADJ):
    """
    Rotate every qubit one step towards the matching bit of ``best``.

    A 1-bit raises the angle by ``adj`` (capped at pi), a 0-bit lowers it by
    ``adj`` (floored at 0). Returns a new register; the input is untouched.
    """
    bits = np.asarray(best, dtype=bool)
    if bits.shape != (register.n,):
        raise DimensionError(
            f"bitstring of length {bits.size} does not match register of {register.n} qubits"
        )
    if not adj > 0:
        raise InvalidInputError(f"adj must be positive, got {adj!r}")
    theta = np.where(bits, register.angles + adj, register.angles - adj)
    theta[theta >= np.pi - _SNAP] = np.pi
    theta[theta <= _SNAP] = 0.0
    return AngleRegister(theta)


def reset_to_superposition(register):
    return new_register(register.n)
