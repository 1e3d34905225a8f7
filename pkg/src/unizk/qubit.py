"""Single-qubit statevector simulation for Wiesner/BB84 states.

Product states only: every qubit is independent, which covers honest notes and
all measure-and-prepare attacks.  ``Qubit`` is the scalar API; the ``*_many``
helpers run the same physics on ``(n, 2)`` amplitude arrays and are what the
money module uses for speed.
"""
from __future__ import annotations

import enum

import numpy as np

from .errors import NormalizationError

TOL = 1e-12
_S = 1 / np.sqrt(2)


class Basis(enum.IntEnum):
    Z = 0
    X = 1


# rows indexed by 2*basis + bit: |0>, |1>, |+>, |->
STATES = np.array([[1, 0], [0, 1], [_S, _S], [_S, -_S]], dtype=complex)


class Qubit:
    __slots__ = ("amp0", "amp1")

    def __init__(self, amp0: complex, amp1: complex):
        self.amp0 = complex(amp0)
        self.amp1 = complex(amp1)

    def norm(self) -> float:
        return abs(self.amp0) ** 2 + abs(self.amp1) ** 2

    def check(self) -> None:
        if abs(self.norm() - 1) > TOL:
            raise NormalizationError(f"|amp|^2 sums to {self.norm()!r}")

    def to_pairs(self) -> list[list[float]]:
        """Debug dump as (re, im) pairs; simulation-only."""
        return [[self.amp0.real, self.amp0.imag], [self.amp1.real, self.amp1.imag]]

    def __repr__(self):
        return f"Qubit({self.amp0:.4g}, {self.amp1:.4g})"


def prepare(basis: Basis, bit: int) -> Qubit:
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    a0, a1 = STATES[2 * int(basis) + bit]
    return Qubit(a0, a1)


def _amplitude(q: Qubit, basis: Basis, outcome: int) -> complex:
    if basis == Basis.Z:
        return q.amp1 if outcome else q.amp0
    return (q.amp0 - q.amp1) * _S if outcome else (q.amp0 + q.amp1) * _S


def born_probability(q: Qubit, basis: Basis, outcome: int) -> float:
    return abs(_amplitude(q, basis, outcome)) ** 2


def measure(q: Qubit, basis: Basis, rng: np.random.Generator) -> tuple[int, Qubit]:
    """Projective measurement; collapses ``q`` in place and returns it."""
    q.check()
    p0 = born_probability(q, basis, 0)
    bit = 0 if rng.random() < p0 else 1
    q.amp0, q.amp1 = (complex(a) for a in STATES[2 * int(basis) + bit])
    return bit, q


# --- array versions ---------------------------------------------------------

def prepare_many(bases: np.ndarray, bits: np.ndarray) -> np.ndarray:
    return STATES[2 * np.asarray(bases) + np.asarray(bits)]


def born_many(amps: np.ndarray, bases: np.ndarray) -> np.ndarray:
    """Probability of outcome 0 for each qubit measured in its basis."""
    z0 = np.abs(amps[:, 0]) ** 2
    x0 = np.abs(amps[:, 0] + amps[:, 1]) ** 2 / 2
    return np.where(np.asarray(bases) == 0, z0, x0)


def measure_many(amps: np.ndarray, bases: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Measure every qubit in its basis; overwrites ``amps`` with the collapsed states."""
    norms = np.sum(np.abs(amps) ** 2, axis=1)
    if np.any(np.abs(norms - 1) > TOL):
        raise NormalizationError("note state is not normalized")
    outcomes = (rng.random(len(amps)) >= born_many(amps, bases)).astype(np.int8)
    amps[:] = prepare_many(bases, outcomes)
    return outcomes
