"""Public-key quantum money mini-scheme as an ideal functionality.

Notes are Wiesner states held inside a ``MoneyAuthority``.  Callers only ever
see a ``NoteHandle`` (an opaque id) plus the classical serial; every way of
touching a note goes through this module, which is what makes the
unforgeability game meaningful for a classical simulation.

``ver`` is public in the API sense but consults the authority's registry of
(basis, bit) pairs, standing in for a publicly verifiable scheme.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .encoding import register
from .errors import UnknownSerial
from .qubit import Basis, born_probability, measure_many, prepare, prepare_many

SERIAL_BYTES = 32
DEFAULT_QUBITS = 16
SIM_ONLY = "SIMULATION-ONLY"


@register(0x30)
@dataclass(frozen=True)
class NoteHandle:
    note_id: int


@dataclass(frozen=True)
class _Registration:
    bases: np.ndarray
    bits: np.ndarray


class MoneyAuthority:
    """Registry of minted serials plus the store of live note states."""

    def __init__(self, rng: np.random.Generator | int | None = None):
        self.rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        self._registry: dict[bytes, _Registration] = {}
        self._notes: dict[int, np.ndarray] = {}
        self._next_id = 0

    def _store(self, amps: np.ndarray) -> NoteHandle:
        handle = NoteHandle(self._next_id)
        self._next_id += 1
        self._notes[handle.note_id] = amps
        return handle

    def is_live(self, handle) -> bool:
        return isinstance(handle, NoteHandle) and handle.note_id in self._notes

    def _take(self, handle: NoteHandle) -> np.ndarray:
        try:
            return self._notes.pop(handle.note_id)
        except KeyError:
            raise KeyError(f"note {handle.note_id} is not live") from None

    def is_registered(self, serial: bytes) -> bool:
        return serial in self._registry

    def note_size(self, handle: NoteHandle) -> int:
        return len(self._notes[handle.note_id])

    @property
    def n_live(self) -> int:
        return len(self._notes)

    # --- simulation-only debug surface -------------------------------------

    def dump_note(self, handle: NoteHandle) -> dict:
        amps = self._notes[handle.note_id]
        return {
            "banner": SIM_ONLY,
            "note_id": handle.note_id,
            "amplitudes": [[[a.real, a.imag] for a in row] for row in amps.tolist()],
        }

    def load_note(self, dump: dict) -> NoteHandle:
        if dump.get("banner") != SIM_ONLY:
            raise ValueError("note dumps must carry the simulation-only banner")
        amps = np.array([[complex(re, im) for re, im in row] for row in dump["amplitudes"]])
        return self._store(amps)

    def dump_registry(self) -> dict:
        return {
            "banner": SIM_ONLY,
            "registry": {
                s.hex(): {"bases": r.bases.tolist(), "bits": r.bits.tolist()}
                for s, r in self._registry.items()
            },
        }

    def load_registry(self, dump: dict) -> None:
        if dump.get("banner") != SIM_ONLY:
            raise ValueError("registry dumps must carry the simulation-only banner")
        for s, r in dump["registry"].items():
            self._registry[bytes.fromhex(s)] = _Registration(
                np.array(r["bases"], dtype=np.int8), np.array(r["bits"], dtype=np.int8))


def note_gen(authority: MoneyAuthority, n: int = DEFAULT_QUBITS) -> tuple[NoteHandle, bytes]:
    if n < 1:
        raise ValueError("a note needs at least one qubit")
    rng = authority.rng
    bases = rng.integers(0, 2, n, dtype=np.int8)
    bits = rng.integers(0, 2, n, dtype=np.int8)
    while True:
        serial = rng.bytes(SERIAL_BYTES)
        if serial not in authority._registry:
            break
    authority._registry[serial] = _Registration(bases, bits)
    return authority._store(prepare_many(bases, bits)), serial


def ver(authority: MoneyAuthority, handle: NoteHandle, serial: bytes) -> bool:
    """Measure each qubit in its registered basis; accept iff all bits match.

    The note collapses in place, so an honest note keeps verifying.
    """
    reg = authority._registry.get(serial)
    if reg is None:
        raise UnknownSerial(serial.hex() if isinstance(serial, bytes) else repr(serial))
    if not authority.is_live(handle):
        return False
    amps = authority._notes[handle.note_id]
    if len(amps) != len(reg.bases):
        return False
    outcomes = measure_many(amps, reg.bases, authority.rng)
    return bool(np.array_equal(outcomes, reg.bits))


# --- counterfeiting channels ------------------------------------------------

def attack_measure_resend(authority: MoneyAuthority, handle: NoteHandle) -> tuple[NoteHandle, NoteHandle]:
    """Measure every qubit in Z, then prepare two copies of the outcomes."""
    amps = authority._take(handle)
    z = np.zeros(len(amps), dtype=np.int8)
    outcomes = measure_many(amps, z, authority.rng)
    return (authority._store(prepare_many(z, outcomes)),
            authority._store(prepare_many(z, outcomes)))


def attack_fresh_forgery(authority: MoneyAuthority, handle: NoteHandle) -> tuple[NoteHandle, NoteHandle]:
    """Keep the original; pair it with a note of fresh random Wiesner qubits."""
    n = authority.note_size(handle)
    rng = authority.rng
    fresh = prepare_many(rng.integers(0, 2, n), rng.integers(0, 2, n))
    return handle, authority._store(fresh)


def attack_identity(authority: MoneyAuthority, handle: NoteHandle) -> tuple[NoteHandle, NoteHandle]:
    """Hand back the same handle twice (a double spend)."""
    return handle, handle


ATTACKS = {
    "measure-resend": attack_measure_resend,
    "fresh-forgery": attack_fresh_forgery,
    "identity": attack_identity,
}


def _wiesner_states():
    for basis, bit in itertools.product(Basis, (0, 1)):
        yield basis, bit


def qubit_pass_probability(attack: str) -> float:
    """Exact per-qubit probability that both outputs verify, by Born enumeration."""
    total = 0.0
    for basis, bit in _wiesner_states():
        q = prepare(basis, bit)
        if attack == "measure-resend":
            p = 0.0
            for outcome in (0, 1):
                copy = prepare(Basis.Z, outcome)
                p += born_probability(q, Basis.Z, outcome) * born_probability(copy, basis, bit) ** 2
        elif attack == "fresh-forgery":
            p = sum(born_probability(prepare(fb, fv), basis, bit)
                    for fb, fv in _wiesner_states()) / 4
        elif attack == "identity":
            p = 0.0
        else:
            raise ValueError(f"unknown attack {attack!r}")
        total += p / 4
    return total


def attack_success_probability(attack: str, n: int) -> float:
    return qubit_pass_probability(attack) ** n
