"""Unclonable NIZK for discrete log, in the CRS model and the random-oracle model.

A proof is a quantum banknote plus a classical proof bound to the note's
serial.  CRS model: the serial enters the statement

    ct encrypts z  and  ( x = g^z  or  c = Com(s; z) )

with ``c`` a commitment to a dummy serial fixed at setup, so a simulator never
needs a witness and an extractor only needs the decryption key.  ROM model: a
plain Schnorr proof whose challenge hashes the serial alongside x and alpha.

Extraction against cloners follows the (k-1)-to-k recipe: simulate k-1 proofs,
run the adversary, pick one of its k outputs uniformly and extract from it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import sigma
from .encoding import encode, register
from .errors import AdversaryMalformed, DecodeError, ExtractionFailed, UnknownSerial
from .group import (Commitment, GroupParams, commit, hash_to_scalar, random_scalar)
from .money import DEFAULT_QUBITS, MoneyAuthority, NoteHandle, note_gen, ver
from .nizk import (FORK_RETRIES, SIMEXT_TAG, SimExtCrs, SimExtProof, SimExtTrapdoor,
                   forking_extract, simext_ext, simext_prove, simext_setup, simext_sim,
                   simext_verify)
from .oracle import DIGEST_BYTES, Oracle
from .sigma import Alpha, Dlog, LinearEnc, Or, SigmaTranscript

ROM_TAG = b"UROM/v1"


@register(0x50)
@dataclass(frozen=True)
class UCrs:
    simext: SimExtCrs
    c: Commitment


@register(0x51)
@dataclass(frozen=True)
class UTrapdoor:
    simext: SimExtTrapdoor


@register(0x52)
@dataclass(frozen=True)
class UnclonableInstance:
    """x_Pi = (c, x, s), plus an optional message label."""
    c: Commitment
    x: int
    serial: bytes
    label: bytes = b""

    def holds(self, params, w):
        return params.pow(params.g, w) == self.x

    def tail(self, params, pk, agg):
        g = params.g
        s = hash_to_scalar(params, self.serial)
        opened = params.mul(self.c.c2, params.inv(params.pow(g, s)))
        return Or(LinearEnc(agg.a, agg.b, pk, ((self.x, g),)),
                  LinearEnc(agg.a, agg.b, pk, ((opened, params.h), (self.c.c1, g))))

    def tail_witness(self, U, w, branch=0):
        return (branch, (U, w))

    def fs_label(self):
        return encode(self)


@register(0x53)
@dataclass(frozen=True)
class UnclonableProofCrs:
    note: NoteHandle
    s: bytes
    pi: SimExtProof


@register(0x54)
@dataclass(frozen=True)
class UnclonableProofRom:
    note: NoteHandle
    s: bytes
    alpha: Alpha
    beta: int
    gamma: tuple


@register(0x55)
@dataclass(frozen=True)
class Banknote:
    rho: object
    s: object


# --- CRS model -----------------------------------------------------------------

def u_setup(params: GroupParams, rng: np.random.Generator,
            tag: bytes = SIMEXT_TAG) -> tuple[UCrs, UTrapdoor]:
    """Commit to a uniform dummy serial; its opening is thrown away."""
    sx, td = simext_setup(params, rng, tag)
    s_star = hash_to_scalar(params, rng.bytes(32))
    r_star = random_scalar(params, rng)
    return UCrs(sx, commit(params, s_star, r_star)), UTrapdoor(td)


def _instance(crs: UCrs, x: int, serial: bytes, label: bytes) -> UnclonableInstance:
    return UnclonableInstance(crs.c, x, serial, label)


def u_prove(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, crs: UCrs,
            x: int, w: int, rng: np.random.Generator, *, n: int = DEFAULT_QUBITS,
            label: bytes = b"", branch: int = 0) -> UnclonableProofCrs:
    handle, serial = note_gen(authority, n)
    inst = _instance(crs, x, serial, label)
    return UnclonableProofCrs(handle, serial, simext_prove(params, oracle, crs.simext, inst, w, rng,
                                                          branch=branch))


def u_verify(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, crs: UCrs,
             x: int, proof, *, label: bytes = b"") -> bool:
    """Money verification, then the classical proof.  Raises UnknownSerial
    for a serial the money scheme never issued."""
    if not isinstance(proof, UnclonableProofCrs) or not isinstance(proof.s, bytes):
        return False
    if not ver(authority, proof.note, proof.s):
        return False
    return simext_verify(params, oracle, crs.simext, _instance(crs, x, proof.s, label), proof.pi)


def u_sim(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, crs: UCrs,
          td: UTrapdoor, x: int, rng: np.random.Generator, *, n: int = DEFAULT_QUBITS,
          label: bytes = b"") -> UnclonableProofCrs:
    handle, serial = note_gen(authority, n)
    inst = _instance(crs, x, serial, label)
    return UnclonableProofCrs(handle, serial, simext_sim(params, oracle, crs.simext, td.simext, inst, rng))


def u_ext(params: GroupParams, crs: UCrs, td: UTrapdoor, x: int, proof: UnclonableProofCrs,
          *, label: bytes = b"") -> int:
    return simext_ext(params, crs.simext, td.simext, _instance(crs, x, proof.s, label), proof.pi)


# --- ROM model -----------------------------------------------------------------

def rom_point(x: int, alpha, serial: bytes, label: bytes = b"") -> bytes:
    return ROM_TAG + encode((x, alpha, serial, label))


def rom_prove(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, x: int, w: int,
              rng: np.random.Generator, *, n: int = DEFAULT_QUBITS,
              label: bytes = b"") -> UnclonableProofRom:
    handle, serial = note_gen(authority, n)
    alpha, state = sigma.commit_phase(params, Dlog(x), w, rng)
    beta = hash_to_scalar(params, oracle.query(rom_point(x, alpha, serial, label)))
    return UnclonableProofRom(handle, serial, alpha, beta, state.respond(beta))


def _rom_classical_ok(params: GroupParams, oracle: Oracle, x: int, proof, label: bytes) -> bool:
    try:
        point = rom_point(x, proof.alpha, proof.s, label)
    except (TypeError, ValueError):
        return False
    if proof.beta != hash_to_scalar(params, oracle.query(point)):
        return False
    return sigma.verify(params, Dlog(x), SigmaTranscript(proof.alpha, proof.beta, proof.gamma))


def rom_verify(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, x: int, proof,
               *, label: bytes = b"") -> bool:
    if not isinstance(proof, UnclonableProofRom) or not isinstance(proof.s, bytes):
        return False
    if not ver(authority, proof.note, proof.s):
        return False
    return _rom_classical_ok(params, oracle, x, proof, label)


def rom_sim(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, x: int,
            rng: np.random.Generator, *, n: int = DEFAULT_QUBITS,
            label: bytes = b"") -> UnclonableProofRom:
    """Fresh note, simulated transcript, oracle programmed at (x, alpha, s)."""
    handle, serial = note_gen(authority, n)
    digest = rng.bytes(DIGEST_BYTES)
    beta = hash_to_scalar(params, digest)
    alpha, gamma = sigma.simulate(params, Dlog(x), beta, rng)
    oracle.program(rom_point(x, alpha, serial, label), digest)
    return UnclonableProofRom(handle, serial, alpha, beta, gamma)


def rom_extract(params: GroupParams, adversary: Callable[[Oracle, np.random.Generator], object], *,
                label: bytes = b"", seed=None, retries: int = FORK_RETRIES,
                oracle: Oracle | None = None, fork_digests=None) -> int:
    """Fork ``adversary`` at the challenge point of the proof it outputs.

    The adversary returns ``(x, UnclonableProofRom)``; only the classical part
    is checked, the note plays no role in extraction.
    """
    def point_of(out):
        try:
            x, proof = out
            return rom_point(x, proof.alpha, proof.s, label)
        except (TypeError, ValueError, AttributeError):
            return None

    def accepts(out, orc):
        x, proof = out
        return isinstance(proof, UnclonableProofRom) and _rom_classical_ok(params, orc, x, proof, label)

    def combine(o1, _orc1, o2, _orc2):
        x, p1 = o1
        _, p2 = o2
        t1 = SigmaTranscript(p1.alpha, p1.beta, p1.gamma)
        t2 = SigmaTranscript(p2.alpha, p2.beta, p2.gamma)
        return sigma.extract_special_soundness(params, Dlog(x), t1, t2)

    return forking_extract(adversary, point_of, accepts, combine, seed=seed, retries=retries,
                           oracle=oracle, fork_digests=fork_digests,
                           skip_programmed=oracle is None)


# --- a common face for both models ---------------------------------------------------

class CrsScheme:
    """CRS-model proofs bound to one (crs, oracle, authority)."""
    name = "crs"

    def __init__(self, params: GroupParams, oracle: Oracle, authority: MoneyAuthority,
                 crs: UCrs, td: UTrapdoor | None = None, *, n: int = DEFAULT_QUBITS,
                 label: bytes = b""):
        self.params, self.oracle, self.authority = params, oracle, authority
        self.crs, self.td, self.n, self.label = crs, td, n, label

    @classmethod
    def setup(cls, params, rng, *, n=DEFAULT_QUBITS, label=b"", tag=SIMEXT_TAG, key=None):
        crs, td = u_setup(params, rng, tag)
        return cls(params, Oracle(rng, key=key), MoneyAuthority(rng), crs, td, n=n, label=label)

    @property
    def crs_bytes(self) -> bytes:
        return encode(self.crs)

    def prove(self, x, w, rng):
        return u_prove(self.params, self.oracle, self.authority, self.crs, x, w, rng,
                       n=self.n, label=self.label)

    def verify(self, x, proof) -> bool:
        return u_verify(self.params, self.oracle, self.authority, self.crs, x, proof, label=self.label)

    def sim(self, x, rng):
        return u_sim(self.params, self.oracle, self.authority, self.crs, self.td, x, rng,
                     n=self.n, label=self.label)

    def ext(self, x, proof) -> int:
        return u_ext(self.params, self.crs, self.td, x, proof, label=self.label)

    def with_proof(self, proof, note: NoteHandle):
        return UnclonableProofCrs(note, proof.s, proof.pi)


class RomScheme:
    """ROM-model proofs bound to one (oracle, authority)."""
    name = "rom"
    crs = None
    crs_bytes = b""

    def __init__(self, params: GroupParams, oracle: Oracle, authority: MoneyAuthority, *,
                 n: int = DEFAULT_QUBITS, label: bytes = b""):
        self.params, self.oracle, self.authority = params, oracle, authority
        self.n, self.label = n, label

    @classmethod
    def setup(cls, params, rng, *, n=DEFAULT_QUBITS, label=b"", key=None):
        return cls(params, Oracle(rng, key=key), MoneyAuthority(rng), n=n, label=label)

    def prove(self, x, w, rng):
        return rom_prove(self.params, self.oracle, self.authority, x, w, rng, n=self.n, label=self.label)

    def verify(self, x, proof) -> bool:
        return rom_verify(self.params, self.oracle, self.authority, x, proof, label=self.label)

    def sim(self, x, rng):
        return rom_sim(self.params, self.oracle, self.authority, x, rng, n=self.n, label=self.label)

    def with_proof(self, proof, note: NoteHandle):
        return UnclonableProofRom(note, proof.s, proof.alpha, proof.beta, proof.gamma)


def safe_verify(scheme, x, proof) -> bool:
    """Verification where an unknown serial counts as rejection."""
    try:
        return scheme.verify(x, proof)
    except UnknownSerial:
        return False


# --- cloning extractors ------------------------------------------------------------

@dataclass
class GameView:
    """Everything an adversary gets: the scheme's public face, k-1 proofs, and k."""
    scheme: object
    inputs: list
    k: int


def _check_outputs(outs, k):
    if not isinstance(outs, (list, tuple)) or len(outs) != k:
        raise AdversaryMalformed(f"expected {k} outputs, got {outs!r:.60}")
    for o in outs:
        if not isinstance(o, tuple) or len(o) != 2:
            raise AdversaryMalformed("each output must be an (x, proof) pair")


def clone_extractor_E(params: GroupParams, adversary, x_list, x, rng: np.random.Generator, *,
                      n: int = DEFAULT_QUBITS, label: bytes = b"", tag: bytes = SIMEXT_TAG) -> int:
    """CRS model: simulate k-1 proofs, run the adversary, extract from a uniform output.

    Returns the decrypted value, which the caller checks against ``x``.
    """
    k = len(x_list) + 1
    scheme = CrsScheme.setup(params, rng, n=n, label=label, tag=tag)
    inputs = [(xi, scheme.sim(xi, rng)) for xi in x_list]
    outs = adversary(GameView(scheme, inputs, k), rng)
    _check_outputs(outs, k)
    j = int(rng.integers(k))
    xj, pj = outs[j]
    if not isinstance(pj, UnclonableProofCrs) or not isinstance(pj.pi, SimExtProof):
        raise ExtractionFailed("chosen output is not a proof")
    try:
        return scheme.ext(xj, pj)
    except (DecodeError, AttributeError, TypeError) as exc:
        raise ExtractionFailed(f"decryption failed: {exc}") from exc


def rom_clone_extractor(params: GroupParams, adversary, x_list, x, rng: np.random.Generator, *,
                        n: int = DEFAULT_QUBITS, label: bytes = b"",
                        retries: int = FORK_RETRIES) -> int:
    """ROM model: the same recipe, extracting from the chosen output by forking."""
    k = len(x_list) + 1
    seed = int(rng.integers(2 ** 63))

    def run(oracle, arng):
        scheme = RomScheme(params, oracle, MoneyAuthority(arng), n=n, label=label)
        inputs = [(xi, scheme.sim(xi, arng)) for xi in x_list]
        outs = adversary(GameView(scheme, inputs, k), arng)
        _check_outputs(outs, k)
        return outs[int(arng.integers(k))]

    return rom_extract(params, run, label=label, seed=seed, retries=retries)


def amplify_extractor(E: Callable, adversary_factory: Callable, x_list, x, budget: int, *,
                      params: GroupParams, rng: np.random.Generator) -> int:
    """Run ``E`` against fresh adversaries until a witness for ``x`` comes out."""
    for _ in range(budget):
        try:
            w = E(adversary_factory(), x_list, x, rng)
        except (ExtractionFailed, AdversaryMalformed):
            continue
        if isinstance(w, int) and params.pow(params.g, w) == x:
            return w
    raise ExtractionFailed(f"no witness after {budget} attempts")


# --- money from unclonable proofs ------------------------------------------------------

def money_from_nizk_gen(scheme, hard, rng: np.random.Generator) -> Banknote:
    """Sample a hard instance and prove it; the proof is the banknote."""
    x, w = hard.sample(rng)
    rho = scheme.prove(x, w, rng)
    s = (scheme.crs_bytes, x) if scheme.name == "crs" else x
    return Banknote(rho, s)


def money_from_nizk_ver(scheme, note: Banknote) -> bool:
    if scheme.name == "crs":
        if not isinstance(note.s, tuple) or len(note.s) != 2 or note.s[0] != scheme.crs_bytes:
            return False
        x = note.s[1]
    else:
        x = note.s
    return safe_verify(scheme, x, note.rho)
