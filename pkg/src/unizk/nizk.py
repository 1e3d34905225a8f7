"""Fiat-Shamir NIZK over the sigma engine, a forking extractor, and the
encrypt-the-witness simulation-extractable compiler.

FS point: ``tag || encode((crs_bytes, label, stmt, alpha))``; the challenge is
``hash_to_scalar`` of the oracle's answer there.

The compiler proves, for an instance with a linear "tail" relation,

    And(BitValid(ct_0), ..., BitValid(ct_{L-1}), tail(C))

where ``C`` is the aggregate of the bitwise encryption of the witness.  The
trapdoor is the decryption key; the simulator encrypts zero and programs the
oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np

from . import sigma
from .encoding import encode, register
from .errors import ExtractionFailed, NotAFork, WitnessMismatch
from .group import (BitCiphertext, GroupParams, WitnessCiphertext, aggregate,
                    dec_witness, enc_witness, hash_to_scalar, pke_keygen)
from .oracle import DIGEST_BYTES, Oracle, resume
from .sigma import Alpha, And, BitValid, LinearEnc, SigmaTranscript

FS_TAG = b"FS/v1"
SIMEXT_TAG = b"FS/SIMEXT/v1"
FORK_RETRIES = 64


@register(0x40)
@dataclass(frozen=True)
class FsProof:
    alpha: Alpha
    gamma: tuple


def fs_point(tag: bytes, crs_bytes: bytes, stmt, alpha, label: bytes = b"") -> bytes:
    return tag + encode((crs_bytes, label, stmt, alpha))


def fs_challenge(params: GroupParams, oracle: Oracle, point: bytes) -> int:
    return hash_to_scalar(params, oracle.query(point))


def fs_prove(params: GroupParams, oracle: Oracle, tag: bytes, crs_bytes: bytes, stmt, wit,
             rng: np.random.Generator, label: bytes = b"") -> FsProof:
    alpha, state = sigma.commit_phase(params, stmt, wit, rng)
    beta = fs_challenge(params, oracle, fs_point(tag, crs_bytes, stmt, alpha, label))
    return FsProof(alpha, state.respond(beta))


def fs_verify(params: GroupParams, oracle: Oracle, tag: bytes, crs_bytes: bytes, stmt, proof,
              label: bytes = b"") -> bool:
    if not isinstance(proof, FsProof) or not isinstance(proof.alpha, Alpha):
        return False
    try:
        point = fs_point(tag, crs_bytes, stmt, proof.alpha, label)
    except (TypeError, ValueError):
        return False
    beta = fs_challenge(params, oracle, point)
    return sigma.verify(params, stmt, SigmaTranscript(proof.alpha, beta, proof.gamma))


def fs_simulate(params: GroupParams, oracle: Oracle, tag: bytes, crs_bytes: bytes, stmt,
                rng: np.random.Generator, label: bytes = b"") -> FsProof:
    """Simulate, then program the oracle so the proof verifies.

    Raises AlreadyDefined if the point was queried before (salted alphas make
    that a 2^-128 event for honest callers).
    """
    digest = rng.bytes(DIGEST_BYTES)
    beta = hash_to_scalar(params, digest)
    alpha, gamma = sigma.simulate(params, stmt, beta, rng)
    oracle.program(fs_point(tag, crs_bytes, stmt, alpha, label), digest)
    return FsProof(alpha, gamma)


# --- forking ------------------------------------------------------------------

def forking_extract(adversary: Callable[[Oracle, np.random.Generator], object],
                    point_of: Callable[[object], bytes | None],
                    accepts: Callable[[object, Oracle], bool],
                    combine: Callable[[object, Oracle, object, Oracle], object], *,
                    seed=None, retries: int = FORK_RETRIES,
                    oracle: Oracle | None = None,
                    fork_digests: Sequence[bytes] | None = None,
                    skip_programmed: bool = False):
    """Generic rewinding extractor.

    ``adversary(oracle, rng)`` must be a deterministic function of its rng and
    the oracle's answers.  The first run uses ``oracle`` (or a fresh one); each
    fork replays every point defined before the output's challenge point and
    resamples from there on, with the same adversary randomness.
    ``fork_digests`` pins the fork point's answer per attempt (tests only).
    With ``skip_programmed`` a challenge that the simulator programmed fails
    at once: no fork can change it.
    """
    ss = np.random.SeedSequence(seed)
    adv_ss, oracle_ss = ss.spawn(2)
    adv_state = adv_ss.generate_state(4)
    first = oracle if oracle is not None else Oracle(np.random.default_rng(oracle_ss))

    out = adversary(first, np.random.default_rng(adv_state))
    point = point_of(out)
    if point is None:
        raise ExtractionFailed("adversary output is malformed")
    seq = first.defined_seq(point)
    if seq is None:
        raise ExtractionFailed("output challenge was never queried")
    if skip_programmed and first.is_programmed(point):
        raise ExtractionFailed("output challenge was programmed")
    if not accepts(out, first):
        raise ExtractionFailed("adversary output does not verify")
    snap = first.snapshot(seq)

    if fork_digests is not None:
        retries = min(retries, len(fork_digests))
    for i, child in enumerate(oracle_ss.spawn(retries)):
        forked = resume(snap, np.random.default_rng(child))
        if fork_digests is not None:
            forked.program(point, fork_digests[i])
        out2 = adversary(forked, np.random.default_rng(adv_state))
        if point_of(out2) != point or not accepts(out2, forked):
            continue
        try:
            return combine(out, first, out2, forked)
        except NotAFork:
            continue
    raise ExtractionFailed(f"no usable fork in {retries} attempts")


def fs_extract(params: GroupParams, adversary, tag: bytes, crs_bytes: bytes, *,
               stmt_selector: Callable | None = None, seed=None,
               retries: int = FORK_RETRIES, oracle: Oracle | None = None,
               fork_digests: Sequence[bytes] | None = None):
    """Witness for the statement of an FS proof output by ``adversary``.

    The adversary returns ``(stmt, proof)`` or ``(stmt, proof, label)``;
    ``stmt_selector`` maps other output shapes onto that.
    """
    select = stmt_selector or (lambda out: out)

    def parts(out):
        stmt, proof, *rest = select(out)
        return stmt, proof, (rest[0] if rest else b"")

    def point_of(out):
        try:
            stmt, proof, label = parts(out)
            return fs_point(tag, crs_bytes, stmt, proof.alpha, label)
        except (TypeError, ValueError, AttributeError):
            return None

    def accepts(out, orc):
        stmt, proof, label = parts(out)
        return fs_verify(params, orc, tag, crs_bytes, stmt, proof, label)

    def combine(o1, orc1, o2, orc2):
        stmt, p1, label = parts(o1)
        _, p2, _ = parts(o2)
        point = fs_point(tag, crs_bytes, stmt, p1.alpha, label)
        t1 = SigmaTranscript(p1.alpha, fs_challenge(params, orc1, point), p1.gamma)
        t2 = SigmaTranscript(p2.alpha, fs_challenge(params, orc2, point), p2.gamma)
        return sigma.extract_special_soundness(params, stmt, t1, t2)

    return forking_extract(adversary, point_of, accepts, combine, seed=seed, retries=retries,
                           oracle=oracle, fork_digests=fork_digests)


# --- simulation-extractable compiler ----------------------------------------------

@register(0x41)
@dataclass(frozen=True)
class SimExtCrs:
    pk: int
    tag: bytes
    bits: int


@register(0x42)
@dataclass(frozen=True)
class SimExtTrapdoor:
    sk: int


@register(0x43)
@dataclass(frozen=True)
class SimExtProof:
    ct: WitnessCiphertext
    pi: FsProof


class Instance(Protocol):
    """What the compiler needs from an NP instance."""

    def holds(self, params: GroupParams, w: int) -> bool: ...
    def tail(self, params: GroupParams, pk: int, agg: BitCiphertext): ...
    def tail_witness(self, U: int, w: int, branch: int): ...
    def fs_label(self) -> bytes: ...


@register(0x44)
@dataclass(frozen=True)
class DlogInstance:
    x: int

    def holds(self, params, w):
        return params.pow(params.g, w) == self.x

    def tail(self, params, pk, agg):
        return LinearEnc(agg.a, agg.b, pk, ((self.x, params.g),))

    def tail_witness(self, U, w, branch=0):
        return (U, w)

    def fs_label(self):
        return encode(self)


def simext_setup(params: GroupParams, rng: np.random.Generator,
                 tag: bytes = SIMEXT_TAG) -> tuple[SimExtCrs, SimExtTrapdoor]:
    kp = pke_keygen(params, rng)
    return SimExtCrs(kp.pk, tag, params.bit_width), SimExtTrapdoor(kp.sk)


def simext_statement(params: GroupParams, crs: SimExtCrs, inst, ct: WitnessCiphertext):
    bits = tuple(BitValid(c.a, c.b, crs.pk) for c in ct.bits)
    return And(bits + (inst.tail(params, crs.pk, aggregate(params, ct)),))


def _combine_randomness(params: GroupParams, us) -> int:
    return sum(u << i for i, u in enumerate(us)) % params.q


def simext_prove(params: GroupParams, oracle: Oracle, crs: SimExtCrs, inst, w: int,
                 rng: np.random.Generator, *, branch: int = 0) -> SimExtProof:
    """``branch`` selects the tail disjunct for instances that have one; the
    default is the real-witness branch."""
    if branch == 0 and not inst.holds(params, w):
        raise WitnessMismatch("(x, w) not in the relation")
    ct, us = enc_witness(params, crs.pk, w, rng, bits=crs.bits)
    stmt = simext_statement(params, crs, inst, ct)
    wit = tuple(((w >> i) & 1, u) for i, u in enumerate(us))
    wit += (inst.tail_witness(_combine_randomness(params, us), w, branch),)
    pi = fs_prove(params, oracle, crs.tag, encode(crs), stmt, wit, rng, label=inst.fs_label())
    return SimExtProof(ct, pi)


def _well_formed(crs: SimExtCrs, proof) -> bool:
    return (isinstance(proof, SimExtProof) and isinstance(proof.ct, WitnessCiphertext)
            and len(proof.ct.bits) == crs.bits
            and all(isinstance(c, BitCiphertext) for c in proof.ct.bits))


def simext_verify(params: GroupParams, oracle: Oracle, crs: SimExtCrs, inst, proof) -> bool:
    if not _well_formed(crs, proof):
        return False
    try:
        stmt = simext_statement(params, crs, inst, proof.ct)
    except (TypeError, ValueError):
        return False
    return fs_verify(params, oracle, crs.tag, encode(crs), stmt, proof.pi, label=inst.fs_label())


def simext_sim(params: GroupParams, oracle: Oracle, crs: SimExtCrs, td: SimExtTrapdoor, inst,
               rng: np.random.Generator) -> SimExtProof:
    # td is unused: in the FS instantiation the sub-simulator's trapdoor is the
    # ability to program the oracle
    ct, _ = enc_witness(params, crs.pk, 0, rng, bits=crs.bits)
    stmt = simext_statement(params, crs, inst, ct)
    pi = fs_simulate(params, oracle, crs.tag, encode(crs), stmt, rng, label=inst.fs_label())
    return SimExtProof(ct, pi)


def simext_ext(params: GroupParams, crs: SimExtCrs, td: SimExtTrapdoor, inst, proof: SimExtProof) -> int:
    """Decrypt the witness; the caller decides whether it satisfies the relation."""
    return dec_witness(params, td.sk, proof.ct)
