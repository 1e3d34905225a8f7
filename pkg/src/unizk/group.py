"""Prime-order group arithmetic, commitments and bitwise exponent El-Gamal.

Group elements and scalars are plain Python ints; ``GroupParams`` carries the
modulus and does the arithmetic.  Two profiles exist: ``FIXTURE`` (p=47, q=23),
small enough to enumerate, and ``production_params()`` (2048-bit p, 256-bit q)
derived deterministically from a hash so anyone can regenerate it.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import NewType

import gmpy2
import numpy as np

from .encoding import register
from .errors import DecodeError

Scalar = NewType("Scalar", int)
GroupElement = NewType("GroupElement", int)


@register(0x10)
@dataclass(frozen=True)
class GroupParams:
    p: int
    q: int
    g: int
    h: int
    name: str = ""

    def pow(self, base: int, exp: int) -> int:
        exp %= self.q
        if self.p.bit_length() > 256:
            return int(gmpy2.powmod(base, exp, self.p))
        return pow(base, exp, self.p)

    def mul(self, *elems: int) -> int:
        acc = 1
        for e in elems:
            acc = acc * e % self.p
        return acc

    def inv(self, elem: int) -> int:
        return pow(elem, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * pow(b, -1, self.p) % self.p

    def is_element(self, elem) -> bool:
        if not isinstance(elem, int) or isinstance(elem, bool):
            return False
        if not 0 < elem < self.p:
            return False
        return _in_subgroup(self.p, self.q, elem)

    def is_scalar(self, s) -> bool:
        return isinstance(s, int) and not isinstance(s, bool) and 0 <= s < self.q

    @property
    def bit_width(self) -> int:
        return self.q.bit_length()

    def validate(self) -> None:
        if not gmpy2.is_prime(self.q, 50):
            raise ValueError("q is not prime")
        if (self.p - 1) % self.q:
            raise ValueError("q does not divide p-1")
        if self.g == 1 or pow(self.g, self.q, self.p) != 1:
            raise ValueError("g does not generate the order-q subgroup")
        if not self.is_element(self.h):
            raise ValueError("h is outside the subgroup")


@lru_cache(maxsize=1 << 14)
def _in_subgroup(p: int, q: int, elem: int) -> bool:
    if p.bit_length() > 256:
        return gmpy2.powmod(elem, q, p) == 1
    return pow(elem, q, p) == 1


# h = 34 = 2^7 mod 47: its discrete log is known, so this profile is for
# exact enumeration only, never for hiding.
FIXTURE = GroupParams(p=47, q=23, g=2, h=34, name="fixture")


def _expand(label: bytes, counter: int, nbits: int) -> int:
    out = b""
    block = 0
    while len(out) * 8 < nbits:
        out += hashlib.sha256(
            b"unizk/params/" + label + counter.to_bytes(4, "big") + block.to_bytes(4, "big")
        ).digest()
        block += 1
    return int.from_bytes(out, "big") >> (len(out) * 8 - nbits)


def _hash_to_subgroup(p: int, q: int, label: bytes) -> int:
    cofactor = (p - 1) // q
    ctr = 0
    while True:
        cand = int(gmpy2.powmod(_expand(label, ctr, p.bit_length() + 64) % p, cofactor, p))
        if cand not in (0, 1):
            return cand
        ctr += 1


@lru_cache(maxsize=None)
def generate_params(pbits: int = 2048, qbits: int = 256) -> GroupParams:
    """Deterministic Schnorr group: q = nextprime(H("q")), p = kq + 1 prime."""
    q = int(gmpy2.next_prime(_expand(b"q", 0, qbits) | (1 << (qbits - 1))))
    ctr = 0
    while True:
        x = _expand(b"p", ctr, pbits) | (1 << (pbits - 1))
        p = x - ((x - 1) % (2 * q))
        if p.bit_length() == pbits and gmpy2.is_prime(p, 50):
            break
        ctr += 1
    g = _hash_to_subgroup(p, q, b"g")
    h = _hash_to_subgroup(p, q, b"h")
    return GroupParams(p=p, q=q, g=g, h=h, name=f"production-{pbits}-{qbits}")


def production_params() -> GroupParams:
    return generate_params(2048, 256)


def get_params(profile: str) -> GroupParams:
    if profile == "fixture":
        return FIXTURE
    if profile == "production":
        return production_params()
    raise ValueError(f"unknown profile {profile!r}")


# --- randomness -----------------------------------------------------------

def randbelow(rng: np.random.Generator, n: int) -> int:
    """Uniform integer in [0, n) by rejection over ``rng.bytes``."""
    nbits = (n - 1).bit_length()
    if nbits == 0:
        return 0
    nbytes = (nbits + 7) // 8
    mask = (1 << nbits) - 1
    while True:
        v = int.from_bytes(rng.bytes(nbytes), "big") & mask
        if v < n:
            return v


def random_scalar(params: GroupParams, rng: np.random.Generator, nonzero: bool = False) -> int:
    if nonzero:
        return 1 + randbelow(rng, params.q - 1)
    return randbelow(rng, params.q)


def hash_to_scalar(params: GroupParams, data: bytes) -> int:
    """Deterministic map from bytes to [0, q), uniform by rejection sampling."""
    nbits = params.q.bit_length()
    nbytes = (nbits + 7) // 8
    ctr = 0
    while True:
        stream = b""
        block = 0
        while len(stream) < nbytes:
            stream += hashlib.sha256(
                b"H2S/" + ctr.to_bytes(4, "big") + block.to_bytes(4, "big") + data
            ).digest()
            block += 1
        v = int.from_bytes(stream[:nbytes], "big") >> (nbytes * 8 - nbits)
        if v < params.q:
            return v
        ctr += 1


# --- commitments ------------------------------------------------------------

@register(0x11)
@dataclass(frozen=True)
class Commitment:
    c1: int
    c2: int


def commit(params: GroupParams, m: int, r: int) -> Commitment:
    """Perfectly binding commitment (g^r, g^m h^r)."""
    return Commitment(params.pow(params.g, r), params.mul(params.pow(params.g, m), params.pow(params.h, r)))


# --- encryption -------------------------------------------------------------

@register(0x12)
@dataclass(frozen=True)
class KeyPair:
    sk: int
    pk: int


@register(0x13)
@dataclass(frozen=True)
class BitCiphertext:
    a: int
    b: int


@register(0x14)
@dataclass(frozen=True)
class WitnessCiphertext:
    bits: tuple

    def __len__(self):
        return len(self.bits)


def pke_keygen(params: GroupParams, rng: np.random.Generator) -> KeyPair:
    sk = random_scalar(params, rng, nonzero=True)
    return KeyPair(sk=sk, pk=params.pow(params.g, sk))


def enc_bit(params: GroupParams, pk: int, bit: int, u: int) -> BitCiphertext:
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    g = params.g
    return BitCiphertext(params.pow(g, u), params.mul(params.pow(pk, u), g if bit else 1))


def dec_bit(params: GroupParams, sk: int, ct: BitCiphertext) -> int:
    m = params.div(ct.b, params.pow(ct.a, sk))
    if m == 1:
        return 0
    if m == params.g:
        return 1
    raise DecodeError("ciphertext does not encrypt a bit")


def enc_witness(params: GroupParams, pk: int, w: int, rng: np.random.Generator,
                bits: int | None = None) -> tuple[WitnessCiphertext, tuple[int, ...]]:
    """Encrypt ``w`` bit by bit, little endian.  Returns (ciphertext, per-bit randomness)."""
    L = params.bit_width if bits is None else bits
    if L < params.bit_width:
        raise ValueError("bit width smaller than bit length of q")
    if not 0 <= w < params.q:
        raise ValueError("witness out of range")
    us = tuple(random_scalar(params, rng) for _ in range(L))
    cts = tuple(enc_bit(params, pk, (w >> i) & 1, us[i]) for i in range(L))
    return WitnessCiphertext(cts), us


def dec_witness(params: GroupParams, sk: int, ct: WitnessCiphertext) -> int:
    return sum(dec_bit(params, sk, c) << i for i, c in enumerate(ct.bits)) % params.q


def aggregate(params: GroupParams, ct: WitnessCiphertext) -> BitCiphertext:
    """Product of ct_i^(2^i): an encryption of sum b_i 2^i under sum u_i 2^i."""
    p = params.p
    a = b = 1
    # Horner: L squarings instead of L full exponentiations
    for c in reversed(ct.bits):
        a = a * a % p * c.a % p
        b = b * b % p * c.b % p
    return BitCiphertext(a, b)


def brute_force_dlog(params: GroupParams, x: int) -> int | None:
    """Exhaustive discrete log; only sensible on the fixture group."""
    if params.q > 1 << 20:
        raise ValueError("brute force is for small groups only")
    acc = 1
    for w in range(params.q):
        if acc == x:
            return w
        acc = acc * params.g % params.p
    return None
