"""Unclonable signatures of knowledge and revocable anonymous credentials.

A signature on ``m`` is an unclonable CRS-model proof whose statement carries
``m`` as its label, under its own oracle domain.  A credential is a signature
on the access string; revoking means handing the credential back.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Collection

import numpy as np

from .encoding import register
from .errors import UnknownSerial, WitnessMismatch
from .group import GroupParams
from .money import DEFAULT_QUBITS, MoneyAuthority, NoteHandle
from .oracle import Oracle
from .unclonable import (UCrs, UTrapdoor, UnclonableProofCrs, u_ext, u_prove, u_setup, u_sim,
                         u_verify)

SOK_TAG = b"SOK/v1"


@register(0x60)
@dataclass(frozen=True)
class SignatureOfKnowledge:
    sigma: UnclonableProofCrs


def _message(m) -> bytes:
    if isinstance(m, str):
        m = m.encode("utf-8")
    if not isinstance(m, bytes) or not m:
        raise ValueError("message must be nonempty bytes")
    return m


def sok_setup(params: GroupParams, rng: np.random.Generator) -> tuple[UCrs, UTrapdoor]:
    return u_setup(params, rng, tag=SOK_TAG)


def sok_sign(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, crs: UCrs,
             x: int, w: int, m, rng: np.random.Generator, *,
             n: int = DEFAULT_QUBITS) -> SignatureOfKnowledge:
    return SignatureOfKnowledge(u_prove(params, oracle, authority, crs, x, w, rng, n=n, label=_message(m)))


def sok_verify(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, crs: UCrs,
               x: int, m, sig) -> bool:
    if not isinstance(sig, SignatureOfKnowledge):
        return False
    try:
        return u_verify(params, oracle, authority, crs, x, sig.sigma, label=_message(m))
    except UnknownSerial:
        return False


def sok_sim(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, crs: UCrs,
            td: UTrapdoor, x: int, m, rng: np.random.Generator, *,
            n: int = DEFAULT_QUBITS) -> SignatureOfKnowledge:
    return SignatureOfKnowledge(u_sim(params, oracle, authority, crs, td, x, rng, n=n, label=_message(m)))


def sok_ext(params: GroupParams, crs: UCrs, td: UTrapdoor, x: int, m, sig: SignatureOfKnowledge) -> int:
    return u_ext(params, crs, td, x, sig.sigma, label=_message(m))


# --- credentials -------------------------------------------------------------------

@register(0x61)
@dataclass(frozen=True)
class Nym:
    crs: UCrs
    x: int


@register(0x62)
@dataclass(frozen=True)
class IssuerSecret:
    td: UTrapdoor
    w: int


@register(0x63)
@dataclass(frozen=True)
class Credential:
    access: str
    sig: SignatureOfKnowledge

    @property
    def note(self) -> NoteHandle:
        return self.sig.sigma.note

    def with_note(self, note: NoteHandle) -> "Credential":
        return Credential(self.access, SignatureOfKnowledge(replace(self.sig.sigma, note=note)))


def issuer_keygen(params: GroupParams, hard, rng: np.random.Generator) -> tuple[Nym, IssuerSecret]:
    crs, td = sok_setup(params, rng)
    x, w = hard.sample(rng)
    return Nym(crs, x), IssuerSecret(td, w)


def issue(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, nym: Nym,
          sk: IssuerSecret, access: str, rng: np.random.Generator, *,
          allowed: Collection[str] | None = None, n: int = DEFAULT_QUBITS) -> Credential:
    if allowed is not None and access not in allowed:
        raise ValueError(f"access {access!r} is not offered")
    if params.pow(params.g, sk.w) != nym.x:
        raise WitnessMismatch("issuer secret does not match the nym")
    return Credential(access, sok_sign(params, oracle, authority, nym.crs, nym.x, sk.w, access, rng, n=n))


def verify_cred(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, nym: Nym,
                access: str, cred) -> bool:
    if not isinstance(cred, Credential) or cred.access != access:
        return False
    return sok_verify(params, oracle, authority, nym.crs, nym.x, access, cred.sig)


def revoke(cred: Credential) -> str:
    """The revocation notice is the access string itself."""
    return cred.access


def prove_revocation(cred: Credential) -> Credential:
    """Surrender the credential, note and all."""
    return cred


def ver_revoke(params: GroupParams, oracle: Oracle, authority: MoneyAuthority, nym: Nym,
               notice: str, proof) -> bool:
    return verify_cred(params, oracle, authority, nym, notice, proof)
