"""Sigma protocols over the discrete-log family, with AND/OR composition.

All atoms are linear relations ``target_j = prod_l base_{j,l}^{w_l}`` and share
one engine (commit, respond, verify, simulate, special-soundness extraction).
The concrete atoms are

* ``Dlog``        x = g^w
* ``CommitOpen``  c = Com(s; z):  c1 = g^z and c2 g^-s = h^z
* ``LinearEnc``   C = (g^U, pk^U g^z) and target = base^z for each listed pair
* ``EncryptsBit`` (a, b) = (g^u, pk^u g^bit)
* ``BitValid``    sugar for Or(EncryptsBit(.., 0), EncryptsBit(.., 1))

Challenges live in Z_q.  OR uses additive challenge splitting; the left
sub-challenge travels inside gamma.  Every commitment message carries a
16-byte random salt that verification ignores, so honest commitments never
repeat.

Witness shapes: atom -> tuple of scalars (a bare int is accepted for
one-scalar atoms), And -> tuple of child witnesses, Or -> (branch, witness),
BitValid -> (bit, u).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .encoding import register
from .errors import NotAFork, StateReuse, WitnessMismatch
from .group import GroupParams, random_scalar

SALT_BYTES = 16


@register(0x20)
@dataclass(frozen=True)
class Dlog:
    x: int


@register(0x21)
@dataclass(frozen=True)
class CommitOpen:
    c1: int
    c2: int
    s: int


@register(0x22)
@dataclass(frozen=True)
class LinearEnc:
    """Witness (U, z).  ``targets`` is a tuple of (target, base) pairs."""
    ca: int
    cb: int
    pk: int
    targets: tuple


@register(0x23)
@dataclass(frozen=True)
class BitValid:
    a: int
    b: int
    pk: int


@register(0x24)
@dataclass(frozen=True)
class EncryptsBit:
    a: int
    b: int
    pk: int
    bit: int


@register(0x25)
@dataclass(frozen=True)
class And:
    children: tuple


@register(0x26)
@dataclass(frozen=True)
class Or:
    left: object
    right: object


@register(0x27)
@dataclass(frozen=True)
class Alpha:
    core: tuple
    salt: bytes


@register(0x28)
@dataclass(frozen=True)
class SigmaTranscript:
    alpha: Alpha
    beta: int
    gamma: tuple


@register(0x29)
@dataclass(frozen=True)
class AugmentedStatement:
    """Statement plus a serial drawn from the money scheme, sent alongside alpha."""
    inner: object
    serial: bytes

    def __post_init__(self):
        if not self.serial:
            raise ValueError("serial must be nonempty")


_ATOMS = (Dlog, CommitOpen, LinearEnc, EncryptsBit)


def _expand(stmt):
    if isinstance(stmt, BitValid):
        return Or(EncryptsBit(stmt.a, stmt.b, stmt.pk, 0), EncryptsBit(stmt.a, stmt.b, stmt.pk, 1))
    return stmt


def _expand_wit(stmt, wit):
    if isinstance(stmt, BitValid):
        bit, u = wit
        return bit, (u,)
    return wit


def _form(params: GroupParams, atom):
    """(number of witness scalars, [(target, ((base, index), ...)), ...])"""
    g, h = params.g, params.h
    if isinstance(atom, Dlog):
        return 1, [(atom.x, ((g, 0),))]
    if isinstance(atom, CommitOpen):
        return 1, [(atom.c1, ((g, 0),)),
                   (params.mul(atom.c2, params.inv(params.pow(g, atom.s))), ((h, 0),))]
    if isinstance(atom, LinearEnc):
        eqs = [(atom.ca, ((g, 0),)), (atom.cb, ((atom.pk, 0), (g, 1)))]
        eqs += [(t, ((b, 1),)) for t, b in atom.targets]
        return 2, eqs
    if isinstance(atom, EncryptsBit):
        b = atom.b if atom.bit == 0 else params.div(atom.b, g)
        return 1, [(atom.a, ((g, 0),)), (b, ((atom.pk, 0),))]
    raise TypeError(f"not a sigma atom: {type(atom).__name__}")


def _atom_elements(atom) -> list[int]:
    if isinstance(atom, Dlog):
        return [atom.x]
    if isinstance(atom, CommitOpen):
        return [atom.c1, atom.c2]
    if isinstance(atom, LinearEnc):
        return [atom.ca, atom.cb, atom.pk] + [e for pair in atom.targets for e in pair]
    return [atom.a, atom.b, atom.pk]


def _lin(params: GroupParams, terms, scalars) -> int:
    acc = 1
    for base, idx in terms:
        acc = acc * params.pow(base, scalars[idx]) % params.p
    return acc


def _as_tuple(wit) -> tuple:
    return (wit,) if isinstance(wit, int) else tuple(wit)


# --- relation ----------------------------------------------------------------

def holds(params: GroupParams, stmt, wit) -> bool:
    """Whether ``wit`` is a witness for ``stmt``."""
    try:
        return _holds(params, _expand(stmt), _expand_wit(stmt, wit))
    except (TypeError, ValueError, IndexError):
        return False


def _holds(params, stmt, wit) -> bool:
    if isinstance(stmt, _ATOMS):
        n, eqs = _form(params, stmt)
        w = _as_tuple(wit)
        if len(w) != n:
            return False
        return all(t == _lin(params, terms, w) for t, terms in eqs)
    if isinstance(stmt, And):
        return len(wit) == len(stmt.children) and all(
            holds(params, c, w) for c, w in zip(stmt.children, wit))
    if isinstance(stmt, Or):
        branch, w = wit
        if branch not in (0, 1):
            return False
        return holds(params, (stmt.left, stmt.right)[branch], w)
    raise TypeError(f"unknown statement node {type(stmt).__name__}")


# --- prover ----------------------------------------------------------------

class ProverState:
    """Nonces held between commit and respond.  Single use."""

    def __init__(self, params: GroupParams, stmt, tree):
        self.params = params
        self.stmt = stmt
        self._tree = tree
        self.used = False

    def respond(self, beta: int) -> tuple:
        if self.used:
            raise StateReuse("prover state already answered a challenge")
        self.used = True
        gamma = _respond(self.params, self.stmt, self._tree, beta % self.params.q)
        self._tree = None
        return gamma


def commit_phase(params: GroupParams, stmt, wit, rng: np.random.Generator, *,
                 nonces: Sequence[int] | None = None,
                 salt: bytes | None = None) -> tuple[Alpha, ProverState]:
    """First prover message.  ``nonces`` (depth first) pins the randomness for tests."""
    if not holds(params, stmt, wit):
        raise WitnessMismatch(f"witness does not satisfy {type(stmt).__name__}")
    it = iter(nonces) if nonces is not None else None
    core, tree = _commit(params, stmt, wit, rng, it)
    if salt is None:
        salt = rng.bytes(SALT_BYTES)
    return Alpha(core, salt), ProverState(params, stmt, tree)


def _nonce(params, rng, it):
    return next(it) % params.q if it is not None else random_scalar(params, rng)


def _commit(params, stmt, wit, rng, it):
    stmt, wit = _expand(stmt), _expand_wit(stmt, wit)
    if isinstance(stmt, _ATOMS):
        n, eqs = _form(params, stmt)
        ks = tuple(_nonce(params, rng, it) for _ in range(n))
        core = tuple(_lin(params, terms, ks) for _, terms in eqs)
        return core, ("atom", ks, _as_tuple(wit))
    if isinstance(stmt, And):
        parts = [_commit(params, c, w, rng, it) for c, w in zip(stmt.children, wit)]
        return tuple(p[0] for p in parts), ("and", [p[1] for p in parts])
    if isinstance(stmt, Or):
        branch, w = wit
        real, other = (stmt.left, stmt.right) if branch == 0 else (stmt.right, stmt.left)
        c_sim = random_scalar(params, rng)
        a_sim, g_sim = _simulate(params, other, c_sim, rng, None)
        a_real, st_real = _commit(params, real, w, rng, it)
        core = (a_real, a_sim) if branch == 0 else (a_sim, a_real)
        return core, ("or", branch, c_sim, st_real, g_sim)
    raise TypeError(f"unknown statement node {type(stmt).__name__}")


def _respond(params, stmt, tree, beta):
    stmt = _expand(stmt)
    q = params.q
    kind = tree[0]
    if kind == "atom":
        _, ks, w = tree
        return tuple((k + beta * wi) % q for k, wi in zip(ks, w))
    if kind == "and":
        return tuple(_respond(params, c, t, beta) for c, t in zip(stmt.children, tree[1]))
    _, branch, c_sim, st_real, g_sim = tree
    c_real = (beta - c_sim) % q
    real = stmt.left if branch == 0 else stmt.right
    g_real = _respond(params, real, st_real, c_real)
    if branch == 0:
        return (c_real, g_real, g_sim)
    return (c_sim, g_sim, g_real)


def respond(state: ProverState, beta: int) -> tuple:
    return state.respond(beta)


# --- verifier ----------------------------------------------------------------

def verify(params: GroupParams, stmt, transcript: SigmaTranscript) -> bool:
    """Accept iff the transcript satisfies every equation; the salt is ignored."""
    try:
        if not isinstance(transcript, SigmaTranscript) or not isinstance(transcript.alpha, Alpha):
            return False
        if not params.is_scalar(transcript.beta):
            return False
        return _verify(params, stmt, transcript.alpha.core, transcript.beta, transcript.gamma)
    except (TypeError, ValueError, IndexError, AttributeError):
        return False


def _verify(params, stmt, core, beta, gamma) -> bool:
    stmt = _expand(stmt)
    if isinstance(stmt, _ATOMS):
        n, eqs = _form(params, stmt)
        if len(core) != len(eqs) or len(gamma) != n:
            return False
        if not all(params.is_scalar(s) for s in gamma):
            return False
        # core elements need only be in range: the equation forces them into
        # the subgroup once the statement's elements are
        if not all(isinstance(e, int) and 0 < e < params.p for e in core):
            return False
        if not all(params.is_element(e) for e in _atom_elements(stmt)):
            return False
        for (target, terms), a in zip(eqs, core):
            if _lin(params, terms, gamma) != a * params.pow(target, beta) % params.p:
                return False
        return True
    if isinstance(stmt, And):
        if len(core) != len(stmt.children) or len(gamma) != len(stmt.children):
            return False
        return all(_verify(params, c, a, beta, g) for c, a, g in zip(stmt.children, core, gamma))
    if isinstance(stmt, Or):
        if len(core) != 2 or len(gamma) != 3 or not params.is_scalar(gamma[0]):
            return False
        c_left = gamma[0]
        c_right = (beta - c_left) % params.q
        return (_verify(params, stmt.left, core[0], c_left, gamma[1])
                and _verify(params, stmt.right, core[1], c_right, gamma[2]))
    raise TypeError(f"unknown statement node {type(stmt).__name__}")


# --- simulator ---------------------------------------------------------------

def simulate(params: GroupParams, stmt, beta: int, rng: np.random.Generator, *,
             responses: Sequence[int] | None = None,
             salt: bytes | None = None) -> tuple[Alpha, tuple]:
    """Accepting (alpha, gamma) for challenge ``beta`` without a witness."""
    it = iter(responses) if responses is not None else None
    core, gamma = _simulate(params, stmt, beta % params.q, rng, it)
    if salt is None:
        salt = rng.bytes(SALT_BYTES)
    return Alpha(core, salt), gamma


def _simulate(params, stmt, beta, rng, it):
    stmt = _expand(stmt)
    if isinstance(stmt, _ATOMS):
        n, eqs = _form(params, stmt)
        gamma = tuple(_nonce(params, rng, it) for _ in range(n))
        core = tuple(
            _lin(params, terms, gamma) * params.inv(params.pow(t, beta)) % params.p
            for t, terms in eqs)
        return core, gamma
    if isinstance(stmt, And):
        parts = [_simulate(params, c, beta, rng, it) for c in stmt.children]
        return tuple(p[0] for p in parts), tuple(p[1] for p in parts)
    if isinstance(stmt, Or):
        c_left = random_scalar(params, rng)
        a_l, g_l = _simulate(params, stmt.left, c_left, rng, it)
        a_r, g_r = _simulate(params, stmt.right, (beta - c_left) % params.q, rng, it)
        return (a_l, a_r), (c_left, g_l, g_r)
    raise TypeError(f"unknown statement node {type(stmt).__name__}")


# --- special soundness -------------------------------------------------------

def extract_special_soundness(params: GroupParams, stmt, t1: SigmaTranscript, t2: SigmaTranscript):
    """Witness from two accepting transcripts sharing alpha with distinct challenges."""
    if t1.alpha != t2.alpha:
        raise NotAFork("commitments differ")
    if t1.beta % params.q == t2.beta % params.q:
        raise NotAFork("challenges are equal")
    if not (verify(params, stmt, t1) and verify(params, stmt, t2)):
        raise NotAFork("a transcript does not verify")
    wit = _extract(params, stmt, t1.beta, t1.gamma, t2.beta, t2.gamma)
    if not holds(params, stmt, wit):
        raise NotAFork("extracted value is not a witness")
    return wit


def _extract(params, stmt, b1, g1, b2, g2):
    q = params.q
    orig = stmt
    stmt = _expand(stmt)
    if isinstance(stmt, _ATOMS):
        inv = pow((b1 - b2) % q, -1, q)
        w = tuple((x - y) * inv % q for x, y in zip(g1, g2))
        return w[0] if len(w) == 1 else w
    if isinstance(stmt, And):
        return tuple(_extract(params, c, b1, x, b2, y) for c, x, y in zip(stmt.children, g1, g2))
    c1, c2 = g1[0], g2[0]
    if c1 != c2:
        wit = (0, _extract(params, stmt.left, c1, g1[1], c2, g2[1]))
    else:
        wit = (1, _extract(params, stmt.right, (b1 - c1) % q, g1[2], (b2 - c2) % q, g2[2]))
    if isinstance(orig, BitValid):
        return wit
    return wit


def run(params: GroupParams, stmt, wit, beta: int, rng: np.random.Generator) -> SigmaTranscript:
    """Honest interactive execution against a fixed challenge."""
    alpha, state = commit_phase(params, stmt, wit, rng)
    return SigmaTranscript(alpha, beta % params.q, state.respond(beta))
