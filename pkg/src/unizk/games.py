"""Security games, built-in adversaries and binomial reporting.

Every runner draws one child seed per trial from ``SeedSequence(seed)``, so a
report is a pure function of its arguments.  Reports carry the exact analytic
success probability when one exists and the z-score against it.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np

from .applications import (SOK_TAG, issue, issuer_keygen, prove_revocation, revoke, ver_revoke,
                           verify_cred)
from .errors import AdversaryMalformed, ExtractionFailed, UnknownSerial
from .group import GroupParams, brute_force_dlog, random_scalar
from .money import (ATTACKS, DEFAULT_QUBITS, MoneyAuthority, attack_fresh_forgery,
                    attack_measure_resend, attack_success_probability, note_gen, ver)
from .nizk import DlogInstance, simext_ext, simext_prove, simext_setup, simext_sim, simext_verify
from .oracle import Oracle
from .unclonable import (CrsScheme, GameView, RomScheme, amplify_extractor, clone_extractor_E,
                         rom_clone_extractor, safe_verify)


class HardDistribution:
    """(g^w, w) with w uniform in [1, q)."""

    def __init__(self, params: GroupParams):
        self.params = params

    def sample(self, rng: np.random.Generator) -> tuple[int, int]:
        w = random_scalar(self.params, rng, nonzero=True)
        return self.params.pow(self.params.g, w), w


def in_relation(params: GroupParams, x: int, w) -> bool:
    return isinstance(w, int) and params.pow(params.g, w) == x


def confirm_witness(params: GroupParams, x: int, w) -> bool:
    """Relation check, plus an exhaustive dlog cross-check on small groups."""
    if not in_relation(params, x, w):
        return False
    if params.q <= 1 << 20:
        return brute_force_dlog(params, x) == w % params.q
    return True


# --- reports -------------------------------------------------------------------

@dataclass
class GameReport:
    game: str
    params: dict
    trials: int
    successes: int
    bound: float | None = None
    counters: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes out of range")

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    @property
    def sigma(self) -> float | None:
        if self.bound is None:
            return None
        return math.sqrt(self.bound * (1 - self.bound) / self.trials)

    @property
    def z(self) -> float | None:
        s = self.sigma
        if not s:
            return None
        return (self.rate - self.bound) / s

    def within(self, nsigma: float = 3.0) -> bool:
        """Rate at most ``nsigma`` binomial deviations above the bound."""
        if self.bound is None:
            raise ValueError("no analytic bound to compare against")
        return self.rate <= self.bound + nsigma * (self.sigma or 0.0)

    def to_dict(self) -> dict:
        return {"game": self.game, "params": self.params, "trials": self.trials,
                "successes": self.successes, "rate": self.rate, "bound": self.bound,
                "z": self.z, "counters": self.counters}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _trial_rngs(seed, trials: int):
    for child in np.random.SeedSequence(seed).spawn(trials):
        yield np.random.default_rng(child)


# --- adversaries --------------------------------------------------------------------

class NullAdversary:
    """Outputs k pieces of garbage."""
    name = "null"

    def __init__(self, aux=None):
        self.aux = aux

    @staticmethod
    def success_bound(n: int) -> float:
        return 0.0

    def __call__(self, view: GameView, rng):
        return [(None, b"\x00")] * view.k


class ClassicalCopier:
    """Copies the classical parts of its first input and splits the note by
    measure-and-resend; passes every other input through."""
    name = "classical-copier"

    def __init__(self, aux=None):
        self.aux = aux

    @staticmethod
    def success_bound(n: int) -> float:
        return attack_success_probability("measure-resend", n)

    def __call__(self, view: GameView, rng):
        x0, p0 = view.inputs[0]
        scheme = view.scheme
        h0, h1 = attack_measure_resend(scheme.authority, p0.note)
        return [(x0, scheme.with_proof(p0, h0)), (x0, scheme.with_proof(p0, h1))] + list(view.inputs[1:])


class HonestReprover:
    """Knows a witness for the target; returns its inputs plus one fresh proof."""
    name = "honest-reprover"

    def __init__(self, aux):
        self.x, self.w = aux["x"], aux["w"]

    success_bound = None

    def __call__(self, view: GameView, rng):
        return list(view.inputs) + [(self.x, view.scheme.prove(self.x, self.w, rng))]


class SurrenderAndCopy:
    """Credential adversary: measure-and-resend the note, surrender one copy,
    keep the other."""
    name = "surrender-and-copy"

    def __init__(self, aux=None):
        self.aux = aux

    @staticmethod
    def success_bound(n: int) -> float:
        return attack_success_probability("measure-resend", n)

    def __call__(self, authority: MoneyAuthority, cred, rng):
        h0, h1 = attack_measure_resend(authority, cred.note)
        return cred.with_note(h0), cred.with_note(h1)


class KeepAndForge:
    """Credential adversary: keep the real note, attach a freshly prepared one to the copy."""
    name = "keep-and-forge"

    def __init__(self, aux=None):
        self.aux = aux

    @staticmethod
    def success_bound(n: int) -> float:
        return attack_success_probability("fresh-forgery", n)

    def __call__(self, authority: MoneyAuthority, cred, rng):
        h0, h1 = attack_fresh_forgery(authority, cred.note)
        return cred.with_note(h0), cred.with_note(h1)


ADVERSARIES = {a.name: a for a in (NullAdversary, ClassicalCopier, HonestReprover, SurrenderAndCopy,
                                   KeepAndForge)}
CREDENTIAL_ADVERSARIES = (SurrenderAndCopy, KeepAndForge)


# --- the (k-1)-to-k predicate --------------------------------------------------------

def clone_predicate(target, in_xs, out_xs, accepted) -> bool:
    """Some J of accepted outputs on the target outnumbers the inputs on it."""
    have = sum(1 for xi in in_xs if xi == target)
    return sum(1 for xj, ok in zip(out_xs, accepted) if xj == target and ok) > have


def clone_predicate_bruteforce(target, in_xs, out_xs, accepted) -> bool:
    """Same event, by enumerating every J within {j : x_j = target}."""
    have = sum(1 for xi in in_xs if xi == target)
    pool = [j for j, xj in enumerate(out_xs) if xj == target]
    for r in range(len(pool) + 1):
        for J in itertools.combinations(pool, r):
            if len(J) > have and all(accepted[j] for j in J):
                return True
    return False


def _judge_outputs(scheme, outs, target):
    """Verify outputs on the target; a note handle counts only the first time."""
    seen = set()
    accepted = []
    for xj, pj in outs:
        ok = False
        note = getattr(pj, "note", None)
        if xj == target and note not in seen:
            ok = safe_verify(scheme, xj, pj)
            if ok:
                seen.add(note)
        accepted.append(ok)
    return accepted


def _scheme(protocol: str, params, rng, n, label=b"", tag=None):
    if protocol == "crs":
        kw = {"tag": tag} if tag else {}
        return CrsScheme.setup(params, rng, n=n, label=label, **kw)
    if protocol == "rom":
        return RomScheme.setup(params, rng, n=n, label=label)
    raise ValueError(f"unknown protocol {protocol!r}")


def _bound(factory, n):
    fn = getattr(factory, "success_bound", None)
    return fn(n) if callable(fn) else None


# --- games ---------------------------------------------------------------------------

def run_money_unforgeability(attack: str, n: int, trials: int, seed=0) -> GameReport:
    """Counterfeit one note into two that verify under its serial."""
    fn = ATTACKS[attack]
    wins = double_spends = 0
    for rng in _trial_rngs(seed, trials):
        auth = MoneyAuthority(rng)
        handle, serial = note_gen(auth, n)
        h0, h1 = fn(auth, handle)
        if h0 == h1:
            double_spends += 1
            continue
        if ver(auth, h0, serial) and ver(auth, h1, serial):
            wins += 1
    return GameReport("money", {"attack": attack, "n": n}, trials, wins,
                      attack_success_probability(attack, n), {"double_spend_rejected": double_spends})


def run_unclonable_game(protocol: str, adversary_factory: Callable, k: int, trials: int, *,
                        params: GroupParams, n: int = DEFAULT_QUBITS, seed=0) -> GameReport:
    """k-1 honest proofs in, k proofs out; win if more verify on the target than came in."""
    if k < 2:
        raise ValueError("k must be at least 2")
    hard = HardDistribution(params)
    wins = mismatches = 0
    for rng in _trial_rngs(seed, trials):
        scheme = _scheme(protocol, params, rng, n)
        pairs = [hard.sample(rng) for _ in range(k - 1)]
        x, w = pairs[0]
        inputs = [(xi, scheme.prove(xi, wi, rng)) for xi, wi in pairs]
        outs = adversary_factory({"x": x, "w": w})(GameView(scheme, inputs, k), rng)
        if not isinstance(outs, (list, tuple)) or len(outs) != k:
            raise AdversaryMalformed(f"expected {k} outputs")
        accepted = _judge_outputs(scheme, outs, x)
        in_xs, out_xs = [p[0] for p in pairs], [o[0] for o in outs]
        won = clone_predicate(x, in_xs, out_xs, accepted)
        if k <= 4 and won != clone_predicate_bruteforce(x, in_xs, out_xs, accepted):
            mismatches += 1
        wins += won
    return GameReport("unclonable", {"protocol": protocol, "adversary": adversary_factory.name,
                                     "k": k, "n": n}, trials, wins, _bound(adversary_factory, n),
                      {"predicate_mismatch": mismatches})


def run_cloning_game_def41(protocol: str, adversary_factory: Callable, trials: int, *,
                           params: GroupParams, n: int = DEFAULT_QUBITS, seed=0) -> GameReport:
    """One honest proof on x in; win if two proofs on x with distinct notes verify."""
    hard = HardDistribution(params)
    wins = 0
    for rng in _trial_rngs(seed, trials):
        scheme = _scheme(protocol, params, rng, n)
        x, w = hard.sample(rng)
        outs = adversary_factory({"x": x, "w": w})(GameView(scheme, [(x, scheme.prove(x, w, rng))], 2), rng)
        if not isinstance(outs, (list, tuple)) or len(outs) != 2:
            raise AdversaryMalformed("expected 2 outputs")
        wins += all(_judge_outputs(scheme, outs, x))
    return GameReport("clone-pair", {"protocol": protocol, "adversary": adversary_factory.name, "n": n},
                      trials, wins, _bound(adversary_factory, n))


def extractor_for(protocol: str, params: GroupParams, *, n: int = DEFAULT_QUBITS,
                  label: bytes = b"", tag: bytes | None = None) -> Callable:
    """E(adversary, x_list, x, rng) for the given model."""
    if protocol == "crs":
        kw = {"tag": tag} if tag else {}
        return partial(clone_extractor_E, params, n=n, label=label, **kw)
    if protocol == "rom":
        return partial(rom_clone_extractor, params, n=n, label=label)
    raise ValueError(f"unknown protocol {protocol!r}")


def run_extraction_game(protocol: str, adversary_factory: Callable, k: int, trials: int, *,
                        params: GroupParams, n: int = DEFAULT_QUBITS, seed=0, budget: int = 1,
                        label: bytes = b"", tag: bytes | None = None,
                        game: str = "extract") -> GameReport:
    """Extractor success against the adversary; budget > 1 runs the amplifier."""
    hard = HardDistribution(params)
    E = extractor_for(protocol, params, n=n, label=label, tag=tag)
    wins = failures = 0
    for rng in _trial_rngs(seed, trials):
        pairs = [hard.sample(rng) for _ in range(k - 1)]
        x, w = pairs[0]
        x_list = [p[0] for p in pairs]
        factory = partial(adversary_factory, {"x": x, "w": w})
        try:
            if budget == 1:
                got = E(factory(), x_list, x, rng)
            else:
                got = amplify_extractor(E, factory, x_list, x, budget, params=params, rng=rng)
        except (ExtractionFailed, AdversaryMalformed):
            failures += 1
            continue
        wins += confirm_witness(params, x, got)
    return GameReport(game, {"protocol": protocol, "adversary": adversary_factory.name, "k": k,
                             "n": n, "budget": budget}, trials, wins, None,
                      {"extraction_failed": failures})


def run_sok_game(adversary_factory: Callable, k: int, trials: int, *, params: GroupParams,
                 n: int = DEFAULT_QUBITS, seed=0, message: bytes = b"transfer 10") -> GameReport:
    """Signature-of-knowledge extraction: the CRS extractor with the message as label."""
    return run_extraction_game("crs", adversary_factory, k, trials, params=params, n=n, seed=seed,
                               label=message, tag=SOK_TAG, game="sok")


def _cred_setup(params, rng, n, access):
    nym, sk = issuer_keygen(params, HardDistribution(params), rng)
    oracle, auth = Oracle(rng), MoneyAuthority(rng)
    cred = issue(params, oracle, auth, nym, sk, access, rng, n=n)
    return nym, oracle, auth, cred


def run_revocation_game(adversary_factory: Callable, trials: int, *, params: GroupParams,
                        n: int = DEFAULT_QUBITS, seed=0, access: str = "read") -> GameReport:
    """Win if the surrendered proof is accepted and a credential still verifies afterwards."""
    wins = 0
    for rng in _trial_rngs(seed, trials):
        nym, oracle, auth, cred = _cred_setup(params, rng, n, access)
        surrendered, kept = adversary_factory(None)(auth, cred, rng)
        if getattr(surrendered, "note", None) == getattr(kept, "note", None):
            continue
        notice = revoke(cred)
        try:
            if not ver_revoke(params, oracle, auth, nym, notice, prove_revocation(surrendered)):
                continue
            wins += verify_cred(params, oracle, auth, nym, access, kept)
        except UnknownSerial:
            continue
    return GameReport("revocation", {"adversary": adversary_factory.name, "n": n}, trials, wins,
                      _bound(adversary_factory, n))


def run_cred_clone_game(adversary_factory: Callable, trials: int, *, params: GroupParams,
                        n: int = DEFAULT_QUBITS, seed=0, access: str = "read") -> GameReport:
    """Win if two credentials with distinct notes both verify."""
    wins = 0
    for rng in _trial_rngs(seed, trials):
        nym, oracle, auth, cred = _cred_setup(params, rng, n, access)
        c0, c1 = adversary_factory(None)(auth, cred, rng)
        if getattr(c0, "note", None) == getattr(c1, "note", None):
            continue
        try:
            wins += (verify_cred(params, oracle, auth, nym, access, c0)
                     and verify_cred(params, oracle, auth, nym, access, c1))
        except UnknownSerial:
            continue
    return GameReport("cred-clone", {"adversary": adversary_factory.name, "n": n}, trials, wins,
                      _bound(adversary_factory, n))


def run_simext_game(trials: int, *, params: GroupParams, queries: int = 5, seed=0) -> GameReport:
    """Simulation-extractability: the adversary sees simulated proofs on Q, then
    proves a fresh x outside Q; win for the extractor if it recovers w."""
    hard = HardDistribution(params)
    wins = rejected = 0
    for rng in _trial_rngs(seed, trials):
        crs, td = simext_setup(params, rng)
        oracle = Oracle(rng)
        seen = set()
        for _ in range(queries):
            xq, _ = hard.sample(rng)
            seen.add(xq)
            simext_sim(params, oracle, crs, td, DlogInstance(xq), rng)
        x, w = hard.sample(rng)
        while x in seen:
            x, w = hard.sample(rng)
        proof = simext_prove(params, oracle, crs, DlogInstance(x), w, rng)
        if not simext_verify(params, oracle, crs, DlogInstance(x), proof):
            rejected += 1
            continue
        wins += confirm_witness(params, x, simext_ext(params, crs, td, DlogInstance(x), proof))
    return GameReport("simext", {"queries": queries}, trials, wins, None, {"rejected": rejected})


def implication_holds(adv_report: GameReport, ext_report: GameReport,
                      adv_floor: float = 0.01, ext_floor: float = 0.001) -> bool:
    """If the adversary clones noticeably often, the extractor must succeed noticeably often."""
    return adv_report.rate <= adv_floor or ext_report.rate > ext_floor
