"""Command-line front end: setup/prove/verify, signatures, credentials, games, vectors.

State that would live on a quantum device is carried in files, marked
simulation-only: the bank file holds the money registry and every proof file
embeds its note's amplitudes.  The random oracle is SHA-256 keyed with a value
stored in the deployment file, so separate processes agree on it.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import games
from .applications import (Credential, IssuerSecret, Nym, SignatureOfKnowledge, issue, issuer_keygen,
                           prove_revocation, revoke, sok_setup, sok_sign, sok_verify, ver_revoke,
                           verify_cred)
from .artifacts import decode_artifact, encode_artifact, register_kind
from .encoding import register
from .errors import MalformedArtifact, UnizkError, UnknownSerial
from .group import get_params
from .money import DEFAULT_QUBITS, MoneyAuthority
from .oracle import Oracle
from .unclonable import (UCrs, rom_prove, rom_verify, u_prove, u_setup, u_verify)
from .vectors import FIXTURE_SEED, vectors_json

SEED_ENV = "UNIZK_SEED"


@register(0x70)
@dataclass(frozen=True)
class Deployment:
    profile: str
    purpose: str
    crs: UCrs
    oracle_key: bytes


@register(0x71)
@dataclass(frozen=True)
class ProofBundle:
    protocol: str
    x: int
    label: bytes
    proof: object


@register(0x72)
@dataclass(frozen=True)
class IssuerBundle:
    profile: str
    nym: Nym
    secret: IssuerSecret
    oracle_key: bytes


register_kind("deployment", Deployment)
register_kind("proof-bundle", ProofBundle)
register_kind("issuer", IssuerBundle)
register_kind("notice", str)


class UsageError(Exception):
    pass


# --- plumbing -------------------------------------------------------------------

def _seed(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    return int(env) if env else None


def _rng(args) -> np.random.Generator:
    return np.random.default_rng(_seed(args))


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(path: str, kind: str):
    try:
        with open(path) as fh:
            return decode_artifact(fh.read(), kind)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _bank(args, rng) -> MoneyAuthority:
    auth = MoneyAuthority(rng)
    if args.bank and os.path.exists(args.bank):
        with open(args.bank) as fh:
            auth.load_registry(json.load(fh))
    return auth


def _save_bank(args, auth: MoneyAuthority) -> None:
    if args.bank:
        with open(args.bank, "w") as fh:
            json.dump(auth.dump_registry(), fh, sort_keys=True)


def _restore_note(auth: MoneyAuthority, dump):
    if dump is None:
        raise UsageError("artifact carries no note dump")
    return auth.load_note(dump)


def _verdict(ok: bool) -> int:
    print(json.dumps({"accept": bool(ok)}))
    return 0 if ok else 1


def _witness(args, params, rng):
    if args.w is not None:
        w = args.w % params.q
    else:
        w = games.HardDistribution(params).sample(rng)[1]
    return params.pow(params.g, w), w


# --- proof commands --------------------------------------------------------------------

def cmd_setup(args) -> int:
    params = get_params(args.profile)
    rng = _rng(args)
    if args.purpose == "sok":
        crs, td = sok_setup(params, rng)
    else:
        crs, td = u_setup(params, rng)
    dep = Deployment(args.profile, args.purpose, crs, rng.bytes(32))
    _emit(args, encode_artifact("deployment", dep))
    if args.trapdoor_out:
        with open(args.trapdoor_out, "w") as fh:
            fh.write(encode_artifact("trapdoor", td) + "\n")
    return 0


def _deployment(args, purpose: str) -> Deployment:
    _, dep, _ = _load(args.crs, "deployment")
    if dep.purpose != purpose:
        raise UsageError(f"deployment is for {dep.purpose!r}, not {purpose!r}")
    return dep


def cmd_prove(args) -> int:
    dep = _deployment(args, "proof")
    params = get_params(dep.profile)
    rng = _rng(args)
    auth = _bank(args, rng)
    oracle = Oracle(rng, key=dep.oracle_key)
    x, w = _witness(args, params, rng)
    if args.protocol == "rom":
        proof = rom_prove(params, oracle, auth, x, w, rng, n=args.n_qubits)
    else:
        proof = u_prove(params, oracle, auth, dep.crs, x, w, rng, n=args.n_qubits)
    _save_bank(args, auth)
    bundle = ProofBundle(args.protocol, x, b"", proof)
    _emit(args, encode_artifact("proof-bundle", bundle, auth.dump_note(proof.note)))
    return 0


def cmd_verify(args) -> int:
    dep = _deployment(args, "proof")
    params = get_params(dep.profile)
    rng = _rng(args)
    auth = _bank(args, rng)
    oracle = Oracle(rng, key=dep.oracle_key)
    _, bundle, dump = _load(args.proof, "proof-bundle")
    proof = replace(bundle.proof, note=_restore_note(auth, dump))
    try:
        if bundle.protocol == "rom":
            ok = rom_verify(params, oracle, auth, bundle.x, proof)
        else:
            ok = u_verify(params, oracle, auth, dep.crs, bundle.x, proof)
    except UnknownSerial:
        ok = False
    return _verdict(ok)


def cmd_sok(args) -> int:
    dep = _deployment(args, "sok")
    params = get_params(dep.profile)
    rng = _rng(args)
    auth = _bank(args, rng)
    oracle = Oracle(rng, key=dep.oracle_key)
    if args.action == "sign":
        if not args.message:
            raise UsageError("--message is required")
        x, w = _witness(args, params, rng)
        m = args.message.encode("utf-8")
        sig = sok_sign(params, oracle, auth, dep.crs, x, w, m, rng, n=args.n_qubits)
        _save_bank(args, auth)
        bundle = ProofBundle("sok", x, m, sig)
        _emit(args, encode_artifact("proof-bundle", bundle, auth.dump_note(sig.sigma.note)))
        return 0
    if not args.sig:
        raise UsageError("--sig is required")
    _, bundle, dump = _load(args.sig, "proof-bundle")
    if not isinstance(bundle.proof, SignatureOfKnowledge):
        raise MalformedArtifact("not a signature bundle")
    sig = SignatureOfKnowledge(replace(bundle.proof.sigma, note=_restore_note(auth, dump)))
    m = args.message.encode("utf-8") if args.message else bundle.label
    return _verdict(sok_verify(params, oracle, auth, dep.crs, bundle.x, m, sig))


# --- credentials ----------------------------------------------------------------------

def _issuer(args) -> IssuerBundle:
    if not args.issuer:
        raise UsageError("--issuer is required")
    return _load(args.issuer, "issuer")[1]


def _cred(args, auth, flag="cred") -> Credential:
    path = getattr(args, flag)
    if not path:
        raise UsageError(f"--{flag} is required")
    kind = "credential"
    _, cred, dump = _load(path, kind)
    return cred.with_note(_restore_note(auth, dump)) if auth is not None else cred


def cmd_cred(args) -> int:
    rng = _rng(args)
    if args.action == "keygen":
        params = get_params(args.profile)
        nym, sk = issuer_keygen(params, games.HardDistribution(params), rng)
        _emit(args, encode_artifact("issuer", IssuerBundle(args.profile, nym, sk, rng.bytes(32))))
        return 0
    if args.action == "revoke":
        _emit(args, encode_artifact("notice", revoke(_cred(args, None))))
        return 0
    if args.action == "prove-revocation":
        _, cred, dump = _load(args.cred, "credential")
        _emit(args, encode_artifact("credential", prove_revocation(cred), dump))
        return 0

    bundle = _issuer(args)
    params = get_params(bundle.profile)
    auth = _bank(args, rng)
    oracle = Oracle(rng, key=bundle.oracle_key)
    if args.action == "issue":
        if not args.access:
            raise UsageError("--access is required")
        cred = issue(params, oracle, auth, bundle.nym, bundle.secret, args.access, rng, n=args.n_qubits)
        _save_bank(args, auth)
        _emit(args, encode_artifact("credential", cred, auth.dump_note(cred.note)))
        return 0
    if args.action == "verify":
        cred = _cred(args, auth)
        return _verdict(verify_cred(params, oracle, auth, bundle.nym, args.access or cred.access, cred))
    # verify-revocation
    if not args.notice:
        raise UsageError("--notice is required")
    notice = _load(args.notice, "notice")[1]
    proof = _cred(args, auth, "proof")
    return _verdict(ver_revoke(params, oracle, auth, bundle.nym, notice, proof))


# --- games -----------------------------------------------------------------------------

def cmd_game(args) -> int:
    params = get_params(args.profile)
    seed = _seed(args)
    seed = 0 if seed is None else seed
    trials = args.trials
    adv = games.ADVERSARIES.get(args.adversary)
    if args.which == "money":
        report = games.run_money_unforgeability(args.attack, args.n_qubits, trials, seed=seed)
    elif args.which == "clone":
        report = games.run_unclonable_game(args.protocol, adv or games.ClassicalCopier, args.k, trials,
                                           params=params, n=args.n_qubits, seed=seed)
    elif args.which == "extract":
        report = games.run_extraction_game(args.protocol, adv or games.HonestReprover, args.k, trials,
                                           params=params, n=args.n_qubits, seed=seed, budget=args.budget)
    elif args.which == "sok":
        report = games.run_sok_game(adv or games.HonestReprover, args.k, trials, params=params,
                                    n=args.n_qubits, seed=seed)
    else:
        runner = games.run_cred_clone_game if args.variant == "cred-clone" else games.run_revocation_game
        report = runner(adv or games.SurrenderAndCopy, trials, params=params, n=args.n_qubits, seed=seed)
    _emit(args, report.to_json())
    return 0


def cmd_vectors(args) -> int:
    seed = _seed(args)
    _emit(args, vectors_json(FIXTURE_SEED if seed is None else seed))
    return 0


# --- parser ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"master seed (default ${SEED_ENV} or OS entropy)")
    common.add_argument("--profile", choices=("fixture", "production"), default="fixture")
    common.add_argument("--n-qubits", "--n", dest="n_qubits", type=int, default=DEFAULT_QUBITS)
    common.add_argument("--k", type=int, default=2)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--out", default=None)

    p = _Parser(prog="unizk", description="Unclonable NIZK toolkit (simulated quantum money).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("setup", parents=[common])
    s.add_argument("--purpose", choices=("proof", "sok"), default="proof")
    s.add_argument("--trapdoor-out", default=None)
    s.set_defaults(fn=cmd_setup)

    for name, fn in (("prove", cmd_prove), ("verify", cmd_verify)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--crs", required=True)
        s.add_argument("--bank", required=True)
        if name == "prove":
            s.add_argument("--protocol", choices=("crs", "rom"), default="crs")
            s.add_argument("--w", type=int, default=None)
        else:
            s.add_argument("--proof", required=True)
        s.set_defaults(fn=fn)

    s = sub.add_parser("sok", parents=[common])
    s.add_argument("action", choices=("sign", "verify"))
    s.add_argument("--crs", required=True)
    s.add_argument("--bank", required=True)
    s.add_argument("--message", default=None)
    s.add_argument("--w", type=int, default=None)
    s.add_argument("--sig", default=None)
    s.set_defaults(fn=cmd_sok)

    s = sub.add_parser("cred", parents=[common])
    s.add_argument("action", choices=("keygen", "issue", "verify", "revoke", "prove-revocation",
                                      "verify-revocation"))
    s.add_argument("--issuer", default=None)
    s.add_argument("--bank", default=None)
    s.add_argument("--access", default=None)
    s.add_argument("--cred", default=None)
    s.add_argument("--notice", default=None)
    s.add_argument("--proof", default=None)
    s.set_defaults(fn=cmd_cred)

    s = sub.add_parser("game", parents=[common])
    s.add_argument("which", choices=("money", "clone", "extract", "sok", "revocation"))
    s.add_argument("--attack", choices=("measure-resend", "fresh-forgery", "identity"),
                   default="measure-resend")
    s.add_argument("--protocol", choices=("crs", "rom"), default="crs")
    s.add_argument("--adversary", choices=tuple(games.ADVERSARIES), default=None)
    s.add_argument("--budget", type=int, default=1)
    s.add_argument("--variant", choices=("revocation", "cred-clone"), default="revocation")
    s.set_defaults(fn=cmd_game)

    s = sub.add_parser("vectors", parents=[common])
    s.set_defaults(fn=cmd_vectors)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"unizk: {exc}", file=sys.stderr)
        return 2
    except (UnizkError, ValueError, KeyError) as exc:
        print(f"unizk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
