"""Deterministic fixture-group test vectors, one artifact per serializable kind."""
from __future__ import annotations

import json

import numpy as np

from .applications import issue, issuer_keygen, sok_setup, sok_sign, sok_verify, verify_cred
from .artifacts import encode_artifact
from .group import FIXTURE, commit, enc_witness, pke_keygen
from .money import MoneyAuthority
from .nizk import (FS_TAG, DlogInstance, fs_prove, fs_verify, simext_prove, simext_setup,
                   simext_verify)
from .oracle import Oracle
from .sigma import Alpha, Dlog, SigmaTranscript, verify
from .unclonable import (CrsScheme, RomScheme, money_from_nizk_gen, money_from_nizk_ver)

FIXTURE_SEED = 20231108
N_QUBITS = 4


class _Fixed:
    """Hard distribution that always hands out x = 32, w = 5."""

    def sample(self, rng):
        return 32, 5


def generate_vectors(seed: int = FIXTURE_SEED) -> dict:
    P = FIXTURE
    rng = np.random.default_rng(seed)
    out: dict[str, dict] = {}

    def put(name, kind, value, ok=None, dump=None):
        entry = {"artifact": encode_artifact(kind, value, dump)}
        if ok is not None:
            entry["verifies"] = bool(ok)
        out[name] = entry

    put("params", "params", P)
    put("commitment", "commitment", commit(P, 5, 3))
    put("keypair", "keypair", pke_keygen(P, rng))
    ct, _ = enc_witness(P, 16, 5, rng)
    put("witness_ciphertext", "witness-ciphertext", ct)
    t = SigmaTranscript(Alpha((8,), bytes(16)), 2, (13,))
    put("transcript", "transcript", t, verify(P, Dlog(32), t))

    oracle = Oracle(rng)
    fp = fs_prove(P, oracle, FS_TAG, b"", Dlog(32), 5, rng)
    put("fs_proof", "fs-proof", fp, fs_verify(P, oracle, FS_TAG, b"", Dlog(32), fp))

    scrs, std = simext_setup(P, rng)
    sp = simext_prove(P, oracle, scrs, DlogInstance(32), 5, rng)
    put("simext_crs", "simext-crs", scrs)
    put("simext_trapdoor", "simext-trapdoor", std)
    put("simext_proof", "simext-proof", sp, simext_verify(P, oracle, scrs, DlogInstance(32), sp))

    crs_scheme = CrsScheme.setup(P, rng, n=N_QUBITS)
    auth = crs_scheme.authority
    up = crs_scheme.prove(32, 5, rng)
    dump = auth.dump_note(up.note)
    put("crs", "crs", crs_scheme.crs)
    put("trapdoor", "trapdoor", crs_scheme.td)
    put("proof_crs", "proof-crs", up, crs_scheme.verify(32, up), dump)

    rom_scheme = RomScheme.setup(P, rng, n=N_QUBITS)
    rp = rom_scheme.prove(32, 5, rng)
    put("proof_rom", "proof-rom", rp, rom_scheme.verify(32, rp), rom_scheme.authority.dump_note(rp.note))

    note = money_from_nizk_gen(crs_scheme, _Fixed(), rng)
    put("banknote", "banknote", note, money_from_nizk_ver(crs_scheme, note), auth.dump_note(note.rho.note))

    scrs2, _ = sok_setup(P, rng)
    sig = sok_sign(P, oracle, auth, scrs2, 32, 5, b"hello", rng, n=N_QUBITS)
    put("sok", "sok", sig, sok_verify(P, oracle, auth, scrs2, 32, b"hello", sig),
        auth.dump_note(sig.sigma.note))

    nym, isk = issuer_keygen(P, _Fixed(), rng)
    cred = issue(P, oracle, auth, nym, isk, "read", rng, n=N_QUBITS)
    put("nym", "nym", nym)
    put("issuer_secret", "issuer-secret", isk)
    put("credential", "credential", cred, verify_cred(P, oracle, auth, nym, "read", cred),
        auth.dump_note(cred.note))
    return out


def vectors_json(seed: int = FIXTURE_SEED) -> str:
    return json.dumps({"seed": seed, "profile": "fixture", "vectors": generate_vectors(seed)},
                      sort_keys=True, indent=1)
