import numpy as np
import pytest

from unizk.applications import (Credential, issue, issuer_keygen, prove_revocation, revoke, sok_ext,
                                sok_setup, sok_sign, sok_sim, sok_verify, ver_revoke, verify_cred)
from unizk.errors import WitnessMismatch
from unizk.games import HardDistribution
from unizk.group import FIXTURE as P
from unizk.money import MoneyAuthority, attack_measure_resend
from unizk.oracle import Oracle


@pytest.fixture
def sok_env(rng):
    crs, td = sok_setup(P, rng)
    return crs, td, Oracle(rng), MoneyAuthority(rng)


def test_sok_sign_verify(sok_env, rng):
    crs, td, o, auth = sok_env
    forged = 0
    for i in range(100):
        m = b"msg %d" % i
        sig = sok_sign(P, o, auth, crs, 32, 5, m, rng, n=8)
        assert sok_verify(P, o, auth, crs, 32, m, sig)
        forged += sok_verify(P, o, auth, crs, 32, m + b"!", sig)
        forged += sok_verify(P, o, auth, crs, 8, m, sig)
    # a 23-element challenge space lets about 1 in 23 swaps through
    assert forged <= 20


def test_sok_message_rules(sok_env, rng):
    crs, td, o, auth = sok_env
    with pytest.raises(ValueError):
        sok_sign(P, o, auth, crs, 32, 5, b"", rng)
    sig = sok_sign(P, o, auth, crs, 32, 5, "utf-8 ü", rng, n=4)
    assert sok_verify(P, o, auth, crs, 32, "utf-8 ü".encode(), sig)
    assert not sok_verify(P, o, auth, crs, 32, b"m", "junk")


@pytest.mark.slow
def test_sok_message_binding_production(PROD, rng):
    crs, td = sok_setup(PROD, rng)
    o, auth = Oracle(rng), MoneyAuthority(rng)
    w = 123456789
    x = PROD.pow(PROD.g, w)
    sig = sok_sign(PROD, o, auth, crs, x, w, b"the one", rng, n=4)
    hard = HardDistribution(PROD)
    probes = [(x, b"the one")]
    probes += [(x, rng.bytes(8)) for _ in range(400)]
    probes += [(hard.sample(rng)[0], b"the one") for _ in range(300)]
    probes += [(hard.sample(rng)[0], rng.bytes(8)) for _ in range(299)]
    valid = [p for p in probes if sok_verify(PROD, o, auth, crs, p[0], p[1], sig)]
    assert valid == [(x, b"the one")]


def test_sok_sim_and_ext(sok_env, rng):
    crs, td, o, auth = sok_env
    s = sok_sim(P, o, auth, crs, td, 32, b"m", rng, n=4)
    assert sok_verify(P, o, auth, crs, 32, b"m", s)
    assert sok_ext(P, crs, td, 32, b"m", s) == 0
    real = sok_sign(P, o, auth, crs, 32, 5, b"fresh", rng, n=4)
    assert sok_ext(P, crs, td, 32, b"fresh", real) == 5


def test_credential_lifecycle(rng):
    nym, sk = issuer_keygen(P, HardDistribution(P), rng)
    assert P.pow(P.g, sk.w) == nym.x
    o, auth = Oracle(rng), MoneyAuthority(rng)
    for access in ("read", "write", "admin"):
        cred = issue(P, o, auth, nym, sk, access, rng, n=8, allowed={"read", "write", "admin"})
        assert verify_cred(P, o, auth, nym, access, cred)
        assert not verify_cred(P, o, auth, nym, "other", cred)
        notice = revoke(cred)
        assert notice == access
        surrendered = prove_revocation(cred)
        assert ver_revoke(P, o, auth, nym, notice, surrendered)
    with pytest.raises(ValueError):
        issue(P, o, auth, nym, sk, "root", rng, allowed={"read"})
    with pytest.raises(WitnessMismatch):
        issue(P, o, auth, nym, type(sk)(sk.td, (sk.w + 1) % P.q), "read", rng)
    assert not verify_cred(P, o, auth, nym, "read", "junk")


def test_credential_copy_needs_a_clone(rng):
    nym, sk = issuer_keygen(P, HardDistribution(P), rng)
    o, auth = Oracle(rng), MoneyAuthority(rng)
    wins = 0
    for _ in range(200):
        cred = issue(P, o, auth, nym, sk, "read", rng, n=8)
        a, b = attack_measure_resend(auth, cred.note)
        c0, c1 = cred.with_note(a), cred.with_note(b)
        wins += verify_cred(P, o, auth, nym, "read", c0) and verify_cred(P, o, auth, nym, "read", c1)
    assert wins <= 15   # expectation 200 * (5/8)^8 = 4.7
    assert isinstance(c0, Credential)
