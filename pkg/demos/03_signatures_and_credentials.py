"""Signatures of knowledge and revocable anonymous credentials built on unclonable proofs."""
import numpy as np

from unizk import games
from unizk.applications import (issue, issuer_keygen, prove_revocation, revoke, sok_setup, sok_sign,
                                sok_verify, ver_revoke, verify_cred)
from unizk.group import FIXTURE as P
from unizk.money import MoneyAuthority, attack_measure_resend
from unizk.oracle import Oracle

rng = np.random.default_rng(11)
oracle, bank = Oracle(rng), MoneyAuthority(rng)

# -- signature of knowledge: "someone who knows log_g(x) signed m"
crs, _ = sok_setup(P, rng)
x, w = games.HardDistribution(P).sample(rng)
sig = sok_sign(P, oracle, bank, crs, x, w, b"pay bob 5", rng, n=8)
print("signature on 'pay bob 5':", sok_verify(P, oracle, bank, crs, x, b"pay bob 5", sig))
print("same signature, 'pay eve 5':", sok_verify(P, oracle, bank, crs, x, b"pay eve 5", sig))

# -- credentials: the issuer proves knowledge of its secret with the access
# right as the message.  The holder can give the credential back, and since
# the note cannot be copied, giving it back means losing it.
nym, secret = issuer_keygen(P, games.HardDistribution(P), rng)
cred = issue(P, oracle, bank, nym, secret, "read", rng, n=8)
print("credential for 'read':", verify_cred(P, oracle, bank, nym, "read", cred))
print("same credential for 'write':", verify_cred(P, oracle, bank, nym, "write", cred))

notice = revoke(cred)
print("revocation accepted:", ver_revoke(P, oracle, bank, nym, notice, prove_revocation(cred)))

# A holder who tries to keep a copy while surrendering the other one has to
# clone the note first.
cred = issue(P, oracle, bank, nym, secret, "read", rng, n=8)
kept, given = attack_measure_resend(bank, cred.note)
surrendered = ver_revoke(P, oracle, bank, nym, revoke(cred), prove_revocation(cred.with_note(given)))
still_valid = verify_cred(P, oracle, bank, nym, "read", cred.with_note(kept))
print(f"measure-and-resend holder: surrendered={surrendered}, kept a working copy={still_valid}")

r = games.run_revocation_game(games.SurrenderAndCopy, 5000, params=P, n=8, seed=2)
print(f"surrender-and-copy over {r.trials} trials: {r.rate:.4f} (bound {r.bound:.4f}, z={r.z:+.1f})")
