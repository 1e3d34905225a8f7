"""Proofs of knowledge that cannot be copied: prove, verify, try to clone, extract."""
import numpy as np

from unizk import games
from unizk.group import FIXTURE as P
from unizk.unclonable import CrsScheme, RomScheme, clone_extractor_E, safe_verify

rng = np.random.default_rng(7)
hard = games.HardDistribution(P)
x, w = hard.sample(rng)
print(f"statement x = g^w = {x} in the order-{P.q} subgroup mod {P.p} (w = {w})")

# Both flavours attach a fresh banknote to the proof and bind its serial into
# the classical part, so a proof is only as copyable as its note.
for name, cls in (("crs", CrsScheme), ("rom", RomScheme)):
    scheme = cls.setup(P, rng, n=8)
    proof = scheme.prove(x, w, rng)
    print(f"[{name}] honest proof verifies: {scheme.verify(x, proof)}")

scheme = CrsScheme.setup(P, rng, n=8)
print("[crs] trapdoor extraction on an honest proof:", scheme.ext(x, scheme.prove(x, w, rng)))

# An adversary handed one proof who wants two accepting proofs must either
# duplicate the note or produce a new proof, which means knowing w.
copier = games.ClassicalCopier({"x": x, "w": w})
proof = scheme.prove(x, w, rng)
outs = copier(games.GameView(scheme, [(x, proof)], 2), rng)
print("classical copier, both outputs verify:", all(safe_verify(scheme, xx, pp) for xx, pp in outs))

for adv, k in ((games.ClassicalCopier, 2), (games.HonestReprover, 2)):
    r = games.run_unclonable_game("crs", adv, k, 2000, params=P, n=8, seed=3)
    print(f"{adv.name:>18}: wins {r.rate:.4f}" + (f" (bound {r.bound:.4f}, z={r.z:+.1f})" if r.bound else ""))

# A reprover who really knows w wins every time, and the extractor gets w out
# of it about half the time: it simulates one proof, runs the adversary, and
# decrypts one of the two outputs chosen at random.
got = [clone_extractor_E(P, games.HonestReprover({"x": x, "w": w}), [x], x, rng, n=8)
       for _ in range(200)]
print(f"extractor recovered w in {sum(g == w for g in got)}/200 runs")

r = games.run_extraction_game("crs", games.HonestReprover, 2, 200, params=P, n=8, seed=4, budget=16)
print(f"with 16 independent tries: {r.rate:.3f}")
