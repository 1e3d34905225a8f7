import base64
import json

import numpy as np
import pytest

from unizk.artifacts import KINDS, decode_artifact, encode_artifact
from unizk.encoding import encode
from unizk.group import FIXTURE, commit
from unizk.errors import MalformedArtifact, VersionMismatch
from unizk.money import SIM_ONLY
from unizk.nizk import FS_TAG, fs_prove, fs_verify
from unizk.oracle import Oracle
from unizk.sigma import Dlog
from unizk.vectors import generate_vectors

from helpers import mutation_outcomes


@pytest.fixture(scope="module")
def vectors():
    return generate_vectors()


def test_vectors_cover_every_typed_kind(vectors):
    kinds = {json.loads(v["artifact"])["kind"] for v in vectors.values()}
    library_kinds = {"params", "commitment", "keypair", "witness-ciphertext", "transcript", "fs-proof",
                     "simext-crs", "simext-trapdoor", "simext-proof", "crs", "trapdoor", "proof-crs",
                     "proof-rom", "banknote", "sok", "nym", "issuer-secret", "credential"}
    assert kinds == library_kinds
    assert library_kinds <= set(KINDS)


def test_round_trip(vectors):
    for name, entry in vectors.items():
        kind, value, dump = decode_artifact(entry["artifact"])
        assert encode_artifact(kind, value, dump) == entry["artifact"], name
        assert entry.get("verifies", True), name


def test_unknown_kind_and_version():
    good = encode_artifact("commitment", commit(FIXTURE, 5, 3))
    doc = json.loads(good)
    with pytest.raises(MalformedArtifact):
        decode_artifact(json.dumps({**doc, "kind": "nope"}))
    with pytest.raises(VersionMismatch):
        decode_artifact(json.dumps({**doc, "version": 2}))
    with pytest.raises(MalformedArtifact):
        decode_artifact(good, "params")
    with pytest.raises(MalformedArtifact):
        decode_artifact("{not json")
    with pytest.raises(MalformedArtifact):
        decode_artifact(json.dumps({**doc, "payload_b64": "***"}))
    with pytest.raises(MalformedArtifact):
        encode_artifact("nope", 1)
    with pytest.raises(MalformedArtifact):
        encode_artifact("params", 1)


def test_kind_mismatch_inside_payload(vectors):
    doc = json.loads(vectors["commitment"]["artifact"])
    doc["kind"] = "params"
    with pytest.raises(MalformedArtifact):
        decode_artifact(json.dumps(doc))


def test_note_dump_banner(vectors):
    doc = json.loads(vectors["proof_crs"]["artifact"])
    assert doc["sim_only_note_dump"]["banner"] == SIM_ONLY
    doc["sim_only_note_dump"]["banner"] = "real"
    with pytest.raises(MalformedArtifact):
        decode_artifact(json.dumps(doc))


def test_payload_byte_flips_fixture(vectors):
    # every flip either breaks decoding or yields a different value
    rng = np.random.default_rng(0)
    for name in ("fs_proof", "proof_crs", "credential"):
        doc = json.loads(vectors[name]["artifact"])
        raw = base64.b64decode(doc["payload_b64"])
        _, orig, _ = decode_artifact(vectors[name]["artifact"])
        for _ in range(100):
            buf = bytearray(raw)
            buf[int(rng.integers(len(buf)))] ^= int(rng.integers(1, 256))
            doc["payload_b64"] = base64.b64encode(bytes(buf)).decode()
            try:
                _, value, _ = decode_artifact(json.dumps(doc))
            except MalformedArtifact:
                continue
            assert encode(value) != encode(orig)


@pytest.mark.slow
def test_fs_mutations_production(PROD):
    rng = np.random.default_rng(3)
    o = Oracle(rng)
    w = 424242
    stmt = Dlog(PROD.pow(PROD.g, w))
    pr = fs_prove(PROD, o, FS_TAG, b"", stmt, w, rng)
    tally = mutation_outcomes(encode_artifact("fs-proof", pr),
                              lambda v: fs_verify(PROD, o, FS_TAG, b"", stmt, v), rng, 200)
    assert tally["accept"] == 0 and sum(tally.values()) == 200
