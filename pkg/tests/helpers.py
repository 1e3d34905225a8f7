"""Shared test helpers."""
import itertools
from functools import lru_cache

from unizk.group import hash_to_scalar

# (criterion number, passed, one-line detail), filled in by test_acceptance
ACCEPTANCE: list = []


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.append((number, bool(ok), detail))
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@lru_cache(maxsize=None)
def digests_by_challenge(params):
    """One 32-byte oracle answer per challenge value, found by search."""
    found = {}
    for i in itertools.count():
        d = i.to_bytes(32, "big")
        found.setdefault(hash_to_scalar(params, d), d)
        if len(found) == params.q:
            return found


def mutation_outcomes(artifact: str, verify, rng, count: int):
    """Flip one random payload byte of an artifact `count` times and tally how
    each copy fails: "decode", "reject", "accept", or the name of a library
    error raised by verify.  Anything else propagates.
    """
    import base64
    import json
    from collections import Counter

    from unizk.artifacts import decode_artifact
    from unizk.errors import MalformedArtifact, UnizkError

    doc = json.loads(artifact)
    raw = base64.b64decode(doc["payload_b64"])
    tally = Counter()
    for _ in range(count):
        buf = bytearray(raw)
        buf[int(rng.integers(len(buf)))] ^= int(rng.integers(1, 256))
        doc["payload_b64"] = base64.b64encode(bytes(buf)).decode("ascii")
        try:
            _, value, _ = decode_artifact(json.dumps(doc), doc["kind"])
        except MalformedArtifact:
            tally["decode"] += 1
            continue
        try:
            tally["accept" if verify(value) else "reject"] += 1
        except UnizkError as exc:
            tally[type(exc).__name__] += 1
    return tally
