"""JSON wrapper around canonical bytes.

    {"version": 1, "kind": ..., "payload_b64": ..., "sim_only_note_dump": ...}

The payload is the only thing that is ever hashed or compared; JSON is just
the envelope.  Note dumps are optional and must carry the simulation banner.
"""
from __future__ import annotations

import base64
import binascii
import json

from .applications import Credential, IssuerSecret, Nym, SignatureOfKnowledge
from .encoding import decode, encode
from .errors import DecodeError, MalformedArtifact, VersionMismatch
from .group import Commitment, GroupParams, KeyPair, WitnessCiphertext
from .money import SIM_ONLY
from .nizk import FsProof, SimExtCrs, SimExtProof, SimExtTrapdoor
from .sigma import SigmaTranscript
from .unclonable import Banknote, UCrs, UnclonableProofCrs, UnclonableProofRom, UTrapdoor

VERSION = 1

KINDS: dict[str, type | None] = {
    "params": GroupParams,
    "commitment": Commitment,
    "keypair": KeyPair,
    "witness-ciphertext": WitnessCiphertext,
    "transcript": SigmaTranscript,
    "fs-proof": FsProof,
    "simext-crs": SimExtCrs,
    "simext-trapdoor": SimExtTrapdoor,
    "simext-proof": SimExtProof,
    "crs": UCrs,
    "trapdoor": UTrapdoor,
    "proof-crs": UnclonableProofCrs,
    "proof-rom": UnclonableProofRom,
    "banknote": Banknote,
    "sok": SignatureOfKnowledge,
    "nym": Nym,
    "issuer-secret": IssuerSecret,
    "credential": Credential,
    # untyped canonical values (tuples of registered objects)
    "bundle": None,
}


def register_kind(kind: str, cls: type | None) -> None:
    KINDS[kind] = cls


def encode_artifact(kind: str, value, note_dump=None) -> str:
    if kind not in KINDS:
        raise MalformedArtifact(f"unknown kind {kind!r}")
    cls = KINDS[kind]
    if cls is not None and not isinstance(value, cls):
        raise MalformedArtifact(f"{kind} expects {cls.__name__}, got {type(value).__name__}")
    doc = {"version": VERSION, "kind": kind,
           "payload_b64": base64.b64encode(encode(value)).decode("ascii")}
    if note_dump is not None:
        _check_dump(note_dump)
        doc["sim_only_note_dump"] = note_dump
    return json.dumps(doc, sort_keys=True)


def _check_dump(dump):
    items = dump if isinstance(dump, list) else [dump]
    for d in items:
        if not isinstance(d, dict) or d.get("banner") != SIM_ONLY:
            raise MalformedArtifact("note dumps must carry the simulation-only banner")


def decode_artifact(text: str | bytes, kind: str | None = None):
    """Returns (kind, value, note_dump or None)."""
    try:
        doc = json.loads(text)
    except (ValueError, UnicodeDecodeError) as exc:
        raise MalformedArtifact(f"not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedArtifact("artifact must be a JSON object")
    if doc.get("version") != VERSION:
        raise VersionMismatch(f"expected version {VERSION}, got {doc.get('version')!r}")
    got = doc.get("kind")
    if got not in KINDS:
        raise MalformedArtifact(f"unknown kind {got!r}")
    if kind is not None and got != kind:
        raise MalformedArtifact(f"expected a {kind} artifact, got {got}")
    try:
        raw = base64.b64decode(doc["payload_b64"], validate=True)
    except (KeyError, TypeError, binascii.Error) as exc:
        raise MalformedArtifact(f"bad payload: {exc}") from exc
    try:
        value = decode(raw)
    except DecodeError as exc:
        raise MalformedArtifact(f"payload does not decode: {exc}") from exc
    cls = KINDS[got]
    if cls is not None and not isinstance(value, cls):
        raise MalformedArtifact(f"payload is {type(value).__name__}, not {cls.__name__}")
    dump = doc.get("sim_only_note_dump")
    if dump is not None:
        _check_dump(dump)
    return got, value, dump
