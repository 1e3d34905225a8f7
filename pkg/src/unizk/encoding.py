"""Canonical byte encoding.

Every value is written as ``tag (1 byte) || length (4 bytes, big endian) ||
payload``.  Registered dataclasses use their own tag and concatenate the
encodings of their fields in declaration order.  The encoding is the single
source of truth for anything that gets hashed (Fiat-Shamir inputs, oracle
points); JSON artifacts only wrap it.

Integers are non-negative and minimally encoded, so every value has exactly
one encoding and ``decode`` rejects anything else.
"""
from __future__ import annotations

import dataclasses
import struct

from .errors import DecodeError

TAG_INT = 0x01
TAG_BYTES = 0x02
TAG_STR = 0x03
TAG_SEQ = 0x04
TAG_NONE = 0x05
TAG_BOOL = 0x06

_CLASSES: dict[int, type] = {}
_TAGS: dict[type, int] = {}

_HEADER = struct.Struct(">BI")


def register(tag: int):
    """Class decorator assigning a type tag to a dataclass."""

    def wrap(cls):
        if tag < 0x10 or tag > 0xFF:
            raise ValueError("composite tags live in 0x10..0xff")
        if tag in _CLASSES and _CLASSES[tag] is not cls:
            raise ValueError(f"tag {tag:#x} already used by {_CLASSES[tag].__name__}")
        _CLASSES[tag] = cls
        _TAGS[cls] = tag
        return cls

    return wrap


def _tlv(tag: int, payload: bytes) -> bytes:
    return _HEADER.pack(tag, len(payload)) + payload


def _int_bytes(n: int) -> bytes:
    if n < 0:
        raise ValueError("only non-negative integers are encodable")
    return n.to_bytes(max(1, (n.bit_length() + 7) // 8), "big")


def encode(obj) -> bytes:
    if obj is None:
        return _tlv(TAG_NONE, b"")
    if isinstance(obj, bool):
        return _tlv(TAG_BOOL, b"\x01" if obj else b"\x00")
    if isinstance(obj, int):
        return _tlv(TAG_INT, _int_bytes(int(obj)))
    if isinstance(obj, (bytes, bytearray)):
        return _tlv(TAG_BYTES, bytes(obj))
    if isinstance(obj, str):
        return _tlv(TAG_STR, obj.encode("utf-8"))
    if isinstance(obj, (tuple, list)):
        return _tlv(TAG_SEQ, b"".join(encode(v) for v in obj))
    tag = _TAGS.get(type(obj))
    if tag is None:
        raise TypeError(f"no canonical encoding for {type(obj).__name__}")
    fields = dataclasses.fields(obj)
    return _tlv(tag, b"".join(encode(getattr(obj, f.name)) for f in fields))


def _read(data: bytes, pos: int, limit: int):
    if pos + _HEADER.size > limit:
        raise DecodeError("truncated header")
    tag, length = _HEADER.unpack_from(data, pos)
    start = pos + _HEADER.size
    end = start + length
    if end > limit:
        raise DecodeError("truncated payload")
    payload = data[start:end]
    if tag == TAG_NONE:
        if length:
            raise DecodeError("non-empty None")
        return None, end
    if tag == TAG_BOOL:
        if payload not in (b"\x00", b"\x01"):
            raise DecodeError("bad bool")
        return payload == b"\x01", end
    if tag == TAG_INT:
        if length == 0 or (length > 1 and payload[0] == 0):
            raise DecodeError("non-minimal integer")
        return int.from_bytes(payload, "big"), end
    if tag == TAG_BYTES:
        return bytes(payload), end
    if tag == TAG_STR:
        try:
            return payload.decode("utf-8"), end
        except UnicodeDecodeError as exc:
            raise DecodeError("bad utf-8") from exc
    children = []
    p = start
    while p < end:
        value, p = _read(data, p, end)
        children.append(value)
    if tag == TAG_SEQ:
        return tuple(children), end
    cls = _CLASSES.get(tag)
    if cls is None:
        raise DecodeError(f"unknown type tag {tag:#x}")
    if len(children) != len(dataclasses.fields(cls)):
        raise DecodeError(f"{cls.__name__}: wrong field count")
    try:
        return cls(*children), end
    except (TypeError, ValueError) as exc:
        raise DecodeError(f"{cls.__name__}: {exc}") from exc


def decode(data: bytes):
    data = bytes(data)
    try:
        value, end = _read(data, 0, len(data))
    except RecursionError as exc:
        raise DecodeError("nesting too deep") from exc
    if end != len(data):
        raise DecodeError("trailing bytes")
    return value


def registered_classes() -> dict[int, type]:
    return dict(_CLASSES)
