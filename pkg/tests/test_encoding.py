from dataclasses import dataclass

import pytest
from hypothesis import given, strategies as st

from unizk.encoding import decode, encode, register, registered_classes
from unizk.errors import DecodeError
from unizk.group import Commitment


values = st.recursive(
    st.none() | st.booleans() | st.integers(min_value=0, max_value=2**300) | st.binary(max_size=40)
    | st.text(max_size=20),
    lambda children: st.lists(children, max_size=5).map(tuple),
    max_leaves=30,
)


@given(values)
def test_roundtrip(v):
    assert decode(encode(v)) == v


@given(st.integers(0, 2**64), st.integers(0, 2**64))
def test_dataclass_roundtrip(a, b):
    c = Commitment(a, b)
    assert decode(encode(c)) == c


def test_layout():
    assert encode(5) == b"\x01\x00\x00\x00\x01\x05"
    assert encode(0) == b"\x01\x00\x00\x00\x01\x00"
    assert encode(b"ab") == b"\x02\x00\x00\x00\x02ab"
    assert encode(()) == b"\x04\x00\x00\x00\x00"


def test_lists_decode_as_tuples():
    assert decode(encode([1, [2]])) == (1, (2,))


@pytest.mark.parametrize("bad", [
    b"\x01\x00\x00\x00\x02\x00\x05",   # non-minimal int
    b"\x01\x00\x00\x00\x00",           # empty int
    b"\x01\x00\x00\x00\x05\x05",       # truncated
    b"\x01\x00\x00",                   # truncated header
    b"\x06\x00\x00\x00\x01\x02",       # bad bool
    b"\x05\x00\x00\x00\x01\x00",       # non-empty None
    b"\xfe\x00\x00\x00\x00",           # unknown tag
    b"\x03\x00\x00\x00\x01\xff",       # bad utf-8
    encode(5) + b"\x00",               # trailing
])
def test_rejects(bad):
    with pytest.raises(DecodeError):
        decode(bad)


def test_wrong_field_count():
    data = b"\x11" + (len(encode(1))).to_bytes(4, "big") + encode(1)
    with pytest.raises(DecodeError):
        decode(data)


def test_negative_and_unknown_types():
    with pytest.raises(ValueError):
        encode(-1)
    with pytest.raises(TypeError):
        encode(1.5)


def test_tag_collision_rejected():
    with pytest.raises(ValueError):
        @register(0x11)
        @dataclass
        class Clash:
            a: int


def test_registry_has_core_types():
    names = {c.__name__ for c in registered_classes().values()}
    assert {"GroupParams", "Commitment", "BitCiphertext"} <= names
