import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from absind import (
    BooleanFunction,
    IndexOutOfRange,
    InvalidCharacter,
    LengthMismatch,
    evaluate,
    parse,
    serialize,
)


def test_parse_ascii_examples():
    zero = parse("00000000", "ascii01", 3)
    assert zero.n == 3 and zero.weight() == 0
    x0 = parse("01010101", "ascii01", 3)
    assert [evaluate(x0, x) for x in range(8)] == [x & 1 for x in range(8)]


def test_parse_ascii_ignores_whitespace():
    f = parse(" 0101\n0101\r\n\t", "ascii01", 3)
    assert f == parse("01010101", "ascii01", 3)


@pytest.mark.parametrize("text,fmt,n,exc", [
    ("0101010", "ascii01", 3, LengthMismatch),
    ("010101010", "ascii01", 3, LengthMismatch),
    ("0101a101", "ascii01", 3, InvalidCharacter),
    ("0x", "hex", 3, InvalidCharacter),
    ("aab", "hex", 3, LengthMismatch),
    ("aaaa", "hex", 3, LengthMismatch),
])
def test_parse_errors(text, fmt, n, exc):
    with pytest.raises(exc):
        parse(text, fmt, n)


def test_parse_raw_length_and_padding():
    with pytest.raises(LengthMismatch):
        parse(b"\x00\x00", "raw", 3)
    # n = 2 uses the low four bits of one byte
    assert parse(b"\x0a", "raw", 2).bits.tolist() == [0, 1, 0, 1]
    with pytest.raises(LengthMismatch):
        parse(b"\x1a", "raw", 2)


def test_evaluate(zero3, x0_3):
    assert evaluate(zero3, 5) == 0
    assert evaluate(x0_3, 1) == 1
    with pytest.raises(IndexOutOfRange):
        evaluate(x0_3, 8)
    with pytest.raises(IndexOutOfRange):
        evaluate(x0_3, -1)


def test_serialize_examples(zero3, x0_3):
    assert serialize(zero3, "ascii01") == b"00000000"
    # indices 1, 3, 5, 7 set, packed LSB first
    assert serialize(x0_3, "raw") == bytes([0b10101010])
    assert serialize(x0_3, "hex") == b"aa"


def test_raw_layout_multi_byte():
    bits = np.zeros(16, dtype=np.uint8)
    bits[[0, 9, 15]] = 1
    f = BooleanFunction.from_bits(bits)
    assert serialize(f, "raw") == bytes([0x01, 0x82])


def test_affine_constructor():
    f = BooleanFunction.affine(3, 0b101, 1)
    expected = [(bin(x & 5).count("1") + 1) % 2 for x in range(8)]
    assert f.bits.tolist() == expected


def test_immutable(x0_3):
    with pytest.raises(ValueError):
        x0_3.bits[0] = 1
    with pytest.raises(AttributeError):
        x0_3.n = 4


tables = st.integers(2, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.binary(min_size=max(1, (1 << n) // 8), max_size=max(1, (1 << n) // 8)))
)


def _function(n, data):
    if n < 3:
        data = bytes([data[0] & ((1 << (1 << n)) - 1)])
    return BooleanFunction(n, data)


@settings(max_examples=200, deadline=None)
@given(tables, st.sampled_from(["ascii01", "raw", "hex"]))
def test_roundtrip(table, fmt):
    f = _function(*table)
    assert parse(serialize(f, fmt), fmt, f.n) == f


@settings(max_examples=50, deadline=None)
@given(tables, st.data())
def test_xor_translation(table, data):
    f = _function(*table)
    i = data.draw(st.integers(0, f.length - 1))
    u = data.draw(st.integers(0, f.length - 1))
    assert evaluate(f, i ^ u) == f.bits[i ^ u]
    # coordinate j of x + u is bit j of i ^ u
    for j in range(f.n):
        assert ((i ^ u) >> j) & 1 == ((i >> j) & 1) ^ ((u >> j) & 1)
