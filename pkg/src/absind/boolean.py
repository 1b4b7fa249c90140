"""Truth-table model of Boolean functions F_2^n -> F_2.

Point ``x`` is identified with the integer whose bit ``j`` is coordinate ``j``
of ``x`` (little-endian), so the vector sum ``x + u`` is ``x ^ u`` on indices.
Tables are stored packed, bit ``i`` of the function in bit ``i % 8`` of byte
``i // 8`` -- the same layout as the ``raw`` file format.
"""

from __future__ import annotations

import hashlib
import string
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from .errors import IndexOutOfRange, InvalidCharacter, InvalidDimension, LengthMismatch

MAX_N = 30

Format = Literal["ascii01", "raw", "hex"]
FORMATS: tuple[str, ...] = ("ascii01", "raw", "hex")

_WHITESPACE = b" \t\r\n"
_HEXDIGITS = set(string.hexdigits.encode())


def _nbytes(n: int) -> int:
    return max(1, (1 << n) // 8)


@dataclass(frozen=True)
class BooleanFunction:
    """A Boolean function on ``n`` variables, given by its packed truth table."""

    n: int
    packed: bytes

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise InvalidDimension(f"n must lie in [1, {MAX_N}], got {self.n}")
        if len(self.packed) != _nbytes(self.n):
            raise LengthMismatch(
                f"packed table for n={self.n} needs {_nbytes(self.n)} bytes, got {len(self.packed)}"
            )
        if self.n < 3 and self.packed[0] >> (1 << self.n):
            raise LengthMismatch(f"padding bits set beyond the {1 << self.n} table bits")

    @classmethod
    def from_bits(cls, bits, n: int | None = None) -> "BooleanFunction":
        """Build from a sequence of 0/1 values (index order)."""
        bits = np.asarray(bits, dtype=np.uint8).ravel()
        size = bits.size
        if n is None:
            n = size.bit_length() - 1
        if size != 1 << n:
            raise LengthMismatch(f"expected {1 << n} bits, got {size}")
        if np.any(bits > 1):
            raise InvalidCharacter("truth table entries must be 0 or 1")
        packed = np.packbits(bits, bitorder="little").tobytes()
        return cls(n, packed)

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "BooleanFunction":
        return cls.from_bits(np.full(1 << n, value & 1, dtype=np.uint8), n)

    @classmethod
    def affine(cls, n: int, mask: int, const: int = 0) -> "BooleanFunction":
        """The function x -> mask.x + const."""
        if not 0 <= mask < 1 << n:
            raise IndexOutOfRange(f"mask {mask} outside [0, 2^{n})")
        x = np.arange(1 << n, dtype=np.uint32)
        bits = (np.bitwise_count(x & np.uint32(mask)) & 1) ^ (const & 1)
        return cls.from_bits(bits.astype(np.uint8), n)

    @property
    def length(self) -> int:
        return 1 << self.n

    @cached_property
    def bits(self) -> np.ndarray:
        """Unpacked table as a read-only uint8 array of length 2^n."""
        out = np.unpackbits(np.frombuffer(self.packed, dtype=np.uint8), bitorder="little")
        out = out[: self.length].copy()
        out.flags.writeable = False
        return out

    @property
    def signs(self) -> np.ndarray:
        """The sign vector (-1)^f(x) as int64."""
        return 1 - 2 * self.bits.astype(np.int64)

    def weight(self) -> int:
        return int(np.count_nonzero(self.bits))

    def sha256(self) -> str:
        return hashlib.sha256(self.packed).hexdigest()

    def __repr__(self) -> str:
        if self.n <= 6:
            table = "".join(map(str, self.bits))
            return f"BooleanFunction(n={self.n}, table={table!r})"
        return f"BooleanFunction(n={self.n}, sha256={self.sha256()[:16]}...)"


def check_index(f: BooleanFunction, x: int) -> int:
    x = int(x)
    if not 0 <= x < f.length:
        raise IndexOutOfRange(f"point index {x} outside [0, {f.length})")
    return x


def evaluate(f: BooleanFunction, x: int) -> int:
    x = check_index(f, x)
    return (f.packed[x >> 3] >> (x & 7)) & 1


def parse(data: bytes | str, fmt: Format, n: int) -> BooleanFunction:
    """Decode a truth table of ``2**n`` bits.

    ``ascii01`` is a string of '0'/'1' characters (whitespace ignored),
    ``raw`` the packed LSB-first bytes, ``hex`` the raw bytes in hexadecimal.
    """
    if not 1 <= n <= MAX_N:
        raise InvalidDimension(f"n must lie in [1, {MAX_N}], got {n}")
    if isinstance(data, str):
        if fmt == "raw":
            raise TypeError("raw input must be bytes")
        data = data.encode("ascii", errors="replace")
    data = bytes(data)
    if fmt == "ascii01":
        digits = data.translate(None, _WHITESPACE)
        arr = np.frombuffer(digits, dtype=np.uint8)
        bad = (arr != ord("0")) & (arr != ord("1"))
        if np.any(bad):
            pos = int(np.argmax(bad))
            raise InvalidCharacter(f"invalid character {chr(arr[pos])!r} in ascii01 input")
        if arr.size != 1 << n:
            raise LengthMismatch(f"expected {1 << n} bits, got {arr.size}")
        return BooleanFunction.from_bits(arr - ord("0"), n)
    if fmt == "hex":
        digits = data.translate(None, _WHITESPACE)
        if any(c not in _HEXDIGITS for c in digits):
            raise InvalidCharacter("non-hex digit in hex input")
        if len(digits) % 2:
            raise LengthMismatch("odd number of hex digits")
        data = bytes.fromhex(digits.decode())
        fmt = "raw"
    if fmt == "raw":
        if len(data) != _nbytes(n):
            raise LengthMismatch(f"expected {_nbytes(n)} bytes for n={n}, got {len(data)}")
        return BooleanFunction(n, data)
    raise ValueError(f"unknown format {fmt!r}")


def serialize(f: BooleanFunction, fmt: Format) -> bytes:
    if fmt == "raw":
        return f.packed
    if fmt == "hex":
        return f.packed.hex().encode()
    if fmt == "ascii01":
        return (f.bits + ord("0")).tobytes()
    raise ValueError(f"unknown format {fmt!r}")
