"""Walsh and autocorrelation spectra and the indicators derived from them.

Fast routes are pure int64 butterflies.  The ``*_naive`` routes are direct
summations kept as independent oracles; they run the +-1 dot products through
float64 BLAS, which is exact here because every partial sum is an integer of
magnitude at most 2^16 (far below 2^53).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .boolean import BooleanFunction, check_index
from .errors import DimensionTooLarge

NAIVE_MAX_N = 16


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis (int64).

    Works on a single vector or a batch of shape ``(..., 2**n)``.
    """
    a = np.array(a, dtype=np.int64)
    size = a.shape[-1]
    if size & (size - 1):
        raise ValueError("last axis length must be a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :].copy()
        v[..., 0, :] += v[..., 1, :]
        np.subtract(lo, v[..., 1, :], out=v[..., 1, :])
        h *= 2
    return a


def walsh_from_signs(signs: np.ndarray) -> np.ndarray:
    return fwht(signs)


def autocorrelation_from_signs(signs: np.ndarray) -> np.ndarray:
    """Autocorrelation of each row of ``signs`` via Delta = WHT(W^2) / 2^n.

    All intermediate butterfly values are bounded by sum(W^2) = 2^(2n), so
    int64 is exact up to n = 30.
    """
    n = signs.shape[-1].bit_length() - 1
    w = fwht(signs)
    return fwht(w * w) >> n


def absolute_indicators(acorr: np.ndarray) -> np.ndarray:
    """max_{u != 0} |Delta_f(u)| for each row of an autocorrelation batch."""
    return np.abs(acorr[..., 1:]).max(axis=-1)


def nonlinearities(walsh: np.ndarray) -> np.ndarray:
    size = walsh.shape[-1]
    return size // 2 - np.abs(walsh).max(axis=-1) // 2


def exact_sum_of_squares(values: np.ndarray) -> int:
    """Exact integer sum of squares of an int64 vector with |v| <= 2^31."""
    v = np.abs(np.asarray(values, dtype=np.int64))
    if v.size and int(v.max()) > 1 << 31:
        return sum(int(x) * int(x) for x in v)
    sq = (v * v).astype(np.uint64)
    low = int(np.sum(sq & np.uint64(0xFFFFFFFF), dtype=np.uint64))
    high = int(np.sum(sq >> np.uint64(32), dtype=np.uint64))
    return (high << 32) + low


# ---------------------------------------------------------------------------
# Direct-summation oracles

@lru_cache(maxsize=4)
def _hadamard(n: int) -> np.ndarray:
    x = np.arange(1 << n, dtype=np.uint32)
    return 1.0 - 2.0 * (np.bitwise_count(x[:, None] & x[None, :]) & 1)


def _walsh_direct(signs: np.ndarray, n: int) -> np.ndarray:
    """sum_x s(x) (-1)^{x.u} for every u, row by row of ``signs``."""
    s = np.asarray(signs, dtype=np.float64)
    if n <= 12:
        out = s @ _hadamard(n)
    else:
        size = 1 << n
        x = np.arange(size, dtype=np.uint32)
        out = np.empty(s.shape, dtype=np.float64)
        step = 1 << 8
        for start in range(0, size, step):
            u = x[start:start + step]
            chunk = 1.0 - 2.0 * (np.bitwise_count(u[:, None] & x[None, :]) & 1)
            out[..., start:start + step] = s @ chunk.T
    return np.rint(out).astype(np.int64)


def _autocorrelation_direct(signs: np.ndarray, n: int) -> np.ndarray:
    """sum_x s(x) s(x ^ u) for every u by direct summation.

    Points are split as x = (hi, lo) with ``lo`` the low k bits.  For each
    high shift uh, C[lo, lo'] = sum_hi s(hi, lo) s(hi ^ uh, lo') is a matrix
    product, and Delta(uh, ul) = sum_lo C[lo, lo ^ ul].
    """
    k = n // 2
    rows, cols = 1 << (n - k), 1 << k
    a = np.asarray(signs, dtype=np.float64).reshape(rows, cols)
    hi = np.arange(rows)
    shifted = a[hi[:, None] ^ hi[None, :]]          # [uh, hi, lo'] = a[hi ^ uh, lo']
    c = np.matmul(a.T, shifted)                      # [uh, lo, lo']
    lo = np.arange(cols)
    pairs = c[:, lo[None, :], lo[None, :] ^ lo[:, None]]   # [uh, ul, lo] = C[lo, lo ^ ul]
    return np.rint(pairs.sum(axis=-1)).astype(np.int64).reshape(-1)


# ---------------------------------------------------------------------------
# Spectrum types

@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __getitem__(self, u):
        return self.values[u]


@dataclass(frozen=True, eq=False)
class AutocorrelationSpectrum:
    n: int
    values: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, AutocorrelationSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __getitem__(self, u):
        return self.values[u]


@dataclass(frozen=True)
class IndicatorSummary:
    n: int
    nonlinearity: int
    absolute_indicator: int
    argmax_u: int
    sum_of_squares: int
    ai_ratio: float


def walsh_fast(f: BooleanFunction) -> WalshSpectrum:
    return WalshSpectrum(f.n, fwht(f.signs))


def walsh_naive(f: BooleanFunction) -> WalshSpectrum:
    """Walsh spectrum by the O(4^n) double sum over (u, x)."""
    if f.n > NAIVE_MAX_N:
        raise DimensionTooLarge(f"walsh_naive is limited to n <= {NAIVE_MAX_N}")
    return WalshSpectrum(f.n, _walsh_direct(f.signs, f.n))


def autocorrelation_fast(f: BooleanFunction) -> AutocorrelationSpectrum:
    return AutocorrelationSpectrum(f.n, autocorrelation_from_signs(f.signs))


def autocorrelation_naive(f: BooleanFunction, u: int) -> int:
    """Delta_f(u) = sum_x (-1)^(f(x) + f(x ^ u)), summed directly."""
    u = check_index(f, u)
    b = f.bits
    x = np.arange(f.length, dtype=np.int64)
    disagreements = int(np.count_nonzero(b != b[x ^ u]))
    return f.length - 2 * disagreements


def autocorrelation_naive_spectrum(f: BooleanFunction) -> AutocorrelationSpectrum:
    """All of Delta_f by direct summation (never through the Walsh domain)."""
    if f.n > NAIVE_MAX_N:
        raise DimensionTooLarge(f"direct autocorrelation is limited to n <= {NAIVE_MAX_N}")
    return AutocorrelationSpectrum(f.n, _autocorrelation_direct(f.signs, f.n))


def nonlinearity(f: BooleanFunction) -> int:
    return int(nonlinearities(walsh_fast(f).values))


def absolute_indicator(f: BooleanFunction) -> tuple[int, int]:
    """Return ``(max_{u != 0} |Delta_f(u)|, smallest u attaining it)``."""
    mags = np.abs(autocorrelation_fast(f).values[1:])
    u = int(np.argmax(mags))
    return int(mags[u]), u + 1


def sum_of_squares(f: BooleanFunction) -> int:
    """sigma(f) = sum over all u (0 included) of Delta_f(u)^2."""
    return exact_sum_of_squares(autocorrelation_fast(f).values)


def sum_of_squares_from_walsh(f: BooleanFunction) -> int:
    """2^-n * sum_u W(u)^4; the Walsh-side cross-check of sum_of_squares."""
    w = walsh_fast(f).values
    total = sum(int(v) ** 4 for v in w)
    quotient, rem = divmod(total, f.length)
    assert rem == 0
    return quotient


def ai_normalizer(n: int) -> float:
    """2 sqrt(l ln l) with l = 2^n, the asymptotic mean absolute indicator."""
    l = 1 << n
    return 2.0 * math.sqrt(l * math.log(l))


def analyze(f: BooleanFunction) -> IndicatorSummary:
    signs = f.signs
    walsh = fwht(signs)
    acorr = fwht(walsh * walsh) >> f.n
    mags = np.abs(acorr[1:])
    u = int(np.argmax(mags))
    delta = int(mags[u])
    return IndicatorSummary(
        n=f.n,
        nonlinearity=int(nonlinearities(walsh)),
        absolute_indicator=delta,
        argmax_u=u + 1,
        sum_of_squares=exact_sum_of_squares(acorr),
        ai_ratio=delta / ai_normalizer(f.n),
    )
