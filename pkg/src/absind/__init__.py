"""Spectral indicators of Boolean functions and an absolute-indicator randomness test."""

from .boolean import BooleanFunction, evaluate, parse, serialize
from .errors import (
    AbsindError,
    DimensionTooLarge,
    IndexOutOfRange,
    InvalidAlpha,
    InvalidCharacter,
    InvalidDimension,
    LengthMismatch,
    TooManyFlips,
)
from .generators import disturb, random_function, stream_seed, two_period_extend
from .randtest import TestConfig, TestReport, Thresholds, ai_threshold, nl_band, run_test
from .spectra import (
    AutocorrelationSpectrum,
    IndicatorSummary,
    WalshSpectrum,
    absolute_indicator,
    analyze,
    autocorrelation_fast,
    autocorrelation_naive,
    nonlinearity,
    sum_of_squares,
    walsh_fast,
    walsh_naive,
)

__version__ = "0.1.0"
