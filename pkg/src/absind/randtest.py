"""Randomness test for a bit sequence of length 2^n read as a truth table.

Two statistics are compared against what a uniformly random Boolean function
would show:

* nonlinearity, against the band [lowNL_n, highNL_n] of Litsyn and Shpunt;
* absolute indicator, against the one-sided threshold (2 + eps) sqrt(l ln l),
  where eps is chosen so that the union-bound tail 2 l^-eps equals ``alpha``.

The absolute-indicator side rejects periodic sequences that the
nonlinearity side lets through.  Passing proves nothing; failing is strong
evidence of non-randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .boolean import BooleanFunction
from .errors import InvalidAlpha, InvalidDimension
from .spectra import analyze, ai_normalizer


@dataclass(frozen=True)
class TestConfig:
    __test__ = False

    alpha: float = 0.01
    run_nl: bool = True
    run_ai: bool = True

    def __post_init__(self):
        _check_alpha(self.alpha)


@dataclass(frozen=True)
class Thresholds:
    nl_low: float
    nl_high: float
    nl_high_clamped: bool
    ai_expected: float
    ai_upper: float
    ai_epsilon: float


@dataclass(frozen=True)
class Failure:
    """Which statistic crossed which threshold."""

    statistic: str
    value: int
    threshold: float
    relation: str          # "<" or ">": value <relation> threshold


@dataclass(frozen=True)
class TestReport:
    __test__ = False

    n: int
    nonlinearity: int
    absolute_indicator: int
    argmax_u: int
    sum_of_squares: int
    ai_ratio: float
    thresholds: Thresholds
    nl_verdict: str
    ai_verdict: str
    alpha: float
    failures: tuple[Failure, ...] = field(default=())

    @property
    def rejected(self) -> bool:
        return "fail" in (self.nl_verdict, self.ai_verdict)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must lie in (0, 1), got {alpha}")


def nl_band(n: int) -> tuple[float, float, bool]:
    """(lowNL_n, highNL_n, clamped) with natural logarithms.

    For n <= 15 the radicand of highNL is negative; it is clamped to zero,
    making highNL = 2^(n-1), an upper edge that never binds.
    """
    if n < 2:
        raise InvalidDimension("nl_band needs n >= 2")
    half = 2.0 ** (n - 1)
    nl2 = n * math.log(2.0)
    low = half - math.sqrt(half * (nl2 + 3.5 * math.log(nl2) + 0.125))
    inner = nl2 - 4.5 * math.log(nl2)
    clamped = inner < 0
    high = half - math.sqrt(half * max(0.0, inner))
    return low, high, clamped


def nl_band_chain(n: int) -> dict[str, bool | None]:
    """Evaluate 2 low_{n-1} < low_n < 2 high_{n-1} < high_n where meaningful.

    Comparisons involving a clamped highNL are reported as ``None``.
    """
    lo_prev, hi_prev, cl_prev = nl_band(n - 1)
    lo, hi, cl = nl_band(n)
    return {
        "2low_prev<low": 2 * lo_prev < lo,
        "low<2high_prev": None if cl_prev else lo < 2 * hi_prev,
        "2high_prev<high": None if (cl or cl_prev) else 2 * hi_prev < hi,
    }


def ai_threshold(n: int, alpha: float) -> tuple[float, float]:
    """(eps, mu) with 2 l^-eps = alpha and mu = (2 + eps) sqrt(l ln l).

    P[Delta(f) > mu] < alpha for a uniformly random f on n variables.
    """
    if n < 2:
        raise InvalidDimension("ai_threshold needs n >= 2")
    _check_alpha(alpha)
    log_l = n * math.log(2.0)
    eps = math.log(2.0 / alpha) / log_l
    mu = (2.0 + eps) * math.sqrt((1 << n) * log_l)
    return eps, mu


def thresholds(n: int, alpha: float) -> Thresholds:
    low, high, clamped = nl_band(n)
    eps, mu = ai_threshold(n, alpha)
    return Thresholds(
        nl_low=low,
        nl_high=high,
        nl_high_clamped=clamped,
        ai_expected=ai_normalizer(n),
        ai_upper=mu,
        ai_epsilon=eps,
    )


def run_test(f: BooleanFunction, config: TestConfig = TestConfig()) -> TestReport:
    summary = analyze(f)
    th = thresholds(f.n, config.alpha)
    failures = []

    nl_verdict = "skipped"
    if config.run_nl:
        nl = summary.nonlinearity
        nl_verdict = "pass"
        if nl < th.nl_low:
            nl_verdict = "fail"
            failures.append(Failure("nonlinearity", nl, th.nl_low, "<"))
        elif not th.nl_high_clamped and nl > th.nl_high:
            nl_verdict = "fail"
            failures.append(Failure("nonlinearity", nl, th.nl_high, ">"))

    ai_verdict = "skipped"
    if config.run_ai:
        delta = summary.absolute_indicator
        if delta > th.ai_upper:
            ai_verdict = "fail"
            failures.append(Failure("absolute_indicator", delta, th.ai_upper, ">"))
        elif th.ai_upper >= f.length:
            # no function can exceed the threshold: the test has no power
            ai_verdict = "inconclusive"
        else:
            ai_verdict = "pass"

    return TestReport(
        n=f.n,
        nonlinearity=summary.nonlinearity,
        absolute_indicator=summary.absolute_indicator,
        argmax_u=summary.argmax_u,
        sum_of_squares=summary.sum_of_squares,
        ai_ratio=summary.ai_ratio,
        thresholds=th,
        nl_verdict=nl_verdict,
        ai_verdict=ai_verdict,
        alpha=config.alpha,
        failures=tuple(failures),
    )
