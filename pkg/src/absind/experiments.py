"""Monte Carlo and exhaustive checks of the absolute-indicator laws.

Every trial ``t`` of an experiment draws its randomness from the stream
``stream_seed(seed, t)``.  Trials are processed in fixed-size chunks that may
run on worker threads, and per-trial statistics are concatenated in trial
order before any aggregation, so a result depends only on its configuration.
Real-valued means use ``math.fsum``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import formatting
from .errors import DimensionTooLarge
from .generators import random_bits_batch, random_signs_batch, splitmix64_outputs, stream_seeds
from .spectra import (
    absolute_indicators,
    autocorrelation_from_signs,
    exact_sum_of_squares,
    fwht,
    nonlinearities,
)

KINDS = ("ratio", "tail", "single_u_tail", "pair_tail", "concentration", "exhaustive", "sos_mean")

COLUMNS = (
    "kind", "n", "trials", "seed", "epsilon", "theta",
    "mean_ratio", "stddev_ratio", "empirical_tail", "bound_value",
    "bound_satisfied", "exact_expectation", "note",
)

EXHAUSTIVE_MAX_N = 4

# work per chunk, in table entries; bounds peak memory independent of n
_CHUNK_ENTRIES = 1 << 21


@dataclass
class ExperimentRow:
    kind: str
    n: int
    trials: int
    seed: int | None = None
    epsilon: float | None = None
    theta: float | None = None
    mean_ratio: float | None = None
    stddev_ratio: float | None = None
    empirical_tail: float | None = None
    bound_value: float | None = None
    bound_satisfied: bool | None = None
    exact_expectation: float | None = None
    note: str = ""
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class ExperimentConfig:
    kind: str
    n_values: list[int]
    trials: int = 1000
    seed: int = 0
    epsilon: float = 0.5
    theta: float = 300.0
    workers: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.kind == "exhaustive" and any(n > EXHAUSTIVE_MAX_N for n in self.n_values):
            raise DimensionTooLarge(f"exhaustive enumeration needs n <= {EXHAUSTIVE_MAX_N}")


# ---------------------------------------------------------------------------
# chunked trial engine

def _map_trials(work: Callable[[int, int], np.ndarray], trials: int, per_trial: int,
                workers: int = 1) -> np.ndarray:
    """Run ``work(start, stop)`` over fixed chunks and concatenate in order."""
    chunk = max(1, _CHUNK_ENTRIES // max(1, per_trial))
    bounds = [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]
    if workers <= 1 or len(bounds) == 1:
        parts = [work(a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: work(*ab), bounds))
    return np.concatenate(parts)


def _random_signs(n: int, seed: int, start: int, stop: int) -> np.ndarray:
    return random_signs_batch(n, stream_seeds(seed, start, stop))


def absolute_indicator_samples(n: int, trials: int, seed: int, workers: int = 1) -> np.ndarray:
    """Delta(f) for the random functions of trials 0 .. trials-1."""
    def work(a, b):
        return absolute_indicators(autocorrelation_from_signs(_random_signs(n, seed, a, b)))
    return _map_trials(work, trials, 1 << n, workers)


def sum_of_squares_samples(n: int, trials: int, seed: int, workers: int = 1) -> list[int]:
    def work(a, b):
        acorr = autocorrelation_from_signs(_random_signs(n, seed, a, b))
        if 3 * n <= 62:
            return (acorr * acorr).sum(axis=-1)
        return np.array([exact_sum_of_squares(row) for row in acorr], dtype=object)
    return [int(v) for v in _map_trials(work, trials, 1 << n, workers)]


def _mean_std(values) -> tuple[float, float]:
    values = [float(v) for v in values]
    mean = math.fsum(values) / len(values)
    if len(values) < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return mean, math.sqrt(var)


def _sqrt_l_log_l(n: int) -> float:
    l = 1 << n
    return math.sqrt(l * math.log(l))


# ---------------------------------------------------------------------------
# experiments

def estimate_ratio(n: int, trials: int, seed: int, workers: int = 1) -> ExperimentRow:
    """Mean and spread of Delta(f) / sqrt(l ln l); the limit for large n is 2."""
    if trials < 100:
        raise ValueError("estimate_ratio needs at least 100 trials")
    deltas = absolute_indicator_samples(n, trials, seed, workers)
    scale = _sqrt_l_log_l(n)
    mean, std = _mean_std(d / scale for d in deltas)
    mean_delta, std_delta = _mean_std(deltas)
    return ExperimentRow(
        "ratio", n, trials, seed, mean_ratio=mean, stddev_ratio=std,
        extras={"mean_delta": mean_delta, "stderr_delta": std_delta / math.sqrt(trials)},
    )


def tail_check(n: int, trials: int, epsilon: float, seed: int, workers: int = 1) -> ExperimentRow:
    """P[Delta(f) > (2 + eps) sqrt(l ln l)] against the union bound 2 l^-eps."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    l = 1 << n
    deltas = absolute_indicator_samples(n, trials, seed, workers)
    scale = _sqrt_l_log_l(n)
    threshold = (2.0 + epsilon) * scale
    hits = int(np.count_nonzero(deltas > threshold))
    empirical = hits / trials
    bound = 2.0 * l ** (-epsilon)
    mean, std = _mean_std(d / scale for d in deltas)
    stderr = math.sqrt(max(bound * (1 - bound), 0.0) / trials)
    note = ""
    if abs(empirical - bound) <= 3 * stderr:
        note = "bound within 3 standard errors of the estimate"
    return ExperimentRow(
        "tail", n, trials, seed, epsilon=epsilon, mean_ratio=mean, stddev_ratio=std,
        empirical_tail=empirical, bound_value=bound, bound_satisfied=empirical <= bound,
        note=note, extras={"threshold": threshold, "hits": hits},
    )


def exact_single_u_tail(n: int) -> float:
    """Exact P[|Delta_f(u)| >= 2 sqrt(l ln l)] for fixed u != 0.

    Delta_f(u) = 2 (k - 2B) with B ~ Binomial(k, 1/2), k = l/2.
    """
    l = 1 << n
    k = l // 2
    lam = 2.0 * _sqrt_l_log_l(n)
    hits = sum(math.comb(k, b) for b in range(k + 1) if abs(2 * (k - 2 * b)) >= lam)
    return float(Fraction(hits, 1 << k))


def single_direction_samples(n: int, trials: int, seed: int, workers: int = 1) -> np.ndarray:
    """Delta_f(u) for one fixed u, as twice a sum of l/2 independent +-1 draws.

    Trial t uses the first ceil(l/128) outputs of stream t; the l/2 draws are
    their low-order bits.
    """
    half = (1 << n) // 2
    words = max(1, half // 64)

    def work(a, b):
        out = splitmix64_outputs(stream_seeds(seed, a, b), words)
        if half < 64:
            out = out & np.uint64((1 << half) - 1)
        ones = np.bitwise_count(out).sum(axis=-1, dtype=np.int64)
        return 2 * (half - 2 * ones)

    return _map_trials(work, trials, words * 8, workers)


def single_u_tail(n: int, trials: int, seed: int, workers: int = 1) -> ExperimentRow:
    """P[|Delta_f(u)| >= 2 sqrt(l ln l)] against the lower bound 1/(2 l sqrt(ln l))."""
    l = 1 << n
    samples = single_direction_samples(n, trials, seed, workers)
    lam = 2.0 * _sqrt_l_log_l(n)
    hits = int(np.count_nonzero(np.abs(samples) >= lam))
    empirical = hits / trials
    bound = 1.0 / (2 * l * math.sqrt(math.log(l)))
    mean_square = Fraction(int(np.sum(samples * samples)), trials)
    exact = exact_single_u_tail(n)
    note = "lower bound is asymptotic (large n)"
    if exact < bound:
        note += f"; exact probability {exact:.6g} is below it at this n"
    return ExperimentRow(
        "single_u_tail", n, trials, seed,
        empirical_tail=empirical, bound_value=bound, bound_satisfied=empirical >= bound,
        note=note,
        extras={"threshold": lam, "hits": hits, "mean_square": float(mean_square),
                "expected_mean_square": float(2 * l), "exact_tail": exact},
    )


def pair_tail(n: int, trials: int, seed: int, u: int = 1, v: int = 2,
              workers: int = 1) -> ExperimentRow:
    """Joint frequency of |Delta_f(u)| >= lambda and |Delta_f(v)| >= lambda.

    A non-violation audit of the 4 l^-2 bound: the event is far too rare for
    a positive estimate at these sample sizes.
    """
    l = 1 << n
    if u == v or not (0 < u < l and 0 < v < l):
        raise ValueError("u and v must be distinct nonzero points")
    lam = 2.0 * _sqrt_l_log_l(n)
    x = np.arange(l)

    def work(a, b):
        bits = random_bits_batch(n, stream_seeds(seed, a, b))
        du = np.abs(l - 2 * (bits ^ bits[:, x ^ u]).sum(axis=-1, dtype=np.int64))
        dv = np.abs(l - 2 * (bits ^ bits[:, x ^ v]).sum(axis=-1, dtype=np.int64))
        return np.stack([du >= lam, dv >= lam], axis=-1)

    flags = _map_trials(work, trials, 2 * l, workers)
    joint = int(np.count_nonzero(flags[:, 0] & flags[:, 1]))
    hits_u, hits_v = (int(c) for c in flags.sum(axis=0))
    empirical = joint / trials
    bound = 4.0 / l ** 2
    note = "non-violation audit; joint probability is below Monte Carlo resolution"
    if n < 7:
        note += "; bound stated for n >= 7 only"
    return ExperimentRow(
        "pair_tail", n, trials, seed,
        empirical_tail=empirical, bound_value=bound, bound_satisfied=empirical <= bound,
        note=note,
        extras={"u": u, "v": v, "joint_hits": joint, "hits_u": hits_u, "hits_v": hits_v,
                "threshold": lam},
    )


def concentration_check(n: int, trials: int, theta: float, seed: int,
                        workers: int = 1) -> ExperimentRow:
    """P[|Delta - mean| >= theta] against 2 exp(-theta^2 / 8l)."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    l = 1 << n
    deltas = absolute_indicator_samples(n, trials, seed, workers)
    mean_delta, std_delta = _mean_std(deltas)
    hits = int(np.count_nonzero(np.abs(deltas - mean_delta) >= theta))
    empirical = hits / trials
    bound = 2.0 * math.exp(-theta * theta / (8 * l))
    scale = _sqrt_l_log_l(n)
    return ExperimentRow(
        "concentration", n, trials, seed, theta=theta,
        mean_ratio=mean_delta / scale, stddev_ratio=std_delta / scale,
        empirical_tail=empirical, bound_value=bound, bound_satisfied=empirical <= bound,
        extras={"mean_delta": mean_delta, "hits": hits},
    )


@dataclass
class ExhaustiveResult:
    n: int
    count: int
    delta_histogram: dict[int, int]
    nl_histogram: dict[int, int]
    mean_delta: Fraction
    mean_sum_of_squares: Fraction

    def row(self) -> ExperimentRow:
        return ExperimentRow(
            "exhaustive", self.n, self.count,
            mean_ratio=float(self.mean_delta) / _sqrt_l_log_l(self.n),
            exact_expectation=float(self.mean_delta),
            note="exact enumeration of all functions",
            extras={"mean_sum_of_squares": float(self.mean_sum_of_squares),
                    "delta_histogram": {str(k): v for k, v in self.delta_histogram.items()},
                    "nl_histogram": {str(k): v for k, v in self.nl_histogram.items()}},
        )


def all_truth_tables(n: int) -> np.ndarray:
    """Every table on n variables; row t holds the bits of integer t."""
    if n > EXHAUSTIVE_MAX_N:
        raise DimensionTooLarge(f"exhaustive enumeration needs n <= {EXHAUSTIVE_MAX_N}")
    l = 1 << n
    t = np.arange(1 << l, dtype=np.int64)
    return ((t[:, None] >> np.arange(l)) & 1).astype(np.uint8)


def exhaustive_oracle(n: int) -> ExhaustiveResult:
    """Exact distributions of Delta and NL over all 2^(2^n) functions."""
    bits = all_truth_tables(n)
    signs = 1 - 2 * bits.astype(np.int64)
    walsh = fwht(signs)
    acorr = fwht(walsh * walsh) >> n
    deltas = absolute_indicators(acorr)
    nls = nonlinearities(walsh)
    sos = (acorr * acorr).sum(axis=-1)
    count = bits.shape[0]

    def histogram(values):
        keys, counts = np.unique(values, return_counts=True)
        return {int(k): int(c) for k, c in zip(keys, counts)}

    return ExhaustiveResult(
        n=n,
        count=count,
        delta_histogram=histogram(deltas),
        nl_histogram=histogram(nls),
        mean_delta=Fraction(int(deltas.sum()), count),
        mean_sum_of_squares=Fraction(int(sos.sum()), count),
    )


def sos_closed_form(n: int) -> int:
    """E[sigma(f)] = 3 l^2 - 2 l for uniform random f."""
    l = 1 << n
    return 3 * l * l - 2 * l


def sos_mean(n: int, trials: int, seed: int, workers: int = 1) -> ExperimentRow:
    """Monte Carlo mean of sigma(f) against 3 l^2 - 2 l."""
    if trials < 100:
        raise ValueError("sos_mean needs at least 100 trials")
    values = sum_of_squares_samples(n, trials, seed, workers)
    mean = Fraction(sum(values), trials)
    _, std = _mean_std(values)
    stderr = std / math.sqrt(trials)
    target = sos_closed_form(n)
    return ExperimentRow(
        "sos_mean", n, trials, seed,
        mean_ratio=float(mean / target),
        empirical_tail=None, bound_value=float(target),
        bound_satisfied=abs(float(mean) - target) <= 3 * stderr,
        note="bound_value is the closed-form mean; satisfied means within 3 standard errors",
        extras={"mean_sum_of_squares": float(mean), "stderr": stderr},
    )


def disturbance_nl_shifts(n: int, r: int, trials: int, seed: int) -> np.ndarray:
    """NL(f_r) - NL(f) for ``trials`` disturbed two-period functions f on n variables.

    Trial t builds g from stream ``stream_seed(base, 0)`` and disturbs with
    stream ``stream_seed(base, 1)``, where ``base = stream_seed(seed, t)``.
    """
    from .generators import disturb, random_function, stream_seed, two_period_extend
    from .spectra import nonlinearity

    shifts = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        base = stream_seed(seed, t)
        f = two_period_extend(random_function(n - 1, stream_seed(base, 0)))
        fr = disturb(f, r, stream_seed(base, 1))
        shifts[t] = nonlinearity(fr) - nonlinearity(f)
    return shifts


def disturbance_nl_tail(n: int, r: int, trials: int, seed: int,
                        s_values=(6, 8, 10)) -> list[dict]:
    """Frequency of |NL(f_r) - NL(f)| > s against 2 exp(-s^2 / 2r)."""
    shifts = np.abs(disturbance_nl_shifts(n, r, trials, seed))
    out = []
    for s in s_values:
        empirical = int(np.count_nonzero(shifts > s)) / trials
        bound = 2.0 * math.exp(-s * s / (2 * r))
        out.append({"s": s, "empirical_tail": empirical, "bound_value": bound,
                    "bound_satisfied": empirical <= bound, "max_shift": int(shifts.max())})
    return out


def run_experiment(config: ExperimentConfig) -> list[ExperimentRow]:
    rows = []
    for n in config.n_values:
        k, t, s, w = config.kind, config.trials, config.seed, config.workers
        if k == "ratio":
            rows.append(estimate_ratio(n, t, s, w))
        elif k == "tail":
            rows.append(tail_check(n, t, config.epsilon, s, w))
        elif k == "single_u_tail":
            rows.append(single_u_tail(n, t, s, workers=w))
        elif k == "pair_tail":
            rows.append(pair_tail(n, t, s, workers=w))
        elif k == "concentration":
            rows.append(concentration_check(n, t, config.theta, s, w))
        elif k == "exhaustive":
            rows.append(exhaustive_oracle(n).row())
        elif k == "sos_mean":
            rows.append(sos_mean(n, t, s, w))
    return rows


def rows_to_csv(rows: list[ExperimentRow]) -> str:
    return formatting.to_csv(COLUMNS, (r.as_dict() for r in rows))


def rows_to_json(rows: list[ExperimentRow]) -> str:
    return formatting.dumps([r.as_dict() for r in rows]) + "\n"
