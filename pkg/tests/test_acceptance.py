"""Exit criteria, one test each; a PASS/FAIL line per criterion is printed
in the terminal summary."""

import json
import math
import time

import numpy as np
import pytest

from absind import (
    BooleanFunction,
    TestConfig,
    absolute_indicator,
    analyze,
    autocorrelation_fast,
    disturb,
    nonlinearity,
    random_function,
    run_test,
    two_period_extend,
)
from absind.cli import dispatch
from absind.experiments import (
    concentration_check,
    disturbance_nl_tail,
    estimate_ratio,
    exhaustive_oracle,
    pair_tail,
    single_u_tail,
    sos_mean,
    tail_check,
)
from absind.generators import random_signs_batch, stream_seed, stream_seeds
from absind.spectra import (
    _autocorrelation_direct,
    _walsh_direct,
    autocorrelation_from_signs,
    fwht,
)
from conftest import record_acceptance


def check(label, passed, detail=""):
    record_acceptance(label, bool(passed), detail)
    assert passed, f"{label}: {detail}"


@pytest.fixture(scope="module")
def oracle_sweep():
    """Fast vs direct-summation spectra for 1000 seeded functions per n in 2..12."""
    start = time.perf_counter()
    mismatches = []
    invariant_failures = []
    for n in range(2, 13):
        l = 1 << n
        signs = random_signs_batch(n, stream_seeds(2024, 0, 1000))
        w_fast = fwht(signs)
        a_fast = autocorrelation_from_signs(signs)
        w_naive = _walsh_direct(signs, n)
        if not np.array_equal(w_fast, w_naive):
            mismatches.append(f"walsh n={n}")
        a_naive = np.stack([_autocorrelation_direct(s, n) for s in signs])
        if not np.array_equal(a_fast, a_naive):
            mismatches.append(f"autocorrelation n={n}")

        w = w_naive
        w2 = w * w
        if not np.all(w2.sum(axis=1) == l * l):
            invariant_failures.append(f"parseval n={n}")
        if not np.array_equal(fwht(w2), l * a_naive):
            invariant_failures.append(f"convolution n={n}")
        if not np.all(a_naive[:, 0] == l):
            invariant_failures.append(f"delta(0) n={n}")
        if not np.all(a_naive % 4 == 0):
            invariant_failures.append(f"mod 4 n={n}")
        sigma = [sum(int(x) ** 2 for x in row) for row in a_naive]
        fourth = [sum(int(x) ** 4 for x in row) for row in w]
        if any(s * l != q for s, q in zip(sigma, fourth)):
            invariant_failures.append(f"sum of squares n={n}")
    elapsed = time.perf_counter() - start
    return mismatches, invariant_failures, elapsed


def test_c01_oracle_equivalence(oracle_sweep):
    mismatches, _, elapsed = oracle_sweep
    check("C1 oracle equivalence (1000 fns/n, n=2..12, < 120 s)",
          not mismatches and elapsed < 120,
          f"mismatches={mismatches or 'none'}, {elapsed:.1f} s")


def test_c02_invariants(oracle_sweep):
    _, failures, _ = oracle_sweep
    check("C2 Parseval / convolution / Delta(0) / mod 4 / sigma identity", not failures,
          f"violations={failures or 'none'}")


def test_c03_exhaustive_n3():
    res = exhaustive_oracle(3)
    exact_delta = float(res.mean_delta)
    ratio = estimate_ratio(3, 10_000, 1)
    sos = sos_mean(3, 10_000, 6)
    z_delta = abs(ratio.extras["mean_delta"] - exact_delta) / ratio.extras["stderr_delta"]
    z_sos = abs(sos.extras["mean_sum_of_squares"] - 176) / sos.extras["stderr"]
    ok = res.count == 256 and res.mean_sum_of_squares == 176 and z_delta <= 3 and z_sos <= 3
    check("C3 exhaustive n=3, Monte Carlo within 3 SE", ok,
          f"E[Delta]={res.mean_delta}, mean sigma={res.mean_sum_of_squares}, "
          f"z_Delta={z_delta:.2f}, z_sigma={z_sos:.2f}")


def test_c04_ratio_band():
    start = time.perf_counter()
    rows = {n: estimate_ratio(n, 2000, 1) for n in (8, 10, 12, 14)}
    elapsed = time.perf_counter() - start
    outside = {n: round(r.mean_ratio, 4) for n, r in rows.items() if not 1.8 <= r.mean_ratio <= 2.3}
    std14 = rows[14].stddev_ratio
    detail = ", ".join(f"n={n}: {r.mean_ratio:.4f}" for n, r in rows.items())
    detail += f"; sd(n=14)={std14:.4f}; {elapsed:.1f} s"
    if outside:
        detail += f"; outside [1.8, 2.3]: {outside}"
    check("C4 mean Delta/sqrt(l ln l) in [1.8, 2.3], sd(n=14) < 0.15", not outside and std14 < 0.15
          and elapsed < 600, detail)


def test_c05_union_bound():
    row = tail_check(12, 10_000, 0.5, 2)
    check("C5 P[Delta > 2.5 sqrt(l ln l)] <= 2*4096^-0.5 at n=12",
          row.empirical_tail <= 2 * 4096 ** -0.5,
          f"empirical={row.empirical_tail}, bound={row.bound_value:.5f}")


def test_c06_single_direction_lower_bound():
    start = time.perf_counter()
    row = single_u_tail(10, 10_000_000, 3)
    elapsed = time.perf_counter() - start
    lower = 1 / (2 * 1024 * math.sqrt(math.log(1024)))
    emp = row.empirical_tail
    ms = row.extras["mean_square"]
    ok = lower <= emp <= 3e-4 and abs(ms - 2048) <= 0.01 * 2048 and elapsed < 300
    check("C6 single-direction tail at n=10 in [1/(2l sqrt(ln l)), 3e-4], E[Delta_u^2] ~ 2l",
          ok, f"empirical={emp:.4e}, lower bound={lower:.4e}, exact={row.extras['exact_tail']:.4e}, "
              f"E[Delta_u^2]={ms:.1f}, {elapsed:.1f} s")


def test_c07_concentration():
    row = concentration_check(10, 10_000, 300, 5)
    check("C7 P[|Delta - mean| >= 300] <= 2exp(-300^2/8l) at n=10",
          row.empirical_tail <= row.bound_value,
          f"empirical={row.empirical_tail}, bound={row.bound_value:.3e}")


def test_c08_constructions():
    problems = []
    for n in range(8, 17):
        l = 1 << n
        for t in range(100):
            base = stream_seed(8000 + n, t)
            g = random_function(n - 1, base)
            f = two_period_extend(g)
            s = analyze(f)
            if s.nonlinearity != 2 * nonlinearity(g):
                problems.append(f"NL doubling n={n} t={t}")
            if s.absolute_indicator != l or autocorrelation_fast(f).values[l // 2] != l:
                problems.append(f"Delta=2^n n={n} t={t}")
            if run_test(f, TestConfig(alpha=0.01, run_nl=False)).ai_verdict != "fail":
                problems.append(f"AI test n={n} t={t}")
            for r in range(1, 17):
                fr = disturb(f, r, stream_seed(base, r))
                sr = analyze(fr)
                if sr.absolute_indicator < l - 4 * r:
                    problems.append(f"Delta(f_r) n={n} t={t} r={r}")
                if abs(sr.nonlinearity - s.nonlinearity) > r:
                    problems.append(f"NL shift n={n} t={t} r={r}")
    tails = disturbance_nl_tail(10, 16, 1000, 8)
    for item in tails:
        if not item["bound_satisfied"]:
            problems.append(f"NL tail s={item['s']}")
    detail = "; ".join(f"s={x['s']}: {x['empirical_tail']:.3f} <= {x['bound_value']:.3f}" for x in tails)
    check("C8 two-period / disturbed constructions", not problems,
          f"violations={problems[:5] or 'none'}; {detail}")


def test_c09_cli_determinism(tmp_path):
    z = tmp_path / "z.txt"
    z.write_text("0000000100000001")
    runs = [
        ["analyze", "--in", str(z), "--format", "ascii01", "--n", "4"],
        ["test", "--in", str(z), "--format", "ascii01", "--n", "4"],
        ["oracle", "--n", "3"],
        ["experiment", "--experiment", "ratio", "--n-list", "8,10", "--trials", "600", "--seed", "3"],
        ["experiment", "--experiment", "single-u-tail", "--n-list", "10", "--trials", "200000", "--seed", "3"],
        ["experiment", "--experiment", "pair-tail", "--n-list", "8", "--trials", "20000", "--seed", "3"],
    ]
    differing = []
    for argv in runs:
        outs = []
        for workers in ((None,) if argv[0] != "experiment" else ("1", "4", "1")):
            extra = [] if workers is None else ["--workers", workers]
            outs.append(dispatch(argv + extra))
            outs.append(dispatch(argv + extra))
        if len({o for o in outs}) != 1:
            differing.append(argv[0] + " " + argv[-1])
    files = []
    for i in range(2):
        out = tmp_path / f"gen{i}.bin"
        dispatch(["gen", "--kind", "disturbed", "--n", "10", "--inner-seed", "4", "--r", "7",
                  "--seed", "11", "--out", str(out)])
        files.append(out.read_bytes())
        jout = tmp_path / f"exp{i}.json"
        dispatch(["experiment", "--experiment", "tail", "--n-list", "9", "--trials", "1000",
                  "--workers", str(1 + 3 * i), "--out", str(jout)])
        files.append(jout.read_bytes())
    if files[0] != files[2] or files[1] != files[3]:
        differing.append("output files")
    check("C9 identical invocations give identical bytes (1 and 4 workers)", not differing,
          f"differing={differing or 'none'}")


def test_c10_pair_bound():
    row = pair_tail(10, 1_000_000, 4)
    ok = row.empirical_tail <= 4 / 1024 ** 2 and "resolution" in row.note
    check("C10 joint tail <= 4 l^-2 at n=10 (non-violation audit)", ok,
          f"joint hits={row.extras['joint_hits']}, bound={row.bound_value:.3e}, note='{row.note}'")
