"""Monte Carlo audits of the absolute indicator of random functions.

Trial counts are kept small so the script finishes in a few seconds; the
acceptance suite runs the same functions at full size.
"""

from absind.experiments import (
    concentration_check,
    exhaustive_oracle,
    estimate_ratio,
    single_u_tail,
    sos_mean,
    tail_check,
)

exact = exhaustive_oracle(3)
print("n=3 exact: E[Delta] =", exact.mean_delta, " mean sum of squares =", exact.mean_sum_of_squares)

for n in (8, 10, 12):
    row = estimate_ratio(n, 300, seed=1)
    print(f"n={n}: mean Delta / sqrt(l ln l) = {row.mean_ratio:.3f} (sd {row.stddev_ratio:.3f})")

row = tail_check(12, 1000, 0.5, seed=2)
print(f"tail n=12: {row.empirical_tail} vs bound {row.bound_value:.4f}")

row = single_u_tail(10, 1_000_000, seed=3)
print(f"single direction n=10: empirical {row.empirical_tail:.2e}, exact {row.extras['exact_tail']:.2e}, "
      f"asymptotic lower bound {row.bound_value:.2e}")

row = concentration_check(10, 1000, 300, seed=5)
print(f"concentration n=10: {row.empirical_tail} vs {row.bound_value:.2e}")

row = sos_mean(8, 500, seed=6)
print(f"sum of squares n=8: mean/closed form = {row.mean_ratio:.4f}")
