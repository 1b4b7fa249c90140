"""The two-statistic randomness test on random and structured sequences."""

from absind import TestConfig, random_function, run_test, two_period_extend

config = TestConfig(alpha=0.01)
for n in (10, 14):
    th = run_test(random_function(n, 1), config).thresholds
    print(f"n={n}: NL band [{th.nl_low:.1f}, {th.nl_high:.1f}]"
          f"{' (upper edge clamped)' if th.nl_high_clamped else ''}, "
          f"Delta threshold {th.ai_upper:.1f}")

    for label, f in [("random", random_function(n, 99)),
                     ("two-period", two_period_extend(random_function(n - 1, 99)))]:
        rep = run_test(f, config)
        print(f"  {label:10s} NL={rep.nonlinearity:6d} -> {rep.nl_verdict:4s}  "
              f"Delta={rep.absolute_indicator:6d} -> {rep.ai_verdict}")
