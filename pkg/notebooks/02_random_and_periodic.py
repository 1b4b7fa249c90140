"""Random functions against two-period and disturbed ones.

A two-period function repeats its table, so its autocorrelation at the
period is the full length 2^n.  Flipping a few table bits only dents that
peak by at most 4 per flip.
"""

from absind import analyze, disturb, random_function, two_period_extend

n = 12
f = random_function(n, seed=7)
print(f"random n={n}:", analyze(f))

g = random_function(n - 1, seed=7)
p = two_period_extend(g)
s = analyze(p)
print(f"two-period n={n}: Delta={s.absolute_indicator} at u={s.argmax_u}, NL={s.nonlinearity}")
print("  NL(inner) doubled:", 2 * analyze(g).nonlinearity)

for r in (1, 4, 16, 64):
    d = analyze(disturb(p, r, seed=r))
    print(f"  r={r:3d}: Delta={d.absolute_indicator} (>= {2**n - 4*r}), "
          f"NL shift={d.nonlinearity - s.nonlinearity:+d}")
