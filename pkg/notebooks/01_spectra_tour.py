"""A tour of the spectra of a few small functions.

Run with ``python3 notebooks/01_spectra_tour.py``.
"""

from absind import (
    BooleanFunction,
    analyze,
    autocorrelation_fast,
    walsh_fast,
)

# A bent function on four variables: x0 x1 + x2 x3.
bent = BooleanFunction.from_bits([(i & 1) & (i >> 1 & 1) ^ (i >> 2 & 1) & (i >> 3 & 1)
                                  for i in range(16)], 4)
print("bent  Walsh:", walsh_fast(bent).values.tolist())
print("bent  autocorrelation:", autocorrelation_fast(bent).values.tolist())
print("bent  summary:", analyze(bent))

# A linear function has a single Walsh peak and a flat-magnitude autocorrelation.
lin = BooleanFunction.affine(4, 0b0101, 0)
print("linear Walsh:", walsh_fast(lin).values.tolist())
print("linear autocorrelation:", autocorrelation_fast(lin).values.tolist())
print("linear summary:", analyze(lin))

# Parseval: the squared Walsh values always sum to 2^(2n).
w = walsh_fast(bent).values
print("Parseval check:", int((w * w).sum()), "==", 16 * 16)
