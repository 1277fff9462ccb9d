"""
Partition function: sum versus Euler-Maclaurin
==============================================

The closed form keeps the integral to first order in a and two Bernoulli
corrections.  Compare it with the exact sum over the simplified spectrum
E_n = m sqrt(a n^2 + b n + 1).
"""

import numpy as np

from dirac_gup.statmech import (
    SimplifiedSpectrumCoeffs,
    direct_partition,
    em_numeric_integral_z,
    euler_maclaurin_z,
    simplified_spectrum,
)

betas = np.array([1.0, 2.0, 3.0, 5.0])
for b in (0.5, 1.0, 4.0):
    for ratio in (0.0, 0.005, 0.01):
        coeffs = SimplifiedSpectrumCoeffs(ratio * b * b, b)
        spec = simplified_spectrum(coeffs, 4000)
        exact = np.array([direct_partition(spec, 1 / beta).z for beta in betas])
        closed = np.array([euler_maclaurin_z(coeffs, beta, "consistent").z for beta in betas])
        numeric = np.array([em_numeric_integral_z(coeffs, beta, 4000).z for beta in betas])
        print(
            f"b={b:<4} a/b^2={ratio:<6}"
            f" closed {np.max(np.abs(closed / exact - 1)):.2e}"
            f"  numeric-integral {np.max(np.abs(numeric / exact - 1)):.2e}"
        )

# For b <= 1 the closed form is within a few percent.  Its error grows with
# a/b^2 because the integral is only expanded to first order.  At b = 4, the
# value for m = 1 and omega = 2, two Bernoulli terms cannot follow a summand
# that drops by e^{-beta} over the first level, and neither Euler-Maclaurin
# variant tracks the sum.

# The literal leading constant 1/2 differs from the endpoint term e^{-beta}/2.
coeffs = SimplifiedSpectrumCoeffs(0.0, 4.0)
print("literal    ", euler_maclaurin_z(coeffs, 1.0, "literal").z)
print("consistent ", euler_maclaurin_z(coeffs, 1.0, "consistent").z)
