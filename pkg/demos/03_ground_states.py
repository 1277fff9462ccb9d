"""
Ground states in momentum space
===============================

Both ground states are closed-form products of a power of f(p) and an
arctangent exponential.  Here they are normalized under the measure dp/f(p)
and checked against their first-order equations.
"""

import numpy as np

from dirac_gup import OscillatorParams
from dirac_gup.algebra import make_grid, weighted_norm
from dirac_gup.spectrum import Branch
from dirac_gup.wavefunction import annihilation_residual, normalize_ground_state

for alpha in (0.05, 0.1, 0.3):
    params = OscillatorParams(m=1, omega=2, alpha=alpha)
    state = normalize_ground_state(params)
    psi = state.samples()
    mean_p = np.sum(state.grid.weights * psi**2 * state.grid.points)
    print(f"alpha={alpha:<5} norm={weighted_norm(psi, state.grid):.12f} <p>={mean_p:+.3e}")

# The state peaks at p = 0 for every alpha.  The odd term in f(p) only shows up
# once the wavefunction reaches out to p ~ 1/(4 alpha), so <p> grows quickly
# with alpha.

params = OscillatorParams(m=1, omega=2, alpha=0.1)
for n in (251, 501, 1001, 2001):
    print(f"N={n:<5} annihilation residual {annihilation_residual(params, 'zero', make_grid(params, n)):.3e}")

deep = OscillatorParams(m=1, omega=2, alpha=1.0)
state = normalize_ground_state(deep, Branch.NONZERO_GROUND)
print("nonzero-ground branch, log normalization:", state.log_normalization)
