"""
Energy levels of the deformed Dirac oscillator
==============================================

Two closed-form branches, the shape-invariance recurrence that produces
them, and the finite number of levels below the momentum cutoff.
"""

import numpy as np

from dirac_gup import OscillatorParams
from dirac_gup.spectrum import (
    build_spectrum,
    energy_sq_branch1,
    energy_sq_branch2,
    susy_recurrence_branch1,
    telescoped_energy_sq,
)

# Start from the undeformed oscillator: E_n = sqrt(m^2 + 2 m omega n).
flat = OscillatorParams(m=1, omega=2, alpha=0.0)
print("alpha = 0:", np.sqrt(energy_sq_branch1(np.arange(5), flat)))

# Switching on alpha pushes every excited level up, roughly like n^2 at large n.
params = OscillatorParams(m=1, omega=2, alpha=0.1)
print("alpha = 0.1:", np.sqrt(energy_sq_branch1(np.arange(5), params)))

# The recurrence for (xi_n, k_n) builds the same levels one step at a time.
coeffs = susy_recurrence_branch1(4, params)
for c in coeffs:
    print(f"  n={c.index}  xi={c.xi:.6f}  k={c.k:+.6f}")
print("telescoped:", np.sqrt(telescoped_energy_sq(coeffs, params)))

# Levels stop at E_cut = sqrt(m^2 + P_b^2) with P_b = 1/alpha.
for alpha in (0.05, 0.1, 0.2, 0.3):
    spec = build_spectrum("zero", params.replace(alpha=alpha))
    print(f"alpha={alpha:<5} n_max={spec.n_max:<4} E_cut={spec.e_cut:.4f}")

# The second branch has a nonzero ground energy and needs 2 m omega alpha^2 > 1.
deep = OscillatorParams(m=1, omega=2, alpha=1.0)
print("nonzero-ground branch:", np.sqrt(energy_sq_branch2(np.arange(4), deep)))
