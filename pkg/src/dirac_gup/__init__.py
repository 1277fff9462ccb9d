"""1+1 dimensional Dirac oscillator with minimal length and maximal momentum.

Closed-form spectra and their shape-invariance derivation, ground states in the
momentum representation, a finite-difference operator check, and canonical
thermodynamics of the zero-ground-state branch.
"""

from dirac_gup.algebra import (
    OscillatorParams,
    WeightedGrid,
    default_p_bound,
    make_grid,
    weight_function,
    weighted_inner_product,
    weighted_norm,
)
from dirac_gup.errors import (
    ConvergenceError,
    EmptySpectrumError,
    NoFiniteBoundError,
    ParameterDomainError,
)
from dirac_gup.spectrum import (
    Branch,
    EnergySpectrum,
    LadderCoefficients,
    build_spectrum,
    energy_sq_branch1,
    energy_sq_branch2,
    susy_recurrence_branch1,
    susy_recurrence_branch2,
)
from dirac_gup.statmech import (
    Convention,
    Method,
    PartitionEvaluation,
    SimplifiedSpectrumCoeffs,
    ThermoPoint,
    Variant,
    direct_partition,
    em_numeric_integral_z,
    euler_maclaurin_z,
    simplified_energy,
    thermo_from_z,
)
from dirac_gup.wavefunction import ground_state_branch1, ground_state_branch2

__version__ = "0.1.0"
