"""Ground-state upper components in the momentum representation.

Both states solve a first-order equation (xi p + k + m omega f(p) d/dp) psi = 0,
so they are of the form

    psi(p) = f(p)^(-xi / (4c)) * exp(-A * arctan((4 alpha p - 1) / sqrt 7)),

c = m omega alpha^2.  Values are evaluated in log space because the exponents
grow like 1/alpha^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from dirac_gup.algebra import (
    OscillatorParams,
    WeightedGrid,
    make_grid,
    weight_function,
    weighted_norm,
)
from dirac_gup.errors import ParameterDomainError
from dirac_gup.spectrum import Branch, branch2_seed

_SQRT7 = math.sqrt(7.0)


def _require_deformed(params: OscillatorParams):
    if params.alpha <= 0:
        raise ParameterDomainError(
            "closed-form ground states need alpha > 0 (the nondeformed Gaussian is not covered)",
            field="alpha",
        )


def _shape(branch: Branch, params: OscillatorParams) -> tuple[float, float]:
    """(power of f, arctan coefficient) of the closed form."""
    _require_deformed(params)
    c = params.c
    if branch is Branch.ZERO_GROUND:
        return 1.0 / (4.0 * c), 1.0 / (2.0 * _SQRT7 * c)
    if not 2.0 * c > 1.0:
        raise ParameterDomainError(
            f"nonzero-ground-state branch needs 2 m omega alpha^2 > 1, got {2.0 * c:g}",
            field="alpha",
        )
    return (2.0 * c - 1.0) / (4.0 * c), 1.0 / (2.0 * _SQRT7 * c * (2.0 * c - 1.0))


def log_ground_state(p, params: OscillatorParams, branch=Branch.ZERO_GROUND):
    """log of the unnormalized (C = 1) ground state."""
    power, coef = _shape(Branch(branch), params)
    p = np.asarray(p, dtype=float)
    out = -power * np.log(weight_function(p, params)) - coef * np.arctan(
        (4.0 * params.alpha * p - 1.0) / _SQRT7
    )
    return out if out.ndim else float(out)


def lowering_coefficients(params: OscillatorParams, branch=Branch.ZERO_GROUND) -> tuple[float, float]:
    """(xi, k) of the annihilator whose kernel is the ground state."""
    if Branch(branch) is Branch.ZERO_GROUND:
        return 1.0, 0.0
    xi, k, _ = branch2_seed(params)
    return xi, k


@dataclass(frozen=True)
class GroundStateSpec:
    """Ground state of one branch with its normalization on [-P_b, P_b].

    ``log_normalization`` is log C; it is kept in log form because C itself
    overflows for small alpha.
    """

    branch: Branch
    params: OscillatorParams
    log_normalization: float
    grid: WeightedGrid = field(repr=False)

    @property
    def normalization(self) -> float:
        return math.exp(self.log_normalization)

    def __call__(self, p):
        return np.exp(log_ground_state(p, self.params, self.branch) + self.log_normalization)

    def samples(self):
        return self(self.grid.points)


def normalize_ground_state(
    params: OscillatorParams, branch=Branch.ZERO_GROUND, grid: WeightedGrid | None = None
) -> GroundStateSpec:
    branch = Branch(branch)
    if grid is None:
        grid = make_grid(params)
    logs = log_ground_state(grid.points, params, branch)
    shift = float(np.max(logs))
    norm = weighted_norm(np.exp(logs - shift), grid)
    return GroundStateSpec(branch, params, -shift - math.log(norm), grid)


def ground_state_branch1(p, params: OscillatorParams, normalized=False, grid=None):
    """Upper component of the zero-energy ground state; C = 1 unless ``normalized``."""
    if normalized:
        return normalize_ground_state(params, Branch.ZERO_GROUND, grid)(p)
    return np.exp(log_ground_state(p, params, Branch.ZERO_GROUND))


def ground_state_branch2(p, params: OscillatorParams, normalized=False, grid=None):
    """Upper component of the nonzero-energy ground state; needs 2 m omega alpha^2 > 1."""
    if normalized:
        return normalize_ground_state(params, Branch.NONZERO_GROUND, grid)(p)
    return np.exp(log_ground_state(p, params, Branch.NONZERO_GROUND))


def apply_lowering(psi, grid: WeightedGrid, params: OscillatorParams, xi=1.0, k=0.0):
    """(xi p + k + m omega f(p) d/dp) psi with central differences, one-sided at the ends."""
    dpsi = np.gradient(psi, grid.spacing, edge_order=1)
    p = grid.points
    return (xi * p + k) * psi + params.m_omega * weight_function(p, params) * dpsi


def annihilation_residual(params: OscillatorParams, branch=Branch.ZERO_GROUND, grid=None) -> float:
    """||b^- psi||_w / ||psi||_w for the closed-form ground state on ``grid``."""
    state = normalize_ground_state(params, branch, grid)
    psi = state.samples()
    xi, k = lowering_coefficients(params, state.branch)
    res = apply_lowering(psi, state.grid, params, xi, k)
    return weighted_norm(res, state.grid) / weighted_norm(psi, state.grid)


def lower_component_branch1(params: OscillatorParams, grid=None):
    """psi_2 = (p - i m omega x) psi_1 / (E + m) at E = m, sampled on the grid."""
    state = normalize_ground_state(params, Branch.ZERO_GROUND, grid)
    return apply_lowering(state.samples(), state.grid, params) / (2.0 * params.m)
