"""Energy spectra of the deformed Dirac oscillator.

Two independent routes are provided for each branch:

* closed forms for E_n^2 (``energy_sq_branch1`` / ``energy_sq_branch2``);
* the shape-invariance recurrence for the ladder coefficients (xi_i, k_i, eps_i),
  whose partial sums of the gaps telescope to E_n^2 - m^2.

The ladder operators are b^{+-}(xi, k) = xi p + k -+ m omega f_gamma(p) d/dp with
f_gamma(p) = 1 - alpha gamma p + 2 alpha^2 p^2.  Shape invariance

    b^-(xi_i, k_i) b^+(xi_i, k_i) = b^+(xi_{i+1}, k_{i+1}) b^-(xi_{i+1}, k_{i+1}) + eps_{i+1}

fixes the coefficients order by order in p.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from dirac_gup.algebra import OscillatorParams, p_bound
from dirac_gup.errors import EmptySpectrumError, ParameterDomainError

_SCAN_CHUNK = 4096
_MAX_LEVELS = 50_000_000


class Branch(str, enum.Enum):
    ZERO_GROUND = "zero"
    NONZERO_GROUND = "nonzero"


@dataclass(frozen=True)
class LadderCoefficients:
    index: int
    xi: float
    k: float
    # gap to the previous hierarchy member; None for the branch-1 seed
    eps: float | None


@dataclass(frozen=True)
class EnergySpectrum:
    branch: Branch
    levels: NDArray[np.float64]
    n_max: int
    e_cut: float
    mass: float = 1.0

    def __len__(self):
        return len(self.levels)


def _require_branch2(params: OscillatorParams):
    if not 2.0 * params.c > 1.0:
        raise ParameterDomainError(
            f"nonzero-ground-state branch needs 2 m omega alpha^2 > 1, got {2.0 * params.c:g}",
            field="alpha",
        )


def energy_sq_branch1(n, params: OscillatorParams):
    """E_n^2 on the zero-ground-state branch (E_0 = m).

    Accepts an integer or an integer array for ``n``.
    """
    n = np.asarray(n, dtype=float)
    m, mw, c = params.m, params.m_omega, params.c
    g = mw * params.alpha * params.gamma
    ratio = (1.0 + c * n) / (1.0 + 2.0 * c * n)
    e2 = m * m + 2.0 * mw * n * (1.0 + c * n) - g * g * n * n * ratio * ratio
    return e2 if e2.ndim else float(e2)


def energy_sq_branch2(n, params: OscillatorParams):
    """E_n^2 on the nonzero-ground-state branch; defined only for 2 m omega alpha^2 > 1."""
    _require_branch2(params)
    n1 = np.asarray(n, dtype=float) + 1.0
    m, mw, c = params.m, params.m_omega, params.c
    g = mw * params.alpha * params.gamma
    ratio = (1.0 - c * n1) / (2.0 * c * n1 - 1.0)
    e2 = m * m + 2.0 * mw * n1 * (c * n1 - 1.0) - g * g * n1 * n1 * ratio * ratio
    return e2 if e2.ndim else float(e2)


def ladder_closed_form_branch1(i: int, params: OscillatorParams) -> tuple[float, float]:
    """(xi_i, k_i) for the zero-ground-state hierarchy."""
    c = params.c
    g = params.m_omega * params.alpha * params.gamma
    xi = 1.0 + 2.0 * i * c
    k = -i * g * (1.0 + i * c) / xi
    return xi, k


def ladder_closed_form_branch2(i: int, params: OscillatorParams) -> tuple[float, float]:
    """(xi_i, k_i) for the nonzero-ground-state hierarchy, index 0 being the seed."""
    _require_branch2(params)
    c = params.c
    g = params.m_omega * params.alpha * params.gamma
    j = i + 1
    xi = 2.0 * j * c - 1.0
    k = j * g * (1.0 - j * c) / xi
    return xi, k


def _next_xi(xi: float, c: float) -> float:
    # xi'^2 - 2c xi' = xi^2 + 2c xi; the root continuous with xi_0 = 1 at c -> 0
    return c + math.sqrt(c * c + xi * xi + 2.0 * c * xi)


def shape_invariance_step(xi: float, k: float, params: OscillatorParams) -> tuple[float, float, float]:
    """Solve the three matching conditions for (xi_{i+1}, k_{i+1}, eps_{i+1})."""
    mw = params.m_omega
    g = mw * params.alpha * params.gamma
    xi_next = _next_xi(xi, params.c)
    k_next = (2.0 * k * xi - g * xi - g * xi_next) / (2.0 * xi_next)
    eps_next = k * k + mw * xi - k_next * k_next + mw * xi_next
    return xi_next, k_next, eps_next


def _iterate(seed: LadderCoefficients, n_target: int, params: OscillatorParams):
    if n_target < 0:
        raise ValueError(f"n_target must be >= 0, got {n_target}")
    out = [seed]
    xi, k = seed.xi, seed.k
    for i in range(1, n_target + 1):
        xi, k, eps = shape_invariance_step(xi, k, params)
        out.append(LadderCoefficients(i, xi, k, eps))
    return out


def susy_recurrence_branch1(n_target: int, params: OscillatorParams) -> list[LadderCoefficients]:
    """Ladder coefficients for i = 0..n_target, seeded by b^- = p - i m omega x."""
    return _iterate(LadderCoefficients(0, 1.0, 0.0, None), n_target, params)


def branch2_seed_roots(params: OscillatorParams) -> list[tuple[float, float, float]]:
    """Both solutions (xi', k', eps_bar) of bbar^+ bbar^- + eps_bar = b^+ b^-.

    The quadratic xi'^2 - 2c xi' = 1 - 2c has roots 1 and 2c - 1.  The first
    gives k' = 0 and eps_bar = 0, i.e. the zero-ground-state branch again.
    Uses the physical algebra (gamma = 1).
    """
    mw, c, a = params.m_omega, params.c, params.alpha
    disc = abs(1.0 - c)
    out = []
    for xi in sorted((c + disc, c - disc), key=lambda r: abs(r - 1.0)):
        if xi == 0.0:
            continue
        k = mw * a * (1.0 - xi) / (2.0 * xi)
        out.append((xi, k, mw * xi - mw - k * k))
    return out


def branch2_seed(params: OscillatorParams) -> tuple[float, float, float]:
    """Nontrivial seed (xi'_2, k', eps_bar) with xi'_2 = 2 m omega alpha^2 - 1."""
    _require_branch2(params)
    mw, c, a = params.m_omega, params.c, params.alpha
    xi = 2.0 * c - 1.0
    k = mw * a * (1.0 - c) / xi
    eps_bar = 2.0 * mw * (c - 1.0) - (mw * a) ** 2 * (1.0 - c) ** 2 / xi**2
    return xi, k, eps_bar


def susy_recurrence_branch2(n_target: int, params: OscillatorParams) -> list[LadderCoefficients]:
    """Ladder coefficients of the nonzero-ground-state hierarchy, i = 0..n_target.

    Index 0 is the seed operator bbar^-; its ``eps`` is the ground level
    E_0^2 - m^2.  For gamma != 1 the seed's linear coefficient carries the
    factor gamma so that the hierarchy stays within the same f_gamma algebra;
    at gamma = 1 it coincides with ``branch2_seed``.
    """
    _require_branch2(params)
    mw, c = params.m_omega, params.c
    g = mw * params.alpha * params.gamma
    # one root of xi'^2 - 2c xi' - (1 - 2c) is 1, so the other equals the product
    xi0 = 2.0 * c - 1.0
    k0 = g * (1.0 - xi0) / (2.0 * xi0)
    eps0 = mw * xi0 - mw - k0 * k0
    return _iterate(LadderCoefficients(0, xi0, k0, eps0), n_target, params)


def telescoped_energy_sq(coeffs: list[LadderCoefficients], params: OscillatorParams) -> NDArray[np.float64]:
    """m^2 plus cumulative sums of the gaps, one entry per hierarchy level."""
    eps = np.array([0.0 if cf.eps is None else cf.eps for cf in coeffs])
    return params.m**2 + np.cumsum(eps)


def default_energy_cutoff(params: OscillatorParams) -> float:
    """E_cut = sqrt(m^2 + P_b^2)."""
    return math.hypot(params.m, p_bound(params))


def _energy_sq(branch: Branch, n, params: OscillatorParams):
    if Branch(branch) is Branch.ZERO_GROUND:
        return energy_sq_branch1(n, params)
    return energy_sq_branch2(n, params)


def _spectrum_from_e2(branch, e2, e_cut, mass) -> EnergySpectrum:
    if np.any(e2 <= 0.0):
        bad = int(np.argmax(e2 <= 0.0))
        raise ParameterDomainError(f"level n={bad} has E^2 = {e2[bad]:g} <= 0; no real energy")
    levels = np.sqrt(e2)
    if np.any(np.diff(levels) <= 0.0):
        raise RuntimeError("spectrum is not strictly increasing in n")
    return EnergySpectrum(Branch(branch), levels, len(levels) - 1, float(e_cut), mass)


def build_spectrum(branch, params: OscillatorParams, e_cut: float | None = None) -> EnergySpectrum:
    """All levels with E_n <= e_cut, scanning n upward until the first exceedance.

    ``e_cut=None`` uses ``default_energy_cutoff``.
    """
    branch = Branch(branch)
    if e_cut is None:
        e_cut = default_energy_cutoff(params)
    e_cut2 = e_cut * e_cut
    chunks = []
    start = 0
    while True:
        n = np.arange(start, start + _SCAN_CHUNK)
        e2 = _energy_sq(branch, n, params)
        over = np.nonzero(e2 > e_cut2)[0]
        if over.size:
            chunks.append(e2[: over[0]])
            break
        chunks.append(e2)
        start += _SCAN_CHUNK
        if start > _MAX_LEVELS:
            raise RuntimeError(f"more than {_MAX_LEVELS} levels below e_cut={e_cut:g}")
    e2 = np.concatenate(chunks)
    if e2.size == 0:
        raise EmptySpectrumError(f"e_cut={e_cut:g} lies below the lowest level")
    return _spectrum_from_e2(branch, e2, e_cut, params.m)


def spectrum_levels(branch, params: OscillatorParams, n_max: int) -> EnergySpectrum:
    """The first ``n_max + 1`` levels regardless of any energy cutoff."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    e2 = np.asarray(_energy_sq(branch, np.arange(n_max + 1), params), dtype=float)
    spec = _spectrum_from_e2(branch, e2, math.inf, params.m)
    return EnergySpectrum(spec.branch, spec.levels, spec.n_max, float(spec.levels[-1]), params.m)
