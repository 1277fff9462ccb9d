"""Deformed algebra [x, p] = i f(p) with f(p) = 1 - alpha p + 2 alpha^2 p^2.

In the momentum representation x = i f(p) d/dp, which is symmetric only with
respect to the measure dp / f(p) on the bounded interval [-P_b, P_b].  This
module holds the parameter record, the weight function, the momentum bound
policy and the weighted quadrature used by the rest of the package.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dirac_gup.errors import NoFiniteBoundError, ParameterDomainError

DEFAULT_GRID_POINTS = 2001


@dataclass(frozen=True)
class OscillatorParams:
    """Physical parameters of the deformed Dirac oscillator (c = hbar = 1).

    ``gamma`` switches the linear term of the deformation on (1) or off (0)
    in the spectrum formulas; the physical algebra with maximal momentum has
    ``gamma = 1``.  ``p_bound=None`` selects the default bound 1/alpha.
    """

    m: float = 1.0
    omega: float = 2.0
    alpha: float = 0.05
    gamma: float = 1.0
    p_bound: float | None = None

    def __post_init__(self):
        if not self.m > 0:
            raise ParameterDomainError(f"m must be > 0, got {self.m}", field="m")
        if not self.omega > 0:
            raise ParameterDomainError(f"omega must be > 0, got {self.omega}", field="omega")
        if not self.alpha >= 0:
            raise ParameterDomainError(f"alpha must be >= 0, got {self.alpha}", field="alpha")
        if not 0 <= self.gamma <= 1:
            raise ParameterDomainError(f"gamma must lie in [0, 1], got {self.gamma}", field="gamma")
        if self.p_bound is not None and not self.p_bound > 0:
            raise ParameterDomainError(f"p_bound must be > 0, got {self.p_bound}", field="p_bound")

    @property
    def m_omega(self) -> float:
        return self.m * self.omega

    @property
    def c(self) -> float:
        """Dimensionless deformation strength m omega alpha^2."""
        return self.m * self.omega * self.alpha**2

    def replace(self, **changes) -> OscillatorParams:
        values = asdict(self)
        values.update(changes)
        return OscillatorParams(**values)

    def to_dict(self) -> dict:
        return asdict(self)


def weight_function(p: ArrayLike, params: OscillatorParams):
    """Return f(p) = 1 - alpha p + 2 alpha^2 p^2.

    The discriminant of f is -7 alpha^2, so f >= 7/8 everywhere, with the
    minimum at p = 1/(4 alpha).
    """
    a = params.alpha
    p = np.asarray(p, dtype=float)
    out = 1.0 - a * p + 2.0 * a * a * p * p
    return out if out.ndim else float(out)


def default_p_bound(params: OscillatorParams) -> float:
    """Boundary momentum P_b = 1/alpha, the Planck-scale proxy in natural units."""
    if params.alpha <= 0:
        raise NoFiniteBoundError(
            "no finite bound: the nondeformed algebra has unbounded momentum; "
            "supply an explicit cutoff",
            field="alpha",
        )
    return 1.0 / params.alpha


def p_bound(params: OscillatorParams) -> float:
    """Explicit ``params.p_bound`` if set, otherwise the default policy."""
    if params.p_bound is not None:
        return float(params.p_bound)
    return default_p_bound(params)


@dataclass(frozen=True)
class WeightedGrid:
    """Uniform momentum grid with composite Simpson weights times 1/f(p)."""

    points: NDArray[np.float64]
    weights: NDArray[np.float64]
    spacing: float

    def __len__(self):
        return len(self.points)


def simpson_weights(n: int, h: float) -> NDArray[np.float64]:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"composite Simpson needs an odd point count >= 3, got {n}")
    w = np.full(n, 2.0)
    w[1:-1:2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (h / 3.0)


def make_grid(
    params: OscillatorParams,
    n_points: int = DEFAULT_GRID_POINTS,
    p_max: float | None = None,
) -> WeightedGrid:
    """Build the weighted grid on [-p_max, p_max] (default: the momentum bound)."""
    if p_max is None:
        p_max = p_bound(params)
    if not p_max > 0:
        raise ValueError(f"p_max must be > 0, got {p_max}")
    points = np.linspace(-p_max, p_max, n_points)
    h = points[1] - points[0]
    weights = simpson_weights(n_points, h) / weight_function(points, params)
    return WeightedGrid(points=points, weights=weights, spacing=float(h))


def weighted_inner_product(psi: ArrayLike, phi: ArrayLike, grid: WeightedGrid) -> complex:
    """<psi|phi> = integral of conj(psi) phi dp / f(p) over the grid interval."""
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != grid.points.shape or phi.shape != grid.points.shape:
        raise ValueError(
            f"sample length mismatch: psi {psi.shape}, phi {phi.shape}, grid {grid.points.shape}"
        )
    return complex(np.sum(grid.weights * np.conj(psi) * phi))


def weighted_norm(psi: ArrayLike, grid: WeightedGrid) -> float:
    return float(np.sqrt(max(weighted_inner_product(psi, psi, grid).real, 0.0)))
