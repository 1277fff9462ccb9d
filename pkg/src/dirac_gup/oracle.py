"""Discretized b^+ b^- as an independent check of the analytic spectrum.

Nothing here uses the shape-invariance results.  The lowering operator

    b^- = xi p + k + m omega f(p) d/dp

is discretized on a staggered grid: unknowns live on the interior nodes of a
uniform grid on [-p_cut, p_cut] (psi = 0 at both ends), and b^- maps them to
cell midpoints using the two-point difference and the two-point average.  A
plain central difference on the nodes would leave the alternating mode
(-1)^j g(p) almost untouched by d/dp, and that mode reproduces the partner
spectrum a second time (every excited level shows up twice).  The staggered
form has no such doubler.

The raising operator is the weighted adjoint b^+ = W_n^{-1} (b^-)^T W_m with
W_n, W_m the diagonal metrics h/f on nodes and midpoints, so H = b^+ b^- is
self-adjoint and positive semidefinite in the node metric by construction.
W_n^{1/2} H W_n^{-1/2} = B^T B with B bidiagonal, hence tridiagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh_tridiagonal
from numpy.typing import NDArray

from dirac_gup.algebra import OscillatorParams, WeightedGrid, p_bound, weight_function
from dirac_gup.errors import ConvergenceError, ParameterDomainError
from dirac_gup.spectrum import branch2_seed, energy_sq_branch1

MIN_GRID_POINTS = 51


@dataclass(frozen=True)
class DiscretizedOperator:
    params: OscillatorParams
    grid: WeightedGrid  # interior nodes, weights h / f(p)
    midpoints: NDArray[np.float64]
    mid_weights: NDArray[np.float64]
    lowering_matrix: sp.csr_matrix
    raising_matrix: sp.csr_matrix
    hamiltonian_sq: sp.csr_matrix
    xi: float = 1.0
    k: float = 0.0

    def symmetric_factor(self) -> sp.csr_matrix:
        """B = W_m^{1/2} b^- W_n^{-1/2}; H is similar to B^T B."""
        left = sp.diags(np.sqrt(self.mid_weights))
        right = sp.diags(1.0 / np.sqrt(self.grid.weights))
        return (left @ self.lowering_matrix @ right).tocsr()


def assemble(
    params: OscillatorParams,
    grid_points: int = 2001,
    p_cut: float | None = None,
    xi: float = 1.0,
    k: float = 0.0,
) -> DiscretizedOperator:
    """Discretize b^- = xi p + k + m omega f d/dp and H = b^+ b^- on [-p_cut, p_cut].

    ``grid_points`` counts the full grid including the two Dirichlet nodes.
    ``p_cut`` defaults to the momentum bound and may not exceed it when a
    bound exists.
    """
    if grid_points < MIN_GRID_POINTS or grid_points % 2 == 0:
        raise ValueError(f"grid_points must be odd and >= {MIN_GRID_POINTS}, got {grid_points}")
    if p_cut is None:
        p_cut = p_bound(params)
    elif params.alpha > 0 or params.p_bound is not None:
        bound = p_bound(params)
        if p_cut > bound * (1 + 1e-12):
            raise ParameterDomainError(f"p_cut={p_cut:g} exceeds the momentum bound {bound:g}", field="p_cut")
    full = np.linspace(-p_cut, p_cut, grid_points)
    h = full[1] - full[0]
    nodes = full[1:-1]
    mids = 0.5 * (full[1:] + full[:-1])
    n_nodes, n_mids = len(nodes), len(mids)

    # midpoint j lies between full nodes j and j+1, i.e. interior nodes j-1 and j
    rows = np.concatenate([np.arange(1, n_mids), np.arange(n_mids - 1)])
    cols = np.concatenate([np.arange(n_nodes), np.arange(n_nodes)])
    left_right = np.concatenate([-np.ones(n_nodes), np.ones(n_nodes)])
    avg = sp.csr_matrix((np.full(2 * n_nodes, 0.5), (rows, cols)), shape=(n_mids, n_nodes))
    diff = sp.csr_matrix((left_right / h, (rows, cols)), shape=(n_mids, n_nodes))

    f_mid = weight_function(mids, params)
    lowering = (
        sp.diags(xi * mids + k) @ avg + sp.diags(params.m_omega * f_mid) @ diff
    ).tocsr()
    node_w = h / weight_function(nodes, params)
    mid_w = h / f_mid
    raising = (sp.diags(1.0 / node_w) @ lowering.T @ sp.diags(mid_w)).tocsr()
    grid = WeightedGrid(points=nodes, weights=node_w, spacing=float(h))
    return DiscretizedOperator(
        params=params,
        grid=grid,
        midpoints=mids,
        mid_weights=mid_w,
        lowering_matrix=lowering,
        raising_matrix=raising,
        hamiltonian_sq=(raising @ lowering).tocsr(),
        xi=xi,
        k=k,
    )


def lowering_residual(op: DiscretizedOperator, psi) -> float:
    """Midpoint-metric norm of b^- psi for psi sampled on the full grid, ends included.

    Unlike ``lowering_matrix`` this does not impose psi = 0 at +-p_cut, so it
    measures how well a closed-form state is annihilated by the discrete b^-.
    """
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (len(op.grid) + 2,):
        raise ValueError(f"expected {len(op.grid) + 2} samples, got {psi.shape}")
    h = op.grid.spacing
    q = op.midpoints
    f_mid = weight_function(q, op.params)
    left, right = psi[:-1], psi[1:]
    res = (op.xi * q + op.k) * 0.5 * (left + right) + op.params.m_omega * f_mid * (right - left) / h
    return float(np.sqrt(np.sum(op.mid_weights * res * res)))


def full_grid(op: DiscretizedOperator) -> NDArray[np.float64]:
    """Interior nodes plus the two Dirichlet end points."""
    h = op.grid.spacing
    return np.concatenate([[op.grid.points[0] - h], op.grid.points, [op.grid.points[-1] + h]])


def assemble_dressed_branch2(params: OscillatorParams, grid_points: int = 2001, p_cut=None):
    """Operator built on the nonzero-ground-state annihilator bbar^-."""
    xi, k, _ = branch2_seed(params)
    return assemble(params, grid_points, p_cut, xi=xi, k=k)


def lowest_eigenpairs(op: DiscretizedOperator, k: int, residual_tol: float = 1e-8):
    """k smallest eigenvalues of H (E^2 - m^2 units) with node-space eigenvectors.

    Eigenvectors are normalized in the node metric and given a positive sum.
    """
    n = len(op.grid)
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    bmat = op.symmetric_factor()
    s = (bmat.T @ bmat).tocsr()
    d = s.diagonal()
    e = s.diagonal(1)
    vals, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1))
    scale = max(float(np.max(np.abs(d))), 1.0)
    resid = np.linalg.norm(s @ vecs - vecs * vals, axis=0)
    if np.any(resid > residual_tol * scale):
        raise ConvergenceError(
            "tridiagonal eigensolve residuals too large",
            {"residual_norms": resid.tolist(), "scale": scale},
        )
    u = vecs / np.sqrt(op.grid.weights)[:, None]
    u *= np.where(u.sum(axis=0) < 0, -1.0, 1.0)
    return vals, u


def lowest_eigenvalues(op: DiscretizedOperator, k: int) -> NDArray[np.float64]:
    vals, _ = lowest_eigenpairs(op, k)
    return vals


def compare_with_analytic(
    params: OscillatorParams, grid_points: int = 2001, levels: int = 4, p_cut=None
) -> dict:
    """Oracle eigenvalues against the zero-ground-state formula at gamma = 1.

    The relative error of the n = 0 level (analytically zero) is measured
    against the nondeformed spacing 2 m omega.
    """
    phys = params.replace(gamma=1.0)
    op = assemble(phys, grid_points, p_cut)
    numeric = lowest_eigenvalues(op, levels)
    n = np.arange(levels)
    analytic = np.asarray(energy_sq_branch1(n, phys)) - phys.m**2
    denom = np.where(n == 0, 2.0 * phys.m_omega, np.abs(analytic))
    rel = np.abs(numeric - analytic) / denom
    return {
        "analytic": analytic.tolist(),
        "numeric": numeric.tolist(),
        "rel_err": rel.tolist(),
        "max_rel_err": float(rel.max()),
        "grid_points": grid_points,
        "p_cut": float(op.grid.points[-1] + op.grid.spacing),
    }
