import numpy as np
import pytest

from dirac_gup.algebra import OscillatorParams
from dirac_gup.errors import ParameterDomainError
from dirac_gup.oracle import (
    assemble,
    assemble_dressed_branch2,
    compare_with_analytic,
    full_grid,
    lowering_residual,
    lowest_eigenpairs,
    lowest_eigenvalues,
)
from dirac_gup.spectrum import Branch, energy_sq_branch1
from dirac_gup.wavefunction import log_ground_state


def test_grid_point_validation():
    with pytest.raises(ValueError):
        assemble(OscillatorParams(alpha=0.1), 2000)
    with pytest.raises(ValueError):
        assemble(OscillatorParams(alpha=0.1), 49)
    with pytest.raises(ParameterDomainError):
        assemble(OscillatorParams(alpha=0.1), 101, p_cut=11.0)


def test_nondeformed_adjoint_is_p_minus_derivative():
    params = OscillatorParams(alpha=0.0)
    op = assemble(params, 401, p_cut=8.0)
    # unit weight: the weighted adjoint is the plain transpose
    diff = op.raising_matrix - op.lowering_matrix.T
    assert abs(diff).max() < 1e-12
    # on a smooth function vanishing near the ends, b^+ u = p u - m w u'
    u = np.exp(-op.midpoints**2)
    nodes = op.grid.points
    expected = nodes * np.exp(-nodes**2) - params.m_omega * (-2 * nodes * np.exp(-nodes**2))
    got = op.raising_matrix @ u
    assert np.max(np.abs(got - expected)) < 50 * op.grid.spacing**2


def test_weighted_adjointness():
    rng = np.random.default_rng(3)
    op = assemble(OscillatorParams(alpha=0.2), 301)
    for _ in range(5):
        u = rng.normal(size=len(op.midpoints))
        v = rng.normal(size=len(op.grid))
        lhs = np.sum(op.mid_weights * u * (op.lowering_matrix @ v))
        rhs = np.sum(op.grid.weights * (op.raising_matrix @ u) * v)
        scale = np.sqrt(np.sum(op.mid_weights * u * u)) * np.sqrt(np.sum(op.grid.weights * v * v))
        scale *= abs(op.lowering_matrix).max()
        assert abs(lhs - rhs) <= 1e-12 * scale


def test_metric_symmetrizes_hamiltonian():
    op = assemble(OscillatorParams(alpha=0.2), 301)
    wh = (op.hamiltonian_sq.T.multiply(op.grid.weights)).T.toarray()
    assert np.allclose(wh, wh.T, rtol=0, atol=1e-12 * np.abs(wh).max())


@pytest.mark.parametrize("alpha, p_cut", [(0.0, 30.0), (0.02, None), (0.05, None), (0.3, None)])
def test_eigenvalues_nonnegative(alpha, p_cut):
    op = assemble(OscillatorParams(alpha=alpha), 1001, p_cut)
    vals = lowest_eigenvalues(op, 10)
    assert np.all(np.diff(vals) > 0)
    assert vals[0] >= -1e-8 * vals[-1]


def test_nondeformed_levels():
    op = assemble(OscillatorParams(alpha=0.0), 4001, p_cut=30.0)
    vals = lowest_eigenvalues(op, 6)
    expected = 4.0 * np.arange(6)
    assert abs(vals[0]) < 1e-8
    np.testing.assert_allclose(vals[1:], expected[1:], rtol=1e-3)


def test_deformed_levels_match_analytic():
    report = compare_with_analytic(OscillatorParams(alpha=0.05), 2001, 4)
    assert report["max_rel_err"] < 1e-2
    np.testing.assert_allclose(report["analytic"], energy_sq_branch1(np.arange(4), OscillatorParams(alpha=0.05)) - 1)


def test_gamma_ignored_by_oracle_comparison():
    a = compare_with_analytic(OscillatorParams(alpha=0.05, gamma=0.3), 501, 3)
    b = compare_with_analytic(OscillatorParams(alpha=0.05, gamma=1.0), 501, 3)
    assert a["numeric"] == b["numeric"]


def test_ground_eigenvector_overlap():
    params = OscillatorParams(alpha=0.05)
    op = assemble(params, 2001)
    _, vecs = lowest_eigenpairs(op, 1)
    v = vecs[:, 0]
    logs = log_ground_state(op.grid.points, params)
    psi = np.exp(logs - logs.max())
    w = op.grid.weights
    overlap = np.sum(w * v * psi) / np.sqrt(np.sum(w * v * v) * np.sum(w * psi * psi))
    assert abs(overlap) >= 0.999


def test_grid_refinement_improves_levels():
    params = OscillatorParams(alpha=0.02)
    coarse = compare_with_analytic(params, 1001, 4)
    fine = compare_with_analytic(params, 2001, 4)
    for n in range(1, 4):
        assert fine["rel_err"][n] < coarse["rel_err"][n]


def test_p_cut_sensitivity_is_small():
    params = OscillatorParams(alpha=0.02)
    full = lowest_eigenvalues(assemble(params, 2001), 3)
    cut = lowest_eigenvalues(assemble(params, 2001, p_cut=0.8 / params.alpha), 3)
    assert np.max(np.abs(full - cut)[1:] / full[1:]) < 1e-2
    assert abs(full[0] - cut[0]) < 1e-2 * 4.0


def test_dressed_operator_annihilates_branch2_ground_state():
    params = OscillatorParams(m=1, omega=2, alpha=1.0)
    residuals = []
    for n in (201, 401, 801, 1601):
        op = assemble_dressed_branch2(params, n)
        p = full_grid(op)
        psi = np.exp(log_ground_state(p, params, Branch.NONZERO_GROUND))
        residuals.append(lowering_residual(op, psi))
    ratios = [a / b for a, b in zip(residuals, residuals[1:])]
    assert min(ratios) > 3.5


def test_lowering_residual_matches_matrix_for_dirichlet_vectors():
    op = assemble(OscillatorParams(alpha=0.2), 101)
    rng = np.random.default_rng(0)
    inner = rng.normal(size=len(op.grid))
    psi = np.concatenate([[0.0], inner, [0.0]])
    r = op.lowering_matrix @ inner
    assert lowering_residual(op, psi) == pytest.approx(np.sqrt(np.sum(op.mid_weights * r * r)), rel=1e-13)
