import math

import mpmath
import numpy as np
import pytest
import sympy
from scipy import integrate

from dirac_gup.algebra import OscillatorParams
from dirac_gup.errors import ParameterDomainError
from dirac_gup.spectrum import Branch, EnergySpectrum, build_spectrum, energy_sq_branch1
from dirac_gup.statmech import (
    Convention,
    Method,
    PartitionEvaluation,
    SimplifiedSpectrumCoeffs,
    Variant,
    direct_partition,
    em_numeric_integral_z,
    ensemble_thermo,
    euler_maclaurin_z,
    integral_leading,
    integral_small_a_correction,
    partition_evaluator,
    simplified_coeffs,
    simplified_energy,
    simplified_spectrum,
    thermo_from_z,
    thermo_sweep,
)

FIG1_ALPHAS = (0.05, 0.1, 0.2, 0.3)


def _single_level(e0=1.0):
    return EnergySpectrum(Branch.ZERO_GROUND, np.array([e0]), 0, e0, mass=e0)


def test_coefficients():
    c = simplified_coeffs(OscillatorParams(m=1, omega=2, alpha=0.1))
    assert c.a == pytest.approx(0.07, rel=1e-14)
    assert c.b == 4.0
    c2 = simplified_coeffs(OscillatorParams(m=2, omega=2, alpha=0.1), "min-length")
    assert c2.a == pytest.approx(0.08, rel=1e-14)
    assert c2.b == 2.0
    assert c2.variant is Variant.MIN_LENGTH_ONLY


def test_simplified_energy_examples():
    coeffs = SimplifiedSpectrumCoeffs(0.0, 4.0)
    assert simplified_energy(0, coeffs, 1.7) == 1.7
    assert simplified_energy(2, coeffs) == 3.0


@pytest.mark.parametrize("m, omega, alpha", [(1, 2, 0.1), (0.5, 1, 0.3), (2, 0.5, 0.05)])
def test_min_length_variant_is_exact_at_gamma_zero(m, omega, alpha):
    # m^2 (a n^2 + b n + 1) with a = 2 w^2 a^2, b = 2 w / m is m^2 + 2 m w n (1 + m w a^2 n)
    params = OscillatorParams(m=m, omega=omega, alpha=alpha, gamma=0.0)
    coeffs = simplified_coeffs(params, Variant.MIN_LENGTH_ONLY)
    n = np.arange(200)
    lhs = simplified_energy(n, coeffs, m)
    rhs = np.sqrt(energy_sq_branch1(n, params))
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12)


def test_direct_single_level():
    for t in (0.1, 1.0, 7.0):
        ev = direct_partition(_single_level(1.3), t)
        assert ev.z == pytest.approx(math.exp(-1.3 / t), rel=1e-15)
        assert ev.method is Method.DIRECT_SUM


def test_direct_low_temperature_ground_dominance():
    spec = build_spectrum(Branch.ZERO_GROUND, OscillatorParams(alpha=0.1))
    ratios = [direct_partition(spec, t).z / math.exp(-spec.levels[0] / t) for t in (0.5, 0.2, 0.1, 0.02)]
    assert all(r1 > r2 for r1, r2 in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(1.0, abs=1e-15)


def test_direct_against_high_precision_sum():
    spec = simplified_spectrum(SimplifiedSpectrumCoeffs(0.0, 4.0), 1000)
    mpmath.mp.dps = 40
    ref = mpmath.fsum(mpmath.exp(-mpmath.sqrt(1 + 4 * n)) for n in range(1001))
    assert direct_partition(spec, 1.0).z == pytest.approx(float(ref), rel=1e-14)


def test_direct_rejects_bad_temperature():
    with pytest.raises(ValueError):
        direct_partition(_single_level(), 0.0)


def test_direct_monotone_and_log_convex_in_beta():
    spec = build_spectrum(Branch.ZERO_GROUND, OscillatorParams(alpha=0.2))
    betas = np.linspace(0.2, 10, 80)
    log_z = np.array([direct_partition(spec, 1.0 / b).log_z for b in betas])
    assert np.all(np.diff(log_z) < 0)
    assert np.all(np.diff(log_z, 2) > -1e-12)


def test_partition_evaluation_log_z():
    assert PartitionEvaluation(1.0, 1.0, math.e, Method.DIRECT_SUM).log_z == pytest.approx(1.0)
    assert PartitionEvaluation(1.0, 1.0, -0.5, Method.EM_CLOSED_FORM).log_z is None


def test_em_literal_term_by_term():
    # 1/2 + (2/(beta b))(1 + 1/beta) e^-beta + (beta b/24) e^-beta + (beta b/1440) e^-beta (3 (1+beta)(-b^2/4) - beta^2 b^2/4)
    e = math.exp(-1.0)
    expected = 0.5 + 0.5 * 2 * e + 4 / 24 * e + 4 / 1440 * e * (3 * 2 * (-4) - 4)
    got = euler_maclaurin_z(SimplifiedSpectrumCoeffs(0.0, 4.0), 1.0, Convention.LITERAL)
    assert got.z == pytest.approx(expected, rel=1e-15)
    assert got.z == pytest.approx(0.9005798359422372, rel=1e-14)
    assert got.constant_convention is Convention.LITERAL


def test_em_conventions_differ_by_constant():
    coeffs = SimplifiedSpectrumCoeffs(0.01, 4.0)
    for beta in (0.5, 1.0, 3.0):
        lit = euler_maclaurin_z(coeffs, beta, "literal").z
        con = euler_maclaurin_z(coeffs, beta, "consistent").z
        assert lit - con == pytest.approx(0.5 * (1 - math.exp(-beta)), rel=1e-12)


def test_em_literal_large_beta():
    z = euler_maclaurin_z(SimplifiedSpectrumCoeffs(0.07, 4.0), 60.0, Convention.LITERAL).z
    assert z == pytest.approx(0.5, abs=1e-20)


def test_bernoulli_terms_symbolic():
    x, a, b, beta = sympy.symbols("x a b beta", positive=True)
    f = sympy.exp(-beta * sympy.sqrt(a * x**2 + b * x + 1))
    b2 = sympy.bernoulli(2) / sympy.factorial(2) * (-sympy.diff(f, x).subs(x, 0))
    b4 = sympy.bernoulli(4) / sympy.factorial(4) * (-sympy.diff(f, x, 3).subs(x, 0))
    assert sympy.bernoulli(2) == sympy.Rational(1, 6)
    assert sympy.simplify(b2.subs(a, 0) - beta * b / 24 * sympy.exp(-beta)) == 0
    b4_closed = beta * b / 1440 * sympy.exp(-beta) * (3 * (1 + beta) * (a - b**2 / 4) - beta**2 * b**2 / 4)
    assert sympy.simplify(b4 - b4_closed) == 0
    # numeric agreement with the implementation at a = 0
    vals = {a: 0, b: 4, beta: sympy.Rational(3, 2)}
    z_lit = euler_maclaurin_z(SimplifiedSpectrumCoeffs(0.0, 4.0), 1.5, "literal").z
    rest = 0.5 + integral_leading(4.0, 1.5)
    assert z_lit - rest == pytest.approx(float((b2 + b4).subs(vals)), rel=1e-13)


@pytest.mark.parametrize("b, beta", [(4.0, 2.0), (4.0, 0.7), (0.5, 3.0), (1.0, 1.0)])
def test_leading_integral_by_quadrature(b, beta):
    ref, err = integrate.quad(lambda x: math.exp(-beta * math.sqrt(b * x + 1)), 0, np.inf, epsabs=0, epsrel=1e-12)
    assert integral_leading(b, beta) == pytest.approx(ref, rel=1e-8)


def test_leading_integral_example():
    assert integral_leading(4.0, 2.0) == pytest.approx(0.375 * math.exp(-2.0), rel=1e-15)
    assert integral_leading(4.0, 2.0) == pytest.approx(0.0507507, abs=1e-7)


@pytest.mark.parametrize("a, b, beta", [(0.01, 4.0, 2.0), (0.07, 4.0, 1.0), (0.002, 0.5, 3.0)])
def test_small_a_correction_by_quadrature(a, b, beta):
    def integrand(x):
        s = math.sqrt(1 + b * x)
        return math.exp(-beta * s) * beta * a * x * x / (2 * s)

    ref, _ = integrate.quad(integrand, 0, np.inf, epsabs=0, epsrel=1e-12, limit=200)
    assert integral_small_a_correction(a, b, beta) == pytest.approx(ref, rel=1e-8)


def test_first_order_expansion_of_integral():
    # the exact integral minus the corrected leading term is O(a^2)
    b, beta = 1.0, 2.0
    residuals = []
    for a in (4e-3, 2e-3, 1e-3):
        exact, _ = integrate.quad(
            lambda x: math.exp(-beta * math.sqrt(a * x * x + b * x + 1)), 0, np.inf, epsabs=0, epsrel=1e-13, limit=400
        )
        approx = integral_leading(b, beta) - integral_small_a_correction(a, b, beta)
        residuals.append(abs(exact - approx))
    assert residuals[0] / residuals[1] == pytest.approx(4.0, rel=0.1)
    assert residuals[1] / residuals[2] == pytest.approx(4.0, rel=0.1)


def test_em_numeric_matches_closed_form_to_second_order():
    # the closed form differs only through the first-order integral expansion,
    # so halving a divides the deviation by about four
    for beta in (0.5, 1.0, 2.0, 5.0):
        devs = []
        for a in (0.004, 0.002, 0.001):
            coeffs = SimplifiedSpectrumCoeffs(a, 1.0)
            num = em_numeric_integral_z(coeffs, beta, 4000).z
            closed = euler_maclaurin_z(coeffs, beta, Convention.CONSISTENT).z
            devs.append((num - closed) / closed)
        assert 3.0 < devs[0] / devs[1] < 5.0
        assert 3.0 < devs[1] / devs[2] < 5.0


def test_em_numeric_at_a_zero_against_sum():
    coeffs = SimplifiedSpectrumCoeffs(0.0, 0.5)
    spec = simplified_spectrum(coeffs, 4000)
    for beta in (1.0, 3.0):
        num = em_numeric_integral_z(coeffs, beta, 4000).z
        assert num == pytest.approx(direct_partition(spec, 1.0 / beta).z, rel=1e-4)


def test_em_truncation_grows_with_level_spacing():
    # two Bernoulli terms are not enough once exp(-beta s) changes a lot per level
    errs = []
    for b in (0.25, 1.0, 4.0):
        coeffs = SimplifiedSpectrumCoeffs(0.0, b)
        exact = direct_partition(simplified_spectrum(coeffs, 4000), 1 / 3.0).z
        errs.append(abs(em_numeric_integral_z(coeffs, 3.0, 4000).z / exact - 1))
    assert errs[0] < errs[1] < errs[2]
    assert errs[2] > 0.1


def test_em_numeric_keeps_upper_end():
    coeffs = SimplifiedSpectrumCoeffs(0.0, 1.0)
    direct = direct_partition(simplified_spectrum(coeffs, 5), 5.0).z
    numeric = em_numeric_integral_z(coeffs, 0.2, 5).z
    closed = euler_maclaurin_z(coeffs, 0.2, Convention.CONSISTENT).z
    assert numeric == pytest.approx(direct, rel=1e-5)
    assert abs(closed / direct - 1) > 1.0


def test_thermo_single_level():
    z_fn = lambda t: direct_partition(_single_level(1.3), t)  # noqa: E731
    for t in (0.3, 1.0, 4.0):
        pt = thermo_from_z(z_fn, t)
        assert pt.f == pytest.approx(1.3, rel=1e-12)
        assert pt.u == pytest.approx(1.3, rel=1e-9)
        assert abs(pt.s) < 1e-8
        assert abs(pt.c_v) < 1e-6


@pytest.mark.parametrize("alpha", FIG1_ALPHAS)
def test_finite_differences_match_ensemble(alpha):
    params = OscillatorParams(m=1, omega=2, alpha=alpha)
    spec = build_spectrum(Branch.ZERO_GROUND, params)
    z_fn = lambda t: direct_partition(spec, t)  # noqa: E731
    for t in np.linspace(0.1, 5.0, 12):
        fd = thermo_from_z(z_fn, float(t))
        ex = ensemble_thermo(spec, float(t))
        assert fd.f == pytest.approx(ex.f, rel=1e-12)
        assert fd.u == pytest.approx(ex.u, rel=1e-4)
        assert fd.s == pytest.approx(ex.s, rel=1e-4, abs=1e-10)
        assert fd.c_v == pytest.approx(ex.c_v, rel=1e-4, abs=1e-10)
        assert abs(fd.u - (fd.f + fd.t * fd.s)) <= 1e-6 * max(1.0, abs(fd.u))
        assert ex.c_v >= 0 and fd.c_v >= -1e-10


def test_ensemble_variance_form():
    spec = simplified_spectrum(SimplifiedSpectrumCoeffs(0.0, 4.0), 3)
    t = 0.8
    w = np.exp(-spec.levels / t)
    p = w / w.sum()
    var = p @ spec.levels**2 - (p @ spec.levels) ** 2
    assert ensemble_thermo(spec, t).c_v == pytest.approx(var / t**2, rel=1e-12)


def test_em_closed_thermo_identity():
    z_fn = partition_evaluator(OscillatorParams(alpha=0.05), Method.EM_CLOSED_FORM)
    for t in (0.5, 1.0, 2.0):
        pt = thermo_from_z(z_fn, t)
        dt = 1e-3 * t
        assert abs(pt.u - (pt.f + t * pt.s)) <= 10 * dt**2 * max(1.0, abs(pt.u))
        assert pt.method is Method.EM_CLOSED_FORM


def test_breakdown_raises_domain_error():
    def z_fn(t):
        return PartitionEvaluation(t, 1.0 / t, -1.0, Method.EM_CLOSED_FORM)

    with pytest.raises(ParameterDomainError):
        thermo_from_z(z_fn, 1.0)
    assert thermo_sweep(z_fn, [1.0, 2.0]) == [None, None]


def test_breakdown_in_closed_form():
    # large a pushes the closed form negative at small beta
    coeffs = SimplifiedSpectrumCoeffs(0.63, 4.0)
    assert euler_maclaurin_z(coeffs, 0.5, Convention.CONSISTENT).z < 0
    z_fn = partition_evaluator(OscillatorParams(alpha=0.3), Method.EM_CLOSED_FORM)
    points = thermo_sweep(z_fn, [2.0])
    assert points[0] is None


def test_dt_validation():
    z_fn = lambda t: direct_partition(_single_level(), t)  # noqa: E731
    with pytest.raises(ValueError):
        thermo_from_z(z_fn, 1.0, dt=0.6)
    with pytest.raises(ValueError):
        thermo_from_z(z_fn, -1.0)


def test_evaluator_methods():
    params = OscillatorParams(alpha=0.05)
    for method in Method:
        ev = partition_evaluator(params, method)(1.0)
        assert ev.method is method
        assert ev.z > 0
