"""Canonical partition function and thermodynamics of the zero-ground-state branch.

Three routes to Z are provided:

``DirectSum``
    exact finite sum over the levels of an ``EnergySpectrum``;
``EulerMaclaurinClosedForm``
    the closed form built on the simplified spectrum E_n ~ m sqrt(a n^2 + b n + 1),
    with the integral expanded to first order in ``a`` and only the B_2, B_4
    correction terms kept, upper-bound contributions dropped;
``EulerMaclaurinNumericIntegral``
    the same Euler-Maclaurin skeleton with the integral done by adaptive
    quadrature and both endpoints kept.

Temperatures are in the same units as the energies; ``beta`` is the
dimensionless m/T.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import bernoulli, logsumexp

from dirac_gup.algebra import OscillatorParams
from dirac_gup.errors import ConvergenceError, ParameterDomainError
from dirac_gup.spectrum import Branch, EnergySpectrum, build_spectrum


class Method(str, enum.Enum):
    DIRECT_SUM = "direct"
    EM_CLOSED_FORM = "em-closed"
    EM_NUMERIC_INTEGRAL = "em-numeric"


class Convention(str, enum.Enum):
    """Leading constant of the closed form: literal 1/2 or the endpoint term e^-beta / 2."""

    LITERAL = "literal"
    CONSISTENT = "consistent"


class Variant(str, enum.Enum):
    MAX_MOMENTUM = "max-momentum"
    MIN_LENGTH_ONLY = "min-length"


@dataclass(frozen=True)
class SimplifiedSpectrumCoeffs:
    a: float
    b: float
    variant: Variant = Variant.MAX_MOMENTUM


def simplified_coeffs(params: OscillatorParams, variant=Variant.MAX_MOMENTUM) -> SimplifiedSpectrumCoeffs:
    """a = 7 omega^2 alpha^2 / 4 (max momentum) or 2 omega^2 alpha^2 (min length only); b = 2 omega / m."""
    variant = Variant(variant)
    w2a2 = (params.omega * params.alpha) ** 2
    a = 1.75 * w2a2 if variant is Variant.MAX_MOMENTUM else 2.0 * w2a2
    return SimplifiedSpectrumCoeffs(a, 2.0 * params.omega / params.m, variant)


def simplified_energy(n, coeffs: SimplifiedSpectrumCoeffs, m: float = 1.0):
    n = np.asarray(n, dtype=float)
    out = m * np.sqrt(coeffs.a * n * n + coeffs.b * n + 1.0)
    return out if out.ndim else float(out)


def simplified_spectrum(coeffs: SimplifiedSpectrumCoeffs, n_max: int, m: float = 1.0) -> EnergySpectrum:
    levels = simplified_energy(np.arange(n_max + 1), coeffs, m)
    return EnergySpectrum(Branch.ZERO_GROUND, levels, n_max, float(levels[-1]), mass=m)


@dataclass(frozen=True)
class PartitionEvaluation:
    temperature: float
    beta: float
    z: float
    method: Method
    constant_convention: Convention | None = None
    log_z: float | None = None

    def __post_init__(self):
        if self.log_z is None and self.z > 0:
            object.__setattr__(self, "log_z", math.log(self.z))


@dataclass(frozen=True)
class ThermoPoint:
    t: float
    f: float
    u: float
    s: float
    c_v: float
    method: Method


def _check_temperature(t):
    if not t > 0:
        raise ValueError(f"temperature must be > 0, got {t}")


def direct_partition(spectrum: EnergySpectrum, t: float) -> PartitionEvaluation:
    """Z = sum_n exp(-E_n / T) over the spectrum's levels."""
    _check_temperature(t)
    if len(spectrum.levels) == 0:
        raise ValueError("empty spectrum")
    log_z = float(logsumexp(-np.asarray(spectrum.levels) / t))
    return PartitionEvaluation(t, spectrum.mass / t, math.exp(log_z), Method.DIRECT_SUM, log_z=log_z)


def ensemble_thermo(spectrum: EnergySpectrum, t: float) -> ThermoPoint:
    """Exact F, U, S, C_V of a finite spectrum from Boltzmann averages."""
    _check_temperature(t)
    e = np.asarray(spectrum.levels, dtype=float)
    log_w = -e / t
    log_z = logsumexp(log_w)
    prob = np.exp(log_w - log_z)
    u = float(prob @ e)
    var = float(prob @ (e - u) ** 2)
    f = -t * float(log_z)
    return ThermoPoint(t, f, u, (u - f) / t, var / t**2, Method.DIRECT_SUM)


def euler_maclaurin_z(
    coeffs: SimplifiedSpectrumCoeffs,
    beta: float,
    convention=Convention.CONSISTENT,
    m: float = 1.0,
) -> PartitionEvaluation:
    """Closed-form Euler-Maclaurin partition function of the simplified spectrum."""
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    convention = Convention(convention)
    a, b = coeffs.a, coeffs.b
    e = math.exp(-beta)
    const = 0.5 if convention is Convention.LITERAL else 0.5 * e
    integral = 2.0 / (beta * b) * (1.0 + 1.0 / beta - 4.0 * a / (beta * b * b) * (1.0 + 3.0 / beta + 3.0 / beta**2)) * e
    b2_term = beta * b / 24.0 * e
    b4_term = beta * b / 1440.0 * e * (3.0 * (1.0 + beta) * (a - b * b / 4.0) - beta**2 * b * b / 4.0)
    z = const + integral + b2_term + b4_term
    return PartitionEvaluation(m / beta, beta, z, Method.EM_CLOSED_FORM, convention)


def integral_leading(b: float, beta: float) -> float:
    """Integral of exp(-beta sqrt(b x + 1)) over [0, inf)."""
    return 2.0 / (beta * b) * (1.0 + 1.0 / beta) * math.exp(-beta)


def integral_small_a_correction(a: float, b: float, beta: float) -> float:
    """Integral of exp(-beta sqrt(b x + 1)) beta a x^2 / (2 sqrt(1 + b x)) over [0, inf)."""
    return 2.0 / (beta * b) * 4.0 * a / (beta * b * b) * (1.0 + 3.0 / beta + 3.0 / beta**2) * math.exp(-beta)


def _integrand(coeffs: SimplifiedSpectrumCoeffs, beta: float) -> Callable[[float], float]:
    a, b = coeffs.a, coeffs.b
    return lambda x: math.exp(-beta * math.sqrt(a * x * x + b * x + 1.0))


def _quad_pieces(fn, upper: float, rtol: float = 1e-11):
    """Adaptive quadrature on [0, upper] split at 0, 1, 2, 4, ... to follow the decay."""
    edges = [0.0]
    x = 1.0
    while x < upper:
        edges.append(x)
        x *= 2.0
    edges.append(upper)
    total = 0.0
    err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, est = integrate.quad(fn, lo, hi, epsabs=0.0, epsrel=rtol, limit=200)
        total += val
        err += est
    if err > 1e-8 * max(abs(total), 1e-300) and err > 1e-300:
        raise ConvergenceError("quadrature did not converge", {"value": total, "error_estimate": err})
    return total


def _fd_derivatives(fn, x: float, h: float) -> tuple[float, float]:
    """First and third derivatives by five-point central stencils."""
    fm2, fm1, fp1, fp2 = fn(x - 2 * h), fn(x - h), fn(x + h), fn(x + 2 * h)
    d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
    d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h**3)
    return d1, d3


def em_numeric_integral_z(
    coeffs: SimplifiedSpectrumCoeffs, beta: float, n_max: int, m: float = 1.0
) -> PartitionEvaluation:
    """Euler-Maclaurin Z with the integral by quadrature on [0, n_max] and B_2, B_4 terms."""
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    fn = _integrand(coeffs, beta)
    a, b = coeffs.a, coeffs.b

    def step(x):
        # local length scale of exp(-beta s(x)): 1 / (|s'| (beta + 1/s)); the
        # 1/s part keeps x = 0 stencils clear of the branch point at s = 0
        s = math.sqrt(a * x * x + b * x + 1.0)
        ds = abs(2.0 * a * x + b) / (2.0 * s)
        return 2e-3 / max(ds * (beta + 1.0 / s), 1e-12)

    integral = _quad_pieces(fn, float(n_max))
    z = integral + 0.5 * (fn(0.0) + fn(float(n_max)))
    bern = bernoulli(4)
    d1_0, d3_0 = _fd_derivatives(fn, 0.0, step(0.0))
    d1_n, d3_n = _fd_derivatives(fn, float(n_max), step(float(n_max)))
    z += bern[2] / math.factorial(2) * (d1_n - d1_0)
    z += bern[4] / math.factorial(4) * (d3_n - d3_0)
    return PartitionEvaluation(m / beta, beta, z, Method.EM_NUMERIC_INTEGRAL)


def _log_z(z_fn, t: float) -> tuple[float, PartitionEvaluation]:
    ev = z_fn(t)
    if ev.log_z is None or not math.isfinite(ev.log_z):
        raise ParameterDomainError(
            f"partition function Z={ev.z:g} <= 0 at T={t:g}: approximation breakdown",
            field="t",
        )
    return ev.log_z, ev


def _richardson(fn, t: float, h: float) -> float:
    def central(step):
        return (fn(t + step) - fn(t - step)) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def thermo_from_z(
    z_fn: Callable[[float], PartitionEvaluation], t: float, dt: float | None = None
) -> ThermoPoint:
    """F, U, S, C_V at temperature t by finite differences of ln Z.

    U is taken from -T^2 d(F/T)/dT and S from -dF/dT independently, so
    U = F + T S is a genuine consistency check.  Derivatives are Richardson
    extrapolated central differences; the stencil spans [t - 2 dt, t + 2 dt].
    """
    _check_temperature(t)
    if dt is None:
        dt = 1e-3 * t
    if not 0 < 2 * dt < t:
        raise ValueError(f"need 0 < 2 dt < t, got dt={dt}, t={t}")
    log_z0, ev0 = _log_z(z_fn, t)

    def free(temp):
        return -temp * _log_z(z_fn, temp)[0]

    def entropy(temp):
        return -_richardson(free, temp, dt)

    f = -t * log_z0
    s = entropy(t)
    u = -t * t * _richardson(lambda temp: free(temp) / temp, t, dt)
    c_v = t * _richardson(entropy, t, dt)
    return ThermoPoint(t, f, u, s, c_v, ev0.method)


def partition_evaluator(
    params: OscillatorParams,
    method=Method.DIRECT_SUM,
    convention=Convention.CONSISTENT,
    variant=Variant.MAX_MOMENTUM,
    e_cut: float | None = None,
) -> Callable[[float], PartitionEvaluation]:
    """Z(T) for the zero-ground-state branch of ``params`` by the chosen method."""
    method = Method(method)
    if method is Method.DIRECT_SUM:
        spectrum = build_spectrum(Branch.ZERO_GROUND, params, e_cut)
        return lambda t: direct_partition(spectrum, t)
    coeffs = simplified_coeffs(params, variant)
    m = params.m
    if method is Method.EM_CLOSED_FORM:
        return lambda t: euler_maclaurin_z(coeffs, m / t, convention, m)
    n_max = build_spectrum(Branch.ZERO_GROUND, params, e_cut).n_max
    return lambda t: em_numeric_integral_z(coeffs, m / t, n_max, m)


def thermo_sweep(z_fn, temperatures) -> list[ThermoPoint | None]:
    """Thermodynamic points over ``temperatures``; None where Z breaks down."""
    out = []
    for t in temperatures:
        try:
            out.append(thermo_from_z(z_fn, float(t)))
        except ParameterDomainError:
            out.append(None)
    return out
