"""Complex-argument special functions used by the closed-form solutions.

Everything here accepts complex parameters.  Functions of ``z`` also accept
numpy arrays and broadcast elementwise; the gamma-based helpers are scalar.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = [
    "GammaPoleError",
    "SeriesConvergenceError",
    "cpow_halfplane",
    "complex_gamma",
    "gen_binomial",
    "falling_binomial",
    "jacobi",
    "jacobi_deriv",
    "hyp_f_abbz",
    "hyp_f_half",
    "hyp2f1_series",
]


class GammaPoleError(ValueError):
    """Raised when a gamma argument sits on a non-positive integer."""


class SeriesConvergenceError(ArithmeticError):
    """Raised when the Gauss series fails to settle within its term cap."""


# Lanczos coefficients for g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_POLE_TOL = 1e-12


def cpow_halfplane(z, mu):
    """Principal power ``z**mu`` for ``Re z > 0``.

    The principal logarithm is continuous on the open right half-plane, so the
    result is continuous along any path that stays there.  The bases
    ``(1 +- i sinh x)/2`` always have real part 1/2.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.real <= 0.0):
        raise ValueError("cpow_halfplane requires Re(z) > 0")
    out = np.exp(mu * np.log(z))
    return out[()] if out.ndim == 0 else out


def _is_pole(z: complex) -> bool:
    z = complex(z)
    if abs(z.imag) > _POLE_TOL or z.real > _POLE_TOL:
        return False
    return abs(z.real - round(z.real)) <= _POLE_TOL


def complex_gamma(z) -> complex:
    """Gamma function of a complex argument (Lanczos, with reflection).

    Relative accuracy is around 1e-13 over the parameter ranges used here.

    Raises:
        GammaPoleError: ``z`` is a non-positive integer.
    """
    z = complex(z)
    if _is_pole(z):
        raise GammaPoleError(f"gamma has a pole at {z}")
    if z.real < 0.5:
        # reflection: G(z) G(1-z) = pi / sin(pi z)
        return cmath.pi / (cmath.sin(cmath.pi * z) * complex_gamma(1.0 - z))
    z -= 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def gen_binomial(alpha, beta) -> complex:
    """Binomial coefficient with complex indices, ``G(a+1) / (G(b+1) G(a-b+1))``."""
    alpha, beta = complex(alpha), complex(beta)
    for arg in (alpha + 1.0, beta + 1.0, alpha - beta + 1.0):
        if _is_pole(arg):
            raise GammaPoleError(f"binomial({alpha}, {beta}): gamma pole at {arg}")
    return complex_gamma(alpha + 1.0) / (
        complex_gamma(beta + 1.0) * complex_gamma(alpha - beta + 1.0)
    )


def falling_binomial(alpha, k: int) -> complex:
    """``alpha (alpha-1) ... (alpha-k+1) / k!``; finite for every complex alpha."""
    if k < 0:
        raise ValueError("k must be non-negative")
    acc = complex(1.0)
    for j in range(k):
        acc *= (alpha - j) / (j + 1)
    return acc


def jacobi(n: int, a, b, z):
    """Jacobi polynomial ``P_n^{a,b}(z)`` from its explicit finite sum.

    Uses ``2^-n sum_m C(n+a, m) C(n+b, n-m) (z-1)^(n-m) (z+1)^m`` with the
    binomials as falling-factorial products, so complex ``a``, ``b`` never
    meet a gamma pole.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    z = np.asarray(z, dtype=complex)
    zm, zp = z - 1.0, z + 1.0
    total = np.zeros_like(z)
    for m in range(n + 1):
        coef = falling_binomial(n + a, m) * falling_binomial(n + b, n - m)
        total = total + coef * zm ** (n - m) * zp**m
    out = total / 2.0**n
    return out[()] if out.ndim == 0 else out


def jacobi_deriv(n: int, a, b, z):
    """Derivative in ``z``: ``(n+a+b+1)/2 * P_{n-1}^{a+1,b+1}(z)``."""
    if n == 0:
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        return out[()] if out.ndim == 0 else out
    return 0.5 * (n + a + b + 1) * jacobi(n - 1, a + 1, b + 1, z)


def _check_halfplane(z):
    w = 1.0 - np.asarray(z, dtype=complex)
    if np.any(w.real <= 0.0):
        raise ValueError("closed form requires Re(1 - z) > 0")
    return w


def hyp_f_abbz(a, z):
    """Closed form ``F(a, b, b; z) = (1-z)^-a`` (independent of ``b``)."""
    w = _check_halfplane(z)
    return cpow_halfplane(w, -a)


def hyp_f_half(a, z):
    """Closed form ``F(a, a+1/2, 2a; z) = 2^(2a-1) (1-z)^-1/2 [1+(1-z)^1/2]^(1-2a)``."""
    w = _check_halfplane(z)
    root = cpow_halfplane(w, 0.5)
    return cpow_halfplane(2.0, 2 * a - 1) * cpow_halfplane(w, -0.5) * cpow_halfplane(
        1.0 + root, 1 - 2 * a
    )


def hyp2f1_series(a, b, c, z, tol: float = 1e-16, max_terms: int = 10_000) -> complex:
    """Gauss hypergeometric series summed directly; an oracle for ``|z| <= 0.9``.

    Summation stops once three consecutive terms are below ``tol * |sum|``.

    Raises:
        GammaPoleError: ``c`` is a non-positive integer.
        SeriesConvergenceError: the cap of ``max_terms`` terms is reached.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if _is_pole(c):
        raise GammaPoleError(f"2F1 undefined for c = {c}")
    if abs(z) > 0.9 + 1e-12:
        raise ValueError("series oracle restricted to |z| <= 0.9")
    term = complex(1.0)
    total = complex(1.0)
    small = 0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small == 3:
                return total
        else:
            small = 0
    raise SeriesConvergenceError(f"2F1 series did not converge in {max_terms} terms")
