"""The PT-invariant Scarf II potential ``V(x) = -V1 sech^2 x - i V2 sech x tanh x``.

Units are hbar = 2m = 1.  Bound energies and eigenfunctions follow the
closed forms in terms of the shape parameters

    s = sqrt(V1 + V2 + 1/4),   t = sqrt(V1 - V2 + 1/4).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .specialfn import GammaPoleError, cpow_halfplane, gen_binomial, jacobi, jacobi_deriv

__all__ = [
    "Regime",
    "QBranch",
    "ScarfParams",
    "PQPair",
    "classify",
    "shape_params",
    "pq",
    "potential",
    "level_count",
    "spectrum",
    "spectrum_branch",
    "full_spectrum",
    "spectrum_exact",
    "broken_spectrum",
    "eigenfunction",
    "eigenfunction_deriv",
    "is_pt_symmetric",
]


class Regime(enum.Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"


class QBranch(enum.Enum):
    """Sign choice for ``q = -1/4 +- t/2``."""

    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class ScarfParams:
    v1: float
    v2: float

    def __post_init__(self):
        if not self.v1 > 0:
            raise ValueError(f"V1 must be positive, got {self.v1}")

    @property
    def s(self):
        return _real_if_real(shape_params(self)[0])

    @property
    def t(self):
        return _real_if_real(shape_params(self)[1])

    @property
    def regime(self) -> Regime:
        return classify(self)


@dataclass(frozen=True)
class PQPair:
    p: float
    q: float
    q_branch: QBranch


def _real_if_real(z: complex):
    return z.real if z.imag == 0.0 else z


def classify(params: ScarfParams) -> Regime:
    """Unbroken iff ``|V2| <= V1 + 1/4``; the boundary counts as unbroken."""
    if abs(params.v2) <= params.v1 + 0.25:
        return Regime.UNBROKEN
    return Regime.BROKEN


def shape_params(params: ScarfParams) -> tuple[complex, complex]:
    """Principal square roots ``(s, t)``.

    Both are real in the unbroken regime; the negative radicand gets the root
    with non-negative imaginary part.
    """
    s = cmath.sqrt(complex(params.v1 + params.v2 + 0.25, 0.0))
    t = cmath.sqrt(complex(params.v1 - params.v2 + 0.25, 0.0))
    return s, t


def _require_unbroken(params: ScarfParams) -> tuple[float, float]:
    if classify(params) is not Regime.UNBROKEN:
        raise ValueError(
            f"PT symmetry is broken for V1={params.v1}, V2={params.v2}; "
            "real closed forms need |V2| <= V1 + 1/4"
        )
    s, t = shape_params(params)
    return s.real, t.real


def pq(params: ScarfParams, q_branch: QBranch = QBranch.PLUS) -> PQPair:
    """Exponents ``p = -1/4 + s/2`` and ``q = -1/4 +- t/2``.

    Only the positive root is admissible for ``p``; both signs of ``q`` are
    available.
    """
    s, t = _require_unbroken(params)
    q_branch = QBranch(q_branch)
    sign = 1.0 if q_branch is QBranch.PLUS else -1.0
    return PQPair(p=-0.25 + 0.5 * s, q=-0.25 + sign * 0.5 * t, q_branch=q_branch)


def potential(params: ScarfParams, x):
    x = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(x)
    out = -params.v1 * sech**2 - 1j * params.v2 * sech * np.tanh(x)
    return out[()] if out.ndim == 0 else out


def _branch_sum(params: ScarfParams, q_branch: QBranch) -> float:
    s, t = _require_unbroken(params)
    return s + t if QBranch(q_branch) is QBranch.PLUS else s - t


def level_count(params: ScarfParams, q_branch: QBranch = QBranch.PLUS) -> int:
    """Number of integers ``n >= 0`` with ``n < (s +- t - 1)/2``."""
    bound = 0.5 * (_branch_sum(params, q_branch) - 1.0)
    return max(0, math.ceil(bound))


def spectrum_branch(params: ScarfParams, q_branch: QBranch = QBranch.PLUS) -> list[float]:
    """Energies ``-(n + 1/2 - (s +- t)/2)^2`` of the bound states on one q-branch.

    The minus branch is the second (quasi-parity) series; it is empty
    whenever ``s - t <= 1``.
    """
    half = 0.5 * _branch_sum(params, q_branch)
    return [-((n + 0.5 - half) ** 2) for n in range(level_count(params, q_branch))]


def spectrum(params: ScarfParams) -> list[float]:
    """Bound energies ``E_n = -(n + 1/2 - (s+t)/2)^2``, ascending."""
    return spectrum_branch(params, QBranch.PLUS)


def full_spectrum(params: ScarfParams) -> list[float]:
    """Both q-branches merged and sorted."""
    return sorted(spectrum_branch(params, QBranch.PLUS) + spectrum_branch(params, QBranch.MINUS))


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def spectrum_exact(params: ScarfParams) -> list[Fraction] | None:
    """Bound energies as exact rationals, or ``None`` if ``s + t`` is irrational.

    Couplings are read as the exact binary value of the float, so decimal
    inputs such as 12.5 or 0.75 stay exact.
    """
    _require_unbroken(params)
    v1, v2 = Fraction(params.v1), Fraction(params.v2)
    quarter = Fraction(1, 4)
    s = _exact_sqrt(v1 + v2 + quarter)
    t = _exact_sqrt(v1 - v2 + quarter)
    if s is None or t is None:
        return None
    half = (s + t) / 2
    bound = (s + t - 1) / 2
    count = max(0, math.ceil(bound))
    return [-((n + Fraction(1, 2) - half) ** 2) for n in range(count)]


def broken_spectrum(params: ScarfParams) -> list[complex]:
    """Analytic continuation of the bound-state formula to complex ``s + t``.

    Returns the values for ``t`` and for its conjugate branch, so the list is
    closed under complex conjugation: entries come as ``E, conj(E)`` pairs.
    Levels run over ``n < Re(s + t - 1)/2``.
    """
    s, t = shape_params(params)
    half = 0.5 * (s + t)
    out: list[complex] = []
    n = 0
    while n < 0.5 * (s + t - 1.0).real:
        e = -((n + 0.5 - half) ** 2)
        out.extend([e, e.conjugate()])
        n += 1
    return out


def _prefactor(n: int, p: float) -> complex:
    try:
        return gen_binomial(n, n - 2 * p - 0.5)
    except GammaPoleError:
        # The gamma ratio has a zero there; the function is only defined up
        # to scale, so drop the constant rather than return zero.
        return complex(1.0)


def _check_level(params: ScarfParams, n: int, q_branch: QBranch) -> None:
    count = level_count(params, q_branch)
    if not 0 <= n < count:
        raise IndexError(f"level {n} out of range; {count} bound levels on the {QBranch(q_branch).value} branch")


def eigenfunction(params: ScarfParams, n: int, x, q_branch: QBranch = QBranch.PLUS):
    """Unnormalized closed-form eigenfunction ``phi_n(x)``.

    ``C z^-p (1-z)^-q P_n^{-2p-1/2, -2q-1/2}(i sinh x)`` with
    ``z = (1 - i sinh x)/2`` and ``C`` the gamma-function binomial
    ``binom(n, n - 2p - 1/2)``.  Each q-branch gives the bound states of its
    own series (see :func:`spectrum_branch`).
    """
    _check_level(params, n, q_branch)
    pair = pq(params, q_branch)
    p, q = pair.p, pair.q
    x = np.asarray(x, dtype=float)
    ish = 1j * np.sinh(x)
    z, w = 0.5 * (1.0 - ish), 0.5 * (1.0 + ish)
    poly = jacobi(n, -2 * p - 0.5, -2 * q - 0.5, ish)
    out = _prefactor(n, p) * cpow_halfplane(z, -p) * cpow_halfplane(w, -q) * poly
    return out[()] if np.ndim(out) == 0 else out


def eigenfunction_deriv(params: ScarfParams, n: int, x, q_branch: QBranch = QBranch.PLUS):
    """Analytic ``d phi_n / dx`` (product rule over the three factors)."""
    _check_level(params, n, q_branch)
    pair = pq(params, q_branch)
    p, q = pair.p, pair.q
    x = np.asarray(x, dtype=float)
    ish = 1j * np.sinh(x)
    icosh = 1j * np.cosh(x)
    z, w = 0.5 * (1.0 - ish), 0.5 * (1.0 + ish)
    a, b = -2 * p - 0.5, -2 * q - 0.5
    envelope = cpow_halfplane(z, -p) * cpow_halfplane(w, -q)
    # dz/dx = -i cosh/2, dw/dx = +i cosh/2
    log_env = -p * (-0.5 * icosh) / z - q * (0.5 * icosh) / w
    poly = jacobi(n, a, b, ish)
    dpoly = jacobi_deriv(n, a, b, ish) * icosh
    out = _prefactor(n, p) * envelope * (log_env * poly + dpoly)
    return out[()] if np.ndim(out) == 0 else out


def is_pt_symmetric(x, values, tol: float = 1e-12) -> bool:
    """Check ``conj(f(-x)) == f(x)`` on a grid symmetric about the origin.

    Raises:
        ValueError: the grid is not symmetric.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=complex)
    if x.shape != values.shape:
        raise ValueError("grid and samples differ in shape")
    scale = max(1.0, float(np.max(np.abs(x)))) if x.size else 1.0
    if not np.allclose(x, -x[::-1], rtol=0.0, atol=1e-12 * scale):
        raise ValueError("grid is not symmetric about 0")
    return bool(np.max(np.abs(np.conj(values[::-1]) - values)) <= tol)
