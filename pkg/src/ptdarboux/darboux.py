"""First-order Darboux (intertwining) partners of the Scarf II potential.

A seed solution ``u`` of ``-u'' + V+ u = eps u`` with no real zeros gives
``f = u'/u`` and the intertwiner ``A = -d/dx + f``.  The partner is

    V-(x) = V+(x) - 2 f'(x),

and ``A H+ = H- A`` maps each eigenfunction ``phi_n`` of ``H+`` to
``psi_n = -phi_n' + f phi_n`` of ``H-`` with the same energy.  Two seed
families are supported: case I (``b = c``, closed form ``(1-z)^-a``) and
case II (``V1 = V2``, ``b = a + 1/2``, ``c = 2a``).
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import scarf2
from .numerix import central_derivative, second_derivative
from .scarf2 import PQPair, QBranch, ScarfParams
from .specialfn import cpow_halfplane, hyp_f_abbz, hyp_f_half

__all__ = [
    "SeedCase",
    "SeedSpec",
    "PartnerPair",
    "StateDeletionError",
    "DeletedStateWarning",
    "FormalNormWarning",
    "make_seed",
    "seed_u",
    "f_closed",
    "f_prime_closed",
    "partner_potential",
    "partner_potential_alt",
    "satellite_coefficients",
    "satellite_potential",
    "riccati_residual",
    "partner_eigenfunction",
    "seed_growth",
    "deleted_energy",
    "added_energy",
    "deleted_level",
    "partner_spectrum",
    "normalization_factor",
    "intertwining_residual",
    "case2_partner_closed",
    "partner_pair",
    "with_perturbed_f",
]

ComplexFn = Callable[[np.ndarray], np.ndarray]


class SeedCase(enum.Enum):
    CASE_I = "i"
    CASE_II = "ii"


class StateDeletionError(ValueError):
    """The factorization energy coincides with a bound level."""


class DeletedStateWarning(UserWarning):
    pass


class FormalNormWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SeedSpec:
    case: SeedCase
    params: ScarfParams
    pq: PQPair
    lam: float
    epsilon: float
    hyp: tuple[float, float, float]

    @property
    def p(self) -> float:
        return self.pq.p

    @property
    def q(self) -> float:
        return self.pq.q

    @property
    def degenerate_susy(self) -> bool:
        return self.epsilon == 0.0


def make_seed(params: ScarfParams, case: SeedCase, q_branch: QBranch = QBranch.MINUS) -> SeedSpec:
    """Build the seed data ``(p, q, lambda, eps, (a, b, c))`` for a case.

    Case I uses ``lambda = p - q - 1/2`` and ``eps = -lambda^2``.  Case II
    needs ``V1 == V2`` and forces ``q = -1/2``, ``lambda = -1/4``,
    ``eps = -1/16``; ``q_branch`` is ignored there.
    """
    case = SeedCase(case)
    if case is SeedCase.CASE_II:
        if not math.isclose(params.v1, params.v2, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError(f"case II needs V1 == V2, got V1={params.v1}, V2={params.v2}")
        pair = scarf2.pq(params, QBranch.MINUS)
        lam = -0.25
    else:
        pair = scarf2.pq(params, q_branch)
        lam = pair.p - pair.q - 0.5
    p, q = pair.p, pair.q
    a = -p - q + lam
    b = -p - q - lam
    c = -2 * p + 0.5
    eps = -(lam**2)
    if eps == 0.0:
        eps = 0.0  # drop the sign of -0.0
    return SeedSpec(case=case, params=params, pq=pair, lam=lam, epsilon=eps, hyp=(a, b, c))


def _trig(x):
    x = np.asarray(x, dtype=float)
    return x, 1.0 / np.cosh(x), np.tanh(x)


def _unwrap(out):
    return complex(out) if np.ndim(out) == 0 else out


def seed_u(spec: SeedSpec, x):
    """Seed solution ``z^-p (1-z)^-q F(a, b, c; z)`` with ``z = (1 - i sinh x)/2``.

    The hypergeometric factor is taken from its closed form for each case, so
    ``u`` never vanishes on the real line.
    """
    x = np.asarray(x, dtype=float)
    z = 0.5 * (1.0 - 1j * np.sinh(x))
    p, q = spec.p, spec.q
    a, _, _ = spec.hyp
    if spec.case is SeedCase.CASE_I:
        hyp = hyp_f_abbz(a, z)
    else:
        hyp = hyp_f_half(a, z)
    return _unwrap(cpow_halfplane(z, -p) * cpow_halfplane(1.0 - z, -q) * hyp)


def f_closed(spec: SeedSpec, x):
    """Logarithmic derivative ``u'/u`` in closed form."""
    x, sech, tanh = _trig(x)
    p, q = spec.p, spec.q
    if spec.case is SeedCase.CASE_I:
        out = 1j * (p + q + 0.5) * sech - (p - q - 0.5) * tanh
    else:
        root = cpow_halfplane(0.5 * (1.0 + 1j * np.sinh(x)), 0.5)
        out = 0.25 * tanh - 0.25j * sech + 1j * (2 * p + 0.5) * sech * root
    return _unwrap(out)


def f_prime_closed(spec: SeedSpec, x):
    x, sech, tanh = _trig(x)
    p, q = spec.p, spec.q
    if spec.case is SeedCase.CASE_I:
        out = -1j * (p + q + 0.5) * sech * tanh - (p - q - 0.5) * sech**2
    else:
        k = 2 * p + 0.5
        root = cpow_halfplane(0.5 * (1.0 + 1j * np.sinh(x)), 0.5)
        out = 0.25 * sech**2 + 0.25j * sech * tanh - 1j * k * sech * tanh * root - k / (4.0 * root)
    return _unwrap(out)


@dataclass(frozen=True)
class PartnerPair:
    """Callables for ``V+``, ``V-``, ``f``, ``f'`` plus the factorization energy."""

    v_plus: ComplexFn
    v_minus: ComplexFn
    f: ComplexFn
    f_prime: ComplexFn
    epsilon: float
    degenerate_susy: bool

    def riccati_residual(self, x):
        fx = self.f(x)
        return fx * fx + self.f_prime(x) - self.v_plus(x) + self.epsilon

    def apply_a(self, x, g):
        """``A g = -g' + f g`` on uniform grid samples."""
        x = np.asarray(x, dtype=float)
        g = np.asarray(g, dtype=complex)
        h = x[1] - x[0]
        return -central_derivative(g, h) + self.f(x) * g

    def intertwining_residual(self, x, g) -> float:
        """Sup-norm of ``(A H+ - H- A) g`` relative to ``sup |g|``.

        Derivatives are second-order grid differences, so the result is
        ``O(h^2)``.  Two nodes at each end are excluded, where the one-sided
        stencils stop commuting.
        """
        x = np.asarray(x, dtype=float)
        g = np.asarray(g, dtype=complex)
        if x.size < 7:
            raise ValueError("need at least 7 grid points")
        h = x[1] - x[0]
        h_plus_g = -second_derivative(g, h) + self.v_plus(x) * g
        lhs = self.apply_a(x, h_plus_g)
        ag = self.apply_a(x, g)
        rhs = -second_derivative(ag, h) + self.v_minus(x) * ag
        diff = np.abs(lhs - rhs)[2:-2]
        return float(np.max(diff) / np.max(np.abs(g)))


def partner_pair(spec: SeedSpec) -> PartnerPair:
    params = spec.params

    def v_plus(x):
        return scarf2.potential(params, x)

    def f(x):
        return f_closed(spec, x)

    def f_prime(x):
        return f_prime_closed(spec, x)

    def v_minus(x):
        return v_plus(x) - 2.0 * f_prime(x)

    return PartnerPair(
        v_plus=v_plus,
        v_minus=v_minus,
        f=f,
        f_prime=f_prime,
        epsilon=spec.epsilon,
        degenerate_susy=spec.degenerate_susy,
    )


def partner_potential(spec: SeedSpec, x):
    """``V-(x) = V+(x) - 2 f'(x)``, the reference construction."""
    return scarf2.potential(spec.params, x) - 2.0 * f_prime_closed(spec, x)


def partner_potential_alt(spec: SeedSpec, x):
    """Alternative form ``2 (u'/u)^2 - V+ + 2 eps`` (cross-check only)."""
    fx = f_closed(spec, x)
    return 2.0 * fx * fx - scarf2.potential(spec.params, x) + 2.0 * spec.epsilon


def satellite_coefficients(spec: SeedSpec) -> tuple[float, float] | None:
    """Couplings ``(W1, W2)`` with ``V- = -W1 sech^2 - i W2 sech tanh``.

    Only case I partners keep the Scarf II shape; ``None`` for case II.
    """
    if spec.case is not SeedCase.CASE_I:
        return None
    p, q1 = spec.p, spec.q + 0.5
    v1, v2 = spec.params.v1, spec.params.v2
    return 4 * (p * p + q1 * q1) - v1, 4 * (p * p - q1 * q1) - v2


def satellite_potential(spec: SeedSpec, x):
    coeffs = satellite_coefficients(spec)
    if coeffs is None:
        raise ValueError("case II partners are not of satellite form")
    w1, w2 = coeffs
    _, sech, tanh = _trig(x)
    return _unwrap(-w1 * sech**2 - 1j * w2 * sech * tanh)


def case2_partner_closed(spec: SeedSpec, x):
    """Expanded case II partner, evaluated term by term.

    ``-K (sech^2 + i sech tanh) + k (sech^2 + i sech tanh) ((1 + i sinh x)/2)^1/2``
    with ``k = 2p + 1/2`` and ``K = 1/4 + k^2 - V0``.
    """
    if spec.case is not SeedCase.CASE_II:
        raise ValueError("case2_partner_closed needs a case II seed")
    x, sech, tanh = _trig(x)
    k = 2 * spec.p + 0.5
    big = 0.25 + k * k - spec.params.v1
    shape = sech**2 + 1j * sech * tanh
    root = cpow_halfplane(0.5 * (1.0 + 1j * np.sinh(x)), 0.5)
    return _unwrap(-big * shape + k * shape * root)


def riccati_residual(spec: SeedSpec, x):
    """``f^2 + f' - V+ + eps``; zero up to round-off."""
    return partner_pair(spec).riccati_residual(x)


def seed_growth(spec: SeedSpec) -> float:
    """Exponent ``k`` in ``|u(x)| ~ exp(k |x|)`` as ``|x| -> oo``.

    Case I: ``k = q + 1/2 - p = -lambda``.  Case II: ``k = 1/4`` for every
    ``p``.  ``k < 0`` means ``u`` is itself a bound state (deleted from the
    partner); ``k > 0`` makes ``1/u`` a bound state of ``H-`` at ``eps``.
    """
    if spec.case is SeedCase.CASE_I:
        return -spec.lam
    return 0.25


def deleted_energy(spec: SeedSpec) -> float | None:
    return spec.epsilon if seed_growth(spec) < 0 else None


def added_energy(spec: SeedSpec) -> float | None:
    """``eps`` when ``1/u`` is normalizable, i.e. ``H-`` gains a level there."""
    return spec.epsilon if seed_growth(spec) > 0 else None


def deleted_level(spec: SeedSpec, q_branch: QBranch = QBranch.PLUS, rtol: float = 1e-12) -> int | None:
    """Index on ``q_branch``'s series of the level removed from the partner, if any."""
    if deleted_energy(spec) is None:
        return None
    for n, e in enumerate(scarf2.spectrum_branch(spec.params, q_branch)):
        if abs(e - spec.epsilon) <= rtol * max(1.0, abs(e)):
            return n
    return None


def partner_spectrum(spec: SeedSpec) -> list[float]:
    """Predicted bound spectrum of ``H-``.

    All levels of ``H+`` (both series), minus ``eps`` when the seed is
    normalizable, plus ``eps`` when ``1/u`` is.
    """
    levels = scarf2.full_spectrum(spec.params)
    gone = deleted_energy(spec)
    if gone is not None:
        idx = min(range(len(levels)), key=lambda i: abs(levels[i] - gone))
        levels.pop(idx)
    new = added_energy(spec)
    if new is not None:
        levels.append(new)
    return sorted(levels)


def partner_eigenfunction(spec: SeedSpec, n: int, x, q_branch: QBranch = QBranch.PLUS):
    """Unnormalized ``psi_n = -phi_n' + f phi_n`` on ``H-``.

    ``phi_n`` is the bound state of ``H+`` (on ``q_branch``'s series) with its
    derivative taken analytically, so ``x`` may be any real points.  At the
    deleted level the result vanishes identically; a
    :class:`DeletedStateWarning` is issued.
    """
    if n == deleted_level(spec, q_branch):
        warnings.warn(f"level {n} is deleted by the transformation (E_n == eps)", DeletedStateWarning, stacklevel=2)
    phi = scarf2.eigenfunction(spec.params, n, x, q_branch)
    dphi = scarf2.eigenfunction_deriv(spec.params, n, x, q_branch)
    return -dphi + f_closed(spec, x) * phi


def normalization_factor(spec: SeedSpec, n: int, q_branch: QBranch = QBranch.PLUS) -> float:
    """Formal ``|c_n|^-2 = E_n - eps``.

    The inner product behind it is not positive definite for a non-Hermitian
    ``H+``, so negative values are possible; they come with a
    :class:`FormalNormWarning`.

    Raises:
        StateDeletionError: ``E_n == eps``.
    """
    energies = scarf2.spectrum_branch(spec.params, q_branch)
    if not 0 <= n < len(energies):
        raise IndexError(f"level {n} out of range; {len(energies)} bound levels")
    value = energies[n] - spec.epsilon
    if abs(value) <= 1e-12 * max(1.0, abs(energies[n])):
        raise StateDeletionError(f"level {n} is deleted; no finite normalization")
    if value < 0:
        warnings.warn(f"E_{n} - eps = {value} is negative", FormalNormWarning, stacklevel=2)
    return value


def intertwining_residual(spec: SeedSpec, x, test_fn) -> float:
    """Grid estimate of ``sup |(A H+ - H- A) g| / sup |g|`` for samples ``g``."""
    return partner_pair(spec).intertwining_residual(x, test_fn)


def with_perturbed_f(pair: PartnerPair, delta: ComplexFn) -> PartnerPair:
    """Copy of ``pair`` whose ``f`` is shifted by ``delta`` and nothing else."""
    base = pair.f
    return replace(pair, f=lambda x: base(x) + delta(x))
