from fractions import Fraction

import numpy as np
import pytest

from ptdarboux import numerix
from ptdarboux.scarf2 import (
    QBranch,
    Regime,
    ScarfParams,
    broken_spectrum,
    classify,
    eigenfunction,
    eigenfunction_deriv,
    full_spectrum,
    is_pt_symmetric,
    level_count,
    potential,
    pq,
    shape_params,
    spectrum,
    spectrum_branch,
    spectrum_exact,
)

TABLE_25_5 = [Fraction(-81, 4), Fraction(-49, 4), Fraction(-25, 4), Fraction(-9, 4), Fraction(-1, 4)]
TABLE_16_4 = [Fraction(-49, 4), Fraction(-25, 4), Fraction(-9, 4), Fraction(-1, 4)]


def test_params_validation():
    with pytest.raises(ValueError):
        ScarfParams(0, 1)
    with pytest.raises(ValueError):
        ScarfParams(-3, 1)


def test_shape_params_table():
    p = ScarfParams(25, 5)
    assert (p.s, p.t) == (5.5, 4.5)
    p = ScarfParams(16, 4)
    assert (p.s, p.t) == (4.5, 3.5)


@pytest.mark.parametrize(
    "v1, v2, regime",
    [(25, 5, Regime.UNBROKEN), (6, 6.25, Regime.UNBROKEN), (6, -6.25, Regime.UNBROKEN), (6, 6.5, Regime.BROKEN)],
)
def test_classify(v1, v2, regime):
    assert classify(ScarfParams(v1, v2)) is regime


def test_shape_params_broken_is_imaginary():
    s, t = shape_params(ScarfParams(6, 6.5))
    assert s.imag == 0 and t.real == 0 and t.imag == pytest.approx(0.5)


def test_pq_values():
    a = pq(ScarfParams(25, 5))
    assert (a.p, a.q) == (2.5, 2.0)
    b = pq(ScarfParams(25, 5), QBranch.MINUS)
    assert b.q == -2.5
    with pytest.raises(ValueError):
        pq(ScarfParams(6, 6.5))


def test_potential_pt_symmetry():
    x = np.linspace(-5, 5, 401)
    v = potential(ScarfParams(25, 5), x)
    assert is_pt_symmetric(x, v)
    assert potential(ScarfParams(25, 5), 0.0) == -25


def test_spectrum_table():
    assert spectrum_exact(ScarfParams(25, 5)) == TABLE_25_5
    assert spectrum_exact(ScarfParams(16, 4)) == TABLE_16_4
    assert spectrum(ScarfParams(25, 5)) == [float(e) for e in TABLE_25_5]


def test_spectrum_exact_irrational():
    assert spectrum_exact(ScarfParams(12.5, 12.5)) is None


def test_level_count_and_second_series():
    p = ScarfParams(25, 5)
    assert level_count(p) == 5
    assert level_count(p, QBranch.MINUS) == 0
    assert full_spectrum(p) == spectrum(p)
    p = ScarfParams(12.5, 12.5)
    minus = spectrum_branch(p, QBranch.MINUS)
    assert minus == pytest.approx([-3.10630, -0.58136], abs=1e-5)
    assert full_spectrum(p) == pytest.approx([-5.11877, -3.10630, -1.59383, -0.58136, -0.06889], abs=1e-5)


def test_spectrum_boundary_levels():
    # s + t = 3 exactly: n < 1, one level at -1
    assert spectrum(ScarfParams(2.0, 0.0)) == [-1.0]


def test_broken_spectrum_conjugate_pairs():
    vals = broken_spectrum(ScarfParams(6, 6.5))
    assert len(vals) == 4
    assert numerix.conjugate_pair_check(vals)
    assert vals[0] == pytest.approx(-1.58963 - 0.64272j, abs=1e-4) or vals[0] == pytest.approx(
        -1.58963 + 0.64272j, abs=1e-4
    )


@pytest.mark.parametrize("n", range(5))
def test_eigenfunction_pt_and_decay(n):
    p = ScarfParams(25, 5)
    x = np.linspace(-12, 12, 801)
    phi = eigenfunction(p, n, x)
    # PT symmetric up to a unimodular constant: conj(phi(-x)) = c phi(x)
    mirror = np.conj(phi[::-1])
    c = np.vdot(phi, mirror) / np.vdot(phi, phi)
    assert abs(abs(c) - 1) < 1e-10
    assert np.max(np.abs(mirror - c * phi)) < 1e-10 * np.max(np.abs(phi))
    assert np.max(np.abs(phi[[0, -1]])) < 1e-2 * np.max(np.abs(phi))


def test_eigenfunction_out_of_range():
    with pytest.raises(IndexError):
        eigenfunction(ScarfParams(25, 5), 5, 0.0)
    with pytest.raises(IndexError):
        eigenfunction(ScarfParams(25, 5), 0, 0.0, QBranch.MINUS)


@pytest.mark.parametrize("n", [0, 2, 4])
def test_eigenfunction_deriv_matches_fd(n):
    p = ScarfParams(25, 5)
    x = np.linspace(-3, 3, 61)
    h = 1e-5
    fd = (eigenfunction(p, n, x + h) - eigenfunction(p, n, x - h)) / (2 * h)
    exact = eigenfunction_deriv(p, n, x)
    assert np.max(np.abs(fd - exact)) < 1e-6 * np.max(np.abs(exact))


def test_eigenfunction_satisfies_ode_pointwise():
    p = ScarfParams(25, 5)
    x = np.linspace(-4, 4, 41)
    h = 1e-3
    for n, e in enumerate(spectrum(p)):
        d2 = (eigenfunction(p, n, x + h) - 2 * eigenfunction(p, n, x) + eigenfunction(p, n, x - h)) / h**2
        phi = eigenfunction(p, n, x)
        r = -d2 + potential(p, x) * phi - e * phi
        assert np.max(np.abs(r)) < 1e-4 * np.max(np.abs(phi)) * max(1, abs(e))


def test_second_series_eigenfunction():
    p = ScarfParams(12.5, 12.5)
    x = np.linspace(-4, 4, 41)
    h = 1e-3
    for n, e in enumerate(spectrum_branch(p, QBranch.MINUS)):
        f = lambda y: eigenfunction(p, n, y, QBranch.MINUS)
        r = -(f(x + h) - 2 * f(x) + f(x - h)) / h**2 + (potential(p, x) - e) * f(x)
        assert np.max(np.abs(r)) < 1e-4 * np.max(np.abs(f(x)))


def test_is_pt_symmetric_rejects_asymmetric_grid():
    with pytest.raises(ValueError):
        is_pt_symmetric(np.array([0.0, 1.0, 2.0]), np.zeros(3))
