import warnings

import numpy as np
import pytest

from ptdarboux import numerix, scarf2
from ptdarboux.darboux import (
    DeletedStateWarning,
    FormalNormWarning,
    SeedCase,
    StateDeletionError,
    added_energy,
    case2_partner_closed,
    deleted_energy,
    deleted_level,
    f_closed,
    f_prime_closed,
    make_seed,
    normalization_factor,
    partner_eigenfunction,
    partner_pair,
    partner_potential,
    partner_potential_alt,
    partner_spectrum,
    riccati_residual,
    satellite_coefficients,
    satellite_potential,
    seed_growth,
    seed_u,
    with_perturbed_f,
)
from ptdarboux.scarf2 import QBranch, ScarfParams

X = np.linspace(-10, 10, 2001)


def test_seed_case_i_minus(seed_ia):
    assert (seed_ia.p, seed_ia.q, seed_ia.lam, seed_ia.epsilon) == (2.5, -2.5, 4.5, -20.25)
    assert not seed_ia.degenerate_susy


def test_seed_case_i_plus(seed_ib):
    assert (seed_ib.q, seed_ib.lam, seed_ib.epsilon) == (2.0, 0.0, 0.0)
    assert seed_ib.degenerate_susy
    assert str(seed_ib.epsilon) == "0.0"


def test_seed_case_ii(seed_ii):
    assert seed_ii.q == -0.5
    assert seed_ii.lam == -0.25 and seed_ii.epsilon == -0.0625
    assert seed_ii.p == pytest.approx(2.26247, abs=1e-5)
    a, b, c = seed_ii.hyp
    assert b == pytest.approx(a + 0.5) and c == pytest.approx(2 * a)


def test_case_ii_needs_equal_couplings(p25):
    with pytest.raises(ValueError):
        make_seed(p25, SeedCase.CASE_II)


def test_case_i_hypergeometric_is_b_equals_c(seed_ia):
    _, b, c = seed_ia.hyp
    assert b == c


@pytest.mark.parametrize("name", ["seed_ia", "seed_ib", "seed_ii"])
def test_seed_solves_schroedinger(name, request):
    spec = request.getfixturevalue(name)
    x = np.linspace(-5, 5, 101)
    h = 1e-3
    u = lambda y: seed_u(spec, y)
    r = -(u(x + h) - 2 * u(x) + u(x - h)) / h**2 + (scarf2.potential(spec.params, x) - spec.epsilon) * u(x)
    assert np.max(np.abs(r / u(x))) < 1e-4
    assert np.min(np.abs(u(X))) > 0


@pytest.mark.parametrize("name", ["seed_ia", "seed_ib", "seed_ii"])
def test_f_is_log_derivative(name, request):
    spec = request.getfixturevalue(name)
    x = np.linspace(-6, 6, 121)
    h = 1e-5
    fd = (seed_u(spec, x + h) - seed_u(spec, x - h)) / (2 * h) / seed_u(spec, x)
    assert np.max(np.abs(fd - f_closed(spec, x))) < 1e-7
    dfd = (f_closed(spec, x + h) - f_closed(spec, x - h)) / (2 * h)
    assert np.max(np.abs(dfd - f_prime_closed(spec, x))) < 1e-7


def test_f_special_values(seed_ia, seed_ib):
    assert f_prime_closed(seed_ia, 0.0) == pytest.approx(-4.5)
    x = np.linspace(-3, 3, 13)
    assert np.allclose(f_closed(seed_ib, x), 5j / np.cosh(x))


@pytest.mark.parametrize("name", ["seed_ia", "seed_ib", "seed_ii"])
def test_riccati(name, request):
    spec = request.getfixturevalue(name)
    assert np.max(np.abs(riccati_residual(spec, X))) < 1e-10


@pytest.mark.parametrize("name", ["seed_ia", "seed_ib", "seed_ii"])
def test_two_partner_constructions_agree(name, request):
    spec = request.getfixturevalue(name)
    assert np.max(np.abs(partner_potential(spec, X) - partner_potential_alt(spec, X))) < 1e-10


def test_satellite_coefficients(seed_ia, seed_ib, seed_ii):
    assert satellite_coefficients(seed_ia) == (16, 4)
    assert satellite_coefficients(seed_ib) == (25, -5)
    assert satellite_coefficients(seed_ii) is None
    with pytest.raises(ValueError):
        satellite_potential(seed_ii, 0.0)
    for spec in (seed_ia, seed_ib):
        assert np.max(np.abs(satellite_potential(spec, X) - partner_potential(spec, X))) < 1e-10


def test_case_ii_closed_partner(seed_ii):
    assert np.max(np.abs(case2_partner_closed(seed_ii, X) - partner_potential(seed_ii, X))) < 1e-9
    with pytest.raises(ValueError):
        case2_partner_closed(make_seed(ScarfParams(25, 5), SeedCase.CASE_I), 0.0)


def test_case_ii_partner_pt_symmetric(seed_ii):
    assert scarf2.is_pt_symmetric(X, partner_potential(seed_ii, X), tol=1e-12)


def test_level_bookkeeping(seed_ia, seed_ib, seed_ii):
    assert seed_growth(seed_ia) == -4.5 and deleted_energy(seed_ia) == -20.25
    assert deleted_level(seed_ia) == 0 and added_energy(seed_ia) is None
    assert deleted_level(seed_ib) is None and added_energy(seed_ib) is None
    assert partner_spectrum(seed_ia) == [-12.25, -6.25, -2.25, -0.25]
    assert partner_spectrum(seed_ib) == scarf2.spectrum(ScarfParams(25, 5))
    assert added_energy(seed_ii) == -0.0625 and deleted_energy(seed_ii) is None
    assert partner_spectrum(seed_ii) == pytest.approx(
        [-5.11877, -3.10630, -1.59383, -0.58136, -0.0689, -0.0625], abs=1e-4
    )


def test_normalization_factor(seed_ia, seed_ib):
    with pytest.raises(StateDeletionError):
        normalization_factor(seed_ia, 0)
    assert normalization_factor(seed_ia, 1) == 8.0
    with pytest.warns(FormalNormWarning):
        assert normalization_factor(seed_ib, 0) == -20.25
    with pytest.raises(IndexError):
        normalization_factor(seed_ia, 9)


def test_deleted_state_vanishes(seed_ia):
    with pytest.warns(DeletedStateWarning):
        psi = partner_eigenfunction(seed_ia, 0, X)
    phi = scarf2.eigenfunction(seed_ia.params, 0, X)
    assert np.max(np.abs(psi)) < 1e-10 * np.max(np.abs(phi))


def test_ground_state_proportionality(seed_ib):
    x = np.linspace(-5, 5, 201)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        psi = partner_eigenfunction(seed_ib, 0, x)
    phi = scarf2.eigenfunction(seed_ib.params, 0, x)
    ratio = psi / ((np.tanh(x) + 1j / np.cosh(x)) * phi)
    assert np.max(np.abs(ratio - ratio[0])) < 1e-8 * abs(ratio[0])


@pytest.mark.parametrize("name", ["seed_ia", "seed_ib"])
def test_partner_eigenfunctions_solve_partner(name, request):
    spec = request.getfixturevalue(name)
    x = np.linspace(-4, 4, 41)
    h = 1e-3
    start = 1 if spec.lam > 0 else 0
    for n in range(start, 5):
        e = scarf2.spectrum(spec.params)[n]
        psi = lambda y: partner_eigenfunction(spec, n, y)
        r = -(psi(x + h) - 2 * psi(x) + psi(x - h)) / h**2 + (partner_potential(spec, x) - e) * psi(x)
        assert np.max(np.abs(r)) < 1e-4 * np.max(np.abs(psi(x))) * max(1, abs(e))


def test_case_ii_added_level_is_inverse_seed(seed_ii):
    x = np.linspace(-4, 4, 41)
    h = 1e-3
    g = lambda y: 1.0 / seed_u(seed_ii, y)
    r = -(g(x + h) - 2 * g(x) + g(x - h)) / h**2 + (partner_potential(seed_ii, x) - seed_ii.epsilon) * g(x)
    assert np.max(np.abs(r / g(x))) < 1e-4
    # 1/u decays like exp(-|x|/4): normalizable
    for side in (-1.0, 1.0):
        rate = np.log(abs(g(side * 40.0)) / abs(g(side * 30.0))) / 10.0
        assert rate == pytest.approx(-0.25, abs=1e-4)


@pytest.mark.parametrize("name", ["seed_ia", "seed_ib", "seed_ii"])
def test_intertwining_converges(name, request):
    pair = partner_pair(request.getfixturevalue(name))
    res = []
    for h in (0.02, 0.01):
        x = numerix.Grid.from_spacing(6.0, h).nodes
        res.append(pair.intertwining_residual(x, np.exp(-(x**2))))
    assert 3.5 < res[0] / res[1] < 4.5


def test_perturbed_f_breaks_riccati(seed_ia):
    pair = with_perturbed_f(partner_pair(seed_ia), lambda x: 1e-3 / np.cosh(x))
    assert np.max(np.abs(pair.riccati_residual(X))) > 1e-4


def test_partner_numeric_spectra(solve):
    _, ia, _ = solve("v_minus_ia")
    _, ib, _ = solve("v_minus_ib")
    got_a = [e for e in numerix.bound_spectrum(ia)]
    got_b = [e for e in numerix.bound_spectrum(ib)]
    assert numerix.match_spectra([-12.25, -6.25, -2.25, -0.25], got_a, tol=5e-2).total
    assert numerix.match_spectra(scarf2.spectrum(ScarfParams(25, 5)), got_b, tol=5e-2).total
