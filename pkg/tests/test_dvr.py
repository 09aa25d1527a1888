import mpmath
import numpy as np
import pytest

from posdirac.angular import CaseId
from posdirac.constants import DEFAULT
from posdirac.dvr import (CATALOG_FAMILIES, DvrGrid, analytic_coefficients,
                          analytic_dvr_wavefunction, anomalous_catalog, coupled_components,
                          coupling_g, dvr_diagonalize, gaunt_eigenvalue, gram_matrix,
                          radiative_moment, schrodinger_radial, sigma_dot_sigma)
from posdirac.momentum import coulomb_matrix
from posdirac.special import build_basis


@pytest.fixture(scope="module")
def grid():
    return DvrGrid(1e-4, 40)


@pytest.fixture(scope="module")
def states(grid):
    b = grid.basis()
    return dvr_diagonalize(b, coulomb_matrix(b, "V0", "dvr"))


def test_grid(grid):
    assert grid.delta_rho == pytest.approx(2.5e-6)
    assert grid.points.size == 39
    np.testing.assert_allclose(np.diff(grid.points), 2.5e-6, rtol=1e-12)
    assert grid.norm_C**2 == pytest.approx(grid.delta_rho, rel=1e-15)
    with pytest.raises(ValueError):
        DvrGrid(1e-4, 1)


def test_energy_law(grid, states):
    E = np.array([s.energy for s in states])
    np.testing.assert_array_less(E[:-1], E[1:])
    for i in range(5, 36):
        assert abs(E[i - 1] * grid.points[i - 1] + 1) < 0.01
        assert abs(states[i - 1].rho_hat - grid.points[i - 1]) / grid.delta_rho < 0.05


def test_constant_potential_two_state_toy():
    b = build_basis(0, 1.0, 2)
    out = dvr_diagonalize(b, -2.0 * np.eye(2))
    assert [s.energy for s in out] == [-2.0, -2.0]
    with pytest.raises(ValueError):
        dvr_diagonalize(b, np.eye(3))


def test_analytic_peak_and_nodes(grid):
    h = 1 / np.sqrt(grid.delta_rho)
    for i in (1, 10, 20, 39):
        assert analytic_dvr_wavefunction(grid, i, grid.points[i - 1]) == pytest.approx(h, rel=0.05)
        others = np.delete(grid.points, i - 1)
        assert np.max(np.abs(analytic_dvr_wavefunction(grid, i, others))) < 1e-10 * h
    with pytest.raises(ValueError):
        analytic_dvr_wavefunction(grid, 40, 0.0)


def test_analytic_function_vs_mpmath_sum(grid):
    i, rho = 7, 3.3e-5
    k = [m * mpmath.pi / grid.rho0 for m in range(1, 40)]
    ref = mpmath.sqrt(grid.rho0 / 40) * 2 / grid.rho0 * mpmath.fsum(
        mpmath.sin(km * rho) * mpmath.sin(km * grid.points[i - 1]) for km in k)
    assert analytic_dvr_wavefunction(grid, i, rho) == pytest.approx(float(ref), rel=1e-11)


def test_gram_identity(grid):
    np.testing.assert_allclose(gram_matrix(grid), np.eye(39), atol=1e-10)


def test_numeric_vectors_match_analytic(grid, states):
    A = analytic_coefficients(grid)
    for i, s in enumerate(states):
        assert abs(s.vector @ A[:, i]) > 0.999


def test_radiative_moments_measured(grid):
    assert radiative_moment(grid, 10, 10, 1) == pytest.approx(grid.points[9], rel=0.01)
    assert abs(radiative_moment(grid, 10, 12, 0)) < 1e-12
    worst = max(abs(radiative_moment(grid, i, i + 1, 1)) / radiative_moment(grid, i, i, 1)
                for i in range(5, 35))
    assert worst < 0.02   # frozen measurement at M=40 (1.74e-2)


@pytest.mark.parametrize("power", [1, 2, 3])
def test_radiative_leakage_falls_as_one_over_m(power):
    ratios = []
    for M in (40, 80):
        g, i = DvrGrid(1e-4, M), M // 4
        ratios.append(abs(radiative_moment(g, i, i + 1, power)) / radiative_moment(g, i, i, power))
    assert ratios[1] / ratios[0] < 0.55


def test_sigma_dot_sigma():
    assert sigma_dot_sigma(0) == -3.0
    assert sigma_dot_sigma(1) == 1.0
    with pytest.raises(ValueError):
        sigma_dot_sigma(2)


@pytest.mark.parametrize("vec,S,expected", [("e11-e22", 0, 3.0), ("e11-e22", 1, -1.0),
                                            ("e12-e21", 0, 3.0), ("e12-e21", 1, -1.0)])
def test_gaunt_eigenvalues(vec, S, expected):
    assert gaunt_eigenvalue(vec, S) == expected


def test_catalog(grid):
    cat = anomalous_catalog(grid)
    assert len(cat) == 4 * 39
    sign = {"PsiS0": 1, "PsiA0": 1, "PsiAalpha": -1, "PsiSalpha": -1}
    for s in cat:
        assert s.energy_coulomb == -1.0 / s.rho_i
        assert s.energy_total == sign[s.family] * 2.0 / s.rho_i
        assert abs(s.energy_total) == 2 * abs(s.energy_coulomb)
    s0 = [s for s in cat if s.family == "PsiS0"][0]
    assert (s0.parity.C, s0.parity.P) == (1, -1) and s0.case is CaseId.CASE1
    assert set(CATALOG_FAMILIES) == set(sign)


def test_coupling_g_examples():
    a2 = DEFAULT.alpha**2
    # hand evaluation: g = 0.5 / (1 + 2 mc^2 rho)
    assert coupling_g(1e-7) == pytest.approx(0.5 / (1 + 37538e-7), rel=1e-12)
    assert coupling_g(1e-8) == pytest.approx(0.5, abs=1e-3)
    assert coupling_g(1e-12) == pytest.approx(0.5, abs=1e-7)
    assert coupling_g(a2) == pytest.approx(1 / 6, rel=1e-12)
    assert coupling_g(1.0) == pytest.approx(a2 / 4, rel=1e-4)
    r = np.logspace(-8, 1, 50)
    assert np.all(np.diff(coupling_g(r)) < 0)
    with pytest.raises(ValueError):
        coupling_g(0.0)


def test_schrodinger_radial_normalized():
    for n in (1, 2, 3):
        v = mpmath.quad(lambda r: float(schrodinger_radial(n, float(r))) ** 2, [0, 10, 40, mpmath.inf])
        assert float(v) == pytest.approx(1.0, rel=1e-10)
    assert schrodinger_radial(1, 2.0) == pytest.approx(2 * np.exp(-1) / np.sqrt(2))


def test_coupled_components_identities():
    r = np.logspace(-9, 1, 40)
    for n in (1, 2):
        y11, y22 = coupled_components(n, r)
        np.testing.assert_allclose(y11 + y22, schrodinger_radial(n, r), rtol=1e-14, atol=1e-300)
    y11, y22 = coupled_components(1, 1e-9)
    assert y22 / y11 == pytest.approx(1.0, abs=1e-3)
