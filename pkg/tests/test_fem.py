import numpy as np
import pytest

from posdirac.constants import DEFAULT
from posdirac.fem import (_operators, assemble_fem, build_grid, channel_layout, component_profile,
                          solve_pencil)

from conftest import atomic_window

REST = DEFAULT.rest_energy


def test_paper_default_grid_layout():
    g = build_grid(1, "paper_default")
    assert g.n_elements == 98
    assert g.n_free == 391
    bd = g.element_boundaries
    assert bd[10] == pytest.approx(1e-4, rel=1e-12)
    assert bd[19] == pytest.approx(0.0181, rel=1e-12)
    assert g.outer == pytest.approx(39.5181, rel=1e-12)
    assert build_grid(2).outer == pytest.approx(79.0181, rel=1e-12)


def test_anomalous_grid_layout():
    g = build_grid(1, "anomalous_region1")
    assert g.n_free == 39
    np.testing.assert_allclose(np.diff(g.nodes), 2.5e-6, rtol=1e-9)
    assert g.default_quadrature == "nodal"


@pytest.mark.parametrize("kw", [dict(n=0), dict(profile="weird"), dict(profile="custom"),
                                dict(quadrature="simpson"),
                                dict(profile="custom", regions=[(0, 1.0)])])
def test_grid_errors(kw):
    with pytest.raises(ValueError):
        build_grid(**kw)


def test_custom_grid():
    g = build_grid(profile="custom", regions=[(2, 0.5), (1, 1.0)])
    assert g.n_elements == 3 and g.outer == pytest.approx(2.0)


@pytest.mark.parametrize("quad", ["gauss", "nodal"])
def test_first_derivative_operator_is_antisymmetric(quad):
    # integration by parts with both ends clamped: int (phi_i phi_j' + phi_i' phi_j) = 0
    ops = _operators(build_grid(1), quad)
    np.testing.assert_allclose(ops.D + ops.D.T, 0.0, atol=1e-12)
    np.testing.assert_allclose(ops.G, ops.G.T, atol=1e-9 * np.abs(ops.G).max())


def test_mass_matrix_positive_definite():
    ops = _operators(build_grid(1), "gauss")
    assert np.all(np.linalg.eigvalsh(ops.B) > 0)


@pytest.mark.parametrize("case,J", [(1, 0), (1, 1), (2, 1), (3, 0), (3, 1)])
def test_pencil_symmetric(case, J):
    p = assemble_fem(case, J, build_grid(1))
    np.testing.assert_allclose(p.H, p.H.T, atol=0)
    assert p.H.shape == (len(p.channels) * 391,) * 2


def test_channel_layout_drops_at_j0():
    _, labels, _ = channel_layout(3, 0)
    assert labels == ["y12_0+y21_0", "y11p+y22p", "y11p-y22p"]
    _, labels, _ = channel_layout(1, 0)
    assert len(labels) == 3
    with pytest.raises(ValueError):
        channel_layout(2, 0)


def test_ground_state(fem_ground):
    _, sols = fem_ground
    good = [s for _, s in sols if not s.suspect]
    assert good[0].energy - REST == pytest.approx(-0.2499975, abs=1e-6)
    # frozen regression of this discretization
    assert good[0].energy - REST == pytest.approx(-0.24999750853749, abs=1e-10)


def test_ground_state_small_components(fem_ground):
    _, sols = fem_ground
    s = sols[0][1]
    # channel-major B-normalization splits the large component over both sums
    assert s.weight("y11_0+y22_0") == pytest.approx(0.5, abs=1e-4)
    assert s.weight("y22_0") / s.weight("y11_0") < 1e-4
    comp = s.components
    np.testing.assert_allclose(comp["y11_0"] + comp["y22_0"], comp["y11_0+y22_0"], atol=1e-15)


@pytest.mark.parametrize("case,J,expected", [(1, 1, -0.0625), (2, 1, -0.0625), (3, 1, -0.25)])
def test_excited_and_triplet_levels(case, J, expected):
    p = assemble_fem(case, J, build_grid(1))
    sols = [s for _, s in solve_pencil(p, atomic_window()) if not s.suspect]
    assert sols[0].energy - REST == pytest.approx(expected, abs=1e-5)


def test_spurious_modes_are_flagged():
    p = assemble_fem(3, 0, build_grid(1))
    sols = solve_pencil(p, atomic_window())
    flagged = [s for _, s in sols if s.suspect]
    assert flagged, "Case 3 J=0 on this grid carries spurious alternating modes"
    assert all(s.alternation > 0.5 for s in flagged)


def test_component_profile_interpolates_nodes(fem_ground):
    _, sols = fem_ground
    s = sols[0][1]
    g = s.grid
    pts = g.nodes[[3, 40, 200]]
    prof = component_profile(s, "y11_0", pts)
    np.testing.assert_allclose(prof.y2, s.components["y11_0"][[3, 40, 200]] ** 2, rtol=1e-10)
    with pytest.raises(KeyError):
        component_profile(s, "nope")
    with pytest.raises(ValueError):
        component_profile(s, "y11_0", [1e3])


def test_free_pencil_has_no_bound_states():
    p = assemble_fem(1, 0, build_grid(1), potential="none")
    assert solve_pencil(p, atomic_window()) == []


def test_anomalous_constraint_and_law(fem_anomalous):
    pencil, sols = fem_anomalous
    nodes = pencil.grid.free_nodes
    assert len(sols) == 39
    for i, (_, s) in enumerate(sols):
        assert abs(s.energy * nodes[i] + 1) < 1e-5
        assert s.weight("y11_0+y22_0") < 1e-9
