"""Coordinate-space finite-element solver for the coupled radial Dirac systems.

The radial functions carry the factor rho and vanish at both ends of the
grid.  Each case is a set of symmetrized channels linked by mass terms
(2mc^2) and first-order operators 2c*(d/drho + s/rho).  The Galerkin
matrix of such an operator in the Lagrange basis is c*(D + s*G) with

    D_ab = int phi_a phi_b',    G_ab = int phi_a phi_b / rho.

The adjoint row of every pair is filled with the transpose, so the pencil
is symmetric by construction.  Integrating D by parts shows this equals a
direct discretization of the adjoint operator -(d/drho) + s/rho.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .angular import CaseId, recoupling
from .constants import DEFAULT, PhysicalConstants
from .eigen import generalized_eig

__all__ = [
    "FemGrid",
    "FemPencil",
    "RadialSolution",
    "ProfileSeries",
    "build_grid",
    "assemble_fem",
    "solve_pencil",
    "component_profile",
    "channel_layout",
]

ORDER = 5
_REF = np.linspace(-1.0, 1.0, ORDER)
_BOOLE = np.array([7.0, 32.0, 12.0, 32.0, 7.0]) / 45.0
_GAUSS_POINTS = 10


def _lagrange(nodes: np.ndarray, x: np.ndarray):
    """Values and derivatives of the Lagrange polynomials on ``nodes`` at ``x``."""
    n = len(nodes)
    L = np.ones((n, len(x)))
    dL = np.zeros((n, len(x)))
    for a in range(n):
        others = [b for b in range(n) if b != a]
        for b in others:
            L[a] *= (x - nodes[b]) / (nodes[a] - nodes[b])
        for b in others:
            t = np.full(len(x), 1.0 / (nodes[a] - nodes[b]))
            for c in others:
                if c != b:
                    t *= (x - nodes[c]) / (nodes[a] - nodes[c])
            dL[a] += t
    return L, dL


@dataclass(frozen=True)
class FemGrid:
    """Element layout with 5-point Lagrange elements.

    The first and last nodes are constrained to zero; the rest are free.
    """

    regions: tuple[tuple[int, float], ...]
    element_boundaries: np.ndarray = field(repr=False)
    nodes: np.ndarray = field(repr=False)
    order: int = ORDER
    default_quadrature: str = "gauss"

    @property
    def n_elements(self) -> int:
        return len(self.element_boundaries) - 1

    @property
    def free_nodes(self) -> np.ndarray:
        return self.nodes[1:-1]

    @property
    def n_free(self) -> int:
        return len(self.nodes) - 2

    @property
    def outer(self) -> float:
        return float(self.element_boundaries[-1])


def _grid_from_regions(regions, quadrature) -> FemGrid:
    regions = tuple((int(c), float(w)) for c, w in regions)
    if not regions:
        raise ValueError("grid needs at least one region")
    for c, w in regions:
        if c < 1 or not w > 0:
            raise ValueError(f"region ({c}, {w}) must have >= 1 element of positive width")
    widths = np.concatenate([np.full(c, w) for c, w in regions])
    bounds = np.concatenate([[0.0], np.cumsum(widths)])
    nodes = [0.0]
    for a, b in zip(bounds[:-1], bounds[1:]):
        nodes.extend(a + (_REF[1:] + 1.0) * 0.5 * (b - a))
    return FemGrid(regions, bounds, np.array(nodes), ORDER, quadrature)


def build_grid(n: int = 1, profile: str = "paper_default", regions=None,
               quadrature: str | None = None) -> FemGrid:
    """Construct a finite-element grid.

    Parameters
    ----------
    n : int
        Principal quantum number; the outer region widths scale with it.
    profile : {'paper_default', 'anomalous_region1', 'custom'}
        'paper_default' is 10 x 1e-5, 9 x 0.002 and 79 x 0.5n Bohr.
        'anomalous_region1' keeps only the first region, giving 40 node
        intervals of 2.5e-6 Bohr.  'custom' uses ``regions``.
    regions : sequence of (count, width), optional
        Element counts and widths for the custom profile.
    quadrature : {'gauss', 'nodal'}, optional
        Overrides the profile's default rule for mass and potential.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if profile == "paper_default":
        regs, q = ((10, 1e-5), (9, 0.002), (79, 0.5 * n)), "gauss"
    elif profile == "anomalous_region1":
        regs, q = ((10, 1e-5),), "nodal"
    elif profile == "custom":
        if regions is None:
            raise ValueError("custom profile needs regions=[(count, width), ...]")
        regs, q = regions, "gauss"
    else:
        raise ValueError(f"unknown grid profile {profile!r}")
    q = quadrature or q
    if q not in ("gauss", "nodal"):
        raise ValueError(f"quadrature must be 'gauss' or 'nodal', got {q!r}")
    return _grid_from_regions(regs, q)


@dataclass(frozen=True)
class _Operators:
    B: np.ndarray
    V: np.ndarray
    D: np.ndarray
    G: np.ndarray


def _operators(grid: FemGrid, quadrature: str) -> _Operators:
    P = grid.order - 1
    ne = grid.n_elements
    nn = ne * P + 1
    xg, wg = np.polynomial.legendre.leggauss(_GAUSS_POINTS)
    Lg, dLg = _lagrange(_REF, xg)
    B, V, D, G = (np.zeros((nn, nn)) for _ in range(4))
    bd = grid.element_boundaries
    for e in range(ne):
        a, b = bd[e], bd[e + 1]
        jac = 0.5 * (b - a)
        rg = a + (xg + 1.0) * jac
        sl = slice(e * P, e * P + P + 1)
        Ge = (Lg * (wg * jac / rg)) @ Lg.T
        De = (Lg * wg) @ dLg.T
        if quadrature == "nodal":
            rn = a + (_REF + 1.0) * jac
            Be = np.diag(_BOOLE * jac)
            with np.errstate(divide="ignore"):
                Ve = -np.diag(np.where(rn > 0, _BOOLE * jac / np.where(rn > 0, rn, 1.0), 0.0))
        else:
            Be = (Lg * (wg * jac)) @ Lg.T
            Ve = -Ge
        B[sl, sl] += Be
        V[sl, sl] += Ve
        D[sl, sl] += De
        G[sl, sl] += Ge
    f = slice(1, nn - 1)
    return _Operators(B[f, f], V[f, f], D[f, f], G[f, f])


# (row, col, kind, coefficient name, 1/rho shift); kind 'm' = 2mc^2 B, 'd' = c(D + sG)
def channel_layout(case, J: int):
    """Channel labels and coupling list of a coordinate-space case."""
    case = CaseId.parse(case)
    if J < 0:
        raise ValueError(f"J must be >= 0, got {J}")
    if case is CaseId.CASE1:
        labels = ["y11_0+y22_0", "y11_0-y22_0", "y12p+y21p", "y12m+y21m"]
        links = [(0, 1, "m", 1.0, 0), (0, 2, "d", "-2a", J + 1), (0, 3, "d", "+2b", -J)]
        drop = [3] if J == 0 else []
    elif case is CaseId.CASE2:
        if J < 1:
            raise ValueError("Case 2 (S=1, L=J) requires J >= 1")
        labels = ["y11_1-y22_1", "y11_1+y22_1", "y12p-y21p", "y12m-y21m"]
        links = [(0, 1, "m", 1.0, 0), (0, 2, "d", "+2b", J + 1), (0, 3, "d", "+2a", -J)]
        drop = []
    else:
        labels = ["y12_0+y21_0", "y11p+y22p", "y11m+y22m", "y11p-y22p", "y11m-y22m",
                  "y12_1-y21_1"]
        links = [(0, 1, "d", "-2a", J + 1), (0, 2, "d", "+2b", -J),
                 (1, 3, "m", 1.0, 0), (2, 4, "m", 1.0, 0),
                 (5, 3, "d", "+2b", J + 1), (5, 4, "d", "+2a", -J)]
        drop = [2, 4, 5] if J == 0 else []
    keep = [i for i in range(len(labels)) if i not in drop]
    remap = {old: new for new, old in enumerate(keep)}
    links = [(remap[r], remap[c], k, co, s) for r, c, k, co, s in links
             if r in remap and c in remap]
    return case, [labels[i] for i in keep], links


@dataclass(frozen=True)
class FemPencil:
    """Symmetric pencil (H, B) over channel-major free nodal values."""

    case: CaseId
    J: int
    grid: FemGrid
    channels: tuple[str, ...]
    H: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    quadrature: str
    constants: PhysicalConstants = DEFAULT


def assemble_fem(case, J: int, grid: FemGrid, potential: str = "coulomb",
                 quadrature: str | None = None,
                 constants: PhysicalConstants = DEFAULT) -> FemPencil:
    """Galerkin pencil of one case on ``grid``.

    ``potential`` is 'coulomb' (-1/rho on every channel) or 'none'.
    """
    if potential not in ("coulomb", "none"):
        raise ValueError(f"potential must be 'coulomb' or 'none', got {potential!r}")
    case, labels, links = channel_layout(case, J)
    q = quadrature or grid.default_quadrature
    ops = _operators(grid, q)
    ab = recoupling(J)
    coef = {"-2a": -2 * ab.a, "+2a": 2 * ab.a, "+2b": 2 * ab.b}
    n = ops.B.shape[0]
    nch = len(labels)
    H = np.zeros((nch * n, nch * n))
    Bm = np.zeros_like(H)
    c = constants.c
    for i in range(nch):
        s = slice(i * n, (i + 1) * n)
        Bm[s, s] = ops.B
        if potential == "coulomb":
            H[s, s] = ops.V
    for r, col, kind, co, shift in links:
        if kind == "m":
            blk = 2 * constants.mc2 * ops.B
        else:
            blk = coef[co] * c * (ops.D + shift * ops.G)
        rs, cs = slice(r * n, (r + 1) * n), slice(col * n, (col + 1) * n)
        H[rs, cs] += blk
        H[cs, rs] += blk.T
    H = 0.5 * (H + H.T)
    return FemPencil(case, J, grid, tuple(labels), H, Bm, q, constants)


@dataclass(frozen=True)
class RadialSolution:
    """Multi-component radial wavefunction on the full node list.

    ``components`` holds the symmetrized channels plus the derived
    single-particle components (e.g. y11_0 = (U + W)/2).
    """

    grid: FemGrid
    energy: float
    channels: tuple[str, ...]
    components: dict = field(repr=False)
    suspect: bool = False
    alternation: float = 0.0

    def weight(self, label: str) -> float:
        """Quadrature-free nodal estimate int y^2 drho of one channel."""
        y = self.components[label]
        return float(np.trapezoid(y**2, self.grid.nodes))

    def peak(self, label: str) -> float:
        y = self.components[label]
        return float(self.grid.nodes[int(np.argmax(np.abs(y)))])


def _derived(channels, comp):
    out = {}
    pairs = {
        ("y11_0+y22_0", "y11_0-y22_0"): ("y11_0", "y22_0"),
        ("y11_1+y22_1", "y11_1-y22_1"): ("y11_1", "y22_1"),
        ("y11p+y22p", "y11p-y22p"): ("y11p", "y22p"),
        ("y11m+y22m", "y11m-y22m"): ("y11m", "y22m"),
    }
    for (s, d), (a, b) in pairs.items():
        if s in comp and d in comp:
            out[a] = 0.5 * (comp[s] + comp[d])
            out[b] = 0.5 * (comp[s] - comp[d])
    return out


def _alternation(y: np.ndarray) -> float:
    big = np.abs(y) > 1e-3 * np.max(np.abs(y))
    idx = np.flatnonzero(big)
    if idx.size < 3:
        return 0.0
    seg = y[idx[0]:idx[-1] + 1]
    return float(np.mean(np.sign(seg[1:]) * np.sign(seg[:-1]) < 0))


def solve_pencil(pencil: FemPencil, window, count: int | None = None,
                 alternation_limit: float = 0.5):
    """Eigenpairs of the pencil inside ``window`` = (lo, hi], ascending.

    Parameters
    ----------
    window : (float, float)
        Energy interval in Hartree.
    count : int, optional
        Keep at most this many of the lowest eigenpairs.
    alternation_limit : float
        Solutions whose dominant channel flips sign between more than this
        fraction of consecutive significant nodes are marked ``suspect``.

    Returns
    -------
    list of (float, RadialSolution)
    """
    w, v = generalized_eig(pencil.H, pencil.B, window=window)
    if count is not None:
        w, v = w[:count], v[:, :count]
    n = pencil.grid.n_free
    out = []
    for j in range(w.size):
        comp = {}
        for i, lab in enumerate(pencil.channels):
            y = np.zeros(n + 2)
            y[1:-1] = v[i * n:(i + 1) * n, j]
            comp[lab] = y
        dom = max(pencil.channels, key=lambda lab: np.sum(comp[lab] ** 2))
        alt = _alternation(comp[dom])
        comp.update(_derived(pencil.channels, comp))
        sol = RadialSolution(pencil.grid, float(w[j]), pencil.channels, comp,
                             alt > alternation_limit, alt)
        out.append((float(w[j]), sol))
    return out


@dataclass(frozen=True)
class ProfileSeries:
    rho_nodes: np.ndarray
    y2_nodes: np.ndarray
    rho: np.ndarray
    y2: np.ndarray


def component_profile(sol: RadialSolution, component: str, rho=None) -> ProfileSeries:
    """Squared component at the nodes and, optionally, interpolated at ``rho``."""
    if component not in sol.components:
        raise KeyError(f"component {component!r} not in solution; have {sorted(sol.components)}")
    y = sol.components[component]
    grid = sol.grid
    if rho is None:
        rq = np.empty(0)
        yq = np.empty(0)
    else:
        rq = np.atleast_1d(np.asarray(rho, dtype=float))
        if np.any(rq < 0) or np.any(rq > grid.outer):
            raise ValueError("requested rho outside the grid")
        bd = grid.element_boundaries
        e = np.clip(np.searchsorted(bd, rq, side="right") - 1, 0, grid.n_elements - 1)
        P = grid.order - 1
        xi = 2.0 * (rq - bd[e]) / (bd[e + 1] - bd[e]) - 1.0
        yq = np.empty_like(rq)
        for j in range(rq.size):
            L, _ = _lagrange(_REF, xi[j:j + 1])
            yq[j] = L[:, 0] @ y[e[j] * P:e[j] * P + P + 1]
    return ProfileSeries(grid.nodes.copy(), y**2, rq, yq**2)
