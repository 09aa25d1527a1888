"""Momentum-representation two-body Dirac systems in a spherical-Bessel basis.

Each partial-wave case couples a few symmetrized channels of Bessel
coefficients.  Within one *branch* of three channels the free Hamiltonian
per wavenumber k is

    [[0,      2mc^2,  -2ck],
     [2mc^2,  0,       0  ],
     [-2ck,   0,       0  ]]

with eigenvalues +2e_k, -2e_k and 0, e_k = sqrt((ck)^2 + (mc^2)^2).  The
Coulomb potential adds a block on every channel, chosen by the orbital
content of that channel: V0 on orbital-J channels, V^alpha or V^beta on
the recoupled J+-1 channels.  Case 3 has two branches coupled only through
the Coulomb cross block V^{alpha beta}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .angular import CaseId, recoupling
from .constants import DEFAULT, PhysicalConstants
from .eigen import symmetric_eig
from .special import BesselBasis, build_basis, panel_rule

__all__ = [
    "ChannelSystem",
    "Spectrum",
    "FamilyColumns",
    "PRESETS",
    "coulomb_matrix",
    "assemble",
    "solve",
    "free_particle_columns",
    "branch_columns",
    "preset_basis",
]

POTENTIAL_KINDS = ("V0", "V1", "Vplus", "Vminus", "Valpha", "Vbeta", "Valphabeta")

# label, potential kind; three channels per branch in kinetic order
_BRANCHES = {
    CaseId.CASE1: [
        (("c11_0+c22_0", "V0"), ("c11_0-c22_0", "V0"), ("c12a+c21a", "Valpha")),
    ],
    CaseId.CASE2: [
        (("c11_1-c22_1", "V1"), ("c11_1+c22_1", "V1"), ("c12b-c21b", "Vbeta")),
    ],
    CaseId.CASE3: [
        (("c11a+c22a", "Valpha"), ("c11a-c22a", "Valpha"), ("c12_0+c21_0", "V0")),
        (("c11b-c22b", "Vbeta"), ("c11b+c22b", "Vbeta"), ("c12_1-c21_1", "V1")),
    ],
}

# free-particle family labels per branch: (++, --, zero mode)
_BRANCH_FAMILIES = {
    CaseId.CASE1: [("++0", "--0", "S0")],
    CaseId.CASE2: [("++1", "--1", "S1")],
    CaseId.CASE3: [("++alpha", "--alpha", "Salpha"), ("++beta", "--beta", "A'beta")],
}

# channels that decouple from the system, with the zero-energy family living on them
_UNCOUPLED = {
    CaseId.CASE1: [("c12a-c21a", "Aalpha")],
    CaseId.CASE2: [("c12b+c21b", "Abeta")],
    CaseId.CASE3: [("c12_0-c21_0", "A0"), ("c12_1+c21_1", "S'1")],
}

# atomic grids need rho0 >> Bohr radius; the anomalous grid resolves 2.5e-6 Bohr
PRESETS = {
    "atomic": dict(rho0=60.0, M=400, quadrature="exact"),
    "anomalous": dict(rho0=1e-4, M=39, quadrature="dvr"),
}


def preset_basis(name: str, J: int = 0) -> tuple[BesselBasis, str]:
    """Basis and quadrature mode for a named preset."""
    try:
        p = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return build_basis(J, p["rho0"], p["M"]), p["quadrature"]


def _quadrature_nodes(basis: BesselBasis, quadrature: str):
    if quadrature == "exact":
        panels = int(np.ceil(basis.roots[-1] * basis.rho0 / (2 * np.pi) * 8)) + 4
        return panel_rule(0.0, basis.rho0, panels, order=12)
    if quadrature == "dvr":
        # trapezoid on the M interior points of an (M+1)-interval grid
        h = basis.rho0 / (basis.M + 1)
        nodes = h * np.arange(1, basis.M + 1)
        return nodes, np.full(basis.M, h)
    raise ValueError(f"quadrature must be 'exact' or 'dvr', got {quadrature!r}")


def _radial_coulomb(basis: BesselBasis, order: int, nodes, weights) -> np.ndarray:
    f = basis.radial(nodes, order=order)
    V = -(f * (weights / nodes)) @ f.T
    return 0.5 * (V + V.T)


def coulomb_matrix(basis: BesselBasis, kind: str, quadrature: str = "exact",
                   _cache: dict | None = None) -> np.ndarray:
    """Coulomb matrix -<k| 1/rho |k'> of the requested orbital kind.

    Parameters
    ----------
    basis : BesselBasis
        Order-J basis; the J+-1 kinds reuse its roots and norms.
    kind : str
        One of V0, V1, Vplus, Vminus, Valpha, Vbeta, Valphabeta.
    quadrature : {'exact', 'dvr'}
        'exact' integrates with composite Gauss-Legendre panels.  'dvr'
        samples the integrand on the equispaced grid rho_i = i*rho0/(M+1),
        which makes -1/rho diagonal in the transformed DVR basis.

    Returns
    -------
    ndarray
        Symmetric (M, M) matrix in Hartree.
    """
    if kind not in POTENTIAL_KINDS:
        raise ValueError(f"unknown potential kind {kind!r}; expected one of {POTENTIAL_KINDS}")
    J = basis.J
    if kind in ("Vminus", "Vbeta", "Valphabeta") and J < 1:
        raise ValueError(f"{kind} needs J >= 1 (j_(J-1) undefined at J=0)")
    cache = {} if _cache is None else _cache
    key_nodes = ("nodes", quadrature)
    if key_nodes not in cache:
        cache[key_nodes] = _quadrature_nodes(basis, quadrature)
    nodes, weights = cache[key_nodes]

    def radial(order):
        key = ("order", order, quadrature)
        if key not in cache:
            cache[key] = _radial_coulomb(basis, order, nodes, weights)
        return cache[key]

    if kind in ("V0", "V1"):
        return radial(J)
    if kind == "Vplus":
        return radial(J + 1)
    if kind == "Vminus":
        return radial(J - 1)
    ab = recoupling(J)
    if kind == "Valpha":
        Vp = radial(J + 1)
        return Vp if J == 0 else ab.a**2 * Vp + ab.b**2 * radial(J - 1)
    if kind == "Vbeta":
        return ab.b**2 * radial(J + 1) + ab.a**2 * radial(J - 1)
    return ab.a * ab.b * (radial(J - 1) - radial(J + 1))


@dataclass(frozen=True)
class ChannelSystem:
    """Discretized Hamiltonian over labelled channels.

    ``matrix`` is ordered channel-major: index ``ch*M + m``.
    """

    case: CaseId
    J: int
    basis: BesselBasis
    channels: tuple[str, ...]
    potential_blocks: dict
    matrix: np.ndarray = field(repr=False)
    free_matrix: np.ndarray = field(repr=False)
    constants: PhysicalConstants = DEFAULT
    quadrature: str = "exact"
    potentials: dict = field(default_factory=dict, repr=False)

    @property
    def n_branches(self) -> int:
        return len(self.channels) // 3

    def block(self, a: int, b: int) -> np.ndarray:
        M = self.basis.M
        return self.matrix[a * M:(a + 1) * M, b * M:(b + 1) * M]


def _check_case(case: CaseId, J: int):
    if J < 0:
        raise ValueError(f"J must be >= 0, got {J}")
    if case is CaseId.CASE2 and J < 1:
        raise ValueError("Case 2 (S=1, L=J) requires J >= 1")


def _branches(case: CaseId, J: int):
    br = _BRANCHES[case]
    return br[:1] if (case is CaseId.CASE3 and J == 0) else br


def branch_columns(k, constants: PhysicalConstants = DEFAULT) -> np.ndarray:
    """Free-particle columns of one branch, shape (3 families, 3 channels, len(k)).

    Family order is (++, --, zero mode).
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    m, ck = constants.mc2, constants.c * k
    e = np.hypot(ck, m)
    one, zero = np.ones_like(k), np.zeros_like(k)
    s = 1.0 / np.sqrt(2.0)
    return np.array([
        [s * one, s * m / e, -s * ck / e],
        [s * one, -s * m / e, s * ck / e],
        [zero, ck / e, m / e],
    ])


def assemble(case, J: int, basis: BesselBasis, potential: bool = True,
             quadrature: str = "exact",
             constants: PhysicalConstants = DEFAULT) -> ChannelSystem:
    """Build the symmetric channel Hamiltonian of one partial-wave case.

    Uncoupled channels, whose equations reduce to E c = V c, are left out.
    At J = 0 Case 3 keeps only its alpha branch.
    """
    case = CaseId.parse(case)
    _check_case(case, J)
    if basis.J != J:
        raise ValueError(f"basis has J={basis.J} but system requested J={J}")
    M = basis.M
    branches = _branches(case, J)
    labels = [lab for br in branches for lab, _ in br]
    kinds = {lab: kd for br in branches for lab, kd in br}
    nch = len(labels)
    m2, c2 = 2 * constants.mc2, 2 * constants.c
    I, K = np.eye(M), np.diag(basis.roots)
    free = np.zeros((nch * M, nch * M))
    for b in range(len(branches)):
        u, v, w = (3 * b + i for i in range(3))
        for p, q, blk in ((u, v, m2 * I), (u, w, -c2 * K)):
            free[p * M:(p + 1) * M, q * M:(q + 1) * M] = blk
            free[q * M:(q + 1) * M, p * M:(p + 1) * M] = blk.T
    H = free.copy()
    pots = {}
    if potential:
        cache = {}
        for i, lab in enumerate(labels):
            kd = kinds[lab]
            if kd not in pots:
                pots[kd] = coulomb_matrix(basis, kd, quadrature, cache)
            H[i * M:(i + 1) * M, i * M:(i + 1) * M] += pots[kd]
        if len(branches) == 2:
            Vab = coulomb_matrix(basis, "Valphabeta", quadrature, cache)
            pots["Valphabeta"] = Vab
            # (c11a+c22a) couples to (c11b+c22b), (c11a-c22a) to (c11b-c22b)
            for p, q in ((0, 4), (1, 3)):
                H[p * M:(p + 1) * M, q * M:(q + 1) * M] += Vab
                H[q * M:(q + 1) * M, p * M:(p + 1) * M] += Vab.T
    return ChannelSystem(case, J, basis, tuple(labels), kinds, H, free,
                         constants, quadrature, pots)


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of a channel system.

    ``weights`` maps 'atomic++', 'atomic--' and 'anomalous' to the
    per-eigenvector squared projection onto the corresponding
    free-particle families.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    classification: tuple[str, ...] = field(repr=False)
    weights: dict = field(repr=False)
    dominant_channel: tuple[str, ...] = field(repr=False)
    channel_weights: np.ndarray = field(repr=False)

    def select(self, tag: str) -> np.ndarray:
        return np.flatnonzero(np.array(self.classification) == tag)


def family_weights(system: ChannelSystem, vectors: np.ndarray) -> dict:
    """Squared projections of ``vectors`` onto the free-particle families."""
    M = system.basis.M
    cols = branch_columns(system.basis.roots, system.constants)
    out = {"atomic++": 0.0, "atomic--": 0.0, "anomalous": 0.0}
    vec = vectors.reshape(len(system.channels), M, -1)
    for b in range(system.n_branches):
        seg = vec[3 * b:3 * b + 3]
        amp = np.einsum("fck,ckn->fkn", cols, seg)
        w = np.sum(amp**2, axis=1)
        for f, tag in enumerate(("atomic++", "atomic--", "anomalous")):
            out[tag] = out[tag] + w[f]
    return out


def solve(system: ChannelSystem, window=None, threshold: float = 0.5) -> Spectrum:
    """Diagonalize and classify each eigenpair by its dominant family."""
    w, v = symmetric_eig(system.matrix, window=window)
    weights = family_weights(system, v)
    tags = []
    for n in range(w.size):
        tag = "unresolved"
        for t in ("atomic++", "atomic--", "anomalous"):
            if weights[t][n] > threshold:
                tag = t
        tags.append(tag)
    M = system.basis.M
    chw = np.sum(v.reshape(len(system.channels), M, -1) ** 2, axis=1)
    dom = tuple(system.channels[i] for i in np.argmax(chw, axis=0))
    return Spectrum(w, v, tuple(tags), weights, dom, chw)


@dataclass(frozen=True)
class FamilyColumns:
    """Free-particle columns over the extended channel list (coupled then uncoupled)."""

    case: CaseId
    k: float
    channels: tuple[str, ...]
    columns: dict

    def matrix(self) -> np.ndarray:
        return np.array([self.columns[f] for f in self.columns])


def free_particle_columns(case, k: float, J: int = 1,
                          constants: PhysicalConstants = DEFAULT) -> FamilyColumns:
    """Orthonormal free-particle solutions of a case at wavenumber ``k``.

    Coupled families come from the three-channel branch eigenvectors; each
    uncoupled channel carries one zero-energy family as a unit vector.
    """
    case = CaseId.parse(case)
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    _check_case(case, J)
    branches = _branches(case, J)
    fams = _BRANCH_FAMILIES[case][:len(branches)]
    unc = _UNCOUPLED[case]
    if case is CaseId.CASE3 and J == 0:
        unc = unc[:1]
    labels = [lab for br in branches for lab, _ in br] + [lab for lab, _ in unc]
    n = len(labels)
    cols = branch_columns([k], constants)[:, :, 0]
    out = {}
    for b, names in enumerate(fams):
        for f, name in enumerate(names):
            vec = np.zeros(n)
            vec[3 * b:3 * b + 3] = cols[f]
            out[name] = vec
    for j, (_, name) in enumerate(unc):
        vec = np.zeros(n)
        vec[3 * len(branches) + j] = 1.0
        out[name] = vec
    return FamilyColumns(case, float(k), tuple(labels), out)
