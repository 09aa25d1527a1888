"""Anomalous bound states in the discrete variable representation.

In a truncated sine basis the Coulomb potential sampled on the equispaced
points rho_i = i * rho0 / M is diagonalized by the discrete sine
transform.  Its eigenvectors are the delta-like functions

    psi_i(rho) = sqrt(rho0/M) (2/rho0) sum_{m=1}^{M-1} sin(k_m rho) sin(k_m rho_i)

with energies -1/rho_i.  This module builds those functions, the J = 0
catalog of anomalous families with their Gaunt shifts, and the first-order
admixture of the atomic ground state into the small-distance region.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import eval_genlaguerre

from .angular import CaseId, ParityLabel, parity_of
from .constants import DEFAULT, PhysicalConstants
from .eigen import symmetric_eig
from .special import BesselBasis, build_basis, panel_rule

__all__ = [
    "DvrGrid",
    "DvrState",
    "AnomalousState",
    "dvr_diagonalize",
    "analytic_dvr_wavefunction",
    "analytic_coefficients",
    "gram_matrix",
    "anomalous_catalog",
    "CATALOG_FAMILIES",
    "sigma_dot_sigma",
    "gaunt_eigenvalue",
    "coupling_g",
    "schrodinger_radial",
    "coupled_components",
    "radiative_moment",
]


@dataclass(frozen=True)
class DvrGrid:
    """Equispaced DVR points rho_i = i * rho0 / M, i = 1..M-1."""

    rho0: float = 1e-4
    M: int = 40

    def __post_init__(self):
        if self.M < 2 or not self.rho0 > 0:
            raise ValueError(f"need M >= 2 and rho0 > 0, got M={self.M}, rho0={self.rho0}")

    @property
    def delta_rho(self) -> float:
        return self.rho0 / self.M

    @property
    def points(self) -> np.ndarray:
        return self.delta_rho * np.arange(1, self.M)

    @property
    def norm_C(self) -> float:
        return float(np.sqrt(self.delta_rho))

    def basis(self) -> BesselBasis:
        """J = 0 sine basis with M-1 functions, matching the grid."""
        return build_basis(0, self.rho0, self.M - 1)


@dataclass(frozen=True)
class DvrState:
    rho_hat: float
    energy: float
    vector: np.ndarray = field(repr=False)


def dvr_diagonalize(basis: BesselBasis, potential_matrix) -> list[DvrState]:
    """Eigenstates of a Coulomb matrix, ascending in energy.

    The DVR point of each state is inferred from its energy as -1/E.
    """
    V = np.asarray(potential_matrix, dtype=float)
    if V.shape != (basis.M, basis.M):
        raise ValueError(f"potential matrix shape {V.shape} does not match basis size {basis.M}")
    w, v = symmetric_eig(V)
    out = []
    for j in range(w.size):
        vec = v[:, j]
        # fix sign so the largest coefficient of the analytic form is positive
        if vec[np.argmax(np.abs(vec))] < 0:
            vec = -vec
        out.append(DvrState(-1.0 / w[j] if w[j] < 0 else np.inf, float(w[j]), vec))
    return out


def analytic_coefficients(grid: DvrGrid) -> np.ndarray:
    """Sine-basis coefficients of the analytic DVR functions, column i per point."""
    m = np.arange(1, grid.M)
    return np.sqrt(2.0 / grid.M) * np.sin(np.outer(m, m) * np.pi / grid.M)


def analytic_dvr_wavefunction(grid: DvrGrid, i: int, rho) -> np.ndarray:
    """Delta-like DVR function centred on rho_i, evaluated at ``rho``."""
    if not 1 <= i <= grid.M - 1:
        raise ValueError(f"index i={i} outside 1..{grid.M - 1}")
    rho = np.asarray(rho, dtype=float)
    k = np.arange(1, grid.M) * np.pi / grid.rho0
    s = np.sin(np.multiply.outer(rho, k)) @ np.sin(k * grid.points[i - 1])
    return np.sqrt(grid.rho0 / grid.M) * (2.0 / grid.rho0) * s


def _quad(grid: DvrGrid, panels_per_point: int = 4):
    return panel_rule(0.0, grid.rho0, panels_per_point * grid.M, order=16)


def gram_matrix(grid: DvrGrid) -> np.ndarray:
    """Overlap integrals of the analytic DVR functions by direct quadrature."""
    r, w = _quad(grid)
    F = np.array([analytic_dvr_wavefunction(grid, i, r) for i in range(1, grid.M)])
    return (F * w) @ F.T


def radiative_moment(grid: DvrGrid, i: int, j: int, power: int) -> float:
    """<psi_i | rho^power | psi_j> of the analytic DVR functions."""
    r, w = _quad(grid)
    fi = analytic_dvr_wavefunction(grid, i, r)
    fj = fi if i == j else analytic_dvr_wavefunction(grid, j, r)
    return float(np.sum(w * fi * fj * r**power))


def sigma_dot_sigma(S: int) -> float:
    """Eigenvalue of sigma_e . sigma_p on the two-spin state of total spin S."""
    if S not in (0, 1):
        raise ValueError(f"S must be 0 or 1, got {S}")
    chi = _spin_state(S)
    return float(chi @ _sigma_sigma() @ chi) / float(chi @ chi)


_PAULI = (np.array([[0, 1], [1, 0]], complex),
          np.array([[0, -1j], [1j, 0]]),
          np.diag([1.0, -1.0]).astype(complex))


def _spin_state(S: int) -> np.ndarray:
    # unnormalized integer vectors keep the expectation values exact
    up, dn = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    return np.kron(up, dn) - np.kron(dn, up) if S == 0 else np.kron(up, up)


def _sigma_sigma() -> np.ndarray:
    return sum(np.kron(s, s) for s in _PAULI).real


def gaunt_eigenvalue(dirac_vector: str, S: int) -> float:
    """Eigenvalue of alpha_e . alpha_p on a Dirac-vector times spin state.

    The two-body space is (electron large/small) x (positron large/small)
    x (electron spin) x (positron spin), and alpha = [[0, sigma], [sigma, 0]]
    for each particle, so the operator is built explicitly in 16 dimensions.
    """
    vec = {"e11-e22": (1, 0, 0, -1), "e12-e21": (0, 1, -1, 0)}
    if dirac_vector not in vec:
        raise ValueError(f"unknown Dirac vector {dirac_vector!r}; known: {sorted(vec)}")
    X = np.array([[0.0, 1.0], [1.0, 0.0]])
    # index order: (dirac_e, dirac_p, spin_e, spin_p)
    op = sum(np.kron(np.kron(X, X), np.kron(s, s)) for s in _PAULI)
    psi = np.kron(np.array(vec[dirac_vector], float), _spin_state(S))
    return float(np.real(psi @ op @ psi)) / float(psi @ psi)


@dataclass(frozen=True)
class AnomalousState:
    """One member of a J = 0 anomalous family at a DVR point."""

    family: str
    index: int
    rho_i: float
    energy_coulomb: float
    energy_gaunt: float
    energy_total: float
    parity: ParityLabel
    spin: int
    dirac_vector: str
    case: CaseId


# family -> (case, momentum-solver family label, spin, Dirac vector)
CATALOG_FAMILIES = {
    "PsiS0": (CaseId.CASE1, "S0", 0, "e11-e22"),
    "PsiA0": (CaseId.CASE3, "A0", 0, "e12-e21"),
    "PsiAalpha": (CaseId.CASE1, "Aalpha", 1, "e12-e21"),
    "PsiSalpha": (CaseId.CASE3, "Salpha", 1, "e11-e22"),
}


def anomalous_catalog(grid: DvrGrid) -> list[AnomalousState]:
    """All four J = 0 anomalous families at every DVR point."""
    out = []
    for fam, (case, label, S, dv) in CATALOG_FAMILIES.items():
        par = parity_of(case, label, 0)
        g = gaunt_eigenvalue(dv, S)
        for i, r in enumerate(grid.points, start=1):
            out.append(AnomalousState(fam, i, float(r), -1.0 / r, g / r, (g - 1.0) / r,
                                      par, S, dv, case))
    return out


def coupling_g(rho, constants: PhysicalConstants = DEFAULT):
    """First-order small-component admixture (1/(2 rho)) / (2mc^2 + 1/rho)."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("rho must be positive")
    g = (0.5 / rho) / (constants.rest_energy + 1.0 / rho)
    return float(g) if g.ndim == 0 else g


def schrodinger_radial(n: int, rho):
    """Normalized positronium (n, L=0) radial function times rho (Bohr radius 2)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rho = np.asarray(rho, dtype=float)
    return rho * np.exp(-rho / (2 * n)) * eval_genlaguerre(n - 1, 1, rho / n) / np.sqrt(2.0 * n**5)


def coupled_components(n: int, rho, constants: PhysicalConstants = DEFAULT):
    """Large and small Dirac components y11 = y_n (1-g), y22 = y_n g."""
    y = schrodinger_radial(n, rho)
    g = coupling_g(rho, constants)
    return y * (1.0 - g), y * g
