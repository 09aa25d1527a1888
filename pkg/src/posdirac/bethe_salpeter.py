"""Projected Bethe-Salpeter eigenproblems in the momentum channel basis.

After the relative-energy integral is done by residues, the equation for
a Coulomb ladder splits by free-particle energy signs.  With the Feynman
propagator only the (+,+) and (-,-) families survive and

    (2e_k) a + <++|V|psi> = E a,     (-2e_k) b - <--|V|psi> = E b,

the potential being attractive on the positive branch and repulsive on
the negative one.  With the retarded propagator only the mixed-sign
families survive, the kinetic term drops out, and E psi = P V P psi on the
zero-energy free-particle subspace.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .angular import CaseId
from .constants import DEFAULT, PhysicalConstants
from .eigen import EigenSolverError, symmetric_eig
from .momentum import (ChannelSystem, _UNCOUPLED, assemble, branch_columns,
                       coulomb_matrix)
from .special import BesselBasis

__all__ = [
    "PropagatorKind",
    "PoleRule",
    "ProjectedSystem",
    "ProjectedSpectrum",
    "pole_rule_table",
    "build_projector",
    "project",
    "solve_projected",
]


class PropagatorKind(enum.Enum):
    FEYNMAN = "feynman"
    RETARDED = "retarded"

    @classmethod
    def parse(cls, value) -> "PropagatorKind":
        if isinstance(value, PropagatorKind):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown propagator {value!r}; expected feynman or retarded") from None

    @property
    def kept_pairs(self) -> tuple[str, ...]:
        return ("++", "--") if self is PropagatorKind.FEYNMAN else ("+-", "-+")

    @property
    def pole_rule(self) -> dict:
        return {pair: ("kept" if pair in self.kept_pairs else "removed")
                for pair in ("++", "--", "+-", "-+")}


@dataclass(frozen=True)
class PoleRule:
    """Residue outcome of the relative-energy integral for one sign pair.

    ``electron_pole`` and ``positron_pole`` give the pole positions in the
    relative energy, ``opposite_planes`` whether they straddle the real
    axis (a non-zero residue), and ``weight`` the resulting factor.
    """

    pair: str
    status: str
    electron_pole: str
    positron_pole: str
    electron_half_plane: int
    positron_half_plane: int
    weight: str

    @property
    def opposite_planes(self) -> bool:
        return self.electron_half_plane != self.positron_half_plane


def _eps(sign: int) -> str:
    return "+i eps" if sign > 0 else "-i eps"


def pole_rule_table(kind) -> list[PoleRule]:
    """Pole positions and kept/removed status for every energy-sign pair.

    A state of sign s for one particle carries e = s*e0 - i*eps when it
    propagates forward.  Feynman negative-energy states carry +i*eps
    instead.  The electron pole sits at -E/2 + e_e, the positron pole at
    E/2 - e_p.
    """
    kind = PropagatorKind.parse(kind)
    neg_eps = +1 if kind is PropagatorKind.FEYNMAN else -1
    weights = {"++": "1/(E-2e0)", "--": "-1/(E+2e0)", "+-": "1/E", "-+": "1/E"}
    rows = []
    for pair in ("++", "--", "+-", "-+"):
        se = +1 if pair[0] == "+" else -1
        sp = +1 if pair[1] == "+" else -1
        eps_e = -1 if se > 0 else neg_eps
        eps_p = -(-1 if sp > 0 else neg_eps)
        e_txt = f"-E/2 {'+' if se > 0 else '-'} e0 {_eps(eps_e)}"
        p_txt = f"E/2 {'-' if sp > 0 else '+'} e0 {_eps(eps_p)}"
        status = kind.pole_rule[pair]
        rows.append(PoleRule(pair, status, e_txt, p_txt, eps_e, eps_p,
                             weights[pair] if status == "kept" else "0"))
    return rows


@dataclass(frozen=True)
class ProjectedSystem:
    """Channel system restricted to the kept free-particle families.

    ``columns`` holds orthonormal kept columns in the full channel-major
    space, ``projector`` = columns @ columns.T.
    """

    base: ChannelSystem
    kind: PropagatorKind
    columns: np.ndarray = field(repr=False)
    projector: np.ndarray = field(repr=False)
    effective_matrix: np.ndarray = field(repr=False)
    atomic_columns: np.ndarray = field(repr=False)
    anomalous_columns: np.ndarray = field(repr=False)


def _family_columns(system: ChannelSystem):
    """Embedded (++, --, zero-mode) columns, each of shape (N, n_branches*M)."""
    M = system.basis.M
    N = system.matrix.shape[0]
    cols = branch_columns(system.basis.roots, system.constants)
    out = [np.zeros((N, system.n_branches * M)) for _ in range(3)]
    for b in range(system.n_branches):
        for f in range(3):
            for ch in range(3):
                row = (3 * b + ch) * M
                out[f][row:row + M, b * M:(b + 1) * M] = np.diag(cols[f, ch])
    return out


def build_projector(case, basis: BesselBasis, kind, J: int | None = None,
                    constants: PhysicalConstants = DEFAULT) -> np.ndarray:
    """Orthogonal projector onto the kept families of ``kind``."""
    system = assemble(case, basis.J if J is None else J, basis, potential=False,
                      constants=constants)
    return project(system, kind).projector


def project(system: ChannelSystem, kind) -> ProjectedSystem:
    """Restrict ``system`` to the families kept by the propagator ``kind``."""
    kind = PropagatorKind.parse(kind)
    pp, mm, zero = _family_columns(system)
    atomic = np.hstack([pp, mm])
    if kind is PropagatorKind.FEYNMAN:
        Q = atomic
    else:
        Q = zero
    V = system.matrix - system.free_matrix
    if kind is PropagatorKind.FEYNMAN:
        n = pp.shape[1]
        e2 = 2.0 * np.hypot(system.constants.c * system.basis.roots, system.constants.mc2)
        e2 = np.tile(e2, system.n_branches)
        W = Q.T @ V @ Q
        Heff = np.empty_like(W)
        Heff[:n, :n] = np.diag(e2) + W[:n, :n]
        Heff[:n, n:] = W[:n, n:]
        Heff[n:, :n] = -W[n:, :n]
        Heff[n:, n:] = -np.diag(e2) - W[n:, n:]
    else:
        Heff = Q.T @ V @ Q
        Heff = 0.5 * (Heff + Heff.T)
    return ProjectedSystem(system, kind, Q, Q @ Q.T, Heff, atomic, zero)


@dataclass(frozen=True)
class ProjectedSpectrum:
    """Eigenpairs of a projected equation with family overlaps.

    ``eigenvectors`` are unit vectors in the full channel space.
    ``uncoupled`` maps each decoupled channel of the case to the
    eigenvalues of its own potential block, which belong to the same
    mixed-sign sector in the retarded equation.
    """

    kind: PropagatorKind
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    atomic_weight: np.ndarray = field(repr=False)
    anomalous_weight: np.ndarray = field(repr=False)
    max_imag: float = 0.0
    uncoupled: dict = field(default_factory=dict, repr=False)


def solve_projected(case, basis: BesselBasis, kind, J: int | None = None,
                    quadrature: str = "exact", window=None,
                    constants: PhysicalConstants = DEFAULT,
                    system: ChannelSystem | None = None) -> ProjectedSpectrum:
    """Solve the Feynman or retarded projected equation.

    Parameters
    ----------
    window : (float, float), optional
        Keep only eigenvalues inside (lo, hi].
    system : ChannelSystem, optional
        Reuse an assembled system instead of building one.
    """
    kind = PropagatorKind.parse(kind)
    if system is None:
        system = assemble(case, basis.J if J is None else J, basis, potential=True,
                          quadrature=quadrature, constants=constants)
    ps = project(system, kind)
    if kind is PropagatorKind.FEYNMAN:
        try:
            w, c = sla.eig(ps.effective_matrix)
        except sla.LinAlgError as exc:
            raise EigenSolverError(f"non-symmetric projected solve failed: {exc}") from exc
        max_imag = float(np.max(np.abs(w.imag))) if w.size else 0.0
        order = np.argsort(w.real)
        w, c = w.real[order], c[:, order].real
    else:
        w, c = symmetric_eig(ps.effective_matrix)
        max_imag = 0.0
    if window is not None:
        sel = (w > window[0]) & (w <= window[1])
        w, c = w[sel], c[:, sel]
    vec = ps.columns @ c
    vec /= np.linalg.norm(vec, axis=0)[None, :]
    aw = np.sum((ps.atomic_columns.T @ vec) ** 2, axis=0)
    nw = np.sum((ps.anomalous_columns.T @ vec) ** 2, axis=0)
    unc = {}
    if kind is PropagatorKind.RETARDED:
        case_id = CaseId.parse(system.case)
        kinds = {"c12a-c21a": "Valpha", "c12b+c21b": "Vbeta",
                 "c12_0-c21_0": "V0", "c12_1+c21_1": "V1"}
        entries = _UNCOUPLED[case_id]
        if case_id is CaseId.CASE3 and system.J == 0:
            entries = entries[:1]
        for label, _ in entries:
            Vb = coulomb_matrix(system.basis, kinds[label], system.quadrature)
            unc[label] = np.linalg.eigvalsh(Vb)
    return ProjectedSpectrum(kind, w, vec, aw, nw, max_imag, unc)
