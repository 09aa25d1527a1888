"""Builders that turn a resolved RunConfig into a TableArtifact."""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .. import __version__
from ..addition import KINDS, addition_theorem_check, seeded_geometries
from ..angular import CaseId
from ..bethe_salpeter import PropagatorKind, solve_projected
from ..constants import PhysicalConstants
from ..dvr import (DvrGrid, analytic_coefficients, analytic_dvr_wavefunction, anomalous_catalog,
                   coupled_components, coupling_g, dvr_diagonalize, schrodinger_radial)
from ..fem import assemble_fem, build_grid, component_profile, solve_pencil
from ..momentum import PRESETS, assemble, coulomb_matrix, solve
from ..pauli import pauli_terms
from ..reference import TABLE1, TABLE2
from ..special import build_basis
from .artifacts import TableArtifact
from .config import RunConfig

__all__ = ["produce"]


def _constants(cfg: RunConfig) -> PhysicalConstants:
    return PhysicalConstants() if cfg.alpha is None else PhysicalConstants(alpha=cfg.alpha)


def _provenance(cfg: RunConfig, **extra) -> dict:
    snap = cfg.snapshot()
    snap.pop("output", None)
    out = {"config": snap, "version": __version__,
           "timestamp": os.environ.get("SOURCE_DATE_EPOCH", "unset")}
    out.update(extra)
    return out


def _basis(cfg: RunConfig, preset: str):
    """Bessel basis for a preset.

    For the anomalous preset ``cfg.M`` counts DVR grid intervals, so the
    basis holds M - 1 functions; for the atomic preset it is the basis size.
    """
    p = PRESETS[preset]
    rho0 = p["rho0"] if cfg.rho0 is None else cfg.rho0
    if cfg.M is None:
        M = p["M"]
    else:
        M = cfg.M - 1 if preset == "anomalous" else cfg.M
    quad = cfg.quadrature or p["quadrature"]
    if quad not in ("exact", "dvr"):
        raise ValueError(f"momentum quadrature must be 'exact' or 'dvr', got {quad!r}")
    return build_basis(cfg.J, rho0, M), quad


def _fem_quadrature(cfg: RunConfig):
    if cfg.quadrature in (None, "gauss", "nodal"):
        return cfg.quadrature
    raise ValueError(f"FEM quadrature must be 'gauss' or 'nodal', got {cfg.quadrature!r}")


def _atomic_window(const: PhysicalConstants):
    return (const.rest_energy - 0.3, const.rest_energy)


# ---------------------------------------------------------------- tables

def table1(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    art = TableArtifact("table1", ["n", "L", "S", "J", "case", "ED_minus_2mc2", "EP_minus_2mc2",
                                   "EP_rounded", "diff_mhz", "diff_mhz_rounded"],
                        provenance=_provenance(cfg, note="ED is published input data"))
    for row in TABLE1:
        t = pauli_terms(row.state, const)
        diff = float((Fraction(row.ED) - t.exact["EP"]) * Fraction(const.hartree_to_mhz))
        s = row.state
        art.add(s.n, s.L, s.S, s.J, row.case, row.ED, t.EP, f"{t.EP:.14f}", diff, f"{diff:.4f}")
    return art


def table2(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    art = TableArtifact("table2", ["n", "L", "S", "J", "EC_nano", "EC_nano_rounded", "EB_nano",
                                   "EB_nano_rounded", "EPprime_minus_2mc2", "EPprime_rounded"],
                        provenance=_provenance(cfg))
    for row in TABLE2:
        t = pauli_terms(row.state, const)
        ec, eb = float(t.exact["EC"] * 10**9), float(t.exact["EB"] * 10**9)
        s = row.state
        art.add(s.n, s.L, s.S, s.J, ec, f"{ec:.5f}", eb, f"{eb:.5f}", t.EPprime,
                f"{t.EPprime:.14f}")
    return art


# ---------------------------------------------------------------- Dirac solves

def _fem_levels(cfg: RunConfig, const, count):
    grid = build_grid(cfg.n, cfg.grid_profile, quadrature=_fem_quadrature(cfg))
    pencil = assemble_fem(cfg.case, cfg.J, grid, constants=const)
    sols = solve_pencil(pencil, _atomic_window(const))
    return grid, [s for _, s in sols if not s.suspect][:count], sols


def dirac_solve(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    rest = const.rest_energy
    if cfg.rep == "fem":
        grid, good, sols = _fem_levels(cfg, const, cfg.count)
        art = TableArtifact("spectrum", ["index", "E_minus_2mc2", "E_rounded", "dominant_channel",
                                         "suspect"],
                            provenance=_provenance(cfg, elements=grid.n_elements,
                                                   free_nodes=grid.n_free))
        for i, (_, s) in enumerate(sols[:cfg.count + 8]):
            dom = max(s.channels, key=s.weight)
            art.add(i, s.energy - rest, f"{s.energy - rest:.10f}", dom, s.suspect)
        return art
    if cfg.rep != "momentum":
        raise ValueError(f"dirac-solve supports rep 'momentum' or 'fem', got {cfg.rep!r}")
    basis, quad = _basis(cfg, "atomic")
    spec = solve(assemble(cfg.case, cfg.J, basis, quadrature=quad, constants=const),
                 window=_atomic_window(const))
    art = TableArtifact("spectrum", ["index", "E_minus_2mc2", "E_rounded", "classification",
                                     "dominant_channel", "weight_pp"],
                        provenance=_provenance(cfg, rho0=basis.rho0, M=basis.M, quadrature=quad))
    for i in range(min(cfg.count, spec.eigenvalues.size)):
        e = float(spec.eigenvalues[i]) - rest
        art.add(i, e, f"{e:.10f}", spec.classification[i], spec.dominant_channel[i],
                float(spec.weights["atomic++"][i]))
    return art


def ground_profile(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    grid, good, _ = _fem_levels(cfg, const, 1)
    if not good:
        raise ValueError("no bound state found in the atomic window")
    sol = good[0]
    names = sorted(sol.components)
    art = TableArtifact("fig1", ["rho"] + [f"{c}_sq" for c in names],
                        provenance=_provenance(cfg, energy_minus_2mc2=sol.energy - const.rest_energy))
    prof = {c: component_profile(sol, c).y2_nodes for c in names}
    for j, r in enumerate(grid.nodes):
        art.add(float(r), *(float(prof[c][j]) for c in names))
    return art


# ---------------------------------------------------------------- anomalous states

def _fem_anomalous(cfg: RunConfig, const):
    profile = cfg.grid_profile if cfg.grid_profile != "paper_default" else "anomalous_region1"
    grid = build_grid(cfg.n, profile, quadrature=_fem_quadrature(cfg))
    pencil = assemble_fem(cfg.case, cfg.J, grid, constants=const)
    # -1/rho over the free nodes, with margin
    nodes = grid.free_nodes
    window = (-1.5 / nodes[0], -0.5 / nodes[-1])
    return grid, [s for _, s in solve_pencil(pencil, window)]


def _constraint_metric(sol) -> float:
    """Weight of the channel that must vanish for anomalous states, if present."""
    for lab in ("y11_0+y22_0", "y11_1-y22_1", "y12_0+y21_0"):
        if lab in sol.components:
            return sol.weight(lab)
    return float("nan")


def _momentum_anomalous(cfg: RunConfig, const):
    basis, quad = _basis(cfg, "anomalous")
    system = assemble(cfg.case, cfg.J, basis, quadrature=quad, constants=const)
    spec = solve(system)
    idx = [i for i in spec.select("anomalous") if spec.eigenvalues[i] < 0]
    return basis, system, spec, idx


def anomalous(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    cols = ["index", "rho_i", "E", "E_times_rho", "peak_height", "dominant_channel"]
    if cfg.rep == "fem":
        grid, sols = _fem_anomalous(cfg, const)
        art = TableArtifact("fig2", cols + ["constraint_metric", "suspect"],
                            provenance=_provenance(cfg, representation="fem"))
        for i, s in enumerate(sols, start=1):
            dom = max(s.channels, key=s.weight)
            rho = float(grid.free_nodes[i - 1]) if i <= grid.n_free else float("nan")
            art.add(i, rho, s.energy, s.energy * rho,
                    float(np.max(np.abs(s.components[dom]))), dom, _constraint_metric(s),
                    s.suspect)
        return art
    if cfg.rep not in ("momentum", "dvr"):
        raise ValueError(f"unknown representation {cfg.rep!r}")
    basis, system, spec, idx = _momentum_anomalous(cfg, const)
    art = TableArtifact("fig2", cols + ["anomalous_weight"],
                        provenance=_provenance(cfg, representation="momentum", rho0=basis.rho0,
                                               M=basis.M))
    M = basis.M
    h = basis.rho0 / (M + 1)
    rfine = np.linspace(0.0, basis.rho0, 20 * M + 1)
    for n, i in enumerate(idx, start=1):
        e = float(spec.eigenvalues[i])
        ch = int(np.argmax(spec.channel_weights[:, i]))
        psi = basis.radial(rfine, _channel_order(system, ch)).T \
            @ spec.eigenvectors[ch * M:(ch + 1) * M, i]
        art.add(n, n * h, e, e * n * h, float(np.max(np.abs(psi))), system.channels[ch],
                float(spec.weights["anomalous"][i]))
    return art


def _channel_order(system, ch: int) -> int:
    kind = system.potential_blocks[system.channels[ch]]
    J = system.J
    return {"V0": J, "V1": J, "Valpha": J + 1, "Vbeta": max(J - 1, 0)}.get(kind, J)


def anomalous_profiles(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    if cfg.rep == "fem":
        grid, sols = _fem_anomalous(cfg, const)
        art = TableArtifact("fig3", ["index", "rho_i", "rho", "component", "y_sq"],
                            provenance=_provenance(cfg, representation="fem"))
        for i, s in enumerate(sols[:cfg.count], start=1):
            dom = max(s.channels, key=s.weight)
            y2 = component_profile(s, dom).y2_nodes
            for r, v in zip(grid.nodes, y2):
                art.add(i, float(grid.free_nodes[i - 1]), float(r), dom, float(v))
        return art
    M = PRESETS["anomalous"]["M"] + 1 if cfg.M is None else cfg.M + 1
    rho0 = PRESETS["anomalous"]["rho0"] if cfg.rho0 is None else cfg.rho0
    grid = DvrGrid(rho0, M)
    basis = grid.basis()
    states = dvr_diagonalize(basis, coulomb_matrix(basis, "V0", "dvr"))
    A = analytic_coefficients(grid)
    rfine = np.linspace(0.0, rho0, 10 * M + 1)
    R = basis.radial(rfine, 0).T
    art = TableArtifact("fig4", ["index", "rho_i", "rho", "psi_numeric", "psi_analytic"],
                        provenance=_provenance(cfg, representation="momentum", M=M, rho0=rho0))
    for i in range(1, min(cfg.count, M - 1) + 1):
        st = states[i - 1]
        vec = st.vector * np.sign(st.vector @ A[:, i - 1])
        num = R @ vec
        ana = analytic_dvr_wavefunction(grid, i, rfine)
        for r, a, b in zip(rfine, num, ana):
            art.add(i, float(grid.points[i - 1]), float(r), float(a), float(b))
    return art


def catalog(cfg: RunConfig) -> TableArtifact:
    M = PRESETS["anomalous"]["M"] + 1 if cfg.M is None else cfg.M + 1
    rho0 = PRESETS["anomalous"]["rho0"] if cfg.rho0 is None else cfg.rho0
    art = TableArtifact("anomalous_catalog",
                        ["family", "index", "rho_i", "E_coulomb", "E_gaunt", "E_total", "C", "P",
                         "S", "dirac_vector", "case"],
                        provenance=_provenance(cfg, M=M, rho0=rho0))
    for s in anomalous_catalog(DvrGrid(rho0, M)):
        art.add(s.family, s.index, s.rho_i, s.energy_coulomb, s.energy_gaunt, s.energy_total,
                s.parity.C, s.parity.P, s.spin, s.dirac_vector, s.case.value)
    return art


# ---------------------------------------------------------------- coupling profile

def coupling_profile(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    grid = build_grid(cfg.n, "paper_default")
    pencil = assemble_fem(CaseId.CASE1, 0, grid, constants=const)
    sols = [s for _, s in solve_pencil(pencil, _atomic_window(const)) if not s.suspect]
    if len(sols) < cfg.n:
        raise ValueError(f"found {len(sols)} S-states, need n={cfg.n}")
    sol = sols[cfg.n - 1]
    y11, y22 = sol.components["y11_0"], sol.components["y22_0"]
    inner = grid.nodes <= 0.02
    inner[0] = False
    ref = schrodinger_radial(cfg.n, grid.nodes[inner][-1])
    if np.sign(y11[inner][-1]) != np.sign(ref):
        y11, y22 = -y11, -y22
    art = TableArtifact("fig5", ["rho", "g", "y11_sq", "y22_sq", "yS_sq", "fem_y11_sq",
                                 "fem_y22_sq"],
                        provenance=_provenance(cfg, energy_minus_2mc2=sol.energy - const.rest_energy))
    for j in np.flatnonzero(inner):
        r = float(grid.nodes[j])
        a, b = coupled_components(cfg.n, r, const)
        yS = schrodinger_radial(cfg.n, r)
        art.add(r, coupling_g(r, const), float(a) ** 2, float(b) ** 2, float(yS) ** 2,
                float(y11[j]) ** 2, float(y22[j]) ** 2)
    return art


# ---------------------------------------------------------------- Bethe-Salpeter

def bs_project(cfg: RunConfig) -> TableArtifact:
    const = _constants(cfg)
    kind = PropagatorKind.parse(cfg.kind)
    preset = "atomic" if kind is PropagatorKind.FEYNMAN else "anomalous"
    basis, quad = _basis(cfg, preset)
    window = _atomic_window(const) if kind is PropagatorKind.FEYNMAN else None
    spec = solve_projected(cfg.case, basis, kind, quadrature=quad, window=window, constants=const)
    art = TableArtifact("bs_overlaps", ["index", "sector", "E", "E_minus_2mc2", "atomic_weight",
                                        "anomalous_weight"],
                        provenance=_provenance(cfg, propagator=kind.value, rho0=basis.rho0,
                                               M=basis.M, max_imag=spec.max_imag))
    rest = const.rest_energy
    for i in range(min(cfg.count, spec.eigenvalues.size)):
        e = float(spec.eigenvalues[i])
        art.add(i, "coupled", e, e - rest, float(spec.atomic_weight[i]),
                float(spec.anomalous_weight[i]))
    for label, vals in spec.uncoupled.items():
        for i, e in enumerate(vals[:cfg.count]):
            art.add(i, label, float(e), float(e) - rest, 0.0, 1.0)
    return art


# ---------------------------------------------------------------- addition theorems

def verify_addition(cfg: RunConfig) -> TableArtifact:
    re, rp = seeded_geometries(seed=cfg.seed)
    k = 1.5
    j_values = sorted({x for x in (2.5, 6.5, cfg.j_max) if x <= cfg.j_max})
    art = TableArtifact("addition", ["kind", "J", "j_max", "max_residual"],
                        provenance=_provenance(cfg, k=k, points=len(re)))
    for kind in KINDS:
        J = 0 if kind.startswith("J0") else max(cfg.J, 1)
        for jm in j_values:
            art.add(kind, J, jm, addition_theorem_check(kind, k, re, rp, jm, J=J))
    return art


def produce(cfg: RunConfig, variant: str | None = None) -> TableArtifact:
    """Dispatch on command and variant ('profile', 'profiles', 'catalog')."""
    if cfg.command == "pauli-table":
        return table1(cfg) if cfg.table == 1 else table2(cfg)
    if cfg.command == "dirac-solve":
        return ground_profile(cfg) if variant == "profile" else dirac_solve(cfg)
    if cfg.command == "anomalous":
        if variant == "catalog":
            return catalog(cfg)
        return anomalous_profiles(cfg) if variant == "profiles" else anomalous(cfg)
    if cfg.command == "coupling-profile":
        return coupling_profile(cfg)
    if cfg.command == "bs-project":
        return bs_project(cfg)
    if cfg.command == "verify-addition":
        return verify_addition(cfg)
    raise ValueError(f"command {cfg.command!r} produces no artifact")
