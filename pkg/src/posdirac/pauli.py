"""Pauli-approximation energies of positronium and their Breit corrections.

All terms are evaluated as exact rationals in alpha^2 (alpha = 1/137 by
default) and rounded once, so EP - 2mc^2 keeps every digit that the
18769 Hartree rest energy would otherwise swamp.  Energies are in Hartree
with mc^2 alpha^2 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angular import QuantumNumbers
from .constants import DEFAULT, PhysicalConstants

__all__ = [
    "PauliBreakdown",
    "pauli_terms",
    "xi_factor",
    "combined_ep_prime",
    "fifth_order_shift",
    "dirac_pauli_diff",
    "fit_inverse_cube",
    "FitResult",
]


def _alpha2(constants: PhysicalConstants) -> Fraction:
    return Fraction(constants.alpha).limit_denominator(10**12) ** 2


def _branch(state: QuantumNumbers, values):
    d = state.J - state.L
    if d not in (1, 0, -1):
        raise ValueError(f"J - L = {d} outside {{-1, 0, 1}} for {state}")
    return values[1 - d]


@dataclass(frozen=True)
class PauliBreakdown:
    """Closed-form energy terms of one (n, L, S, J) state in Hartree.

    ``EP`` and ``EPprime`` are offsets above the rest energy 2mc^2;
    ``rest`` holds 2mc^2 itself so that ``EP_total = rest + EP``.
    ``EC`` follows the tabulated convention H1 + H3C + H4C, the column that
    the printed Coulomb corrections match.
    """

    state: QuantumNumbers
    H0: float
    H1: float
    H3C: float
    H4C: float
    H2B: float
    H3B: float
    H5B1: float
    H5B2: float
    Han: float
    EP: float
    EPprime: float
    EC: float
    EB: float
    rest: float
    exact: dict

    @property
    def H5B(self) -> float:
        return self.H5B1 + self.H5B2

    @property
    def EC_text(self) -> float:
        """H3C + H4C, the definition written beside the table."""
        return float(self.exact["H3C"] + self.exact["H4C"])


def _exact_terms(s: QuantumNumbers, a2: Fraction) -> dict:
    n, L, S = s.n, s.L, s.S
    l0 = 1 if L == 0 else 0
    t = {}
    t["H0"] = -Fraction(1, 4 * n * n)
    t["H1"] = a2 * (Fraction(3, 64 * n**4) - Fraction(1, 8 * n**3 * (2 * L + 1)))
    fine = S == 1 and L > 0
    den = 8 * n**3 * L * (L + 1) * (2 * L + 1) if L > 0 else 1
    t["H3C"] = a2 * Fraction(_branch(s, (L, -1, -(L + 1))), den) if fine else Fraction(0)
    t["H4C"] = a2 * Fraction(l0, 8 * n**3)
    t["H2B"] = a2 * (Fraction(1, 8 * n**4) - Fraction(3, 8 * n**3 * (2 * L + 1))
                     + Fraction(l0, 8 * n**3))
    t["H3B"] = 2 * t["H3C"]
    t["H5B1"] = a2 * l0 * (Fraction(-1, 4 * n**3) if S == 0 else Fraction(1, 12 * n**3))
    if fine:
        br = _branch(s, (Fraction(L, 2 * L + 3), Fraction(-1), Fraction(L + 1, 2 * L - 1)))
        t["H5B2"] = -a2 * br / den
    else:
        t["H5B2"] = Fraction(0)
    t["Han"] = a2 * Fraction(l0 * (S == 1), 4 * n**3)
    return t


def pauli_terms(state: QuantumNumbers, constants: PhysicalConstants = DEFAULT) -> PauliBreakdown:
    """Evaluate every Pauli, Breit and annihilation term for ``state``."""
    if state.S == 0 and state.J != state.L:
        raise ValueError(f"S=0 requires J=L, got {state}")
    a2 = _alpha2(constants)
    t = _exact_terms(state, a2)
    EP = t["H0"] + t["H1"] + t["H3C"] + t["H4C"]
    EPp = EP + t["H2B"] + t["H3B"] + t["H5B1"] + t["H5B2"] + t["Han"]
    EC = t["H1"] + t["H3C"] + t["H4C"]
    EB = t["H2B"] + t["H3B"] + t["H5B1"] + t["H5B2"]
    exact = dict(t, EP=EP, EPprime=EPp, EC=EC, EB=EB)
    f = {k: float(v) for k, v in t.items()}
    return PauliBreakdown(state=state, EP=float(EP), EPprime=float(EPp), EC=float(EC),
                          EB=float(EB), rest=constants.rest_energy, exact=exact, **f)


def xi_factor(state: QuantumNumbers) -> Fraction:
    """Spin-dependent bracket of the combined fourth-order energy (S = 1)."""
    L = state.L
    if state.S != 1:
        raise ValueError("xi is defined for S = 1 states")
    if L == 0:
        return Fraction(7, 12)
    br = _branch(state, (Fraction(3 * L + 4, (L + 1) * (2 * L + 3)),
                         Fraction(-1, L * (L + 1)),
                         Fraction(-(3 * L - 1), L * (2 * L - 1))))
    return br / (4 * (2 * L + 1))


def combined_ep_prime(state: QuantumNumbers, constants: PhysicalConstants = DEFAULT) -> Fraction:
    """EP' - 2mc^2 from the combined closed form, as an exact fraction."""
    n, L = state.n, state.L
    a2 = _alpha2(constants)
    brace = Fraction(11, 64 * n) - Fraction(1, 2 * (2 * L + 1))
    if state.S == 1:
        brace += xi_factor(state)
    return -Fraction(1, 4 * n * n) + a2 * brace / n**3


def fifth_order_shift(state: QuantumNumbers, constants: PhysicalConstants = DEFAULT,
                      unit: str = "hartree") -> float:
    """Leading L = 0 shift -mc^2 alpha^5 / (8 n^3); zero for L > 0."""
    if state.L != 0:
        return 0.0
    val = -constants.alpha**3 / (8 * state.n**3)
    if unit == "mhz":
        return val * constants.hartree_to_mhz
    if unit != "hartree":
        raise ValueError(f"unit must be 'hartree' or 'mhz', got {unit!r}")
    return val


def dirac_pauli_diff(table, constants: PhysicalConstants = DEFAULT):
    """(state, (E_D - EP) in MHz) for each (state, E_D - 2mc^2) pair."""
    return [(s, (ed - pauli_terms(s, constants).EP) * constants.hartree_to_mhz)
            for s, ed in table]


@dataclass(frozen=True)
class FitResult:
    nu: float
    sigma: float
    residuals: np.ndarray


def fit_inverse_cube(points) -> FitResult:
    """Least-squares fit dE_n = nu / n^3 with RMS residual sigma (same unit as dE)."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError(f"need at least 2 points, got {len(pts)}")
    n = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    x = n**-3
    nu = float(x @ y / (x @ x))
    r = y - nu * x
    return FitResult(nu, float(np.sqrt(np.mean(r**2))), r)
