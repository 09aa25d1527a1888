"""Numerical check of the two-particle spherical-Bessel addition theorems.

A plane wave in the relative coordinate rho = r_e - r_p, coupled to a
two-spin function, expands into products of one-particle spinor
harmonics g^{l j}_n(k r) = j_l(kr) sum_s <l n-s 1/2 s | j n> Y_{l,n-s} chi_s
coupled to total J.  Phases follow Condon-Shortley; the two-spin vector is
ordered (up up, up down, down up, down down) electron first, and the
singlet is (up down - down up)/sqrt 2.

The four checked forms are

* ``J0_singlet``: j_0(k rho) Y_00 Omega^0, the printed J = 0 special case;
* ``J0_triplet``: j_1(k rho) [Y^1 Omega^1]^0, the printed J = 0 special case;
* ``general``: j_J(k rho) Y_JN Omega^0 with the q coefficients;
* ``general_triplet``: j_J(k rho) [Y^J Omega^1]^J_N with the p coefficients.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import spherical_jn, sph_harm_y

from .angular import _cg2, clebsch_gordan

__all__ = ["KINDS", "addition_theorem_check", "seeded_geometries", "lhs", "rhs"]

KINDS = ("J0_singlet", "J0_triplet", "general", "general_triplet")
DEFAULT_SEED = 20240917

_UP = np.array([1.0, 0.0])
_DN = np.array([0.0, 1.0])
_OMEGA0 = (np.kron(_UP, _DN) - np.kron(_DN, _UP)) / np.sqrt(2.0)


def _omega1(mu: int) -> np.ndarray:
    if mu == 1:
        return np.kron(_UP, _UP)
    if mu == -1:
        return np.kron(_DN, _DN)
    return (np.kron(_UP, _DN) + np.kron(_DN, _UP)) / np.sqrt(2.0)


def _polar(r):
    R = float(np.linalg.norm(r))
    if R == 0.0:
        return 0.0, 0.0, 0.0
    return R, float(np.arccos(np.clip(r[2] / R, -1, 1))), float(np.arctan2(r[1], r[0]))


def _Y(l, m, th, ph):
    return complex(sph_harm_y(l, m, th, ph))


class _Point:
    """Cached one-particle spinor harmonics at a fixed position."""

    def __init__(self, k, r):
        self.k = k
        self.R, self.th, self.ph = _polar(np.asarray(r, dtype=float))
        self._cache = {}
        self._jl = {}

    def bessel(self, l: int) -> float:
        if l not in self._jl:
            self._jl[l] = float(spherical_jn(l, self.k * self.R))
        return self._jl[l]

    def g(self, l: int, j2: int, n2: int) -> np.ndarray:
        key = (l, j2, n2)
        if key not in self._cache:
            out = np.zeros(2, complex)
            for s, s2 in enumerate((1, -1)):
                m2 = n2 - s2
                if abs(m2) > 2 * l:
                    continue
                cg = _cg2(2 * l, m2, 1, s2, j2, n2)
                if cg:
                    out[s] = cg * _Y(l, m2 // 2, self.th, self.ph)
            self._cache[key] = self.bessel(l) * out
        return self._cache[key]


def _coupled(pe: _Point, pp: _Point, le, je2, lp, jp2, J, N) -> np.ndarray:
    out = np.zeros(4, complex)
    for ne2 in range(-je2, je2 + 1, 2):
        np2 = 2 * N - ne2
        if abs(np2) > jp2:
            continue
        c = _cg2(je2, ne2, jp2, np2, 2 * J, 2 * N)
        if c:
            out += c * np.outer(pe.g(le, je2, ne2), pp.g(lp, jp2, np2)).ravel()
    return out


def lhs(kind: str, k: float, r_e, r_p, J: int = 0, N: int = 0) -> np.ndarray:
    """Left side: relative-coordinate Bessel function times coupled harmonics."""
    R, th, ph = _polar(np.asarray(r_e, float) - np.asarray(r_p, float))
    if kind == "J0_singlet":
        return spherical_jn(0, k * R) * _Y(0, 0, th, ph) * _OMEGA0
    if kind == "general":
        return spherical_jn(J, k * R) * _Y(J, N, th, ph) * _OMEGA0
    if kind == "J0_triplet":
        out = sum(clebsch_gordan(1, M, 1, -M, 0, 0) * _Y(1, M, th, ph) * _omega1(-M)
                  for M in (-1, 0, 1))
        return spherical_jn(1, k * R) * out
    if kind == "general_triplet":
        out = np.zeros(4, complex)
        for mu in (-1, 0, 1):
            m = N - mu
            if abs(m) <= J:
                out += clebsch_gordan(J, m, 1, mu, J, N) * _Y(J, m, th, ph) * _omega1(mu)
        return spherical_jn(J, k * R) * out
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")


@lru_cache(maxsize=None)
def _q(je2, jp2, J):
    d = (je2 - jp2) // 2 - J
    return (1j) ** d * np.sqrt(2 * np.pi * (je2 + 1) * (jp2 + 1) / (2 * J + 1)) \
        * clebsch_gordan(je2 / 2, 0.5, jp2 / 2, -0.5, J, 0)


@lru_cache(maxsize=None)
def _p(je2, jp2, J):
    d = (je2 - jp2) // 2 - J
    return (1j) ** d * np.sqrt(2 * np.pi * (je2 + 1) * (jp2 + 1) / (2 * J + 1)) \
        * clebsch_gordan(je2 / 2, 0.5, jp2 / 2, 0.5, J, 1)


def rhs(kind: str, k: float, r_e, r_p, j_max: float, J: int = 0, N: int = 0) -> np.ndarray:
    """Right side truncated at one-particle j <= j_max."""
    pe, pp = _Point(k, r_e), _Point(k, r_p)
    jm2 = int(round(2 * j_max))
    out = np.zeros(4, complex)
    if kind in ("J0_singlet", "J0_triplet"):
        for j2 in range(1, jm2 + 1, 2):
            lo, hi = (j2 - 1) // 2, (j2 + 1) // 2
            pref = np.sqrt(2 * np.pi * (j2 + 1)) * (-1) ** lo
            if kind == "J0_singlet":
                out += pref * (_coupled(pe, pp, lo, j2, lo, j2, 0, 0)
                               - _coupled(pe, pp, hi, j2, hi, j2, 0, 0))
            else:
                out += pref * (_coupled(pe, pp, hi, j2, lo, j2, 0, 0)
                               + _coupled(pe, pp, lo, j2, hi, j2, 0, 0))
        return out
    if kind not in ("general", "general_triplet"):
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    for je2 in range(1, jm2 + 1, 2):
        for jp2 in range(1, jm2 + 1, 2):
            if not abs(je2 - jp2) <= 2 * J <= je2 + jp2:
                continue
            even = ((je2 - jp2) // 2 - J) % 2 == 0
            em, ep = (je2 - 1) // 2, (je2 + 1) // 2
            pm, pq = (jp2 - 1) // 2, (jp2 + 1) // 2
            mm = lambda a, b: _coupled(pe, pp, a, je2, b, jp2, J, N)
            if kind == "general":
                c = _q(je2, jp2, J)
                out += c * (mm(em, pm) - mm(ep, pq)) if even else -1j * c * (mm(em, pq) + mm(ep, pm))
            else:
                c = _p(je2, jp2, J)
                out += -c * (mm(em, pm) + mm(ep, pq)) if even else -1j * c * (mm(em, pq) - mm(ep, pm))
    return out


def seeded_geometries(count: int = 16, seed: int = DEFAULT_SEED, r_min: float = 0.5,
                      r_max: float = 1.0):
    """Reproducible electron and positron positions, shape (count, 3) each."""
    rng = np.random.default_rng(seed)

    def draw():
        v = rng.normal(size=(count, 3))
        v /= np.linalg.norm(v, axis=1)[:, None]
        return v * rng.uniform(r_min, r_max, size=(count, 1))

    return draw(), draw()


def addition_theorem_check(kind: str, k: float, rho_e, rho_p, j_max: float,
                           J: int = 0, N: int | None = None) -> float:
    """Max absolute difference between both sides over the sample points.

    ``rho_e`` and ``rho_p`` are 3-vectors or arrays of shape (n, 3).  For
    the general kinds ``N=None`` scans every projection -J..J.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    if j_max < 0.5:
        raise ValueError(f"j_max must be >= 1/2, got {j_max}")
    if kind in ("J0_singlet", "J0_triplet"):
        J, Ns = 0, [0]
    else:
        if kind == "general_triplet" and J < 1:
            raise ValueError("general_triplet needs J >= 1")
        Ns = range(-J, J + 1) if N is None else [N]
    re = np.atleast_2d(np.asarray(rho_e, float))
    rp = np.atleast_2d(np.asarray(rho_p, float))
    worst = 0.0
    for a, b in zip(re, rp):
        for n in Ns:
            d = np.abs(lhs(kind, k, a, b, J, n) - rhs(kind, k, a, b, j_max, J, n))
            worst = max(worst, float(d.max()))
    return worst
