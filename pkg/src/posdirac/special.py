"""Spherical Bessel functions, Bessel box bases and quadrature helpers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as _integrate
from scipy.optimize import brentq
from scipy.special import spherical_jn

__all__ = [
    "BesselBasis",
    "QuadratureError",
    "RootBracketError",
    "build_basis",
    "integrate",
    "panel_rule",
    "sph_bessel",
]

MAX_ORDER = 60


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error bound={error!r})")
        self.estimate = estimate
        self.error = error


class RootBracketError(RuntimeError):
    """A Bessel root could not be bracketed."""


def sph_bessel(L: int, x):
    """Spherical Bessel function of the first kind j_L(x).

    Parameters
    ----------
    L : int
        Order, 0 <= L <= 60.
    x : float or array_like
        Non-negative argument.

    Returns
    -------
    float or ndarray
    """
    if not 0 <= L <= MAX_ORDER:
        raise ValueError(f"order L={L} outside 0..{MAX_ORDER}")
    return spherical_jn(L, x)


def _bessel_zeros(J: int, count: int) -> np.ndarray:
    """First ``count`` positive zeros of j_J, bracketed by the zeros of j_{J-1}."""
    if J == 0:
        return np.arange(1, count + 1) * np.pi
    lower = _bessel_zeros(J - 1, count + 1)
    f = lambda x: spherical_jn(J, x)
    out = np.empty(count)
    for m in range(count):
        lo, hi = lower[m], lower[m + 1]
        flo, fhi = f(lo), f(hi)
        if flo * fhi > 0:
            raise RootBracketError(
                f"j_{J} has no sign change on [{lo:.12g}, {hi:.12g}] (values {flo:.3g}, {fhi:.3g})")
        out[m] = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return out


@dataclass(frozen=True)
class BesselBasis:
    """Spherical-Bessel box basis N_m j_J(k_m rho) on [0, rho0].

    Attributes
    ----------
    J : int
        Bessel order.
    rho0 : float
        Box radius in Bohr; every basis function vanishes there.
    M : int
        Number of basis functions.
    roots : ndarray
        Wavenumbers k_m, ascending.
    norms : ndarray
        N_m with N_m^2 * int rho^2 j_J(k_m rho)^2 = 1.
    """

    J: int
    rho0: float
    M: int
    roots: np.ndarray = field(repr=False)
    norms: np.ndarray = field(repr=False)

    @property
    def k(self) -> np.ndarray:
        return self.roots

    @property
    def delta_rho(self) -> float:
        return self.rho0 / self.M

    def radial(self, rho, order: int | None = None) -> np.ndarray:
        """Scaled radial functions N_m rho j_L(k_m rho), shape (M, len(rho)).

        ``order`` selects a Bessel order other than J while keeping these
        roots and norms; this is how the J+-1 channels share one grid.
        """
        L = self.J if order is None else order
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        return self.norms[:, None] * rho[None, :] * spherical_jn(L, np.outer(self.roots, rho))

    def boundary_identity_residual(self) -> float:
        """max |j_{J+1}(k rho0) + j_{J-1}(k rho0)| / |j_{J+1}|, zero when the shared norm holds."""
        if self.J == 0:
            return 0.0
        x = self.roots * self.rho0
        up, dn = spherical_jn(self.J + 1, x), spherical_jn(self.J - 1, x)
        return float(np.max(np.abs(up + dn) / np.abs(up)))


def build_basis(J: int, rho0: float, M: int) -> BesselBasis:
    """Roots and norms of the order-J spherical-Bessel box basis.

    The roots are found by bracketing between consecutive zeros of j_{J-1},
    which interlace those of j_J, so none can be skipped.  For J = 0 the
    roots are m*pi/rho0 exactly.
    """
    if M < 1:
        raise ValueError(f"basis size M must be >= 1, got {M}")
    if not rho0 > 0:
        raise ValueError(f"rho0 must be positive, got {rho0}")
    if not 0 <= J < MAX_ORDER:
        raise ValueError(f"J={J} outside 0..{MAX_ORDER - 1}")
    x = _bessel_zeros(J, M)
    k = x / rho0
    # int_0^R r^2 j_J(kr)^2 dr = R^3/2 * j_{J+1}(kR)^2 at a zero of j_J
    norms = np.sqrt(2.0 / rho0**3) / np.abs(spherical_jn(J + 1, x))
    if J == 0:
        norms = k * np.sqrt(2.0 / rho0)
    return BesselBasis(J, float(rho0), int(M), k, norms)


def integrate(f, a: float, b: float, rel_tol: float = 1e-12, limit: int = 400,
              points=None) -> float:
    """Adaptive Gauss-Kronrod integral of ``f`` over [a, b].

    Endpoints are never evaluated, so integrable singularities of type
    rho**p with p > -1 at ``a`` are allowed.

    Raises
    ------
    QuadratureError
        If the error estimate exceeds ``rel_tol`` relative to the result.
    """
    val, err, info = _integrate.quad(f, a, b, epsabs=0.0, epsrel=rel_tol, limit=limit,
                                     points=points, full_output=1)[:3]
    if err > max(rel_tol * abs(val), 1e-300) * 10:
        raise QuadratureError(f"no convergence after {info['last']} subintervals", val, err)
    return float(val)


def panel_rule(a: float, b: float, panels: int, order: int = 12):
    """Composite Gauss-Legendre nodes and weights on [a, b].

    Exact for polynomials of degree 2*order-1 on every panel.
    """
    if panels < 1:
        raise ValueError("need at least one panel")
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    h = np.diff(edges)
    nodes = (edges[:-1, None] + (x[None, :] + 1.0) * 0.5 * h[:, None]).ravel()
    weights = (w[None, :] * 0.5 * h[:, None]).ravel()
    return nodes, weights
