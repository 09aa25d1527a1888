"""Dense symmetric eigensolvers with post-hoc residual checks."""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

__all__ = ["EigenSolverError", "symmetric_eig", "generalized_eig"]


class EigenSolverError(RuntimeError):
    """LAPACK failed or the returned eigenpairs violate the residual bound."""


def _check(H, B, w, v, tol):
    if w.size == 0:
        return
    Bv = v if B is None else B @ v
    res = np.linalg.norm(H @ v - Bv * w[None, :], axis=0)
    scale = max(np.linalg.norm(H, ord=np.inf), 1e-300)
    bad = res > tol * scale
    if np.any(bad):
        i = int(np.argmax(res))
        raise EigenSolverError(
            f"{int(bad.sum())} eigenpairs exceed residual tolerance; worst index {i} "
            f"has |Hv-Ev|/|H| = {res[i] / scale:.3e}")


def symmetric_eig(H, window=None, tol: float = 1e-9, check: bool = True):
    """Eigenpairs of a real symmetric matrix, ascending.

    Parameters
    ----------
    H : ndarray
        Symmetric matrix.
    window : (float, float), optional
        Half-open interval (lo, hi] of eigenvalues to return.
    tol : float
        Residual bound relative to the infinity norm of ``H``.
    """
    H = np.asarray(H, dtype=float)
    try:
        if window is None:
            w, v = sla.eigh(H)
        else:
            w, v = sla.eigh(H, subset_by_value=tuple(window))
    except (sla.LinAlgError, ValueError) as exc:
        raise EigenSolverError(f"symmetric eigensolve of size {H.shape[0]} failed: {exc}") from exc
    if check:
        _check(H, None, w, v, tol)
    return w, v


def generalized_eig(H, B, window=None, tol: float = 1e-8, check: bool = True):
    """Eigenpairs of the pencil H v = E B v with B positive definite.

    Vectors are B-orthonormal.  Cholesky failure of ``B`` raises
    :class:`EigenSolverError`.
    """
    H = np.asarray(H, dtype=float)
    B = np.asarray(B, dtype=float)
    try:
        if window is None:
            w, v = sla.eigh(H, B)
        else:
            w, v = sla.eigh(H, B, subset_by_value=tuple(window))
    except (sla.LinAlgError, ValueError) as exc:
        raise EigenSolverError(f"generalized eigensolve of size {H.shape[0]} failed: {exc}") from exc
    if check:
        _check(H, B, w, v, tol)
    return w, v
