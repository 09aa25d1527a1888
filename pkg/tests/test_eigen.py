import numpy as np
import pytest

from posdirac.eigen import EigenSolverError, generalized_eig, symmetric_eig


def jacobi_eigenvalues(A, sweeps=50):
    """Cyclic Jacobi rotations; independent of LAPACK."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    tiny = 1e-300 + 1e-17 * np.linalg.norm(A)
    for _ in range(sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off < 1e-14 * np.linalg.norm(A):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p, q]) < tiny:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * A[p, q])
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta else 1.0
                c = 1 / np.sqrt(t**2 + 1)
                s = t * c
                R = np.eye(n)
                R[p, p] = R[q, q] = c
                R[p, q], R[q, p] = s, -s
                A = R.T @ A @ R
    return np.sort(np.diag(A))


@pytest.fixture
def sym(rng=np.random.default_rng(7)):
    X = rng.normal(size=(12, 12))
    return X + X.T


def test_symmetric_vs_jacobi(sym):
    w, v = symmetric_eig(sym)
    np.testing.assert_allclose(w, jacobi_eigenvalues(sym), atol=1e-11)
    np.testing.assert_allclose(v.T @ v, np.eye(12), atol=1e-12)


def test_window_selects_half_open_interval(sym):
    w_all, _ = symmetric_eig(sym)
    lo, hi = w_all[2] + 1e-9, w_all[6]
    w, v = symmetric_eig(sym, window=(lo, hi))
    np.testing.assert_allclose(w, w_all[3:7])
    assert v.shape == (12, 4)


def test_generalized_vs_jacobi_reduction(sym):
    rng = np.random.default_rng(3)
    Y = rng.normal(size=(12, 12))
    B = Y @ Y.T + 12 * np.eye(12)
    w, v = generalized_eig(sym, B)
    # B^{-1/2} H B^{-1/2} via an independent eigen-decomposition of B
    bw, bv = np.linalg.eigh(B)
    S = bv @ np.diag(bw**-0.5) @ bv.T
    np.testing.assert_allclose(w, jacobi_eigenvalues(S @ sym @ S), atol=1e-11)
    np.testing.assert_allclose(v.T @ B @ v, np.eye(12), atol=1e-10)


def test_generalized_rejects_indefinite_metric(sym):
    with pytest.raises(EigenSolverError):
        generalized_eig(sym, -np.eye(12))


def test_residual_check_catches_asymmetric_input(sym):
    bad = sym.copy()
    bad[0, 5] += 10.0
    with pytest.raises(EigenSolverError, match="residual"):
        symmetric_eig(bad)


def test_constant_potential_two_state_toy():
    w, _ = symmetric_eig(3.5 * np.eye(2))
    np.testing.assert_allclose(w, [3.5, 3.5])
