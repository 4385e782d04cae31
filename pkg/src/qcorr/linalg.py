"""Dense complex linear algebra primitives shared by all modules.

Thin, validated wrappers around LAPACK via numpy. Conventions fixed here:
eigenvalues and singular values are returned in descending order, and all
tolerances are chosen for chained double-precision decompositions on
subsystem dimensions up to ~10.
"""

import numpy as np

# Construction / Hermiticity checks.
HERM_TOL = 1e-10
# Decomposition residuals (eig/svd reconstruction, unitarity of exp).
DECOMP_TOL = 1e-9
# Generic equality assertions downstream.
EQ_TOL = 1e-9


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex128 array and reject non-finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def herm_residual(h: np.ndarray) -> float:
    """Max-norm distance from Hermitian symmetry."""
    return float(np.abs(h - h.conj().T).max(initial=0.0))


def hermitian_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with real eigenvalues sorted in
    descending order and the matching orthonormal eigenvectors as columns.
    The input is symmetrized before decomposition; inputs farther than
    HERM_TOL from Hermitian are rejected.
    """
    a = as_complex_matrix(h)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix is not square: {a.shape}")
    res = herm_residual(a)
    if res > HERM_TOL:
        raise ValueError(f"matrix is not Hermitian: residual {res:.3e} > {HERM_TOL:.0e}")
    a = 0.5 * (a + a.conj().T)
    w, v = np.linalg.eigh(a)
    return w[::-1].copy(), v[:, ::-1].copy()


def singular_values(m) -> np.ndarray:
    """Singular values of an arbitrary matrix, descending."""
    a = as_complex_matrix(m)
    return np.linalg.svd(a, compute_uv=False)


def matrix_exp_i(h) -> np.ndarray:
    """exp(i*H) for Hermitian H, computed through the eigendecomposition.

    The result is unitary to DECOMP_TOL by construction.
    """
    w, v = hermitian_eig(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def kron(a, b) -> np.ndarray:
    """Tensor product with the second factor's index fastest."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def is_unitary(u: np.ndarray, tol: float = DECOMP_TOL) -> bool:
    u = np.asarray(u)
    d = u.shape[0]
    return u.shape == (d, d) and np.abs(dagger(u) @ u - np.eye(d)).max() <= tol
