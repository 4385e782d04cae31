"""Generalized Gell-Mann generators of su(d) and the Bloch decomposition.

Conventions used throughout (they differ from the most common textbook
ones, and everything downstream depends on them):

* generators are traceless Hermitian with Tr(g_i g_j) = 2 delta_ij,
  ordered symmetric pairs, then antisymmetric pairs, then diagonal;
* structure constants satisfy [g_i, g_j] = i f_ijk g_k, so for d = 2 the
  nonzero constants are +-2 (twice the Levi-Civita values);
* coherence vectors and the correlation matrix carry dimension-dependent
  scalings x_i = (dA/2) Tr[(g_i x I) rho], y_j = (dB/2) Tr[(I x g_j) rho],
  t_ij = (dA dB / 4) Tr[(g_i x g_j) rho].

Structure constants are always computed numerically from the bracket
convention above instead of being copied from tables; this keeps the
closed p=2 correlation formula internally consistent.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import BipartiteState, validate


def gellmann_matrices(d: int) -> np.ndarray:
    """The d*d-1 generalized Gell-Mann matrices as an (n, d, d) array."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    gens = []
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d), dtype=np.complex128)
            g[j, k] = 1.0
            g[k, j] = 1.0
            gens.append(g)
    for j in range(d):
        for k in range(j + 1, d):
            g = np.zeros((d, d), dtype=np.complex128)
            g[j, k] = -1.0j
            g[k, j] = 1.0j
            gens.append(g)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        gens.append(np.diag(diag * np.sqrt(2.0 / (l * (l + 1)))).astype(np.complex128))
    return np.array(gens).reshape(d * d - 1, d, d)


@dataclass(frozen=True)
class SuAlgebra:
    """Generators, structure constants and adjoint matrices of su(d)."""

    d: int
    generators: np.ndarray
    structure_constants: np.ndarray
    adjoint_reps: np.ndarray

    @property
    def n(self) -> int:
        return self.d * self.d - 1


@lru_cache(maxsize=None)
def su_algebra(d: int) -> SuAlgebra:
    """Cached su(d) data; f_ijk = -(i/2) Tr([g_i, g_j] g_k)."""
    if d < 2:
        raise ValueError(f"su(d) needs d >= 2, got {d}")
    g = gellmann_matrices(d)
    n = d * d - 1
    comm = np.einsum("iab,jbc->ijac", g, g) - np.einsum("jab,ibc->ijac", g, g)
    f = np.einsum("ijab,kba->ijk", comm, g) * (-0.5j)
    assert np.abs(f.imag).max() < 1e-12
    f = f.real.copy()
    # (F_r)_pq = -i f_pqr, one Hermitian matrix per generator index.
    adjoint = -1j * np.transpose(f, (2, 0, 1))
    for arr in (g, f, adjoint):
        arr.setflags(write=False)
    return SuAlgebra(d=d, generators=g, structure_constants=f, adjoint_reps=adjoint)


@dataclass(frozen=True)
class BlochForm:
    """Coherence vectors and correlation matrix of a bipartite state."""

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray


def bloch_decompose(state: BipartiteState) -> BlochForm:
    gA = gellmann_matrices(state.dA)
    gB = gellmann_matrices(state.dB)
    t = state.as_tensor()
    rho_a = np.einsum("ambm->ab", t)
    rho_b = np.einsum("aman->mn", t)
    x = 0.5 * state.dA * np.einsum("iab,ba->i", gA, rho_a).real
    y = 0.5 * state.dB * np.einsum("jmn,nm->j", gB, rho_b).real
    T = 0.25 * state.dA * state.dB * np.einsum("iab,jmn,bnam->ij", gA, gB, t).real
    return BlochForm(x=x, y=y, T=T)


def bloch_reconstruct(form: BlochForm, dA: int, dB: int) -> BipartiteState:
    """Rebuild the state from its Bloch data (fails if it is not a state)."""
    gA = gellmann_matrices(dA)
    gB = gellmann_matrices(dB)
    n_a, n_b = dA * dA - 1, dB * dB - 1
    if form.x.shape != (n_a,) or form.y.shape != (n_b,) or form.T.shape != (n_a, n_b):
        raise ValueError(
            f"Bloch data shaped {form.x.shape}/{form.y.shape}/{form.T.shape} "
            f"does not match dimensions ({dA}, {dB})"
        )
    eyeA, eyeB = np.eye(dA), np.eye(dB)
    rho = np.einsum("ab,mn->ambn", eyeA, eyeB).astype(np.complex128)
    rho += np.einsum("i,iab,mn->ambn", form.x, gA, eyeB)
    rho += np.einsum("j,ab,jmn->ambn", form.y, eyeA, gB)
    rho += np.einsum("ij,iab,jmn->ambn", form.T, gA, gB)
    rho = rho.reshape(dA * dB, dA * dB) / (dA * dB)
    return validate(rho, dA, dB)


def script_f(ttt: np.ndarray, algebra: SuAlgebra) -> np.ndarray:
    """Adjoint-channel matrix entering the closed p=2 formula.

    For a symmetric PSD input Q this returns the negative-semidefinite
    matrix -sum_r F_r Q F_r^dag. The sign is pinned by the explicit
    qubit-case matrix (see :func:`script_f_qubit`) together with the minus
    sign under the square root of the closed formula; with the opposite
    sign the radicand would be negative for every nonclassical state.
    """
    q = np.asarray(ttt, dtype=float)
    n = algebra.n
    if q.shape != (n, n):
        raise ValueError(f"matrix shape {q.shape} does not match su({algebra.d})")
    fr = algebra.adjoint_reps
    out = -np.einsum("rpq,qs,rts->pt", fr, q, fr.conj())
    assert np.abs(out.imag).max(initial=0.0) < 1e-10
    return out.real


def script_f_qubit(ttt: np.ndarray) -> np.ndarray:
    """Explicit closed form of :func:`script_f` for dA = 2."""
    q = np.asarray(ttt, dtype=float)
    if q.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got {q.shape}")
    return 4.0 * np.array(
        [
            [-(q[1, 1] + q[2, 2]), q[0, 1], q[0, 2]],
            [q[0, 1], -(q[0, 0] + q[2, 2]), q[1, 2]],
            [q[0, 2], q[1, 2], -(q[0, 0] + q[1, 1])],
        ]
    )
