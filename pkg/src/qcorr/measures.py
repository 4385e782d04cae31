"""Commutator-norm quantum correlation measures of bipartite states.

A state is classical with respect to the A side exactly when all of its
measurement blocks <phi_i^B| rho |phi_j^B> commute, for any orthonormal
B-side basis. The measures here quantify the violation: collect every
unordered pair of blocks, take the Schatten p-norm of each pairwise
commutator, combine them as a p-sum, and minimize the result over the
B-side basis choice. For p = 2 the minimization is unnecessary (the score
is basis independent) and a closed expression through the Bloch data is
used instead.
"""

from dataclasses import dataclass

import numpy as np

from . import _accel, optimizer
from .gellmann import bloch_decompose, script_f, su_algebra
from .linalg import is_unitary, singular_values
from .optimizer import OptimizerConfig, unitary_from_params, params_from_unitary
from .states import BipartiteState, partial_trace

# Values this close below zero are floating-point noise near classical states.
RADICAND_CLAMP = 1e-12
RADICAND_ERROR = 1e-9


@dataclass(frozen=True)
class BasisCandidate:
    """An orthonormal B-side basis, held as the columns of a unitary."""

    dB: int
    U: np.ndarray

    def __post_init__(self):
        if self.U.shape != (self.dB, self.dB):
            raise ValueError(f"basis matrix shape {self.U.shape} does not match dB={self.dB}")
        if not is_unitary(self.U):
            raise ValueError("basis matrix is not unitary within 1e-9")

    @classmethod
    def canonical(cls, dB: int) -> "BasisCandidate":
        return cls(dB, np.eye(dB, dtype=np.complex128))


@dataclass(frozen=True)
class MeasureResult:
    """A computed correlation value plus how it was obtained."""

    value: float
    p: float
    method: str  # closed | direct | optimized
    basis: BasisCandidate
    diagnostics: optimizer.MinimizeDiagnostics | None = None

    @property
    def flagged(self) -> bool:
        return self.diagnostics is not None and not self.diagnostics.converged


def _basis_matrix(basis) -> np.ndarray:
    if isinstance(basis, BasisCandidate):
        return basis.U
    return np.asarray(basis, dtype=np.complex128)


def a_block(state: BipartiteState, basis, i: int, j: int) -> np.ndarray:
    """The dA x dA block <phi_i^B| rho |phi_j^B> (partial inner product).

    The block set is closed under the adjoint: a_block(i, j)^dag equals
    a_block(j, i) exactly.
    """
    u = _basis_matrix(basis)
    if not 0 <= i < state.dB or not 0 <= j < state.dB:
        raise IndexError(f"block indices ({i}, {j}) out of range for dB={state.dB}")
    t = state.as_tensor()
    return np.einsum("m,ambn,n->ab", u[:, i].conj(), t, u[:, j])


def schatten_norm(m, p: float) -> float:
    """(sum_k sigma_k^p)^(1/p) over the singular values."""
    if p < 1:
        raise ValueError(f"Schatten norms need p >= 1, got {p}")
    s = singular_values(m)
    if s.size == 0:
        return 0.0
    return float(np.sum(s**p) ** (1.0 / p))


def d_p_in_basis(state: BipartiteState, basis, p: float) -> float:
    """Basis score: p-sum of commutator norms over unordered block pairs.

    Each unordered pair of distinct block indices is counted once, which
    equals half the sum over ordered pairs since swapping only flips the
    commutator's sign.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    u = _basis_matrix(basis)
    pt = _accel.pair_tensor(state.rho, state.dA, state.dB)
    return float(_accel.score_pow(pt, u, float(p)) ** (1.0 / p))


def d2_closed(state: BipartiteState) -> MeasureResult:
    """Closed-form p=2 measure from the Bloch data; no basis search.

    Value: (2 / (dA^2 dB^2)) * sqrt(-Tr{ F(T T^t) [dB x x^t + T T^t] })
    with F the adjoint-channel matrix of :func:`qcorr.gellmann.script_f`.
    """
    form = bloch_decompose(state)
    ttt = form.T @ form.T.T
    f_mat = script_f(ttt, su_algebra(state.dA))
    radicand = -float(np.trace(f_mat @ (state.dB * np.outer(form.x, form.x) + ttt)))
    if radicand < -RADICAND_ERROR:
        raise RuntimeError(
            f"negative radicand {radicand:.3e} in the closed p=2 formula; "
            "this indicates a convention bug, not bad input"
        )
    radicand = max(radicand, 0.0)
    value = 2.0 / (state.dA**2 * state.dB**2) * np.sqrt(radicand)
    return MeasureResult(
        value=value, p=2.0, method="closed",
        basis=BasisCandidate.canonical(state.dB),
    )


def _eigenbasis_start(state: BipartiteState) -> np.ndarray:
    rho_b = partial_trace(state, "A")
    _, vecs = np.linalg.eigh(0.5 * (rho_b + rho_b.conj().T))
    return params_from_unitary(vecs)


def d_p(state: BipartiteState, p: float, config: OptimizerConfig | None = None,
        method: str = "auto") -> MeasureResult:
    """The correlation measure: basis score minimized over B-side bases.

    For p = 2 the closed form is used (method 'auto' or 'closed'); other p
    run a multi-start simplex search over the unitary chart. 'direct'
    evaluates the canonical basis without searching and is retained as a
    test oracle. Non-convergence of the search is reported through the
    diagnostics, never raised.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if method == "auto":
        method = "closed" if p == 2 else "optimize"
    if method == "closed":
        if p != 2:
            raise ValueError("the closed form only exists for p = 2")
        return d2_closed(state)
    if method == "direct":
        value = d_p_in_basis(state, BasisCandidate.canonical(state.dB), p)
        return MeasureResult(
            value=max(value, 0.0), p=float(p), method="direct",
            basis=BasisCandidate.canonical(state.dB),
        )
    if method != "optimize":
        raise ValueError(f"unknown method {method!r}")

    config = config or OptimizerConfig()
    dB = state.dB
    pt = _accel.pair_tensor(state.rho, state.dA, state.dB)
    inv_p = 1.0 / p

    def objective(theta):
        u = unitary_from_params(theta, dB)
        return _accel.score_pow(pt, u, float(p)) ** inv_p

    warm = [_eigenbasis_start(state)]
    res = optimizer.minimize(objective, dB * dB - 1, config, extra_starts=warm)
    u_best = unitary_from_params(res.params, dB)
    return MeasureResult(
        value=max(res.value, 0.0), p=float(p), method="optimized",
        basis=BasisCandidate(dB, u_best), diagnostics=res.diagnostics,
    )


def lsb_score_pow(lambdas: np.ndarray, p: float) -> np.ndarray:
    """p-th power of the local-Schmidt-basis score, batched over the
    leading axes of ``lambdas`` (last axis = Schmidt numbers)."""
    lam = np.asarray(lambdas, dtype=float)
    d = lam.shape[-1]
    half = lam ** (p / 2.0)
    full = lam**p
    mu_half = half.sum(axis=-1)
    iu, ku = np.triu_indices(d, k=1)
    ai, ak = half[..., iu], half[..., ku]
    bi, bk = full[..., iu], full[..., ku]
    terms = ai * ak * ((bi + bk) + mu_half[..., None] * (ai + ak))
    return terms.sum(axis=-1)


def d_p_lsb_pure(lambdas, p: float) -> float:
    """Closed pure-state score in the local Schmidt basis.

    This equals the measure's tight upper bound for pure states and is
    the pure-state entanglement value used by the convex roof.
    """
    lam = np.asarray(lambdas, dtype=float)
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if lam.ndim != 1:
        raise ValueError("expected a 1-D Schmidt vector")
    if np.any(lam < -1e-12):
        raise ValueError("Schmidt numbers must be nonnegative")
    if abs(lam.sum() - 1.0) > 1e-9:
        raise ValueError(f"Schmidt numbers must sum to 1, got {lam.sum()!r}")
    lam = np.clip(lam, 0.0, None)
    return float(lsb_score_pow(lam, p) ** (1.0 / p))


def max_value(d: int, p: float) -> float:
    """The measure's maximum, attained on maximally entangled states."""
    return float((d * (d * d - 1)) ** (1.0 / p) / (d * d))


def lambda_p(rho_c, p: float) -> float:
    """Scale factor picked up under an ancilla on the unmeasured side.

    Equals (sum_i w_i^p)^(2/p) over the ancilla eigenvalues; 1 at p = 1
    and the purity at p = 2. Only defined for p in [1, 2] (the eigenbasis
    is the minimizer only in that range).
    """
    if not 1.0 <= p <= 2.0:
        raise ValueError(f"the ancilla factor is defined for p in [1, 2], got {p}")
    a = np.asarray(rho_c, dtype=np.complex128)
    w = np.linalg.eigvalsh(0.5 * (a + a.conj().T))
    w = np.clip(w, 0.0, None)
    return float(np.sum(w**p) ** (2.0 / p))
