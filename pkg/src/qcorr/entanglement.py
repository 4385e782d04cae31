"""Entanglement from the pure-state score: convex roof, concurrence,
and the Schur-concavity evidence checker.

The local-Schmidt-basis score of a pure state is a symmetric function of
the Schmidt vector and is Schur concave (hence an entanglement monotone)
in the proven regimes: Schmidt dimension 2 with p <= 3, and dimension 3
with p = 1. Outside those regimes values are still computed but flagged
with :class:`UnverifiedMonotoneWarning`.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import optimizer
from .measures import d_p_lsb_pure, lsb_score_pow
from .optimizer import OptimizerConfig, unitary_from_params
from .states import BipartiteState, PureState, pure_state, schmidt

EIGENVALUE_CUTOFF = 1e-12


class UnverifiedMonotoneWarning(UserWarning):
    """The (p, d) regime has no proven monotonicity; value is heuristic."""


def _monotone_regime(d: int, p: float) -> bool:
    return d <= 2 and p <= 3 or d == 3 and p == 1


def _warn_if_unverified(d: int, p: float):
    if not _monotone_regime(d, p):
        warnings.warn(
            f"monotonicity of the pure-state score is unverified for "
            f"Schmidt dimension {d} with p={p}",
            UnverifiedMonotoneWarning,
            stacklevel=3,
        )


@dataclass(frozen=True)
class EnsembleDecomposition:
    """A pure-state ensemble realizing a mixed state."""

    weights: np.ndarray
    pure_states: list

    def assemble(self) -> np.ndarray:
        dim = self.pure_states[0].amplitudes.size
        rho = np.zeros((dim, dim), dtype=np.complex128)
        for w, psi in zip(self.weights, self.pure_states):
            rho += w * np.outer(psi.amplitudes, psi.amplitudes.conj())
        return rho


def e_p_pure(psi: PureState, p: float) -> float:
    """Pure-state entanglement: the local-Schmidt-basis score."""
    sch = schmidt(psi)
    _warn_if_unverified(min(psi.dA, psi.dB), p)
    return d_p_lsb_pure(sch.coefficients / sch.coefficients.sum(), p)


def concurrence_pure(psi: PureState) -> float:
    """2 sqrt(c1 c2) over the two largest Schmidt numbers (2x2 only)."""
    if psi.dA != 2 or psi.dB != 2:
        raise ValueError("concurrence is defined for two-qubit states")
    c = schmidt(psi).coefficients
    return float(2.0 * np.sqrt(np.clip(c[0] * c[1], 0.0, None)))


_SY_SY = np.kron(
    np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])
)


def concurrence(state: BipartiteState) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    if state.dA != 2 or state.dB != 2:
        raise ValueError("concurrence is defined for two-qubit states")
    rho = state.rho
    rho_tilde = _SY_SY @ rho.conj() @ _SY_SY
    evals = np.linalg.eigvals(rho @ rho_tilde)
    roots = np.sqrt(np.abs(np.sort(evals.real)[::-1]))
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def _ensemble_sizes(rank: int, cap: int) -> list[int]:
    sizes = sorted({rank, min(2 * rank, cap), cap})
    return [n for n in sizes if n >= rank]


def e_p_convex_roof(state: BipartiteState, p: float,
                    config: OptimizerConfig | None = None,
                    ensemble_cap: int | None = None) -> float:
    """Roof extension: infimum of ensemble-averaged pure-state scores.

    Every size-n decomposition of a rank-r state comes from an n x r
    isometry applied to the eigen-ensemble, so the search runs over
    isometries (leading columns of a chart unitary) for ensemble sizes up
    to ``ensemble_cap`` (default r^2). The identity isometry is always a
    start point, so the result never exceeds the eigen-ensemble average.
    """
    _warn_if_unverified(min(state.dA, state.dB), p)
    config = config or OptimizerConfig()
    w, v = np.linalg.eigh(0.5 * (state.rho + state.rho.conj().T))
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    keep = w > EIGENVALUE_CUTOFF
    w, v = w[keep], v[:, keep]
    rank = int(w.size)
    scaled = v * np.sqrt(w)  # columns sqrt(w_k) |v_k>

    def ensemble_value(iso: np.ndarray) -> float:
        tilde = scaled @ iso.T  # columns: unnormalized ensemble vectors
        weights = np.sum(np.abs(tilde) ** 2, axis=0)
        total = 0.0
        for i in range(tilde.shape[1]):
            if weights[i] < 1e-14:
                continue
            mat = tilde[:, i].reshape(state.dA, state.dB)
            lam = np.linalg.svd(mat, compute_uv=False) ** 2
            lam /= lam.sum()
            total += weights[i] * float(lsb_score_pow(lam, p) ** (1.0 / p))
        return total

    if rank == 1:
        return ensemble_value(np.eye(1))

    cap = ensemble_cap if ensemble_cap is not None else rank * rank
    best = np.inf
    for n in _ensemble_sizes(rank, cap):
        def objective(theta, n=n):
            u = unitary_from_params(theta, n)
            return ensemble_value(u[:, :rank])

        res = optimizer.minimize(objective, n * n - 1, config)
        best = min(best, res.value)
    return float(max(best, 0.0))


@dataclass(frozen=True)
class SchurReport:
    violations: int
    worst_value: float
    samples: int
    step: float


def schur_concavity_check(p: float, d: int, samples: int, seed: int) -> SchurReport:
    """Finite-difference test of the Schur condition on the score.

    Draws Schmidt vectors uniformly from the simplex interior (a margin
    keeps central differences of step 1e-6 away from the boundary) and
    checks (lam_i - lam_k)(dF/dlam_i - dF/dlam_k) <= tolerance for every
    coordinate pair; the partial derivatives treat the score as a function
    on R^d. Counts violations beyond 1e-8 and reports the worst product.
    """
    if d not in (2, 3):
        raise ValueError(f"the checker supports d in (2, 3), got {d}")
    step = 1e-6
    tol = 1e-8
    margin = 1e-4
    rng = np.random.default_rng(seed)
    lam = rng.dirichlet(np.ones(d), size=samples)
    lam = lam * (1.0 - d * margin) + margin

    grads = np.empty_like(lam)
    for i in range(d):
        plus = lam.copy()
        plus[:, i] += step
        minus = lam.copy()
        minus[:, i] -= step
        f_plus = lsb_score_pow(plus, p) ** (1.0 / p)
        f_minus = lsb_score_pow(minus, p) ** (1.0 / p)
        grads[:, i] = (f_plus - f_minus) / (2.0 * step)

    worst = -np.inf
    violations = 0
    for i in range(d):
        for k in range(i + 1, d):
            prod = (lam[:, i] - lam[:, k]) * (grads[:, i] - grads[:, k])
            worst = max(worst, float(prod.max()))
            violations += int(np.count_nonzero(prod > tol))
    return SchurReport(violations=violations, worst_value=worst,
                       samples=samples, step=step)


def eigen_ensemble(state: BipartiteState) -> EnsembleDecomposition:
    """The spectral decomposition as an ensemble (test helper)."""
    w, v = np.linalg.eigh(0.5 * (state.rho + state.rho.conj().T))
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    keep = w > EIGENVALUE_CUTOFF
    states = [pure_state(v[:, k], state.dA, state.dB) for k in np.nonzero(keep)[0]]
    return EnsembleDecomposition(weights=w[keep], pure_states=states)
