"""Comparison measures: geometric discord, its one-norm variant, and the
cross-product measure for the quantum-classical family.

Geometric discord uses the textbook Bloch normalization (plain Pauli
traces), independent of the dimension-scaled coherence data used by the
commutator measures; for two qubits the two conventions coincide.
"""

from dataclasses import dataclass

import numpy as np

from .states import BipartiteState

_PAULIS = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
]).astype(np.complex128)


@dataclass(frozen=True)
class QcParams:
    """Parameters of the quantum-classical family (see states.qc_state)."""

    p: float
    s0: float
    s1: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not 0.0 <= self.s0 <= 1.0 or not 0.0 <= self.s1 <= 1.0:
            raise ValueError("Bloch lengths must lie in [0, 1]")
        if not 0.0 <= self.phi <= np.pi:
            raise ValueError(f"phi must lie in [0, pi], got {self.phi}")


def geometric_discord_2q(state: BipartiteState) -> float:
    """Geometric discord of a two-qubit state, measured side A.

    Closed form: (||x||^2 + ||T||_F^2 - k_max) / 4 with x, T the plain
    Pauli expectation data and k_max the largest eigenvalue of
    x x^t + T T^t.
    """
    if state.dA != 2 or state.dB != 2:
        raise ValueError("geometric discord closed form needs a two-qubit state")
    t4 = state.as_tensor()
    rho_a = np.einsum("ambm->ab", t4)
    x = np.einsum("iab,ba->i", _PAULIS, rho_a).real
    T = np.einsum("iab,jmn,bnam->ij", _PAULIS, _PAULIS, t4).real
    k = np.linalg.eigvalsh(np.outer(x, x) + T @ T.T)
    return float(0.25 * (x @ x + np.sum(T * T) - k[-1]))


def geometric_discord_werner(a: float) -> float:
    """Closed value on the Werner family: (1 - 2a)^2 / 18."""
    return (1.0 - 2.0 * a) ** 2 / 18.0


def one_norm_gd_qc(params: QcParams) -> float:
    """One-norm geometric discord of the quantum-classical family."""
    return 0.5 * np.sin(params.phi) * min(params.p * params.s0,
                                          (1.0 - params.p) * params.s1)


def one_norm_gd_werner(a: float) -> float:
    """One-norm geometric discord on the Werner family; coincides with the
    two-norm value there."""
    return geometric_discord_werner(a)


def q_measure_qc(params: QcParams) -> float:
    """Cross-product correlation measure 4 p (1-p) |s0 x s1| of the
    quantum-classical family."""
    return 4.0 * params.p * (1.0 - params.p) * params.s0 * params.s1 * np.sin(params.phi)
