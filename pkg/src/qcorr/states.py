"""Bipartite density matrices: validation, factories, and manipulation.

Index convention, fixed once for the whole package: the joint basis is
|i_A, j_B> in row-major order with the B index fastest, matching
``linalg.kron(op_A, op_B)``. Every block extraction downstream relies on
this ordering.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import HERM_TOL, kron

TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10


class StateValidationError(ValueError):
    """Raised when a matrix fails the density-matrix invariants.

    Carries ``violations``, a list of (invariant name, measured residual)
    pairs, one entry per violated invariant.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(f"{name}: residual {res:.3e}" for name, res in self.violations)
        super().__init__(f"invalid density matrix ({detail})")


@dataclass(frozen=True)
class BipartiteState:
    """A validated density matrix with declared subsystem dimensions."""

    dA: int
    dB: int
    rho: np.ndarray

    @property
    def dim(self) -> int:
        return self.dA * self.dB

    def as_tensor(self) -> np.ndarray:
        """rho reshaped to (dA, dB, dA, dB), row indices first."""
        return self.rho.reshape(self.dA, self.dB, self.dA, self.dB)


@dataclass(frozen=True)
class PureState:
    """A unit-norm state vector on the joint system."""

    dA: int
    dB: int
    amplitudes: np.ndarray

    def to_density(self) -> BipartiteState:
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return validate(rho, self.dA, self.dB)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt data of a pure state: |psi> = sum_m sqrt(c_m) |e_m^A>|e_m^B>.

    ``coefficients`` are the Schmidt numbers (squared Schmidt coefficients),
    descending, summing to one.
    """

    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    def mu(self, q: float) -> float:
        """Power sum of the Schmidt numbers, sum_m c_m**q."""
        return float(np.sum(self.coefficients**q))


def pure_state(amplitudes, dA: int, dB: int) -> PureState:
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if amps.size != dA * dB:
        raise ValueError(f"amplitude vector has length {amps.size}, expected {dA * dB}")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return PureState(dA, dB, amps)


def validate(rho, dA: int, dB: int) -> BipartiteState:
    """Check the density-matrix invariants and wrap the result.

    Hermiticity, unit trace and positivity are each checked against their
    own tolerance; all violations are collected and reported together in
    the raised :class:`StateValidationError`.
    """
    a = linalg.as_complex_matrix(rho)
    n = dA * dB
    if a.shape != (n, n):
        raise ValueError(f"matrix shape {a.shape} does not match dA*dB = {n}")

    violations = []
    herm = linalg.herm_residual(a)
    if herm > HERM_TOL:
        violations.append(("hermiticity", herm))
    tr = abs(a.trace() - 1.0)
    if tr > TRACE_TOL:
        violations.append(("trace", float(tr)))
    w = np.linalg.eigvalsh(0.5 * (a + a.conj().T))
    min_eig = float(w.min())
    if min_eig < -POSITIVITY_TOL:
        violations.append(("positivity", -min_eig))

    if violations:
        raise StateValidationError(violations)
    return BipartiteState(dA, dB, a)


def partial_trace(state: BipartiteState, over: str) -> np.ndarray:
    """Reduced density matrix after tracing out subsystem 'A' or 'B'."""
    t = state.as_tensor()
    if over == "A":
        return np.einsum("aman->mn", t)
    if over == "B":
        return np.einsum("ambm->ab", t)
    raise ValueError(f"over must be 'A' or 'B', got {over!r}")


def purity(rho) -> float:
    a = np.asarray(rho)
    return float(np.real(np.einsum("ij,ji->", a, a)))


def schmidt(psi: PureState) -> SchmidtDecomposition:
    """Schmidt decomposition via SVD of the amplitude matrix."""
    c = psi.amplitudes.reshape(psi.dA, psi.dB)
    u, s, vh = np.linalg.svd(c)
    k = min(psi.dA, psi.dB)
    return SchmidtDecomposition(
        coefficients=(s[:k] ** 2),
        left_basis=u[:, :k],
        right_basis=vh[:k, :].conj().T,
    )


def pure_from_schmidt(lambdas) -> PureState:
    """Pure state sum_m sqrt(c_m)|mm> in the canonical product bases."""
    lam = np.asarray(lambdas, dtype=float)
    if np.any(lam < -1e-12):
        raise ValueError("Schmidt numbers must be nonnegative")
    if abs(lam.sum() - 1.0) > 1e-10:
        raise ValueError(f"Schmidt numbers must sum to 1, got {lam.sum()!r}")
    lam = np.clip(lam, 0.0, None)
    d = lam.size
    amps = np.zeros(d * d, dtype=np.complex128)
    for m in range(d):
        amps[m * d + m] = np.sqrt(lam[m])
    return pure_state(amps, d, d)


def maximally_entangled(d: int) -> PureState:
    return pure_from_schmidt(np.full(d, 1.0 / d))


def werner(a: float) -> BipartiteState:
    """Two-qubit Werner family ((2-a)/6) I + ((2a-1)/6) F, a in [-1, 1].

    F is the swap operator sum_kl |kl><lk|.
    """
    if not -1.0 <= a <= 1.0:
        raise ValueError(f"Werner parameter must lie in [-1, 1], got {a}")
    swap = np.zeros((4, 4), dtype=np.complex128)
    for k in range(2):
        for l in range(2):
            swap[k * 2 + l, l * 2 + k] = 1.0
    rho = ((2.0 - a) / 6.0) * np.eye(4) + ((2.0 * a - 1.0) / 6.0) * swap
    return validate(rho, 2, 2)


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _qubit_from_bloch(s: np.ndarray) -> np.ndarray:
    return 0.5 * (np.eye(2) + s[0] * _PAULI["x"] + s[1] * _PAULI["y"] + s[2] * _PAULI["z"])


def qc_state(p: float, s0: float, s1: float, phi: float) -> BipartiteState:
    """Two-qubit quantum-classical family, classical on the B side.

    rho = p * rho0_A x |0><0| + (1-p) * rho1_A x |1><1| where rho0, rho1
    are qubit states with Bloch vectors (0, 0, s0) and
    (s1 sin(phi), 0, s1 cos(phi)).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if not 0.0 <= s0 <= 1.0 or not 0.0 <= s1 <= 1.0:
        raise ValueError(f"Bloch lengths must lie in [0, 1], got s0={s0}, s1={s1}")
    if not 0.0 <= phi <= np.pi:
        raise ValueError(f"phi must lie in [0, pi], got {phi}")
    rho0 = _qubit_from_bloch(np.array([0.0, 0.0, s0]))
    rho1 = _qubit_from_bloch(np.array([s1 * np.sin(phi), 0.0, s1 * np.cos(phi)]))
    proj0 = np.diag([1.0, 0.0]).astype(np.complex128)
    proj1 = np.diag([0.0, 1.0]).astype(np.complex128)
    rho = p * kron(rho0, proj0) + (1.0 - p) * kron(rho1, proj1)
    return validate(rho, 2, 2)


def cq_state(weights, a_basis, b_states) -> BipartiteState:
    """Classical-quantum state sum_i w_i |a_i><a_i| x rho_i^B.

    ``a_basis`` holds the orthonormal A-side vectors as columns; zero-weight
    terms are dropped, so rank-deficient weight vectors are accepted.
    """
    w = np.asarray(weights, dtype=float)
    if np.any(w < -1e-12):
        raise ValueError("weights must be nonnegative")
    if abs(w.sum() - 1.0) > 1e-10:
        raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
    basis = linalg.as_complex_matrix(a_basis)
    dA = basis.shape[0]
    k = basis.shape[1]
    if len(b_states) != k or w.size != k:
        raise ValueError("weights, a_basis columns and b_states must have equal length")
    gram = basis.conj().T @ basis
    ortho = np.abs(gram - np.eye(k)).max()
    if ortho > 1e-9:
        raise ValueError(f"A basis columns are not orthonormal: residual {ortho:.3e}")
    bs = [linalg.as_complex_matrix(b) for b in b_states]
    dB = bs[0].shape[0]
    rho = np.zeros((dA * dB, dA * dB), dtype=np.complex128)
    for wi, ai, bi in zip(w, basis.T, bs):
        if wi == 0.0:
            continue
        rho += wi * kron(np.outer(ai, ai.conj()), bi)
    return validate(rho, dA, dB)


def random_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    R diagonal made positive. Deterministic per seed."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def random_state(dA: int, dB: int, rank: int, seed: int) -> BipartiteState:
    """Ginibre-induced random density matrix of the given rank."""
    n = dA * dB
    if not 1 <= rank <= n:
        raise ValueError(f"rank must lie in [1, {n}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = g @ g.conj().T
    rho /= rho.trace().real
    return validate(rho, dA, dB)


def random_pure(dA: int, dB: int, seed: int) -> PureState:
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(dA * dB) + 1j * rng.standard_normal(dA * dB)
    return pure_state(amps / np.linalg.norm(amps), dA, dB)


def attach_ancilla(state: BipartiteState, rho_c) -> BipartiteState:
    """Append an ancilla on the unmeasured side: rho -> rho x rho_C.

    The B side becomes the composite (B, C) with the C index fastest, so
    the package-wide ordering convention is preserved.
    """
    c = linalg.as_complex_matrix(rho_c)
    dC = c.shape[0]
    return validate(kron(state.rho, c), state.dA, state.dB * dC)


def trace_out_ancilla(state: BipartiteState, dC: int) -> BipartiteState:
    """Inverse of :func:`attach_ancilla` for a product ancilla."""
    dB = state.dB // dC
    t = state.rho.reshape(state.dA, dB, dC, state.dA, dB, dC)
    rho = np.einsum("abcdec->abde", t).reshape(state.dA * dB, state.dA * dB)
    return validate(rho, state.dA, dB)


# --- state file format -----------------------------------------------------
#
# A JSON document with integer fields dA, dB and row-major matrices re, im
# (arrays of rows). Floats are written with 17 significant digits so the
# serialization round-trips bit-exactly.


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dump_state(state: BipartiteState) -> str:
    rows_re = [
        "[" + ", ".join(_fmt(v) for v in row) + "]" for row in state.rho.real
    ]
    rows_im = [
        "[" + ", ".join(_fmt(v) for v in row) + "]" for row in state.rho.imag
    ]
    return (
        "{\n"
        f'  "dA": {state.dA},\n'
        f'  "dB": {state.dB},\n'
        '  "re": [\n    ' + ",\n    ".join(rows_re) + "\n  ],\n"
        '  "im": [\n    ' + ",\n    ".join(rows_im) + "\n  ]\n"
        "}\n"
    )


def save_state(state: BipartiteState, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_state(state))


def load_state(path) -> BipartiteState:
    """Parse and validate a state file; raises on schema or invariant errors."""
    with open(path) as fh:
        doc = json.load(fh)
    for key in ("dA", "dB", "re", "im"):
        if key not in doc:
            raise ValueError(f"state file is missing field {key!r}")
    dA, dB = int(doc["dA"]), int(doc["dB"])
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc["im"], dtype=float)
    if re.shape != im.shape:
        raise ValueError(f"re/im shapes differ: {re.shape} vs {im.shape}")
    return validate(re + 1j * im, dA, dB)
