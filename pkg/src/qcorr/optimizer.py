"""Derivative-free multi-start minimization over orthonormal-basis charts.

Basis candidates live on the unitary group, reached through the single
exponential chart U(theta) = exp(i sum_r theta_r g_r) over the su(d)
generators. The global phase is dropped deliberately; it cancels in every
block-commutator norm, so the flat torus directions it leaves behind do
not hurt the simplex descent.

Determinism contract: identical (objective, dimension, config, warm
starts) produce bit-identical results. Random starts are seeded per
(config.seed, start index), so start lists are prefix-stable in the start
count and independent starts may run concurrently.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize

from .gellmann import gellmann_matrices
from .linalg import matrix_exp_i

SIMPLEX_STEP = 0.25  # radians, curvature scale of su(2)-su(3) objectives


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 16
    max_iterations: int = 2000
    function_tolerance: float = 1e-9
    parameter_tolerance: float = 1e-8
    seed: int = 0
    include_canonical_starts: bool = True

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.function_tolerance <= 0 or self.parameter_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class MinimizeDiagnostics:
    starts_used: int
    iterations: int
    best_start: int
    gap: float  # second-best terminal value minus best; inf for one start
    converged: bool
    start_values: list = field(default_factory=list)


@dataclass
class MinimizeResult:
    params: np.ndarray
    value: float
    diagnostics: MinimizeDiagnostics


def unitary_from_params(theta, d: int) -> np.ndarray:
    """exp(i sum_r theta_r g_r) over the su(d) generator set."""
    th = np.asarray(theta, dtype=float)
    n = d * d - 1
    if th.shape != (n,):
        raise ValueError(f"parameter vector has shape {th.shape}, expected ({n},)")
    if d == 1:
        return np.eye(1, dtype=np.complex128)
    h = np.tensordot(th, gellmann_matrices(d), axes=1)
    return matrix_exp_i(h)


def params_from_unitary(u: np.ndarray) -> np.ndarray:
    """Chart coordinates whose exponential reproduces the basis of ``u``.

    The determinant phase is split off first (it only rephases every basis
    vector jointly), then the traceless part of -i log(u) is projected on
    the generators.
    """
    u = np.asarray(u, dtype=np.complex128)
    d = u.shape[0]
    if d == 1:
        return np.zeros(0)
    det = np.linalg.det(u)
    u = u * det ** (-1.0 / d)
    h = -1j * scipy.linalg.logm(u)
    h = 0.5 * (h + h.conj().T)
    h -= (np.trace(h) / d) * np.eye(d)
    gens = gellmann_matrices(d)
    return 0.5 * np.einsum("rab,ba->r", gens, h).real


def _initial_simplex(x0: np.ndarray) -> np.ndarray:
    dim = x0.size
    simplex = np.tile(x0, (dim + 1, 1))
    for i in range(dim):
        simplex[i + 1, i] += SIMPLEX_STEP
    return simplex


def minimize(objective, dimension: int, config: OptimizerConfig | None = None,
             extra_starts=()) -> MinimizeResult:
    """Multi-start Nelder-Mead descent; returns the minimum across starts.

    Start list: the canonical zero point, caller-supplied warm starts
    (e.g. a reduced-state eigenbasis), then ``config.starts`` seeded
    uniform draws from [-pi, pi]^dimension.
    """
    config = config or OptimizerConfig()
    if dimension == 0:
        val = float(objective(np.zeros(0)))
        diag = MinimizeDiagnostics(1, 0, 0, np.inf, True, [val])
        return MinimizeResult(np.zeros(0), val, diag)

    starts: list[np.ndarray] = []
    if config.include_canonical_starts:
        starts.append(np.zeros(dimension))
    for w in extra_starts:
        w = np.asarray(w, dtype=float)
        if w.shape != (dimension,):
            raise ValueError(f"warm start has shape {w.shape}, expected ({dimension},)")
        starts.append(w)
    for i in range(config.starts):
        rng = np.random.default_rng([config.seed, i])
        starts.append(rng.uniform(-np.pi, np.pi, dimension))

    best = None
    values = []
    total_iterations = 0
    for x0 in starts:
        res = scipy.optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": config.max_iterations,
                "fatol": config.function_tolerance,
                "xatol": config.parameter_tolerance,
                "initial_simplex": _initial_simplex(x0),
            },
        )
        values.append(float(res.fun))
        total_iterations += int(res.nit)
        if best is None or res.fun < best.fun:
            best = res

    order = np.argsort(values)
    best_idx = int(order[0])
    gap = float(values[order[1]] - values[order[0]]) if len(values) > 1 else np.inf
    diag = MinimizeDiagnostics(
        starts_used=len(starts),
        iterations=total_iterations,
        best_start=best_idx,
        gap=gap,
        converged=bool(best.success),
        start_values=values,
    )
    return MinimizeResult(np.asarray(best.x, dtype=float), float(best.fun), diag)
