"""Hot kernel for the commutator-norm basis score, numba and numpy paths.

The score is evaluated thousands of times inside the derivative-free basis
search, so it is compiled with numba when available. Setting the
environment variable ``QCORR_NO_NUMBA=1`` before import forces the pure
numpy path (also used automatically when numba is absent or fails to
import). ``benchmarks/bench_kernels.py`` compares the two.

Kernel contract: ``score_pow(P, U, p)`` returns

    sum over unordered block pairs I < J of  ||[B_I, B_J]||_p ** p

where ``B_I`` are the dA x dA measurement blocks of the state in the basis
given by the columns of ``U`` and ``P`` is the block tensor produced by
:func:`pair_tensor` (``P[m, n] = <., m| rho |., n>`` as a dA x dA matrix).
Self-pairs commute identically, so their exclusion loses nothing.
"""

import os

import numpy as np

_ENV_FLAG = "QCORR_NO_NUMBA"


def pair_tensor(rho: np.ndarray, dA: int, dB: int) -> np.ndarray:
    """Rearrange rho into the (dB, dB, dA, dA) block tensor the kernels use."""
    four = rho.reshape(dA, dB, dA, dB)
    return np.ascontiguousarray(np.transpose(four, (1, 3, 0, 2)))


def blocks_in_basis(P: np.ndarray, U: np.ndarray) -> np.ndarray:
    """All measurement blocks <phi_i| rho |phi_j> as a (dB, dB, dA, dA) array."""
    return np.einsum("mi,mnab,nj->ijab", U.conj(), P, U, optimize=True)


_TRIU_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _triu(nb: int) -> tuple[np.ndarray, np.ndarray]:
    if nb not in _TRIU_CACHE:
        _TRIU_CACHE[nb] = np.triu_indices(nb, k=1)
    return _TRIU_CACHE[nb]


def score_pow_numpy(P: np.ndarray, U: np.ndarray, p: float) -> float:
    dB = U.shape[0]
    dA = P.shape[2]
    b = blocks_in_basis(P, U).reshape(dB * dB, dA, dA)
    iu, ju = _triu(dB * dB)
    comm = b[iu] @ b[ju] - b[ju] @ b[iu]
    s = np.linalg.svd(comm, compute_uv=False)
    return float(np.sum(s**p))


def _build_numba_kernel():
    from numba import njit

    @njit(cache=True)
    def score_pow(P, U, p):  # pragma: no cover - exercised via dispatch
        dB = U.shape[0]
        dA = P.shape[2]
        nb = dB * dB
        blocks = np.zeros((nb, dA, dA), dtype=np.complex128)
        for i in range(dB):
            for j in range(dB):
                idx = i * dB + j
                for m in range(dB):
                    cmi = np.conj(U[m, i])
                    for n in range(dB):
                        w = cmi * U[n, j]
                        for a in range(dA):
                            for b in range(dA):
                                blocks[idx, a, b] += w * P[m, n, a, b]
        acc = 0.0
        for I in range(nb):
            for J in range(I + 1, nb):
                m = blocks[I] @ blocks[J] - blocks[J] @ blocks[I]
                s = np.linalg.svd(m)[1]
                for k in range(dA):
                    acc += s[k] ** p
        return acc

    return score_pow


def _resolve():
    if os.environ.get(_ENV_FLAG, "").strip().lower() in ("1", "true", "yes"):
        return score_pow_numpy, False
    try:
        return _build_numba_kernel(), True
    except ImportError:
        return score_pow_numpy, False


score_pow_numba = None
score_pow, USING_NUMBA = _resolve()
if USING_NUMBA:
    score_pow_numba = score_pow
