"""Runnable property suite covering every module's invariants.

Each check samples randomized instances (deterministically per seed),
measures the worst residual against the invariant's tolerance, and
reports it. The 'quick' level trims sample counts for a sub-minute run;
'full' uses the counts the invariants are stated at.
"""

from dataclasses import dataclass

import numpy as np

from . import _accel, baselines, entanglement, gellmann, linalg, measures, optimizer, states
from .measures import BasisCandidate
from .optimizer import OptimizerConfig


@dataclass
class CheckResult:
    name: str
    ok: bool
    worst: float
    tol: float
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        note = f"  ({self.note})" if self.note else ""
        return f"[{status}] {self.name}: worst {self.worst:.3e} vs tol {self.tol:.1e}{note}"


_CHECKS = []


def _check(name):
    def deco(fn):
        _CHECKS.append((name, fn))
        return fn

    return deco


def _n(level, quick, full):
    return quick if level == "quick" else full


def _random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


@_check("linalg-reconstruction")
def _linalg_reconstruction(level, seed):
    rng = np.random.default_rng([seed, 1])
    worst = 0.0
    for _ in range(_n(level, 10, 40)):
        n = int(rng.integers(2, 17))
        m = _random_complex(rng, n)
        h = m + m.conj().T
        w, v = linalg.hermitian_eig(h)
        worst = max(worst, np.abs(h @ v - v * w).max() / max(1.0, np.abs(w).max()))
        worst = max(worst, np.abs(v.conj().T @ v - np.eye(n)).max())
        s = linalg.singular_values(m)
        worst = max(worst, abs(np.sum(s**2) - np.sum(np.abs(m) ** 2))
                    / max(1.0, np.sum(np.abs(m) ** 2)))
        u = linalg.matrix_exp_i(h)
        worst = max(worst, np.abs(u.conj().T @ u - np.eye(n)).max())
        worst = max(worst, np.abs(u @ linalg.matrix_exp_i(-h) - np.eye(n)).max())
    return CheckResult("linalg-reconstruction", worst <= 1e-9, worst, 1e-9)


@_check("states-factories")
def _states_factories(level, seed):
    rng = np.random.default_rng([seed, 2])
    worst = 0.0
    for a in np.linspace(-1, 1, _n(level, 5, 11)):
        st = states.werner(float(a))
        pur = states.purity(st.rho)
        worst = max(worst, max(1.0 / st.dim - pur, pur - 1.0, 0.0))
    for _ in range(_n(level, 5, 20)):
        p, s0, s1 = rng.uniform(0, 1, 3)
        st = states.qc_state(p, s0, s1, rng.uniform(0, np.pi))
        pur = states.purity(st.rho)
        worst = max(worst, max(1.0 / st.dim - pur, pur - 1.0, 0.0))
        dA, dB = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        rank = int(rng.integers(1, dA * dB + 1))
        st = states.random_state(dA, dB, rank, seed=int(rng.integers(2**31)))
        pur = states.purity(st.rho)
        worst = max(worst, max(1.0 / st.dim - pur, pur - 1.0, 0.0))
        lam = rng.dirichlet(np.ones(int(rng.integers(2, 5))))
        lam = np.sort(lam)[::-1]
        sch = states.schmidt(states.pure_from_schmidt(lam))
        worst = max(worst, np.abs(sch.coefficients - lam).max())
        worst = max(worst, abs(sch.coefficients.sum() - 1.0))
        rc = states.random_state(1, 2, 2, seed=int(rng.integers(2**31))).rho
        anc = states.attach_ancilla(st, rc)
        back = states.trace_out_ancilla(anc, 2)
        worst = max(worst, np.abs(back.rho - st.rho).max())
    return CheckResult("states-factories", worst <= 1e-10, worst, 1e-10)


@_check("su-structure")
def _su_structure(level, seed):
    worst = 0.0
    for d in (2, 3, 4):
        alg = gellmann.su_algebra(d)
        g, f = alg.generators, alg.structure_constants
        gram = np.einsum("iab,jba->ij", g, g)
        worst = max(worst, np.abs(gram - 2 * np.eye(alg.n)).max())
        comm = np.einsum("iab,jbc->ijac", g, g) - np.einsum("jab,ibc->ijac", g, g)
        recon = 1j * np.einsum("ijk,kac->ijac", f, g)
        worst = max(worst, np.abs(comm - recon).max())
        worst = max(worst, np.abs(f + np.swapaxes(f, 0, 1)).max())
        worst = max(worst, np.abs(f + np.transpose(f, (0, 2, 1))).max())
    rng = np.random.default_rng([seed, 3])
    for _ in range(_n(level, 10, 30)):
        t = rng.standard_normal((3, 3))
        q = t @ t.T
        fm = gellmann.script_f(q, gellmann.su_algebra(2))
        worst = max(worst, np.abs(fm - gellmann.script_f_qubit(q)).max())
        worst = max(worst, np.abs(fm - fm.T).max())
        worst = max(worst, max(np.linalg.eigvalsh(fm).max(), 0.0))
    return CheckResult("su-structure", worst <= 1e-9, worst, 1e-9)


@_check("bloch-roundtrip")
def _bloch_roundtrip(level, seed):
    rng = np.random.default_rng([seed, 4])
    worst = 0.0
    for dA, dB in [(2, 2), (2, 3), (3, 3)]:
        for _ in range(_n(level, 3, 10)):
            st = states.random_state(dA, dB, dA * dB, seed=int(rng.integers(2**31)))
            form = gellmann.bloch_decompose(st)
            back = gellmann.bloch_reconstruct(form, dA, dB)
            worst = max(worst, np.abs(back.rho - st.rho).max())
    # linearity in rho
    s1 = states.random_state(2, 2, 4, seed=int(rng.integers(2**31)))
    s2 = states.random_state(2, 2, 4, seed=int(rng.integers(2**31)))
    alpha = 0.3
    mix = states.validate(alpha * s1.rho + (1 - alpha) * s2.rho, 2, 2)
    fm, f1, f2 = (gellmann.bloch_decompose(s) for s in (mix, s1, s2))
    worst = max(worst, np.abs(fm.T - alpha * f1.T - (1 - alpha) * f2.T).max())
    worst = max(worst, np.abs(fm.x - alpha * f1.x - (1 - alpha) * f2.x).max())
    return CheckResult("bloch-roundtrip", worst <= 1e-10, worst, 1e-10)


@_check("basis-independence-p2")
def _basis_independence(level, seed):
    rng = np.random.default_rng([seed, 5])
    n_states, n_bases = (_n(level, 6, 20), _n(level, 6, 20))
    worst = 0.0
    for dA, dB in [(2, 2), (2, 3)]:
        for _ in range(n_states // 2):
            st = states.random_state(dA, dB, dA * dB, seed=int(rng.integers(2**31)))
            closed = measures.d2_closed(st).value
            vals = [
                measures.d_p_in_basis(
                    st, states.random_unitary(dB, int(rng.integers(2**31))), 2.0)
                for _ in range(n_bases)
            ]
            worst = max(worst, max(vals) - min(vals))
            worst = max(worst, max(abs(v - closed) for v in vals))
    return CheckResult("basis-independence-p2", worst <= 1e-9, worst, 1e-9)


def _random_cq(rng, dA=2, dB=2):
    k = int(rng.integers(2, dA + 1))
    w = rng.dirichlet(np.ones(k))
    basis = states.random_unitary(dA, int(rng.integers(2**31)))[:, :k]
    bs = [states.random_state(1, dB, dB, seed=int(rng.integers(2**31))).rho for _ in range(k)]
    return states.cq_state(w, basis, bs)


@_check("cq-zero-set")
def _cq_zero(level, seed):
    rng = np.random.default_rng([seed, 6])
    worst = 0.0
    for _ in range(_n(level, 15, 50)):
        st = _random_cq(rng)
        for p in (1.0, 2.0, 3.0):
            worst = max(worst, measures.d_p_in_basis(st, BasisCandidate.canonical(st.dB), p))
            u = states.random_unitary(st.dB, int(rng.integers(2**31)))
            worst = max(worst, measures.d_p_in_basis(st, u, p))
        worst = max(worst, measures.d2_closed(st).value)
    cfg = OptimizerConfig(starts=2, max_iterations=200, seed=seed)
    for _ in range(3):
        st = _random_cq(rng)
        worst = max(worst, measures.d_p(st, 1.0, cfg).value)
    return CheckResult("cq-zero-set", worst <= 1e-8, worst, 1e-8)


@_check("block-adjoint-closure")
def _block_adjoint(level, seed):
    rng = np.random.default_rng([seed, 7])
    worst = 0.0
    for _ in range(_n(level, 5, 15)):
        st = states.random_state(2, 3, 6, seed=int(rng.integers(2**31)))
        u = states.random_unitary(3, int(rng.integers(2**31)))
        for i in range(3):
            for j in range(3):
                worst = max(worst, np.abs(
                    measures.a_block(st, u, i, j).conj().T - measures.a_block(st, u, j, i)
                ).max())
        total = sum(measures.a_block(st, u, i, i) for i in range(3))
        worst = max(worst, np.abs(total - states.partial_trace(st, "B")).max())
    return CheckResult("block-adjoint-closure", worst <= 1e-13, worst, 1e-13)


@_check("pair-sum-half-identity")
def _pair_sum(level, seed):
    rng = np.random.default_rng([seed, 8])
    worst = 0.0
    for _ in range(_n(level, 5, 15)):
        dA, dB = 2, int(rng.integers(2, 4))
        st = states.random_state(dA, dB, dA * dB, seed=int(rng.integers(2**31)))
        u = states.random_unitary(dB, int(rng.integers(2**31)))
        p = float(rng.uniform(1, 3))
        blocks = _accel.blocks_in_basis(
            _accel.pair_tensor(st.rho, dA, dB), u).reshape(dB * dB, dA, dA)
        ordered = 0.0
        for i in range(dB * dB):
            for j in range(dB * dB):
                comm = blocks[i] @ blocks[j] - blocks[j] @ blocks[i]
                ordered += float(np.sum(np.linalg.svd(comm, compute_uv=False) ** p))
        unordered = measures.d_p_in_basis(st, u, p) ** p
        worst = max(worst, abs(unordered - ordered / 2.0) / max(1.0, ordered))
    return CheckResult("pair-sum-half-identity", worst <= 1e-12, worst, 1e-12)


@_check("local-unitary-invariance")
def _lu_invariance(level, seed):
    rng = np.random.default_rng([seed, 9])
    worst2 = 0.0
    for _ in range(_n(level, 8, 20)):
        st = states.random_state(2, 2, 4, seed=int(rng.integers(2**31)))
        ua = states.random_unitary(2, int(rng.integers(2**31)))
        ub = states.random_unitary(2, int(rng.integers(2**31)))
        rot = states.validate(
            linalg.kron(ua, ub) @ st.rho @ linalg.kron(ua, ub).conj().T, 2, 2)
        worst2 = max(worst2, abs(measures.d2_closed(st).value - measures.d2_closed(rot).value))
    ok2 = worst2 <= 1e-8
    worst1 = 0.0
    cfg = OptimizerConfig(starts=8, seed=seed)
    for _ in range(_n(level, 3, 6)):
        st = states.random_state(2, 2, 2, seed=int(rng.integers(2**31)))
        ua = states.random_unitary(2, int(rng.integers(2**31)))
        ub = states.random_unitary(2, int(rng.integers(2**31)))
        rot = states.validate(
            linalg.kron(ua, ub) @ st.rho @ linalg.kron(ua, ub).conj().T, 2, 2)
        worst1 = max(worst1, abs(measures.d_p(st, 1.0, cfg).value
                                 - measures.d_p(rot, 1.0, cfg).value))
    ok1 = worst1 <= 1e-3
    return CheckResult(
        "local-unitary-invariance", ok2 and ok1, max(worst2, worst1), 1e-3,
        note=f"p=2 worst {worst2:.2e} (tol 1e-8), p=1 worst {worst1:.2e} (tol 1e-3)")


@_check("pure-upper-bound")
def _pure_upper_bound(level, seed):
    rng = np.random.default_rng([seed, 10])
    worst = -np.inf
    cfg = OptimizerConfig(starts=6, seed=seed)
    for _ in range(_n(level, 5, 15)):
        psi = states.random_pure(2, 2, seed=int(rng.integers(2**31)))
        lam = states.schmidt(psi).coefficients
        lam = lam / lam.sum()
        st = psi.to_density()
        for p in (1.0, 2.0):
            bound = measures.d_p_lsb_pure(lam, p)
            got = measures.d_p(st, p, cfg).value
            worst = max(worst, got - bound)
    return CheckResult("pure-upper-bound", worst <= 1e-6, worst, 1e-6)


@_check("ancilla-factorization")
def _ancilla(level, seed):
    rng = np.random.default_rng([seed, 11])
    ancillas = [np.diag([0.7, 0.3]).astype(complex),
                states.random_state(1, 2, 2, seed=int(rng.integers(2**31))).rho]
    worst2 = 0.0
    for a in np.linspace(-1, 1, _n(level, 3, 5)):
        st = states.werner(float(a))
        for rc in ancillas:
            ext = states.attach_ancilla(st, rc)
            worst2 = max(worst2, abs(
                measures.d2_closed(ext).value
                - measures.d2_closed(st).value * measures.lambda_p(rc, 2.0)))
    ok2 = worst2 <= 1e-8
    worst1 = 0.0
    cfg = OptimizerConfig(starts=6, seed=seed)
    for lam in (0.25, 0.4):
        st = states.pure_from_schmidt([lam, 1 - lam]).to_density()
        ext = states.attach_ancilla(st, ancillas[0])
        worst1 = max(worst1, abs(
            measures.d_p(ext, 1.0, cfg).value - measures.d_p(st, 1.0, cfg).value))
    ok1 = worst1 <= 1e-3
    # eigenbasis minimality of the ancilla factor within p in [1, 2]
    worst_min = 0.0
    rc = states.random_state(1, 2, 2, seed=int(rng.integers(2**31))).rho
    for p in (1.0, 1.5, 2.0):
        base = measures.lambda_p(rc, p)
        for _ in range(5):
            u = states.random_unitary(2, int(rng.integers(2**31)))
            rot = u.conj().T @ rc @ u
            sampled = float(np.sum(np.abs(rot) ** p) ** (2.0 / p))
            worst_min = max(worst_min, base - sampled)
    return CheckResult(
        "ancilla-factorization", ok2 and ok1 and worst_min <= 1e-12,
        max(worst2, worst1), 1e-3,
        note=f"p=2 worst {worst2:.2e} (tol 1e-8), p=1 worst {worst1:.2e} (tol 1e-3)")


@_check("maximum-bound")
def _max_bound(level, seed):
    rng = np.random.default_rng([seed, 12])
    cfg = OptimizerConfig(starts=6, max_iterations=600, seed=seed)
    worst = -np.inf
    for _ in range(_n(level, 30, 200)):
        rank = int(rng.integers(1, 5))
        st = states.random_state(2, 2, rank, seed=int(rng.integers(2**31)))
        for p in (1.0, 2.0, 3.0):
            if p == 2.0:
                got = measures.d2_closed(st).value
            else:
                got = measures.d_p(st, p, cfg).value
            worst = max(worst, got - measures.max_value(2, p))
    return CheckResult("maximum-bound", worst <= 1e-9, worst, 1e-9)


@_check("schur-concavity")
def _schur(level, seed):
    n = _n(level, 1000, 10000)
    worst = -np.inf
    ok = True
    for d, p in [(2, 1.0), (2, 2.0), (2, 3.0), (3, 1.0)]:
        rep = entanglement.schur_concavity_check(p, d, samples=n, seed=seed)
        ok = ok and rep.violations == 0
        worst = max(worst, rep.worst_value)
    rep4 = entanglement.schur_concavity_check(4.0, 2, samples=n, seed=seed)
    ok = ok and rep4.violations > 0
    return CheckResult(
        "schur-concavity", ok, worst, 1e-8,
        note=f"p=4 control violations: {rep4.violations} (must be > 0)")


@_check("optimizer-contracts")
def _optimizer_contracts(level, seed):
    def two_well(x):
        return min(float((x[0] - 1.0) ** 2), float((x[0] + 2.0) ** 2) + 0.5)

    cfg = OptimizerConfig(starts=4, seed=seed)
    r1 = optimizer.minimize(two_well, 1, cfg)
    r2 = optimizer.minimize(two_well, 1, cfg)
    deterministic = (r1.value == r2.value) and np.array_equal(r1.params, r2.params)
    prefix_ok = True
    prev = np.inf
    for n_starts in (1, 2, 4, 8):
        r = optimizer.minimize(two_well, 1, OptimizerConfig(starts=n_starts, seed=seed))
        prefix_ok = prefix_ok and r.value <= prev + 1e-15
        prev = r.value
    agg_ok = all(r1.value <= v + 1e-15 for v in r1.diagnostics.start_values)
    found_global = abs(r1.value) <= 1e-8
    ok = deterministic and prefix_ok and agg_ok and found_global
    return CheckResult("optimizer-contracts", ok, abs(r1.value), 1e-8)


@_check("roof-sanity")
def _roof(level, seed):
    cfg = OptimizerConfig(starts=2, max_iterations=300, seed=seed)
    psi = states.pure_from_schmidt([0.3, 0.7])
    worst = abs(entanglement.e_p_convex_roof(psi.to_density(), 1.0, cfg)
                - entanglement.e_p_pure(psi, 1.0))
    ok = worst <= 1e-6
    sep = states.cq_state(
        [0.6, 0.4], np.eye(2),
        [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    v_sep = entanglement.e_p_convex_roof(sep, 1.0, cfg)
    ok = ok and v_sep <= 1e-4
    v_singlet = entanglement.e_p_convex_roof(states.werner(-1.0), 1.0, cfg)
    ok = ok and abs(v_singlet - 1.5) <= 1e-4
    worst = max(worst, v_sep, abs(v_singlet - 1.5))
    return CheckResult("roof-sanity", ok, worst, 1e-4)


@_check("werner-qc-chains")
def _chains(level, seed):
    cfg = OptimizerConfig(starts=4, seed=seed)
    worst = 0.0
    for a in (-1.0, -0.5, 0.0, 0.25, 1.0):
        st = states.werner(a)
        d1 = measures.d_p(st, 1.0, cfg).value
        d2 = measures.d2_closed(st).value
        dg = baselines.geometric_discord_2q(st)
        worst = max(worst, abs(d1 - np.sqrt(6) * d2), abs(d1 - 3 * dg),
                    abs(dg - baselines.one_norm_gd_werner(a)))
    for p in np.linspace(0.1, 0.9, _n(level, 3, 5)):
        for phi in np.linspace(0.2, np.pi - 0.2, _n(level, 3, 5)):
            params = baselines.QcParams(float(p), 1 / 3, 1 / 3, float(phi))
            st = states.qc_state(params.p, params.s0, params.s1, params.phi)
            d1 = measures.d_p(st, 1.0, cfg).value
            d2 = measures.d2_closed(st).value
            worst = max(worst, abs(d1 - np.sqrt(2) * d2),
                        abs(d1 - baselines.q_measure_qc(params) / 4))
    return CheckResult("werner-qc-chains", worst <= 1e-4, worst, 1e-4)


def run(level: str = "quick", seed: int = 0) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    return [fn(level, seed) for _, fn in _CHECKS]
