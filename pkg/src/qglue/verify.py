"""Seeded property suites, shared by ``qglue verify`` and the test-suite.

Each suite returns a list of :class:`Check` records holding the worst
residual seen across its random instances.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import asymptotics as asy
from .channels import (
    PDI,
    Isometry,
    build_concatenation_degrader,
    concatenate,
    entropy_bias,
    make_pair,
    verify_degrading,
)
from .coherent_info import OptimizerConfig, glued_pair, q1_amplitude_glued, q1_dephrasure
from .erasure import (
    ErasureParams,
    erasure_degrader,
    erasure_pair,
    generalized_erasure,
    perfect_iso,
)
from .gluing import (
    BlockWeights,
    glue_block_diagonal,
    glue_convex,
    glue_direct_sum,
    glue_input_and_complement,
    injection,
    slice_isometry,
)
from .numkernel import (
    DimSplit,
    hermitian_spectrum,
    kron,
    partial_trace,
    shannon_entropy,
    swap_factors,
    von_neumann_entropy,
)
from .qubit_models import (
    amplitude_damping_iso,
    amplitude_degrader,
    bloch_to_rho,
    dephasing_iso,
    rho_to_bloch,
)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tol)


# -- random instances ---------------------------------------------------------


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_isometry(rng: np.random.Generator, d_a: int, d_b: int, d_c: int) -> Isometry:
    z = rng.standard_normal((d_b * d_c, d_a)) + 1j * rng.standard_normal((d_b * d_c, d_a))
    q, _ = np.linalg.qr(z)
    return Isometry(q, d_a, d_b, d_c)


def random_density(rng: np.random.Generator, d: int, rank: int | None = None) -> np.ndarray:
    k = rank or d
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    r = g @ g.conj().T
    return r / np.trace(r).real


def random_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def random_pdi(rng: np.random.Generator, sizes) -> PDI:
    u = random_unitary(rng, int(sum(sizes)))
    return PDI(tuple(u @ p @ u.conj().T for p in PDI.blocks(sizes).projectors))


def _blocks_of(m: np.ndarray, sizes) -> list[np.ndarray]:
    edges = np.concatenate([[0], np.cumsum(sizes)])
    return [m[a:b, a:b] for a, b in zip(edges[:-1], edges[1:])]


def _offblock(m: np.ndarray, sizes) -> float:
    mask = np.ones(m.shape, dtype=bool)
    edges = np.concatenate([[0], np.cumsum(sizes)])
    for a, b in zip(edges[:-1], edges[1:]):
        mask[a:b, a:b] = False
    return float(np.max(np.abs(m[mask]), initial=0.0))


# -- suites ---------------------------------------------------------------


def numkernel_suite(n: int = 100, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(
        ["kron mixed product", "partial trace swap", "partial trace preserves trace",
         "entropy concavity", "spectrum unitary invariance", "spectrum reconstruction"], 0.0)
    for _ in range(n):
        a, c = rng.standard_normal((2, 2)), rng.standard_normal((2, 2))
        b, d = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        worst["kron mixed product"] = max(
            worst["kron mixed product"], np.max(np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)))
        )
        m = random_hermitian(rng, 6)
        s = DimSplit(2, 3)
        r1 = partial_trace(swap_factors(m, s), DimSplit(3, 2), "left")
        worst["partial trace swap"] = max(worst["partial trace swap"], np.max(np.abs(r1 - partial_trace(m, s, "right"))))
        worst["partial trace preserves trace"] = max(
            worst["partial trace preserves trace"], abs(np.trace(partial_trace(m, s, "left")) - np.trace(m))
        )
        r, q = random_density(rng, 2), random_density(rng, 2)
        gap = 0.5 * von_neumann_entropy(r) + 0.5 * von_neumann_entropy(q) - von_neumann_entropy(0.5 * (r + q))
        worst["entropy concavity"] = max(worst["entropy concavity"], gap)
        h4 = random_hermitian(rng, 4)
        u = random_unitary(rng, 4)
        worst["spectrum unitary invariance"] = max(
            worst["spectrum unitary invariance"],
            np.max(np.abs(hermitian_spectrum(u @ h4 @ u.conj().T) - hermitian_spectrum(h4))),
        )
        w, v = np.linalg.eigh(h4)
        worst["spectrum reconstruction"] = max(
            worst["spectrum reconstruction"], np.max(np.abs(v @ np.diag(w) @ v.conj().T - h4))
        )
    tols = {"entropy concavity": 1e-12, "spectrum unitary invariance": 1e-10, "spectrum reconstruction": 1e-10}
    return [Check(k, float(v), tols.get(k, 1e-12)) for k, v in worst.items()]


def channels_suite(n: int = 100, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    w = dict.fromkeys(
        ["isometry closure", "trace preservation", "pure input equal spectra",
         "complement swap antisymmetry", "partial traces of concatenation",
         "erasure degrading map", "concatenation degrader"], 0.0)
    for _ in range(n):
        da, db, dc = int(rng.integers(2, 4)), int(rng.integers(2, 4)), int(rng.integers(1, 4))
        if db * dc < da:
            dc = da
        iso = random_isometry(rng, da, db, dc)
        pair = make_pair(iso)
        g = iso.matrix.conj().T @ iso.matrix
        w["isometry closure"] = max(w["isometry closure"], np.max(np.abs(g - np.eye(da))))
        a = random_hermitian(rng, da)
        w["trace preservation"] = max(
            w["trace preservation"],
            abs(np.trace(pair.B(a)) - np.trace(a)), abs(np.trace(pair.C(a)) - np.trace(a)),
        )
        psi = random_density(rng, da, rank=1)
        w["pure input equal spectra"] = max(w["pure input equal spectra"], abs(entropy_bias(pair, psi)))
        rho = random_density(rng, da)
        w["complement swap antisymmetry"] = max(
            w["complement swap antisymmetry"], abs(entropy_bias(pair, rho) + entropy_bias(pair.swapped(), rho))
        )
        second = make_pair(random_isometry(rng, db, 2, 2))
        cat = concatenate(pair, second)
        out = cat.C(rho)
        s = DimSplit(dc, 2)
        r1 = np.max(np.abs(partial_trace(out, s, "right") - pair.C(rho)))
        r2 = np.max(np.abs(partial_trace(out, s, "left") - second.C(pair.B(rho))))
        w["partial traces of concatenation"] = max(w["partial traces of concatenation"], r1, r2)
        lam = float(rng.uniform(0.0, 0.5))
        d = int(rng.integers(2, 5))
        w["erasure degrading map"] = max(
            w["erasure degrading map"],
            verify_degrading(erasure_pair(ErasureParams(lam, d)), erasure_degrader(lam, d), "B_to_C"),
        )
        p = float(rng.uniform(0.5, 1.0))
        pairs = (make_pair(perfect_iso(2)), make_pair(amplitude_damping_iso(p)))
        dg = build_concatenation_degrader(amplitude_degrader(p), "second_antidegradable", pairs)
        w["concatenation degrader"] = max(
            w["concatenation degrader"], verify_degrading(concatenate(*pairs), dg, "C_to_B")
        )
    return [Check(k, float(v), 1e-9) for k, v in w.items()]


def gluing_suite(n: int = 100, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    w = dict.fromkeys(
        ["glued isometry closure", "PDI axioms", "convex combination", "block diagonal outputs",
         "block entropy decomposition", "block bias decomposition", "block correlation",
         "input and complement gluing", "direct sum", "slice reconstruction"], 0.0)
    for _ in range(n):
        k = int(rng.integers(2, 4))
        sizes = [int(x) for x in rng.integers(1, 3, size=k)]
        pdi = random_pdi(rng, sizes)
        ps = pdi.projectors
        ax = max(np.max(np.abs(ps[0] @ ps[0] - ps[0])), np.max(np.abs(sum(ps) - np.eye(pdi.dim))))
        for i in range(k):
            for j in range(i):
                ax = max(ax, np.max(np.abs(ps[i] @ ps[j])))
        w["PDI axioms"] = max(w["PDI axioms"], ax)

        probs = rng.dirichlet(np.ones(k))
        bw = BlockWeights(tuple(probs))
        rho = random_density(rng, 2)
        parts = [random_isometry(rng, 2, 2, int(rng.integers(1, 3))) for _ in range(k)]
        cvx = make_pair(glue_convex(parts, bw))
        ref = sum(pj * make_pair(j).B(rho) for pj, j in zip(probs, parts))
        w["convex combination"] = max(w["convex combination"], np.max(np.abs(cvx.B(rho) - ref)))

        shapes = [(1, 2), (2, 1), (2, 2), (1, 3), (3, 2)]
        bparts = [random_isometry(rng, 2, *shapes[int(rng.integers(len(shapes)))]) for _ in range(k)]
        bd_iso = glue_block_diagonal(bparts, bw)
        bd = make_pair(bd_iso)
        subs = [make_pair(j) for j in bparts]
        bsz, csz = [j.d_b for j in bparts], [j.d_c for j in bparts]
        ob, oc = bd.B(rho), bd.C(rho)
        res = 0.0
        for pj, sp, blk_b, blk_c in zip(probs, subs, _blocks_of(ob, bsz), _blocks_of(oc, csz)):
            res = max(res, np.max(np.abs(blk_b - pj * sp.B(rho))), np.max(np.abs(blk_c - pj * sp.C(rho))))
        w["block diagonal outputs"] = max(w["block diagonal outputs"], res)
        w["block correlation"] = max(w["block correlation"], _offblock(ob, bsz), _offblock(oc, csz))
        lhs = von_neumann_entropy(ob)
        rhs = sum(pj * von_neumann_entropy(sp.B(rho)) for pj, sp in zip(probs, subs)) + shannon_entropy(probs)
        w["block entropy decomposition"] = max(w["block entropy decomposition"], abs(lhs - rhs))
        bias_rhs = sum(pj * entropy_bias(sp, rho) for pj, sp in zip(probs, subs))
        w["block bias decomposition"] = max(w["block bias decomposition"], abs(entropy_bias(bd, rho) - bias_rhs))

        # input and complement gluing over k qubit input blocks
        iparts = [random_isometry(rng, 2, 2, 2) for _ in range(k)]
        ic = make_pair(glue_input_and_complement(iparts))
        da = 2 * k
        big = random_density(rng, da)
        blocks = PDI.blocks([2] * k)
        ref = sum(make_pair(j).B(injection(pb).conj().T @ big @ injection(pb)) for j, pb in zip(iparts, blocks.projectors))
        w["input and complement gluing"] = max(w["input and complement gluing"], np.max(np.abs(ic.B(big) - ref)))

        ds_iso = glue_direct_sum(iparts)
        ds = make_pair(ds_iso)
        out_b = ds.B(big)
        res = _offblock(out_b, [2] * k)
        for j, pb, blk in zip(iparts, blocks.projectors, _blocks_of(out_b, [2] * k)):
            v = injection(pb)
            res = max(res, np.max(np.abs(blk - make_pair(j).B(v.conj().T @ big @ v))))
        w["direct sum"] = max(w["direct sum"], res)

        pdis = (blocks, PDI.blocks([2] * k), PDI.blocks([2] * k))
        total = sum(
            slice_isometry(ds_iso.matrix, pdis, (a, b, c))
            for a in range(k) for b in range(k) for c in range(k)
        )
        w["slice reconstruction"] = max(w["slice reconstruction"], np.max(np.abs(total - ds_iso.matrix)))
        for iso in (cvx.iso, bd_iso, ic.iso, ds_iso):
            g = iso.matrix.conj().T @ iso.matrix
            w["glued isometry closure"] = max(w["glued isometry closure"], np.max(np.abs(g - np.eye(iso.d_a))))
    tol = {"slice reconstruction": 1e-14}
    return [Check(k, float(v), tol.get(k, 1e-9)) for k, v in w.items()]


def erasure_suite(n: int = 20, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    w = dict.fromkeys(["erasure bias (1-2 lam) S", "generalized erasure blocks", "concatenation identity"], 0.0)
    for _ in range(n):
        lam = float(rng.uniform())
        d = int(rng.integers(2, 5))
        rho = random_density(rng, d)
        pair = erasure_pair(ErasureParams(lam, d))
        w["erasure bias (1-2 lam) S"] = max(
            w["erasure bias (1-2 lam) S"], abs(entropy_bias(pair, rho) - (1 - 2 * lam) * von_neumann_entropy(rho))
        )
        inner = random_isometry(rng, 2, 2, 2)
        ge = generalized_erasure(inner, lam)
        r2 = random_density(rng, 2)
        ob = ge.assembled.B(r2)
        ref = np.zeros((3, 3), dtype=complex)
        ref[:2, :2] = (1 - lam) * make_pair(inner).B(r2)
        ref[2, 2] = lam
        w["generalized erasure blocks"] = max(w["generalized erasure blocks"], np.max(np.abs(ob - ref)))
        after = concatenate(make_pair(inner), erasure_pair(ErasureParams(lam, 2)))
        w["concatenation identity"] = max(
            w["concatenation identity"], np.max(np.abs(after.B.matrix - ge.assembled.B.matrix))
        )
    return [Check(k, float(v), 1e-10) for k, v in w.items()]


def qubit_models_suite(n: int = 50, seed: int = 0) -> list[Check]:
    from .qubit_models import amplitude_bloch_maps, dephasing_bloch_maps

    rng = np.random.default_rng(seed)
    w = dict.fromkeys(["Bloch round trip", "amplitude Bloch maps", "dephasing Bloch maps",
                       "amplitude rotational symmetry", "dephrasure reflection symmetry"], 0.0)
    amp = make_pair(amplitude_damping_iso(0.3))
    dep = make_pair(dephasing_iso(0.3))
    ga, gd = glued_pair("amplitude", 0.3, 0.2), glued_pair("dephasing", 0.3, 0.2)
    for _ in range(n):
        v = rng.standard_normal(3)
        r = v / np.linalg.norm(v) * rng.uniform() ** (1 / 3)
        rho = bloch_to_rho(r)
        w["Bloch round trip"] = max(w["Bloch round trip"], np.max(np.abs(rho_to_bloch(rho) - r)))
        rb, rc = amplitude_bloch_maps(0.3, r)
        w["amplitude Bloch maps"] = max(
            w["amplitude Bloch maps"], np.max(np.abs(rho_to_bloch(amp.B(rho)) - rb)), np.max(np.abs(rho_to_bloch(amp.C(rho)) - rc))
        )
        rb, rc = dephasing_bloch_maps(0.3, r)
        w["dephasing Bloch maps"] = max(
            w["dephasing Bloch maps"], np.max(np.abs(rho_to_bloch(dep.B(rho)) - rb)), np.max(np.abs(rho_to_bloch(dep.C(rho)) - rc))
        )
        flat = bloch_to_rho((np.hypot(r[0], r[1]), 0.0, r[2]))
        w["amplitude rotational symmetry"] = max(
            w["amplitude rotational symmetry"], abs(entropy_bias(ga, rho) - entropy_bias(ga, flat))
        )
        mirror = bloch_to_rho((r[0], r[1], -r[2]))
        w["dephrasure reflection symmetry"] = max(
            w["dephrasure reflection symmetry"], abs(entropy_bias(gd, rho) - entropy_bias(gd, mirror))
        )
    return [Check(k, float(v), 1e-10) for k, v in w.items()]


def coherent_info_suite(n: int = 200, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    cfg = OptimizerConfig(seed=seed)
    checks = []
    for kind, p, lam in (("amplitude", 0.25, 0.2), ("amplitude", 0.1, 0.4), ("dephasing", 0.25, 0.17)):
        res = (q1_amplitude_glued if kind == "amplitude" else q1_dephrasure)(p, lam, cfg)
        pair = glued_pair(kind, p, lam)
        vals = np.array([entropy_bias(pair, random_density(rng, 2)) for _ in range(n)])
        checks.append(Check(f"{kind} ({p}, {lam}) max beats random states", float(np.max(vals) - res.q1_B), 1e-9))
        checks.append(Check(f"{kind} ({p}, {lam}) min beats random states", float(-res.q1_C - np.min(vals)), 1e-9))
        checks.append(Check(f"{kind} ({p}, {lam}) argmax consistency",
                            abs(entropy_bias(pair, res.argmax_state) - res.q1_B), 1e-9))
    return checks


def nonadditivity_suite(n: int = 20, seed: int = 0) -> list[Check]:
    from .nonadditivity import two_copy_pair

    rng = np.random.default_rng(seed)
    pair = glued_pair("amplitude", 0.25, 0.3)
    two = two_copy_pair(pair)
    worst = 0.0
    for _ in range(n):
        rho = random_density(rng, 2)
        worst = max(worst, abs(entropy_bias(two, np.kron(rho, rho)) - 2 * entropy_bias(pair, rho)))
    return [Check("two-copy additivity on product inputs", worst, 1e-10)]


# (coefficient set, p, lambda) at which the epsilon fit is checked
FIT_POINTS = (
    ("ad_q1B", 0.25, asy.lambda0(0.25) - 0.05),
    ("ad_q1C", 0.02, 0.3),
    ("ad_delta2", 0.25, asy.lambda0(0.25) - 0.05),
    ("deph_q1B", 0.25, asy.g_curve(0.25) - 0.05),
    ("deph_q1C", 0.02, 0.3),
)


def asymptotics_suite(n: int = 9, seed: int = 0) -> list[Check]:
    ps = np.linspace(0.05, 0.45, n)
    cond = max(asy.two_copy_condition(p) for p in ps)
    eps = np.array([1e-6, 1e-5, 1e-4])
    worst = 0.0
    for which, p, lam in FIT_POINTS:
        a, _ = asy.fit_template(asy.raw_bias(which, p, lam), eps)
        worst = max(worst, abs(a / asy.coefficient_set(which, p, lam).model.alpha - 1))
    return [Check("two-copy exponent condition (< 1)", cond, 1.0),
            Check("epsilon fit of alpha (relative)", worst, 0.01)]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "numkernel": numkernel_suite,
    "channels": channels_suite,
    "gluing": gluing_suite,
    "erasure": erasure_suite,
    "qubit_models": qubit_models_suite,
    "coherent_info": coherent_info_suite,
    "nonadditivity": nonadditivity_suite,
    "asymptotics": asymptotics_suite,
}


def run_suites(names) -> list[tuple[str, Check]]:
    out = []
    for name in names:
        out.extend((name, c) for c in SUITES[name]())
    return out
