"""Verification suites: the identities of every module as residual checks.

Each check records the exact residual norm it computed together with the
threshold it was held to.  Math failures never propagate: a raised toolkit
error becomes an ``error`` entry and the remaining checks still run.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import halmos, projlattice, oracle, spectral
from .errors import NotGeneric, TwoProjError
from .projlattice import join, meet, orthocomplement, rank
from .matcore import (
    DEFAULT_TOL,
    Tolerance,
    carrier,
    commutator_norm,
    norm2,
    sym,
    sym_eigen,
)

SUITES = ("lattice", "cs", "generic", "spectral", "commutant")

# fixed acceptance thresholds; "_N" ones are multiplied by the dimension
CS_RECON_N = 1e-9
PYTHAGOREAN_N = 1e-10
SIXFOLD_ORTH = 1e-8
SIXFOLD_SUM_N = 1e-9
ORACLE_DIST = 1e-8
J_EQ_K = 1e-8
J_EXCHANGE_N = 1e-9
UV_ANTI_N = 1e-9
SPECTRUM_N = 1e-8
COMMUTANT_ROUNDTRIP = 1e-8
CANONICAL_N = 1e-9


class Skip(Exception):
    """Precondition of a check does not hold."""


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    residual: float | None
    tolerance: float | None
    status: str
    note: str = ""
    bound: str = "max"

    @property
    def failed(self) -> bool:
        return self.status in ("fail", "error")

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "bound": self.bound,
            "status": self.status,
            "note": self.note,
        }


class Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def run(self, suite, name, tolerance, fn, note="", bound="max"):
        """Evaluate ``fn`` and record it.

        ``bound="max"`` passes when the residual is at most ``tolerance``,
        ``"min"`` when it exceeds it.  ``tolerance`` and ``note`` may be
        callables, evaluated after ``fn`` so they can depend on what it
        computed.
        """
        try:
            value = fn()
            tolerance = tolerance() if callable(tolerance) else tolerance
            note = note() if callable(note) else note
        except Skip as exc:
            tolerance = None if callable(tolerance) else tolerance
            self.checks.append(Check(suite, name, None, tolerance, "skipped", f"skipped: {exc}", bound))
            return
        except (TwoProjError, np.linalg.LinAlgError) as exc:
            tolerance = None if callable(tolerance) else tolerance
            self.checks.append(
                Check(suite, name, None, tolerance, "error", f"{type(exc).__name__}: {exc}", bound)
            )
            return
        value = float(value)
        ok = value <= tolerance if bound == "max" else value > tolerance
        self.checks.append(Check(suite, name, value, tolerance, "pass" if ok else "fail", note, bound))


def mismatch(*flags: bool) -> float:
    """0 when all flags agree, else 1; used for boolean equivalence checks."""
    return 0.0 if len(set(flags)) <= 1 else 1.0


def psd_violation(a: np.ndarray) -> float:
    w = np.linalg.eigvalsh(sym(a)) if np.size(a) else np.zeros(1)
    return max(0.0, -float(w[0]))


class PairContext:
    """Lazily computed quantities for one pair, shared across suites."""

    def __init__(self, p, q, tol: Tolerance = DEFAULT_TOL, seed: int = 0):
        self.p, self.q, self.tol, self.seed = p, q, tol, seed
        self.n = len(p)
        self.eye = np.eye(self.n)
        self.pp = orthocomplement(p)
        self.qp = orthocomplement(q)

    @property
    def tau_n(self) -> float:
        return self.tol.tau * max(self.n, 1)

    @cached_property
    def meets(self):
        return projlattice.four_meets(self.p, self.q, self.tol)

    @cached_property
    def joins(self):
        p, q, pp, qp, t = self.p, self.q, self.pp, self.qp, self.tol
        return (join(p, q, tol=t), join(p, qp, tol=t), join(pp, q, tol=t), join(pp, qp, tol=t))

    @cached_property
    def six(self):
        return projlattice.sixfold(self.p, self.q, "p", self.tol)

    @property
    def res(self):
        return self.six.residuals

    @cached_property
    def commuting(self) -> bool:
        return projlattice.pq_commute(self.p, self.q, self.tol)

    @cached_property
    def generic(self) -> bool:
        return projlattice.is_generic(self.p, self.q, self.tol)

    @cached_property
    def cs(self):
        return halmos.cos_sin(self.p, self.q, self.tol)

    @cached_property
    def uv(self):
        return halmos.symmetries_uv(self.p, self.q, self.tol)

    @cached_property
    def k(self):
        return halmos.symmetry_k(self.p, self.q, self.tol)

    @cached_property
    def compressed(self):
        return halmos.compress_to_commutator(self.p, self.q, self.tol)

    @cached_property
    def core(self) -> "PairContext":
        """The pair itself when generic, else its compression to ``rAr``."""
        if self.generic:
            return self
        if self.compressed.m == 0:
            raise Skip("precondition NotGeneric (pair commutes, r = 0)")
        g = self.compressed
        return PairContext(g.p_c, g.q_c, self.tol, self.seed)

    @cached_property
    def core_label(self) -> str:
        return "original" if self.generic else "compressed"

    @cached_property
    def j(self):
        return halmos.symmetry_j(self.p, self.q, self.tol)

    @cached_property
    def form(self):
        return halmos.canonical_form(self.p, self.q, self.tol)

    def digest(self) -> dict:
        return {
            "n": self.n,
            "rank_p": rank(self.p),
            "rank_q": rank(self.q),
            "generic": bool(self.generic),
            "commuting": bool(self.commuting),
            "rank_r": rank(self.res.r),
            "m": self.compressed.m,
        }


# --------------------------------------------------------------------------
# lattice


def lattice_suite(ctx: PairContext, rec: Recorder) -> None:
    S = "lattice"
    p, q, pp, qp, eye, tol = ctx.p, ctx.q, ctx.pp, ctx.qp, ctx.eye, ctx.tol
    tau = ctx.tau_n
    m_pq = ctx.meets[0]
    j_pq = ctx.joins[0]

    rec.run(S, "meet_idempotent", tau, lambda: norm2(m_pq @ m_pq - m_pq))
    rec.run(S, "join_idempotent", tau, lambda: norm2(j_pq @ j_pq - j_pq))
    rec.run(S, "meet_below_p_and_q", tau, lambda: max(norm2(m_pq @ p - m_pq), norm2(m_pq @ q - m_pq)))
    rec.run(S, "join_above_p_and_q", tau, lambda: max(norm2(p @ j_pq - p), norm2(q @ j_pq - q)))
    rec.run(S, "de_morgan", tau, lambda: norm2((eye - m_pq) - join(pp, qp, tol=tol)))
    rec.run(S, "p_join_p_perp_is_one", tau, lambda: norm2(join(p, pp, tol=tol) - eye))
    rec.run(S, "p_meet_p_perp_is_zero", tau, lambda: norm2(meet(p, pp, tol=tol)))

    # range bases from the Jacobi path, shared by the meet and join oracles
    bases = {}

    def basis(name):
        if name not in bases:
            bases[name] = oracle.projection_basis({"p": p, "p'": pp, "q": q, "q'": qp}[name], tol)
        return bases[name]

    pairs = (("p", "q"), ("p", "q'"), ("p'", "q"), ("p'", "q'"))

    def oracle_meets():
        worst, bad = 0.0, 0
        for (a, b), m in zip(pairs, ctx.meets):
            o = oracle.subspace_projection(oracle.intersection_basis(basis(a), basis(b), tol))
            bad += rank(o) != rank(m)
            worst = max(worst, norm2(o - m))
        return worst + bad

    def oracle_joins():
        worst, bad = 0.0, 0
        for (a, b), jn in zip(pairs, ctx.joins):
            o = oracle.subspace_projection(oracle.sum_basis(basis(a), basis(b), tol))
            bad += rank(o) != rank(jn)
            worst = max(worst, norm2(o - jn))
        return worst + bad

    rec.run(S, "oracle_meet_agreement", ORACLE_DIST, oracle_meets, "distance plus count of rank mismatches")
    rec.run(S, "oracle_join_agreement", ORACLE_DIST, oracle_joins, "distance plus count of rank mismatches")

    res = ctx.res
    m_pq, m_pqp, m_ppq, m_ppqp = ctx.meets

    def four_fold():
        return max(
            norm2(p - (m_pq + m_pqp + res.r_p)),
            norm2(pp - (m_ppq + m_ppqp + res.r_p_perp)),
            norm2(q - (m_pq + m_ppq + res.r_q)),
            norm2(qp - (m_pqp + m_ppqp + res.r_q_perp)),
        )

    rec.run(S, "projection_splits_into_meets_and_residual", tau, four_fold)
    rec.run(
        S, "residuals_orthogonal", tau,
        lambda: max(norm2(res.r_p @ res.r_p_perp), norm2(res.r_q @ res.r_q_perp)),
    )
    rec.run(
        S, "residual_sums_equal_commutator", tau,
        lambda: max(norm2(res.r_p + res.r_p_perp - res.r), norm2(res.r_q + res.r_q_perp - res.r)),
    )
    for side in ("p", "q"):
        rec.run(S, f"sixfold_{side}_orthogonality", SIXFOLD_ORTH, lambda s=side: ctx.six.max_overlap(s))
        rec.run(
            S, f"sixfold_{side}_sum", SIXFOLD_SUM_N * ctx.n,
            lambda s=side: norm2(ctx.six.total(s) - eye),
        )
    rec.run(
        S, "r_commutes_with_p_q", tau,
        lambda: max(commutator_norm(x, res.r) for x in (p, pp, q, qp)),
    )
    rec.run(
        S, "residual_is_product_with_r", tau,
        lambda: max(
            norm2(res.r_p - p @ res.r),
            norm2(res.r_p_perp - pp @ res.r),
            norm2(res.r_q - q @ res.r),
            norm2(res.r_q_perp - qp @ res.r),
        ),
    )
    rec.run(
        S, "carrier_pqp", tau,
        lambda: norm2(carrier(p @ q @ p, tol) - meet(p, join(pp, q, tol=tol), tol=tol)),
    )

    def commutation_agreement():
        some_zero = any(rank(x) == 0 for x in (res.r_p, res.r_p_perp, res.r_q, res.r_q_perp))
        all_zero = all(rank(x) == 0 for x in (res.r_p, res.r_p_perp, res.r_q, res.r_q_perp))
        pairwise = all(projlattice.pq_commute(a, b, tol) for a in (p, pp) for b in (q, qp))
        return mismatch(some_zero, all_zero, ctx.commuting, pairwise, rank(res.r) == 0)

    rec.run(S, "commutation_equivalences", 0.0, commutation_agreement)
    rec.run(
        S, "commute_iff_rp_rq_zero", 0.0,
        lambda: mismatch(
            ctx.commuting,
            rank(res.r_p) == 0 and rank(res.r_q) == 0,
            projlattice.pq_commute(res.r_p, res.r_q, tol),
        ),
    )
    rec.run(
        S, "generic_iff_commutator_is_one", 0.0,
        lambda: mismatch(ctx.generic, ctx.n > 0 and norm2(res.r - eye) <= tau),
    )


# --------------------------------------------------------------------------
# cosine/sine effects and the general CS-decomposition


def cs_suite(ctx: PairContext, rec: Recorder) -> None:
    S = "cs"
    p, q, pp, qp, eye, tol = ctx.p, ctx.q, ctx.pp, ctx.qp, ctx.eye, ctx.tol
    tau = ctx.tau_n
    c, s = ctx.cs
    u, v = ctx.uv
    k = ctx.k
    r = ctx.res.r
    off = halmos.off_diagonal(p, q)
    dec = halmos.CSDecomposition(c, s, k, False, p, q)

    rec.run(S, "pythagorean", PYTHAGOREAN_N * ctx.n, dec.pythagorean_residual)
    c2, s2 = halmos.cos_sin_squares(p, q)
    rec.run(S, "c_squared_compression_form", tau, lambda: norm2(c @ c - c2))
    rec.run(S, "s_squared_compression_form", tau, lambda: norm2(s @ s - s2))

    def effect_bounds():
        worst = 0.0
        for e in (c, s):
            w = np.linalg.eigvalsh(e)
            worst = max(worst, -w[0], w[-1] - 1.0)
        return max(worst, psd_violation(c - c @ c), psd_violation(s - s @ s))

    rec.run(S, "effects_in_unit_interval", tau, effect_bounds)
    rec.run(
        S, "compression_products", tau,
        lambda: max(
            norm2(p @ c @ c - p @ q @ p),
            norm2(c @ c @ p - p @ q @ p),
            norm2(q @ c @ c - q @ p @ q),
            norm2(p @ s @ s - p @ qp @ p),
            norm2(s @ s @ pp - pp @ q @ pp),
        ),
    )
    rec.run(
        S, "c_s_commute_with_p_q_r", tau,
        lambda: max(commutator_norm(e, x) for e in (c, s) for x in (p, q, r, c)),
    )
    rec.run(
        S, "carrier_c", tau,
        lambda: norm2(carrier(c, tol) - meet(ctx.joins[1], ctx.joins[2], tol=tol)),
    )
    rec.run(
        S, "carrier_s", tau,
        lambda: norm2(carrier(s, tol) - meet(ctx.joins[0], ctx.joins[3], tol=tol)),
    )
    rec.run(S, "carrier_cs_is_commutator", tau, lambda: norm2(carrier(sym(c @ s), tol) - r))
    c_null = eye - carrier(c, tol)
    s_null = eye - carrier(s, tol)
    rec.run(
        S, "kernel_projections_below_squares", tau,
        lambda: max(psd_violation(c @ c - s_null), psd_violation(s @ s - c_null)),
    )
    m_pq, m_pqp, m_ppq, m_ppqp = ctx.meets
    rec.run(
        S, "uninteresting_projections_from_carriers", tau,
        lambda: max(
            norm2(s_null @ p - m_pq),
            norm2(s_null @ q - m_pq),
            norm2(c_null @ p - m_pqp),
            norm2(c_null @ qp - m_pqp),
            norm2(c_null @ pp - m_ppq),
            norm2(c_null @ q - m_ppq),
            norm2(s_null @ pp - m_ppqp),
            norm2(s_null @ qp - m_ppqp),
        ),
    )
    rec.run(S, "c2s2_is_offdiag_squared", tau, lambda: norm2(c @ c @ s @ s - off @ off))
    rec.run(S, "general_cs_reconstruction", CS_RECON_N * ctx.n, dec.residual)
    rec.run(S, "general_cs_complement", CS_RECON_N * ctx.n, dec.complement_residual)
    rec.run(
        S, "polar_factors", tau,
        lambda: max(
            norm2(c @ u - (p - qp)),
            norm2(s @ v - (p - q)),
            norm2(c @ s @ k - off),
        ),
    )
    rec.run(
        S, "u_v_k_are_symmetries", tau,
        lambda: max(norm2(x @ x - eye) for x in (u, v, k)),
    )
    rec.run(
        S, "u_v_k_commute_with_c_s", tau,
        lambda: max(commutator_norm(x, e) for x in (u, v, k) for e in (c, s)),
    )
    rec.run(S, "k_commutes_with_offdiag", tau, lambda: commutator_norm(k, off))
    rec.run(S, "cs_annihilates_pk_kp_k", tau, lambda: norm2(c @ s @ (p @ k + k @ p - k)))
    rec.run(S, "u_exchanges_pqp_qpq", tau, lambda: norm2(u @ p @ q @ p @ u - q @ p @ q))
    rec.run(
        S, "commuting_equivalences", 0.0,
        lambda: mismatch(*halmos.commuting_equivalences(p, q, tol), ctx.commuting),
    )

    def restricted():
        rc = halmos.restricted_cos_sin(p, q, tol)
        return max(
            rc.c_residual,
            rc.s_residual,
            norm2(rc.c_r - r @ c),
            norm2(rc.s_r - r @ s),
        )

    rec.run(S, "restricted_cos_sin", tau, restricted)


# --------------------------------------------------------------------------
# generic position: compression, j, generic CS and canonical form


def generic_suite(ctx: PairContext, rec: Recorder) -> None:
    S = "generic"
    tol = ctx.tol
    g = ctx.compressed

    def compressed_generic():
        if ctx.commuting or g.m == 0:
            raise Skip("pair commutes")
        metas = projlattice.four_meets(g.p_c, g.q_c, tol)
        ok = projlattice.is_generic(g.p_c, g.q_c, tol) and all(rank(x) == 0 for x in metas)
        return 0.0 if ok else 1.0

    rec.run(S, "compressed_pair_generic", 0.0, compressed_generic)

    def decompression():
        if g.m == 0:
            raise Skip("pair commutes")
        return max(
            norm2(g.decompress(g.p_c) - ctx.res.r_p),
            norm2(g.decompress(g.q_c) - ctx.res.r_q),
        )

    rec.run(S, "decompression_gives_residuals", ctx.tau_n, decompression)

    def on_core(name, tolerance, fn, bound="max"):
        """Run ``fn`` on the generic core; ``tolerance`` may take the core."""

        def tol_for():
            return tolerance(ctx.core) if callable(tolerance) else tolerance

        rec.run(S, name, tol_for, lambda: fn(ctx.core), lambda: f"on {ctx.core_label} pair", bound)

    on_core("j_is_symmetry", lambda c: c.tau_n, lambda c: norm2(c.j @ c.j - c.eye))
    on_core("j_exchanges_p", lambda c: J_EXCHANGE_N * max(c.n, 1), lambda c: norm2(c.j @ c.p @ c.j - c.pp))
    on_core("j_eq_pj_plus_jp", lambda c: c.tau_n, lambda c: norm2(c.j - (c.p @ c.j + c.j @ c.p)))
    on_core(
        "j_commutes_with_c_s", lambda c: c.tau_n,
        lambda c: max(commutator_norm(c.j, e) for e in c.cs),
    )
    on_core("j_equals_k", J_EQ_K, lambda c: norm2(c.j - c.k))
    on_core(
        "uv_anticommute", lambda c: UV_ANTI_N * max(c.n, 1),
        lambda c: norm2(c.uv.u @ c.uv.v + c.uv.v @ c.uv.u),
    )
    on_core(
        "ell_is_cu_plus_sv", lambda c: c.tau_n,
        lambda c: norm2(halmos.symmetry_ell(c.p) - (c.cs.c @ c.uv.u + c.cs.s @ c.uv.v)),
    )
    on_core(
        "u_v_exchange", lambda c: c.tau_n,
        lambda c: max(
            norm2(c.uv.u @ c.p @ c.uv.u - c.q),
            norm2(c.uv.v @ c.p @ c.uv.v - c.qp),
        ),
    )

    def generic_cs(c):
        return halmos.generic_cs(c.p, c.q, c.tol).residual()

    on_core("generic_cs_reconstruction", lambda c: CS_RECON_N * max(c.n, 1), generic_cs)

    def full_carriers(c):
        cc, ss = c.cs
        ranks = [rank(carrier(x, c.tol)) for x in (cc, ss, sym(cc @ ss), sym(cc @ ss @ c.j))]
        return float(sum(r != c.n for r in ranks))

    on_core("c_s_carriers_full", 0.0, full_carriers)

    def compressions_full(c):
        p, q, pp, qp, t = c.p, c.q, c.pp, c.qp, c.tol
        return max(
            norm2(carrier(p @ q @ p, t) - p),
            norm2(carrier(p @ qp @ p, t) - p),
            norm2(carrier(pp @ q @ pp, t) - pp),
            norm2(carrier(q @ p @ q, t) - q),
            norm2(carrier(qp @ pp @ qp, t) - qp),
        )

    on_core("compression_carriers", lambda c: c.tau_n, compressions_full)
    on_core(
        "canonical_q_reconstruction", lambda c: CANONICAL_N * max(c.n, 1),
        lambda c: norm2(c.form.assemble(c.form.q_block()) - c.q),
    )
    on_core(
        "canonical_j_block", lambda c: c.tau_n,
        lambda c: norm2(c.form.basis.T @ c.j @ c.form.basis - c.form.j_block()),
    )
    on_core(
        "canonical_R_orthogonal", lambda c: c.tau_n,
        lambda c: max(
            norm2(c.form.R.T @ c.form.R - np.eye(c.form.d)),
            norm2(c.form.R @ c.form.R.T - np.eye(c.form.d)),
        ),
    )
    on_core(
        "canonical_C2_plus_S2", lambda c: c.tau_n,
        lambda c: max(
            norm2(c.form.C @ c.form.C + c.form.S @ c.form.S - np.eye(c.form.d)),
            commutator_norm(c.form.C, c.form.S),
        ),
    )
    on_core(
        "canonical_C_S_injective", ctx.tol.eps_rank,
        lambda c: min(np.linalg.eigvalsh(c.form.C)[0], np.linalg.eigvalsh(c.form.S)[0]),
        bound="min",
    )


# --------------------------------------------------------------------------
# spectrum of p + q


def spectral_suite(ctx: PairContext, rec: Recorder) -> None:
    S = "spectral"

    def report():
        core = ctx.core
        return spectral.spectrum_sum(core.p, core.q, core.tol)

    def tolerance():
        return SPECTRUM_N * max(ctx.core.n, 1)

    def note():
        return f"on {ctx.core_label} pair"

    rec.run(S, "spectrum_sum_matches", tolerance, lambda: report().max_deviation, note)
    rec.run(S, "spectrum_shift_symmetric", tolerance, lambda: report().symmetry_deviation(), note)


# --------------------------------------------------------------------------
# joint commutant


def commutant_elements(core: PairContext, rng: np.random.Generator, count: int = 2):
    """Generators ``b = p f(c) p`` for random cubic polynomials ``f``."""
    c = core.cs.c
    out = []
    for _ in range(count):
        coef = rng.standard_normal(4)
        f = coef[0] * np.eye(core.n) + coef[1] * c + coef[2] * c @ c + coef[3] * c @ c @ c
        out.append(sym(core.p @ f @ core.p))
    return out


def cluster_projection(core: PairContext) -> np.ndarray:
    """Spectral projection of ``c`` above the widest gap of its spectrum
    (the identity when the spectrum is a single cluster)."""
    gam = core.form.cosines()
    if len(gam) < 2 or np.max(np.diff(gam)) < 1e-6:
        return np.eye(core.n)
    i = int(np.argmax(np.diff(gam)))
    mid = 0.5 * (gam[i] + gam[i + 1])
    eig = sym_eigen(core.cs.c, core.tol)
    vec = eig.vectors[:, eig.values > mid]
    return sym(vec @ vec.T)


def _raiser(exc):
    def fn():
        raise exc

    return fn


def commutant_suite(ctx: PairContext, rec: Recorder) -> None:
    S = "commutant"
    rng = np.random.default_rng(ctx.seed & ((1 << 64) - 1))
    tau = ctx.tau_n

    try:
        core = ctx.core
    except Skip as exc:
        for name in ("embed_commutes", "embed_compresses_to_b", "decompose_after_embed",
                     "embed_after_decompose", "projection_round_trip"):
            rec.run(S, name, COMMUTANT_ROUNDTRIP, _raiser(exc))
        return
    note = f"on {ctx.core_label} pair"
    p, q, tol = core.p, core.q, core.tol

    try:
        gens = commutant_elements(core, rng)
    except TwoProjError as exc:
        gens = []
        rec.run(S, "generators", 0.0, _raiser(exc))

    for i, b in enumerate(gens):
        try:
            a = spectral.commutant_embed(b, p, q, tol).a
        except TwoProjError as exc:
            rec.run(S, f"embed[{i}]", tau, _raiser(exc))
            continue
        rec.run(
            S, f"embed_commutes[{i}]", tau,
            lambda a=a: max(commutator_norm(a, p), commutator_norm(a, q)), note,
        )
        rec.run(
            S, f"embed_compresses_to_b[{i}]", tau,
            lambda a=a, b=b: max(norm2(a @ p - b), norm2(p @ a - b)), note,
        )
        rec.run(
            S, f"decompose_after_embed[{i}]", COMMUTANT_ROUNDTRIP,
            lambda a=a, b=b: norm2(spectral.commutant_decompose(a, p, q, tol) - b), note,
        )

        def embed_after_decompose(a=a):
            b2 = spectral.commutant_decompose(a, p, q, tol)
            return norm2(spectral.commutant_embed(b2, p, q, tol).a - a)

        rec.run(S, f"embed_after_decompose[{i}]", COMMUTANT_ROUNDTRIP, embed_after_decompose, note)

    def projection_round_trip():
        z = cluster_projection(core)
        t = spectral.commutant_projection(z, p, q, tol)
        j = core.j
        return max(
            norm2(z - (t + j @ t @ j)),
            norm2(t @ t - t),
            norm2(t @ p - t),
            commutator_norm(t, core.cs.c),
        )

    rec.run(S, "projection_round_trip", COMMUTANT_ROUNDTRIP, projection_round_trip, note)


SUITE_FUNCS = {
    "lattice": lattice_suite,
    "cs": cs_suite,
    "generic": generic_suite,
    "spectral": spectral_suite,
    "commutant": commutant_suite,
}


def resolve_suites(selector: str) -> tuple[str, ...]:
    if selector == "all":
        return SUITES
    if selector not in SUITES:
        raise ValueError(f"unknown suite {selector!r}")
    return (selector,)


def run_suites(p, q, suites=SUITES, tol: Tolerance = DEFAULT_TOL, seed: int = 0):
    """Run the selected suites on one pair; returns ``(digest, checks)``."""
    ctx = PairContext(p, q, tol, seed)
    rec = Recorder()
    for name in suites:
        SUITE_FUNCS[name](ctx, rec)
    try:
        digest = ctx.digest()
    except TwoProjError as exc:
        digest = {"n": ctx.n, "error": f"{type(exc).__name__}: {exc}"}
    return digest, rec.checks


__all__ = [
    "Check",
    "NotGeneric",
    "PairContext",
    "Recorder",
    "SUITES",
    "resolve_suites",
    "run_suites",
]
