"""Report documents emitted by the command-line tool.

Every report is a JSON object with ``"schema": 1``.  Residuals are the exact
norms computed; the pass/fail status sits next to them, never in place of
them.  Only the ``timestamp`` field varies between identical runs.
"""
from __future__ import annotations

import json
import math
import re
from datetime import datetime, timezone

import numpy as np

from . import __version__, checks, halmos, projlattice, spectral
from .checks import Check, Recorder
from .errors import NotGeneric, TwoProjError
from .projlattice import rank
from .matcore import DEFAULT_TOL, Tolerance, check_same_dim, norm2, sym

SCHEMA = 1
TOOL = "twoproj"
# the meet ranks are recomputed at eps_rank times this factor
LOOSE_FACTOR = 1e3
NOT_GENERIC_HINT = (
    "the pair is not in generic position; rerun with --compress to use its "
    "compression to the range of the commutator [p, q]"
)


def jsonable(obj):
    """Convert numpy containers and scalars to plain JSON values.

    Non-finite floats become the strings ``"nan"``, ``"inf"``, ``"-inf"``.
    """
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    return obj


# an array holding no arrays, objects or strings
_FLAT_ARRAY = re.compile(r"\[[^\[\]{}\"]*\]")


def _one_line(m: re.Match) -> str:
    return re.sub(r"\s*\n\s*", " ", m.group(0)).replace("[ ", "[").replace(" ]", "]")


def dumps(report: dict) -> str:
    """Indented JSON with every innermost numeric array on one line."""
    text = json.dumps(jsonable(report), indent=1, allow_nan=False)
    return _FLAT_ARRAY.sub(_one_line, text) + "\n"


def header(command: str, tol: Tolerance) -> dict:
    return {
        "schema": SCHEMA,
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "tolerance": tol.as_dict(),
    }


def without_timestamp(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timestamp"}


def error_entry(stage: str, exc: BaseException) -> dict:
    return {"stage": stage, "error": type(exc).__name__, "message": str(exc)}


def summarize(check_list) -> dict:
    counts = {"checks": 0, "pass": 0, "fail": 0, "error": 0, "skipped": 0}
    for c in check_list:
        counts["checks"] += 1
        counts[c.status] += 1
    return counts


def input_digest(name: str, p: np.ndarray, q: np.ndarray, tol: Tolerance) -> dict:
    return {
        "name": name,
        "n": len(p),
        "rank_p": rank(p),
        "rank_q": rank(q),
        "generic": bool(projlattice.is_generic(p, q, tol)),
        "commuting": bool(projlattice.pq_commute(p, q, tol)),
    }


def meet_rank_sensitivity(p, q, tol: Tolerance) -> dict:
    """Ranks of the four meets at ``eps_rank`` and at a looser threshold.

    A disagreement flags a pair whose meets sit close to the rank cut-off.
    """
    loose = tol.with_rank(float(f"{min(tol.eps_rank * LOOSE_FACTOR, 1e-2):.12g}"))
    labels = ("p&q", "p&q'", "p'&q", "p'&q'")
    strict = [rank(m) for m in projlattice.four_meets(p, q, tol)]
    relaxed = [rank(m) for m in projlattice.four_meets(p, q, loose)]
    return {
        "eps_rank": tol.eps_rank,
        "loose_eps_rank": loose.eps_rank,
        "ranks": dict(zip(labels, strict)),
        "loose_ranks": dict(zip(labels, relaxed)),
        "stable": strict == relaxed,
    }


# --------------------------------------------------------------------------
# decompose


def decompose_report(
    name: str, p: np.ndarray, q: np.ndarray, side: str = "p", tol: Tolerance = DEFAULT_TOL
) -> dict:
    """Run sixfold, general CS, compression, generic CS with the canonical
    form (when the compressed pair is nonempty) and the restricted effects.

    A failing stage is recorded in ``errors`` and the later stages still run.
    """
    n = len(p)
    rec = Recorder()
    errors: list[dict] = []
    report = header("decompose", tol)
    report["input"] = input_digest(name, p, q, tol)
    report["side"] = side

    try:
        six = projlattice.sixfold(p, q, side, tol)
        report["sixfold"] = {
            "ranks": six.ranks(side),
            "rank_r": rank(six.residuals.r),
        }
        rec.run("sixfold", "orthogonality", checks.SIXFOLD_ORTH, lambda: six.max_overlap(side))
        rec.run(
            "sixfold", "sum_to_identity", checks.SIXFOLD_SUM_N * n,
            lambda: norm2(six.total(side) - np.eye(n)),
        )
    except TwoProjError as exc:
        errors.append(error_entry("sixfold", exc))

    try:
        dec = halmos.general_cs(p, q, tol)
        rec.run("general_cs", "pythagorean", checks.PYTHAGOREAN_N * n, dec.pythagorean_residual)
        rec.run("general_cs", "q_reconstruction", checks.CS_RECON_N * n, dec.residual)
        rec.run("general_cs", "q_perp_reconstruction", checks.CS_RECON_N * n, dec.complement_residual)
        if projlattice.pq_commute(p, q, tol):
            # commuting pairs: cs = 0 and q = c²p + s²p⊥
            c, s, pp = dec.c, dec.s, projlattice.orthocomplement(p)
            rec.run(
                "general_cs", "commuting_reconstruction", checks.CS_RECON_N * n,
                lambda: norm2(q - (c @ c @ p + s @ s @ pp)),
            )
    except TwoProjError as exc:
        errors.append(error_entry("general_cs", exc))

    angles = {"source": "none", "cosines": [], "angles": []}
    try:
        g = halmos.compress_to_commutator(p, q, tol)
        report["compressed"] = {"m": g.m}
        if g.m > 0:
            pc, qc = g.p_c, g.q_c
            rec.run(
                "compression", "compressed_generic", 0.0,
                lambda: 0.0 if projlattice.is_generic(pc, qc, tol) else 1.0,
            )
            res = projlattice.residuals(p, q, tol)
            rec.run(
                "compression", "decompress_to_residuals", tol.tau * n,
                lambda: max(norm2(g.decompress(pc) - res.r_p), norm2(g.decompress(qc) - res.r_q)),
            )
            gen = halmos.generic_cs(pc, qc, tol)
            rec.run("generic_cs", "q_reconstruction", checks.CS_RECON_N * g.m, gen.residual)
            rec.run(
                "generic_cs", "q_perp_reconstruction", checks.CS_RECON_N * g.m,
                gen.complement_residual,
            )
            form = halmos.canonical_form(pc, qc, tol)
            rec.run(
                "canonical_form", "q_reconstruction", checks.CANONICAL_N * g.m,
                lambda: norm2(form.assemble(form.q_block()) - qc),
            )
            rec.run(
                "canonical_form", "C_S_min_eigenvalue", tol.eps_rank,
                lambda: min(np.linalg.eigvalsh(form.C)[0], np.linalg.eigvalsh(form.S)[0]),
                bound="min",
            )
            angles = {
                "source": "original" if g.m == n else "compressed",
                "cosines": form.cosines(),
                "angles": form.angles(),
            }
    except TwoProjError as exc:
        errors.append(error_entry("compression", exc))
    report["principal_angles"] = angles

    try:
        rc = halmos.restricted_cos_sin(p, q, tol)
        rec.run("restricted_cos_sin", "c_split", tol.tau * n, lambda: rc.c_residual)
        rec.run("restricted_cos_sin", "s_split", tol.tau * n, lambda: rc.s_residual)
    except TwoProjError as exc:
        errors.append(error_entry("restricted_cos_sin", exc))

    try:
        report["meet_rank_sensitivity"] = meet_rank_sensitivity(p, q, tol)
    except TwoProjError as exc:
        errors.append(error_entry("meet_rank_sensitivity", exc))

    report["residuals"] = [c.to_dict() for c in rec.checks]
    report["errors"] = errors
    report["summary"] = summarize(rec.checks)
    report["passed"] = not errors and not any(c.failed for c in rec.checks)
    return report


# --------------------------------------------------------------------------
# verify


def verify_instance(label: str, p, q, suites, tol: Tolerance, seed: int) -> tuple[dict, list[Check]]:
    digest, found = checks.run_suites(p, q, suites, tol, seed)
    entry = {"label": label, "seed": seed, "digest": digest, "checks": [c.to_dict() for c in found]}
    return entry, found


def verify_report(instances, suites, tol: Tolerance = DEFAULT_TOL) -> dict:
    """``instances`` yields ``(label, p, q, seed)``."""
    report = header("verify", tol)
    report["suites"] = list(suites)
    entries, everything = [], []
    for label, p, q, seed in instances:
        entry, found = verify_instance(label, p, q, suites, tol, seed)
        entries.append(entry)
        everything.extend(found)
    report["instances"] = entries
    report["summary"] = summarize(everything)
    report["passed"] = not any(c.failed for c in everything)
    return report


def residual_table(report: dict) -> list[tuple]:
    """Flat ``(instance, suite, check, residual, status)`` rows of a verify report."""
    return [
        (inst["label"], c["suite"], c["name"], c["residual"], c["status"])
        for inst in report["instances"]
        for c in inst["checks"]
    ]


# --------------------------------------------------------------------------
# spectrum and commutant


def _core(p, q, compress: bool, tol: Tolerance):
    """The pair itself, or its compression to ``rAr`` when ``compress``."""
    if not compress:
        return p, q, None
    g = halmos.compress_to_commutator(p, q, tol)
    return g.p_c, g.q_c, g


def spectrum_report(
    name: str, p, q, compress: bool = False, tol: Tolerance = DEFAULT_TOL
) -> dict:
    report = header("spectrum", tol)
    report["input"] = input_digest(name, p, q, tol)
    report["compressed"] = compress
    errors: list[dict] = []
    rec = Recorder()
    try:
        pc, qc, _ = _core(p, q, compress, tol)
        sr = spectral.spectrum_sum(pc, qc, tol)
        m = len(pc)
        report["spectrum"] = {
            "gammas": sr.gammas,
            "distinct": [{"gamma": g, "multiplicity": k} for g, k in sr.distinct()],
            "predicted": sr.predicted,
            "observed": sr.observed,
            "max_deviation": sr.max_deviation,
        }
        rec.run("spectral", "spectrum_sum_matches", checks.SPECTRUM_N * m, lambda: sr.max_deviation)
        rec.run(
            "spectral", "spectrum_shift_symmetric", checks.SPECTRUM_N * m, sr.symmetry_deviation
        )
    except NotGeneric as exc:
        entry = error_entry("spectrum", exc)
        if not compress:
            entry["hint"] = NOT_GENERIC_HINT
        errors.append(entry)
    except TwoProjError as exc:
        errors.append(error_entry("spectrum", exc))
    report["residuals"] = [c.to_dict() for c in rec.checks]
    report["errors"] = errors
    report["passed"] = not errors and not any(c.failed for c in rec.checks)
    return report


def commutant_report(
    name: str,
    p,
    q,
    b: np.ndarray | None = None,
    a: np.ndarray | None = None,
    z: np.ndarray | None = None,
    compress: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> dict:
    """Embed ``b``, decompose ``a`` or split the projection ``z``, with the
    round-trip residuals of each."""
    if sum(x is not None for x in (a, b, z)) != 1:
        raise ValueError("exactly one of b, a, z must be given")
    report = header("commutant", tol)
    report["input"] = input_digest(name, p, q, tol)
    report["compressed"] = compress
    errors: list[dict] = []
    rec = Recorder()
    S = "commutant"
    rt = checks.COMMUTANT_ROUNDTRIP

    try:
        pc, qc, _ = _core(p, q, compress, tol)
        check_same_dim(pc, next(x for x in (a, b, z) if x is not None))
        tau = tol.tau * max(len(pc), 1)

        def commutation(x):
            return max(norm2(x @ pc - pc @ x), norm2(x @ qc - qc @ x))

        if b is not None:
            report["operation"] = "embed"
            el = spectral.commutant_embed(b, pc, qc, tol)
            report["b"], report["a"] = el.b, el.a
            rec.run(S, "a_commutes_with_p_q", tau, lambda: commutation(el.a))
            rec.run(S, "ap_equals_b", tau, lambda: max(norm2(el.a @ pc - el.b), norm2(pc @ el.a - el.b)))
            rec.run(
                S, "decompose_after_embed", rt,
                lambda: norm2(spectral.commutant_decompose(el.a, pc, qc, tol) - el.b),
            )
        elif a is not None:
            report["operation"] = "decompose"
            bb = spectral.commutant_decompose(a, pc, qc, tol)
            report["a"], report["b"] = sym(a), bb
            rec.run(S, "b_equals_pbp", tau, lambda: norm2(bb - pc @ bb @ pc))
            rec.run(
                S, "embed_after_decompose", rt,
                lambda: norm2(spectral.commutant_embed(bb, pc, qc, tol).a - sym(a)),
            )
        else:
            report["operation"] = "projection"
            t = spectral.commutant_projection(z, pc, qc, tol)
            j = halmos.symmetry_j(pc, qc, tol)
            c = halmos.cos_sin(pc, qc, tol).c
            report["z"], report["t"] = z, t
            rec.run(S, "t_is_projection", tau, lambda: norm2(t @ t - t))
            rec.run(S, "t_below_p", tau, lambda: max(norm2(t @ pc - t), norm2(pc @ t - t)))
            rec.run(S, "t_commutes_with_c", tau, lambda: norm2(t @ c - c @ t))
            rec.run(S, "z_equals_t_plus_jtj", rt, lambda: norm2(z - (t + j @ t @ j)))
    except NotGeneric as exc:
        entry = error_entry("commutant", exc)
        if not compress:
            entry["hint"] = NOT_GENERIC_HINT
        errors.append(entry)
    except TwoProjError as exc:
        errors.append(error_entry("commutant", exc))
    report["residuals"] = [c.to_dict() for c in rec.checks]
    report["errors"] = errors
    report["passed"] = not errors and not any(c.failed for c in rec.checks)
    return report
