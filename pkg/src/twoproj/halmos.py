"""Cosine/sine effects, the exchanging symmetries and CS-decompositions.

For projections ``p`` and ``q`` the cosine and sine effects are

    c = |p - q⊥| = (pqp + p⊥q⊥p⊥)^{1/2},    s = |p - q| = (pq⊥p + p⊥qp⊥)^{1/2}

and ``q = c²p + csk + s²p⊥`` with ``k`` the polar symmetry of the off-diagonal
part of ``q`` relative to ``p``.  When the pair is in generic position ``k``
coincides with ``j = uvp + pvu``, a symmetry exchanging ``p`` and ``p⊥``, and
in a basis adapted to ``p`` the decomposition becomes the block form
``[[C², CS], [CS, S²]]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import EquivalenceViolation, NotGeneric, RankMismatch
from .projlattice import (
    diag_offdiag,
    four_meets,
    is_generic,
    marsden,
    orthocomplement,
    pq_commute,
    rank,
)
from .matcore import (
    DEFAULT_TOL,
    Tolerance,
    check_same_dim,
    commutes,
    norm2,
    polar,
    range_basis,
    sym,
    sym_abs,
    sym_eigen,
)


class CosSin(NamedTuple):
    c: np.ndarray
    s: np.ndarray


def cos_sin(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> CosSin:
    """Cosine and sine effects of ``q`` with respect to ``p``.

    Evaluated as ``|p + q - 1|`` and ``|p - q|`` rather than as square roots
    of ``pqp + p⊥q⊥p⊥`` and ``pq⊥p + p⊥qp⊥``: the two agree, but the square
    root amplifies roundoff near zero eigenvalues to ``O(sqrt(eps))``.
    """
    n = check_same_dim(p, q)
    return CosSin(sym_abs(p + q - np.eye(n), tol), sym_abs(p - q, tol))


def cos_sin_squares(p: np.ndarray, q: np.ndarray) -> CosSin:
    """``c² = pqp + p⊥q⊥p⊥`` and ``s² = pq⊥p + p⊥qp⊥`` formed directly."""
    pp, qp = orthocomplement(p), orthocomplement(q)
    return CosSin(sym(p @ q @ p + pp @ qp @ pp), sym(p @ qp @ p + pp @ q @ pp))


class UV(NamedTuple):
    u: np.ndarray
    v: np.ndarray


def symmetries_uv(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> UV:
    """Polar symmetries of ``p - q⊥`` and ``p - q``.

    ``u`` exchanges ``p`` and ``q`` for pairs in generic position.  Where
    ``c`` (resp. ``s``) vanishes the canonical extension makes ``u`` (resp.
    ``v``) act as the identity.
    """
    n = check_same_dim(p, q)
    return UV(polar(p + q - np.eye(n), tol).symmetry, polar(p - q, tol).symmetry)


def off_diagonal(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """``pqp⊥ + p⊥qp``."""
    return diag_offdiag(q, p)[1]


def symmetry_k(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Canonical polar symmetry of the off-diagonal part, ``pqp⊥ + p⊥qp = csk``.

    Off the carrier of ``cs`` the symmetry is not pinned down; the canonical
    extension (identity there) is used.
    """
    check_same_dim(p, q)
    return polar(off_diagonal(p, q), tol).symmetry


@dataclass(frozen=True)
class CSDecomposition:
    """``q = c²p + csk + s²p⊥``.  ``generic`` marks ``k`` built as ``j``."""

    c: np.ndarray
    s: np.ndarray
    k: np.ndarray
    generic: bool
    p: np.ndarray
    q: np.ndarray

    def reconstruct(self) -> np.ndarray:
        c, s, k, p = self.c, self.s, self.k, self.p
        return c @ c @ p + c @ s @ k + s @ s @ orthocomplement(p)

    def reconstruct_complement(self) -> np.ndarray:
        """``q⊥ = s²p + cs(-k) + c²p⊥``."""
        c, s, k, p = self.c, self.s, self.k, self.p
        return s @ s @ p - c @ s @ k + c @ c @ orthocomplement(p)

    def residual(self) -> float:
        return norm2(self.q - self.reconstruct())

    def complement_residual(self) -> float:
        return norm2(orthocomplement(self.q) - self.reconstruct_complement())

    def pythagorean_residual(self) -> float:
        c, s = self.c, self.s
        return norm2(c @ c + s @ s - np.eye(len(c)))


def general_cs(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> CSDecomposition:
    """CS-decomposition valid for any pair of projections."""
    c, s = cos_sin(p, q, tol)
    return CSDecomposition(c, s, symmetry_k(p, q, tol), False, p, q)


class CommutingReport(NamedTuple):
    """Truth values of seven conditions equivalent to ``pq = qp``."""

    commute: bool
    offdiag_zero: bool
    diagonal_form: bool
    cs_zero: bool
    c_s_complementary_projections: bool
    abs_form: bool
    exists_t: bool

    def agree(self) -> bool:
        return len(set(self)) == 1


def commuting_equivalences(
    p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> CommutingReport:
    """Evaluate the seven equivalent commutativity conditions.

    The last one (existence of a projection ``t`` commuting with ``p`` and
    with ``q = |p - t|``) is checked constructively with ``t := s``.
    Raises :class:`EquivalenceViolation` if the conditions disagree.
    """
    n = check_same_dim(p, q)
    eye = np.eye(n)
    bound = tol.tau * max(n, 1)
    c, s = cos_sin(p, q, tol)
    pp = orthocomplement(p)

    def small(x):
        return norm2(x) <= bound

    c_proj = small(c @ c - c)
    s_proj = small(s @ s - s)
    complementary = c_proj and s_proj and small(eye - c - s)
    abs_p_s = sym_abs(p - s, tol)
    report = CommutingReport(
        commute=pq_commute(p, q, tol),
        offdiag_zero=small(off_diagonal(p, q)),
        diagonal_form=small(q - (c @ c @ p + s @ s @ pp)),
        cs_zero=small(c @ s),
        c_s_complementary_projections=complementary,
        abs_form=complementary and small(q - (c @ p + (eye - c) @ pp)) and small(q - abs_p_s),
        exists_t=s_proj and commutes(s, p, tol) and small(q - abs_p_s),
    )
    if not report.agree():
        raise EquivalenceViolation(f"commutativity conditions disagree: {report}")
    return report


@dataclass(frozen=True)
class GenericPair:
    """A pair compressed to the range of its commutator ``r = [p, q]``.

    ``basis`` is ``n x m`` with orthonormal columns spanning ``ran r``;
    ``p_c`` and ``q_c`` are the ``m x m`` compressions ``B^T p B``, ``B^T q B``.
    """

    r: np.ndarray
    basis: np.ndarray
    p_c: np.ndarray
    q_c: np.ndarray
    complement_parts: tuple[np.ndarray, ...]

    @property
    def m(self) -> int:
        return self.basis.shape[1]

    def decompress(self, x: np.ndarray) -> np.ndarray:
        return self.basis @ x @ self.basis.T


def compress_to_commutator(
    p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> GenericPair:
    """Drop down to the commutator algebra ``rAr``.  ``m = 0`` for commuting
    pairs."""
    check_same_dim(p, q)
    r = marsden(p, q, tol)
    basis = range_basis(r, tol)
    return GenericPair(
        r=r,
        basis=basis,
        p_c=sym(basis.T @ p @ basis),
        q_c=sym(basis.T @ q @ basis),
        complement_parts=four_meets(p, q, tol),
    )


class RestrictedCS(NamedTuple):
    c_r: np.ndarray
    s_r: np.ndarray
    c_residual: float
    s_residual: float


def restricted_cos_sin(
    p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> RestrictedCS:
    """``c_r = cr``, ``s_r = sr`` and the residuals of
    ``c = c_r + |p∧q - p⊥∧q⊥|``, ``s = s_r + |p∧q⊥ - p⊥∧q|``."""
    c, s = cos_sin(p, q, tol)
    r = marsden(p, q, tol)
    m_pq, m_pqp, m_ppq, m_ppqp = four_meets(p, q, tol)
    c_r, s_r = sym(c @ r), sym(s @ r)
    c_res = norm2(c - c_r - sym_abs(m_pq - m_ppqp, tol))
    s_res = norm2(s - s_r - sym_abs(m_pqp - m_ppq, tol))
    return RestrictedCS(c_r, s_r, c_res, s_res)


def require_generic(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> None:
    if not is_generic(p, q, tol):
        raise NotGeneric(
            "projections are not in generic position; compress to the "
            "commutator algebra first"
        )


def symmetry_ell(p: np.ndarray) -> np.ndarray:
    """``ℓ = 2p - 1``."""
    return 2.0 * p - np.eye(len(p))


def symmetry_j(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``j = uvp + pvu``, a symmetry exchanging ``p`` and ``p⊥``.

    Only defined for pairs in generic position.
    """
    require_generic(p, q, tol)
    return _j_from(p, symmetries_uv(p, q, tol))


def _j_from(p, uv: UV) -> np.ndarray:
    u, v = uv
    return sym(u @ v @ p + p @ v @ u)


def generic_cs(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> CSDecomposition:
    """``q = c²p + csj + s²p⊥`` for a pair in generic position."""
    j = symmetry_j(p, q, tol)
    c, s = cos_sin(p, q, tol)
    return CSDecomposition(c, s, j, True, p, q)


@dataclass(frozen=True)
class CanonicalForm:
    """Block data of a generic pair in the basis ``[basis_m0 | basis_m1]``.

    ``basis_m0`` spans ``ran p`` and ``basis_m1`` spans ``ran p⊥``.  In that
    basis ``p = diag(I, 0)``, ``j = [[0, R], [R^T, 0]]`` and
    ``q = diag(I, R^T) [[C², CS], [CS, S²]] diag(I, R)``.
    """

    basis_m0: np.ndarray
    basis_m1: np.ndarray
    R: np.ndarray
    C: np.ndarray
    S: np.ndarray

    @property
    def d(self) -> int:
        return self.basis_m0.shape[1]

    @property
    def basis(self) -> np.ndarray:
        return np.hstack([self.basis_m0, self.basis_m1])

    def _conj(self, block: np.ndarray) -> np.ndarray:
        d = self.d
        t = np.zeros((2 * d, 2 * d))
        t[:d, :d] = np.eye(d)
        t[d:, d:] = self.R
        return t.T @ block @ t

    def q_block(self) -> np.ndarray:
        C, S = self.C, self.S
        return self._conj(np.block([[C @ C, C @ S], [C @ S, S @ S]]))

    def j_block(self) -> np.ndarray:
        z = np.zeros_like(self.R)
        return np.block([[z, self.R], [self.R.T, z]])

    def assemble(self, block: np.ndarray) -> np.ndarray:
        """Map block coordinates back to the ambient space."""
        return self.basis @ block @ self.basis.T

    def cosines(self) -> np.ndarray:
        """Eigenvalues of ``C`` ascending: cosines of the principal angles."""
        return np.sort(np.linalg.eigvalsh(self.C)) if self.d else np.zeros(0)

    def angles(self) -> np.ndarray:
        return np.arccos(np.clip(self.cosines(), -1.0, 1.0))


def canonical_form(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> CanonicalForm:
    require_generic(p, q, tol)
    n = len(p)
    d = rank(p)
    if 2 * d != n:
        raise RankMismatch(f"rank(p) = {d} but generic position needs n/2 = {n / 2}")
    uv = symmetries_uv(p, q, tol)
    j = _j_from(p, uv)
    c, s = cos_sin(p, q, tol)
    vecs = sym_eigen(p, tol).vectors
    b0, b1 = vecs[:, :d], vecs[:, d:]
    return CanonicalForm(
        basis_m0=b0,
        basis_m1=b1,
        R=b0.T @ j @ b1,
        C=sym(b0.T @ c @ b0),
        S=sym(b0.T @ s @ b0),
    )
