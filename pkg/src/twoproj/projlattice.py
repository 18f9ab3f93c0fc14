"""The orthomodular lattice of projections.

Meets and joins are computed from carriers: the join of projections is the
carrier of their sum, and the meet is the orthocomplement of the join of the
orthocomplements.  One eigendecomposition per lattice operation, with the rank
decision made in one place (:func:`twoproj.matcore.carrier`).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotProjection
from .matcore import (
    DEFAULT_TOL,
    Tolerance,
    as_sym,
    carrier,
    check_same_dim,
    commutator_norm,
    norm2,
    sym,
)


def as_projection(p, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Validate and symmetrize a projection.  Never re-idempotizes."""
    p = as_sym(p, tol)
    err = norm2(p @ p - p)
    if err > tol.proj:
        raise NotProjection(f"||p^2 - p|| = {err:.3e} exceeds {tol.proj:.1e}")
    return p


def is_projection(p, tol: Tolerance = DEFAULT_TOL) -> bool:
    try:
        as_projection(p, tol)
    except (NotProjection, DimensionMismatch, ValueError):
        return False
    return True


def rank(p: np.ndarray) -> int:
    """Rank of a projection (its trace, rounded)."""
    return int(round(float(np.trace(p)))) if np.size(p) else 0


def orthocomplement(p: np.ndarray) -> np.ndarray:
    return np.eye(len(p)) - p


def join(*ps: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    check_same_dim(*ps)
    return carrier(sym(sum(ps)), tol)


def meet(*ps: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    check_same_dim(*ps)
    eye = np.eye(len(ps[0]))
    return sym(eye - carrier(sym(sum(eye - p for p in ps)), tol))


def leq(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``p <= q`` iff ``p = pq``."""
    return norm2(p @ q - p) <= tol.tau * len(p)


def orthogonal(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return norm2(p @ q) <= tol.tau * len(p)


@dataclass(frozen=True)
class PeirceParts:
    """``a = pap + pap⊥ + p⊥ap + p⊥ap⊥``; the two mixed parts are not
    symmetric on their own."""

    pap: np.ndarray
    pap_perp: np.ndarray
    p_perp_ap: np.ndarray
    p_perp_ap_perp: np.ndarray

    def total(self) -> np.ndarray:
        return self.pap + self.pap_perp + self.p_perp_ap + self.p_perp_ap_perp


def peirce(a: np.ndarray, p: np.ndarray) -> PeirceParts:
    check_same_dim(a, p)
    pp = orthocomplement(p)
    return PeirceParts(p @ a @ p, p @ a @ pp, pp @ a @ p, pp @ a @ pp)


def diag_offdiag(a: np.ndarray, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal part ``pap + p⊥ap⊥`` and off-diagonal part ``pap⊥ + p⊥ap``."""
    parts = peirce(a, p)
    return (
        sym(parts.pap + parts.p_perp_ap_perp),
        sym(parts.pap_perp + parts.p_perp_ap),
    )


@dataclass(frozen=True)
class ResidualSet:
    r_p: np.ndarray
    r_p_perp: np.ndarray
    r_q: np.ndarray
    r_q_perp: np.ndarray
    r: np.ndarray


def _joins(p, q, tol):
    pp, qp = orthocomplement(p), orthocomplement(q)
    return {
        "p|q": join(p, q, tol=tol),
        "p|q'": join(p, qp, tol=tol),
        "p'|q": join(pp, q, tol=tol),
        "p'|q'": join(pp, qp, tol=tol),
    }


def marsden(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """The commutator ``[p,q] = (p∨q)∧(p∨q⊥)∧(p⊥∨q)∧(p⊥∨q⊥)``."""
    check_same_dim(p, q)
    return meet(*_joins(p, q, tol).values(), tol=tol)


def residuals(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> ResidualSet:
    check_same_dim(p, q)
    pp, qp = orthocomplement(p), orthocomplement(q)
    j = _joins(p, q, tol)
    return ResidualSet(
        r_p=meet(p, j["p'|q"], j["p'|q'"], tol=tol),
        r_p_perp=meet(pp, j["p|q"], j["p|q'"], tol=tol),
        r_q=meet(q, j["p|q'"], j["p'|q'"], tol=tol),
        r_q_perp=meet(qp, j["p|q"], j["p'|q"], tol=tol),
        r=meet(*j.values(), tol=tol),
    )


@dataclass(frozen=True)
class SixfoldDecomposition:
    meet_pq: np.ndarray
    meet_pq_perp: np.ndarray
    meet_p_perp_q: np.ndarray
    meet_p_perp_q_perp: np.ndarray
    residuals: ResidualSet
    side: str = "p"

    NAMES = ("meet_pq", "meet_pq_perp", "meet_p_perp_q", "meet_p_perp_q_perp")

    def meets(self) -> tuple[np.ndarray, ...]:
        return (self.meet_pq, self.meet_pq_perp, self.meet_p_perp_q, self.meet_p_perp_q_perp)

    def completion(self, side: str | None = None) -> tuple[np.ndarray, np.ndarray]:
        side = side or self.side
        res = self.residuals
        if side == "p":
            return res.r_p, res.r_p_perp
        if side == "q":
            return res.r_q, res.r_q_perp
        raise ValueError(f"side must be 'p' or 'q', got {side!r}")

    def parts(self, side: str | None = None) -> tuple[np.ndarray, ...]:
        return self.meets() + self.completion(side)

    def labels(self, side: str | None = None) -> tuple[str, ...]:
        side = side or self.side
        return self.NAMES + (f"r_{side}", f"r_{side}_perp")

    def total(self, side: str | None = None) -> np.ndarray:
        return sum(self.parts(side))

    def ranks(self, side: str | None = None) -> dict[str, int]:
        return {k: rank(v) for k, v in zip(self.labels(side), self.parts(side))}

    def max_overlap(self, side: str | None = None) -> float:
        """Largest ``||a b||`` over distinct pairs of the six parts."""
        parts = self.parts(side)
        worst = 0.0
        for i in range(len(parts)):
            for k in range(i + 1, len(parts)):
                worst = max(worst, norm2(parts[i] @ parts[k]))
        return worst


def four_meets(p, q, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, ...]:
    pp, qp = orthocomplement(p), orthocomplement(q)
    return (
        meet(p, q, tol=tol),
        meet(p, qp, tol=tol),
        meet(pp, q, tol=tol),
        meet(pp, qp, tol=tol),
    )


def sixfold(
    p: np.ndarray, q: np.ndarray, side: str = "p", tol: Tolerance = DEFAULT_TOL
) -> SixfoldDecomposition:
    """Six pairwise orthogonal projections summing to the identity: the four
    meets of ``p, p⊥`` with ``q, q⊥`` plus ``r_p, r_p⊥`` (or ``r_q, r_q⊥``
    with ``side="q"``)."""
    if side not in ("p", "q"):
        raise ValueError(f"side must be 'p' or 'q', got {side!r}")
    check_same_dim(p, q)
    return SixfoldDecomposition(*four_meets(p, q, tol), residuals(p, q, tol), side)


def is_generic(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """All four meets vanish."""
    check_same_dim(p, q)
    if len(p) == 0:
        return False
    return all(rank(m) == 0 for m in four_meets(p, q, tol))


def pq_commute(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Commutation test for two projections, ``||pq - qp|| <= tau n``."""
    return commutator_norm(p, q) <= tol.tau * len(p)
