"""Dense real symmetric matrix kernel.

Symmetric eigendecomposition and the functional calculus built on top of it:
square root, absolute value, carrier (range projection), signum and the polar
decomposition ``a = |a| u = u |a|``.  All functions take and return plain
``numpy`` arrays; nothing is mutated in place.
"""
from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NonConvergence, NotPSD, NotSymmetric

ENV_TOL = "TWOPROJ_TOL"


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared by every module.

    Attributes
    ----------
    eps_rank : float
        Relative cutoff for deciding that an eigenvalue is zero.  The absolute
        threshold is ``eps_rank * max(1, max|lambda|)``.
    tau : float
        Generic "equal within tolerance" multiplier for identity checks.
    sym, orth, recon : float
        Symmetry, eigenvector orthogonality and reconstruction thresholds.
        Multiplied by :meth:`scale` of the matrix being checked.
    proj : float
        Idempotency gate ``||p^2 - p||_2 <= proj`` for accepting projections.
    max_sweeps : int
        Sweep budget of the cyclic Jacobi solver.
    """

    eps_rank: float = 1e-9
    tau: float = 1e-8
    sym: float = 1e-8
    orth: float = 1e-10
    recon: float = 1e-10
    proj: float = 1e-8
    max_sweeps: int = 64

    def __post_init__(self):
        for name in ("eps_rank", "tau", "sym", "orth", "recon", "proj"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be strictly positive")
        if not self.eps_rank < 1:
            raise ValueError("eps_rank must be < 1")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")

    @classmethod
    def from_env(cls, eps_rank: float | None = None) -> "Tolerance":
        """Defaults, with ``TWOPROJ_TOL`` overriding eps_rank and an explicit
        ``eps_rank`` argument overriding both."""
        tol = cls()
        env = os.environ.get(ENV_TOL)
        if env:
            tol = replace(tol, eps_rank=float(env))
        if eps_rank is not None:
            tol = replace(tol, eps_rank=float(eps_rank))
        return tol

    def with_rank(self, eps_rank: float) -> "Tolerance":
        return replace(self, eps_rank=eps_rank)

    def as_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def scale(a: np.ndarray) -> float:
        """``n * max(1, ||a||_2)``, the multiplier for relative thresholds."""
        a = np.asarray(a)
        n = max(a.shape[0], 1)
        return n * max(1.0, norm2(a))


DEFAULT_TOL = Tolerance()


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order; ``vectors[:, i]`` pairs with
    ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T

    def apply(self, f) -> np.ndarray:
        """Functional calculus ``V f(lambda) V^T``."""
        return sym((self.vectors * f(self.values)) @ self.vectors.T)


class Polar(NamedTuple):
    absval: np.ndarray
    signum: np.ndarray
    symmetry: np.ndarray


def norm2(x: np.ndarray) -> float:
    """Spectral norm; 0 for empty matrices."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return 0.0
    if x.ndim == 1:
        return float(np.linalg.norm(x))
    return float(np.linalg.norm(x, 2))


def sym(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return (a + a.T) / 2.0


def as_sym(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Validate a square (near-)symmetric matrix and return its symmetrization."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotSymmetric("matrix has non-finite entries")
    asym = np.max(np.abs(a - a.T)) if a.size else 0.0
    if asym > tol.sym * Tolerance.scale(a):
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds tolerance")
    return sym(a)


def check_same_dim(*mats: np.ndarray) -> int:
    shapes = {np.shape(m) for m in mats}
    if len(shapes) != 1:
        raise DimensionMismatch(f"dimension mismatch: {sorted(shapes)}")
    return np.shape(mats[0])[0]


def _sorted_desc(values, vectors) -> EigenDecomposition:
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], vectors[:, order])


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint index pairs covering every ``(i, k)``, ``i < k``, once.

    Circle-method tournament schedule; ``n`` odd gets a bye slot.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[j], players[m - 1 - j]) for j in range(m // 2)]
        pairs = [(min(x), max(x)) for x in pairs if max(x) < n]
        rounds.append((np.array([x[0] for x in pairs]), np.array([x[1] for x in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigen(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver with round-robin (parallel) ordering.

    Each step rotates a set of disjoint index pairs at once; a sweep visits
    every off-diagonal position exactly once in a fixed order.  Slow next to
    LAPACK but simple and fully deterministic; used where an
    eigendecomposition path independent of LAPACK is wanted.
    """
    a = sym(a).copy()
    n = a.shape[0]
    v = np.eye(n)
    if n <= 1:
        return EigenDecomposition(np.diag(a).copy(), v)
    frob = np.linalg.norm(a)
    target = n * np.finfo(float).eps * max(frob, np.finfo(float).tiny)
    schedule = _round_robin(n)
    for _ in range(tol.max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2) * 2.0)
        if off <= target:
            return _sorted_desc(np.diag(a).copy(), v)
        for i, k in schedule:
            aik = a[i, k]
            live = aik != 0.0
            if not live.any():
                continue
            i, k, aik = i[live], k[live], aik[live]
            theta = (a[k, k] - a[i, i]) / (2.0 * aik)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.hypot(t, 1.0)
            s = t * c
            g = np.eye(n)
            g[i, i] = c
            g[k, k] = c
            g[i, k] = s
            g[k, i] = -s
            a = g.T @ a @ g
            a[i, k] = 0.0
            a[k, i] = 0.0
            v = v @ g
    raise NonConvergence(
        f"Jacobi did not converge in {tol.max_sweeps} sweeps (off-diagonal {off:.3e})"
    )


def sym_eigen(
    a: np.ndarray, tol: Tolerance = DEFAULT_TOL, method: str = "lapack"
) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses
    :func:`jacobi_eigen`.  Both are deterministic for a fixed input.
    """
    a = as_sym(a, tol)
    if method == "jacobi":
        return jacobi_eigen(a, tol)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    if a.shape[0] == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0)))
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    return _sorted_desc(w, v)


def rank_threshold(values: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> float:
    top = float(np.max(np.abs(values))) if len(values) else 0.0
    return tol.eps_rank * max(1.0, top)


def psd_sqrt(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Positive square root of a PSD matrix.

    Eigenvalues in ``[-tau, 0)`` (scaled by ``max(1, ||a||)``) are roundoff and
    get clamped to zero; anything more negative raises :class:`NotPSD`.
    """
    eig = sym_eigen(a, tol)
    floor = -tol.tau * max(1.0, float(np.max(np.abs(eig.values), initial=0.0)))
    if len(eig.values) and eig.values[-1] < floor:
        raise NotPSD(f"minimum eigenvalue {eig.values[-1]:.3e} is negative")
    return eig.apply(lambda w: np.sqrt(np.clip(w, 0.0, None)))


def _sign_canonical(a: np.ndarray) -> np.ndarray:
    # a and -a map to the same representative, so |a| == |-a| bit for bit
    flat = a.ravel()
    nz = np.flatnonzero(flat)
    if len(nz) and flat[nz[0]] < 0:
        return -a
    return a


def sym_abs(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Absolute value ``|a| = (a^2)^{1/2} = V |lambda| V^T``."""
    a = as_sym(a, tol)
    return sym_eigen(_sign_canonical(a), tol).apply(np.abs)


def range_basis(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the range of ``a``."""
    eig = sym_eigen(a, tol)
    keep = np.abs(eig.values) > rank_threshold(eig.values, tol)
    return eig.vectors[:, keep]


def carrier(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Projection onto the range of ``a`` (the smallest ``p`` with ``ap = a``)."""
    basis = range_basis(a, tol)
    return sym(basis @ basis.T)


def polar(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> Polar:
    """Polar decomposition ``a = |a| u = u |a|``.

    Returns ``|a|``, the signum ``t`` (a partial symmetry with ``t^2`` equal to
    the carrier of ``a``) and its canonical extension ``u = t + (1 - a°)``,
    which is a symmetry.
    """
    eig = sym_eigen(a, tol)
    thr = rank_threshold(eig.values, tol)
    sign = np.where(eig.values > thr, 1.0, np.where(eig.values < -thr, -1.0, 0.0))
    ext = np.where(sign == 0.0, 1.0, sign)
    return Polar(
        absval=eig.apply(np.abs),
        signum=eig.apply(lambda _: sign),
        symmetry=eig.apply(lambda _: ext),
    )


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    check_same_dim(a, b)
    return norm2(a @ b - b @ a)


def commutes(a: np.ndarray, b: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``||ab - ba||_2 <= tau (1 + ||a||)(1 + ||b||)``."""
    bound = tol.tau * (1.0 + norm2(a)) * (1.0 + norm2(b))
    return commutator_norm(a, b) <= bound


def is_psd(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    eig = sym_eigen(a, tol)
    return not len(eig.values) or eig.values[-1] >= -tol.tau * Tolerance.scale(a)


def is_symmetry(u: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return norm2(u @ u - np.eye(len(u))) <= tol.tau * Tolerance.scale(u)


def is_effect(e: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    w = sym_eigen(e, tol).values
    return not len(w) or (w[-1] >= -tol.tau and w[0] <= 1.0 + tol.tau)


def clamped(e: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """The effect ``e`` with its spectrum clipped to ``[0, 1]``."""
    return sym_eigen(e, tol).apply(lambda w: np.clip(w, 0.0, 1.0))
