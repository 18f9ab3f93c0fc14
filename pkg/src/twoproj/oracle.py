"""Brute-force subspace oracle for meets and joins.

Independent of the carrier-based lattice operations: range bases come from
the Jacobi solver, intersections from the null space of the Gram matrix of
``[B_p, -B_q]`` and sums from the column space of ``[B_p, B_q]``.
"""
from __future__ import annotations

import numpy as np

from .matcore import DEFAULT_TOL, Tolerance, jacobi_eigen, rank_threshold, sym


def projection_basis(p: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    eig = jacobi_eigen(p, tol)
    return eig.vectors[:, eig.values > 0.5]


def intersection_basis(bp: np.ndarray, bq: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ``ran B_p ∩ ran B_q`` for orthonormal ``B_p, B_q``.

    A null vector ``(y, z)`` of ``M = [B_p, -B_q]`` has ``B_p y = B_q z`` and,
    being a unit vector, ``|B_p y| = 1/sqrt(2)``.
    """
    n = bp.shape[0]
    if bp.shape[1] == 0 or bq.shape[1] == 0:
        return np.zeros((n, 0))
    m = np.hstack([bp, -bq])
    eig = jacobi_eigen(m.T @ m, tol)
    null = eig.vectors[:, np.abs(eig.values) <= rank_threshold(eig.values, tol)]
    return np.sqrt(2.0) * bp @ null[: bp.shape[1]]


def sum_basis(bp: np.ndarray, bq: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ``ran B_p + ran B_q``."""
    m = np.hstack([bp, bq])
    if m.shape[1] == 0:
        return m
    eig = jacobi_eigen(m.T @ m, tol)
    keep = eig.values > rank_threshold(eig.values, tol)
    return m @ eig.vectors[:, keep] / np.sqrt(eig.values[keep])


def subspace_projection(b: np.ndarray) -> np.ndarray:
    return sym(b @ b.T)


def oracle_meet(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    return subspace_projection(intersection_basis(projection_basis(p, tol), projection_basis(q, tol), tol))


def oracle_join(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    return subspace_projection(sum_basis(projection_basis(p, tol), projection_basis(q, tol), tol))
