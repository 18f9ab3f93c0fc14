"""Spectrum of ``p + q`` and the joint commutant of a generic pair.

For ``p`` and ``q`` in generic position the spectrum of ``p + q`` is
``{1 ± γ : γ ∈ σ(c)}``, and an element commutes with both projections exactly
when it has the form ``b + jbj`` with ``b = pbp`` commuting with ``c``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadGenerator, NotInCommutant
from .halmos import canonical_form, cos_sin, require_generic, symmetry_j
from .projlattice import as_projection, orthocomplement
from .matcore import DEFAULT_TOL, Tolerance, as_sym, commutes, norm2, sym, sym_abs


@dataclass(frozen=True)
class SpectrumReport:
    """``gammas`` are the eigenvalues of ``c`` restricted to ``ran p``
    (ascending, with multiplicity); ``c`` itself carries each one twice."""

    gammas: np.ndarray
    predicted: np.ndarray
    observed: np.ndarray
    max_deviation: float

    def distinct(self, atol: float = 1e-8) -> list[tuple[float, int]]:
        """Cluster ``gammas`` into (value, multiplicity) pairs."""
        out: list[tuple[float, int]] = []
        for g in self.gammas:
            if out and abs(g - out[-1][0]) <= atol:
                out[-1] = (out[-1][0], out[-1][1] + 1)
            else:
                out.append((float(g), 1))
        return out

    def symmetry_deviation(self) -> float:
        """How far ``σ(p + q - 1)`` is from being symmetric about zero."""
        shifted = self.observed - 1.0
        return float(np.max(np.abs(np.sort(shifted) + np.sort(shifted)[::-1]), initial=0.0))


def spectrum_sum(p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> SpectrumReport:
    """Compare ``σ(p + q)`` with ``{1 ± γ}`` by sorted pairing."""
    form = canonical_form(p, q, tol)
    gammas = form.cosines()
    predicted = np.sort(np.concatenate([1.0 - gammas, 1.0 + gammas]))
    observed = np.sort(np.linalg.eigvalsh(sym(p + q)))
    dev = float(np.max(np.abs(predicted - observed), initial=0.0))
    return SpectrumReport(gammas, predicted, observed, dev)


@dataclass(frozen=True)
class CommutantElement:
    """``a = b + jbj`` with ``b = pbp`` commuting with ``c``."""

    b: np.ndarray
    a: np.ndarray


def _bound(tol: Tolerance, *mats) -> float:
    return tol.tau * max(1.0, *(norm2(m) for m in mats)) * len(mats[0])


def commutant_embed(
    b: np.ndarray, p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> CommutantElement:
    require_generic(p, q, tol)
    b = as_sym(b, tol)
    if norm2(b - p @ b @ p) > _bound(tol, b):
        raise BadGenerator("generator must satisfy b = pbp")
    c, _ = cos_sin(p, q, tol)
    if not commutes(b, c, tol):
        raise BadGenerator("generator must commute with the cosine effect")
    j = symmetry_j(p, q, tol)
    return CommutantElement(b, sym(b + j @ b @ j))


def _require_commutant(a, p, q, tol):
    if not (commutes(a, p, tol) and commutes(a, q, tol)):
        raise NotInCommutant("element does not commute with both p and q")


def commutant_decompose(
    a: np.ndarray, p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Generator ``b = ap`` of an element of ``C(p) ∩ C(q)``."""
    require_generic(p, q, tol)
    a = as_sym(a, tol)
    _require_commutant(a, p, q, tol)
    return sym(a @ p)


def commutant_projection(
    z: np.ndarray, p: np.ndarray, q: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Projection ``t = tp = pt`` commuting with ``c`` such that ``z = t + jtj``.

    ``t = gp`` where ``g = |p - z⊥|`` is the cosine effect of ``z`` relative
    to ``p``.
    """
    require_generic(p, q, tol)
    z = as_projection(z, tol)
    _require_commutant(z, p, q, tol)
    g = sym_abs(p - orthocomplement(z), tol)
    return sym(g @ p)

