"""JSON document holding one pair of projections.

::

    {"schema": 1, "name": "...", "n": 2, "encoding": "matrix",
     "p": [[1.0, 0.0], [0.0, 0.0]], "q": [[...], [...]]}

With ``"encoding": "basis"`` the ``p`` and ``q`` entries are lists of spanning
vectors (each of length ``n``); they are orthonormalized with modified
Gram-Schmidt and turned into projections ``B B^T``.

Floats are written with Python's shortest round-trip ``repr``, so a
written-then-read matrix is bit-identical.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NotProjection, NotSymmetric, ParseError, DimensionMismatch
from .projlattice import as_projection
from .matcore import DEFAULT_TOL, Tolerance, sym

SCHEMA = 1
ENCODINGS = ("matrix", "basis")


def mgs_orthonormalize(vectors: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    ``vectors`` holds the spanning vectors as columns.  Rejects near-dependent
    sets: the smallest column norm left after projection must be at least
    ``eps_rank`` times the largest.
    """
    a = np.array(vectors, dtype=float)
    n, k = a.shape
    if k == 0:
        return a
    out = np.zeros_like(a)
    norms = np.zeros(k)
    for i in range(k):
        v = a[:, i].copy()
        for _ in range(2):
            for j in range(i):
                v -= (out[:, j] @ v) * out[:, j]
        norms[i] = np.linalg.norm(v)
        if norms[i] > 0:
            out[:, i] = v / norms[i]
    if norms.max() == 0 or norms.min() < tol.eps_rank * norms.max():
        raise ParseError("spanning vectors are (nearly) linearly dependent")
    return out


@dataclass(frozen=True)
class PairFile:
    name: str
    n: int
    encoding: str
    p: list
    q: list

    @classmethod
    def from_matrices(cls, name: str, p: np.ndarray, q: np.ndarray) -> "PairFile":
        return cls(name, int(len(p)), "matrix", np.asarray(p).tolist(), np.asarray(q).tolist())

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "name": self.name,
            "n": self.n,
            "encoding": self.encoding,
            "p": self.p,
            "q": self.q,
        }

    def dumps(self) -> str:
        from .report import dumps

        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "PairFile":
        try:
            name = str(doc.get("name", "pair"))
            n = int(doc["n"])
            encoding = doc.get("encoding", "matrix")
            p, q = doc["p"], doc["q"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed pair document: {exc}") from exc
        if encoding not in ENCODINGS:
            raise ParseError(f"unknown encoding {encoding!r}")
        return cls(name, n, encoding, p, q)

    @classmethod
    def loads(cls, text: str) -> "PairFile":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("pair document must be a JSON object")
        return cls.from_dict(doc)

    @classmethod
    def load(cls, path) -> "PairFile":
        return cls.loads(Path(path).read_text())

    def _decode_one(self, entry, tol: Tolerance) -> np.ndarray:
        try:
            arr = np.array(entry, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"non-numeric entries: {exc}") from exc
        if self.encoding == "matrix":
            if arr.shape != (self.n, self.n):
                raise ParseError(f"expected {self.n}x{self.n} matrix, got shape {arr.shape}")
            mat = arr
        else:
            if arr.size == 0:
                return np.zeros((self.n, self.n))
            if arr.ndim != 2 or arr.shape[1] != self.n:
                raise ParseError(f"basis vectors must have length {self.n}")
            basis = mgs_orthonormalize(arr.T, tol)
            mat = sym(basis @ basis.T)
        if not np.all(np.isfinite(mat)):
            raise ParseError("non-finite entries")
        try:
            return as_projection(mat, tol)
        except (NotProjection, NotSymmetric, DimensionMismatch) as exc:
            raise ParseError(f"not a projection: {exc}") from exc

    def decode(self, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
        return self._decode_one(self.p, tol), self._decode_one(self.q, tol)


def load_matrix(path) -> np.ndarray:
    """Read a matrix from a JSON file: either a bare nested list or an object
    with a ``"matrix"`` key."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read matrix file {path}: {exc}") from exc
    if isinstance(doc, dict):
        doc = doc.get("matrix")
    try:
        arr = np.array(doc, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric matrix: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ParseError(f"matrix must be square, got shape {arr.shape}")
    return arr
