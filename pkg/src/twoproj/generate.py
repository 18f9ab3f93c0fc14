"""Seeded generation of projection pairs.

Modes
-----
random     independent Haar-random subspaces of the requested dimensions
generic    like ``random`` but retried until the pair is in generic position
commuting  both subspaces spanned by columns of one random orthogonal frame
block      direct sum of 2x2 angle blocks and axis-aligned commuting directions
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationFailure
from .projlattice import is_generic
from .matcore import DEFAULT_TOL, Tolerance, sym

MODES = ("random", "generic", "commuting", "block")
GENERIC_RETRIES = 64
SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class GenSpec:
    n: int
    dim_p: int
    dim_q: int
    mode: str = "random"
    seed: int = 0
    angles: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (0 <= self.dim_p <= self.n and 0 <= self.dim_q <= self.n):
            raise ValueError("dim_p and dim_q must lie in [0, n]")
        if self.mode == "block":
            k = len(self.angles)
            if k == 0:
                raise ValueError("block mode needs at least one angle")
            rest = self.n - 2 * k
            if rest < 0 or not (k <= self.dim_p <= k + rest and k <= self.dim_q <= k + rest):
                raise ValueError(
                    f"{k} angle blocks do not fit n={self.n}, dim_p={self.dim_p}, "
                    f"dim_q={self.dim_q}"
                )
            if any(not 0.0 < a < math.pi / 2 for a in self.angles):
                raise ValueError("block angles must lie strictly between 0 and pi/2")


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & SEED_MASK)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian, sign-corrected)."""
    g = rng.standard_normal((n, n))
    qmat, rmat = np.linalg.qr(g)
    return qmat * np.where(np.diag(rmat) < 0, -1.0, 1.0)


def frame_projection(cols: np.ndarray) -> np.ndarray:
    return sym(cols @ cols.T)


def angle_block(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """The 2x2 pair ``p = diag(1, 0)``, ``q`` the line at angle ``theta``."""
    c, s = math.cos(theta), math.sin(theta)
    return np.diag([1.0, 0.0]), np.array([[c * c, c * s], [c * s, s * s]])


def _block(spec: GenSpec, rng) -> tuple[np.ndarray, np.ndarray]:
    n, k = spec.n, len(spec.angles)
    p = np.zeros((n, n))
    q = np.zeros((n, n))
    for i, theta in enumerate(spec.angles):
        bp, bq = angle_block(theta)
        sl = slice(2 * i, 2 * i + 2)
        p[sl, sl] = bp
        q[sl, sl] = bq
    rest = np.arange(2 * k, n)
    for proj, dim in ((p, spec.dim_p), (q, spec.dim_q)):
        chosen = np.sort(rng.permutation(rest)[: dim - k])
        proj[chosen, chosen] = 1.0
    return p, q


def generate_pair(spec: GenSpec, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic for a fixed ``spec`` (including its seed)."""
    rng = rng_for(spec.seed)
    n = spec.n
    if spec.mode == "block":
        return _block(spec, rng)
    if spec.mode == "commuting":
        frame = random_orthogonal(n, rng)
        cols = np.sort(rng.permutation(n)[: spec.dim_q])
        return frame_projection(frame[:, : spec.dim_p]), frame_projection(frame[:, cols])
    if spec.mode == "random":
        return (
            frame_projection(random_orthogonal(n, rng)[:, : spec.dim_p]),
            frame_projection(random_orthogonal(n, rng)[:, : spec.dim_q]),
        )
    # generic position forces dim p = dim p⊥ = dim q = dim q⊥
    if 2 * spec.dim_p != n or 2 * spec.dim_q != n:
        raise GenerationFailure(
            f"generic position needs dim_p = dim_q = n/2; got n={n}, "
            f"dim_p={spec.dim_p}, dim_q={spec.dim_q}"
        )
    for _ in range(GENERIC_RETRIES):
        p = frame_projection(random_orthogonal(n, rng)[:, : spec.dim_p])
        q = frame_projection(random_orthogonal(n, rng)[:, : spec.dim_q])
        if is_generic(p, q, tol):
            return p, q
    raise GenerationFailure(f"no generic pair after {GENERIC_RETRIES} attempts")


def spawn_seeds(seed: int, count: int) -> list[int]:
    children = np.random.SeedSequence(int(seed) & SEED_MASK).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def random_spec(seed: int, mode: str, n: int | None = None, n_max: int = 12) -> GenSpec:
    """A randomized :class:`GenSpec` of the given mode, derived from ``seed``."""
    rng = rng_for(seed ^ 0x9E3779B97F4A7C15)
    if n is None:
        if mode == "generic":
            n = 2 * int(rng.integers(1, n_max // 2 + 1))
        else:
            n = int(rng.integers(2, n_max + 1))
    if mode == "generic":
        return GenSpec(n, n // 2, n // 2, mode, seed)
    if mode == "block":
        k = int(rng.integers(1, n // 2 + 1))
        angles = tuple(float(a) for a in rng.uniform(0.05, math.pi / 2 - 0.05, size=k))
        rest = n - 2 * k
        dim_p = k + int(rng.integers(0, rest + 1))
        dim_q = k + int(rng.integers(0, rest + 1))
        return GenSpec(n, dim_p, dim_q, mode, seed, angles)
    return GenSpec(n, int(rng.integers(0, n + 1)), int(rng.integers(0, n + 1)), mode, seed)


def corpus(count: int, seed: int, n_max: int = 12, modes=MODES, n: int | None = None):
    """``count`` seeded instances cycling through ``modes``.

    Yields ``(spec, p, q)``.
    """
    if n is not None:
        modes = [m for m in modes if not (m == "generic" and n % 2) and not (m == "block" and n < 2)]
    for i, s in enumerate(spawn_seeds(seed, count)):
        spec = random_spec(s, modes[i % len(modes)], n=n, n_max=n_max)
        p, q = generate_pair(spec)
        yield spec, p, q
