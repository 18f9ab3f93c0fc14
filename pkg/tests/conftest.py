import math

import numpy as np
import pytest
from hypothesis import strategies as st

from twoproj.generate import MODES, GenSpec, angle_block, generate_pair, random_spec

THETA = math.pi / 3
C60, S60 = 0.5, math.sqrt(3) / 2


def theta_pair(theta=THETA):
    return angle_block(theta)


def direct_sum(a, b):
    n, m = len(a), len(b)
    out = np.zeros((n + m, n + m))
    out[:n, :n] = a
    out[n:, n:] = b
    return out


def block4_pair():
    """``(diag(1,0) ⊕ p2, diag(1,0) ⊕ q2)`` with ``(p2, q2)`` the 60° pair."""
    p2, q2 = theta_pair()
    e = np.diag([1.0, 0.0])
    return direct_sum(e, p2), direct_sum(e, q2)


def line(v):
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    return np.outer(v, v)


@pytest.fixture
def pq60():
    return theta_pair()


@pytest.fixture
def block4():
    return block4_pair()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pairs(modes=MODES, n_max=10):
    """Hypothesis strategy: seeded projection pairs from the generator."""
    return st.builds(
        lambda seed, mode: generate_pair(random_spec(seed, mode, n_max=n_max)),
        st.integers(0, 2**63 - 1),
        st.sampled_from(modes),
    )


def generic_pair(n, seed):
    return generate_pair(GenSpec(n, n // 2, n // 2, "generic", seed))
