import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C60, S60, direct_sum, generic_pair, pairs, theta_pair
from twoproj import halmos
from twoproj.errors import NotGeneric, RankMismatch
from twoproj.projlattice import is_generic, orthocomplement, rank, residuals
from twoproj.matcore import norm2

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def close(a, b, atol=1e-12):
    return np.allclose(a, b, atol=atol, rtol=0)


def commuting_pair():
    return np.diag([1.0, 1, 0, 0]), np.diag([0.0, 1, 1, 0])


class TestCosSin:
    def test_equal(self, pq60):
        p, _ = pq60
        c, s = halmos.cos_sin(p, p)
        assert close(c, np.eye(2)) and close(s, 0)

    def test_complement(self, pq60):
        p, _ = pq60
        c, s = halmos.cos_sin(p, orthocomplement(p))
        assert close(c, 0) and close(s, np.eye(2))

    def test_sixty_degrees(self, pq60):
        c, s = halmos.cos_sin(*pq60)
        assert close(c, C60 * np.eye(2)) and close(s, S60 * np.eye(2))

    @settings(max_examples=60, deadline=None)
    @given(pairs())
    def test_squares_match_compressions(self, pq):
        p, q = pq
        n = len(p)
        c, s = halmos.cos_sin(p, q)
        c2, s2 = halmos.cos_sin_squares(p, q)
        assert norm2(c @ c - c2) <= 1e-8 * n
        assert norm2(s @ s - s2) <= 1e-8 * n
        assert norm2(c @ c + s @ s - np.eye(n)) <= 1e-10 * n
        for e in (c, s):
            w = np.linalg.eigvalsh(e)
            assert w[0] >= -1e-12 and w[-1] <= 1 + 1e-12


class TestSymmetries:
    def test_uv_sixty(self, pq60):
        u, v = halmos.symmetries_uv(*pq60)
        assert close(u, [[C60, S60], [S60, -C60]])
        assert close(v, [[S60, -C60], [-C60, -S60]])

    def test_v_for_equal_pair(self, pq60):
        p, _ = pq60
        assert close(halmos.symmetries_uv(p, p).v, np.eye(2))

    def test_k(self, pq60):
        assert close(halmos.symmetry_k(*pq60), SWAP)
        assert close(halmos.symmetry_k(*commuting_pair()), np.eye(4))

    def test_j_and_ell(self, pq60):
        p, q = pq60
        assert close(halmos.symmetry_j(p, q), SWAP)
        assert close(halmos.symmetry_ell(p), np.diag([1.0, -1.0]))

    def test_j_needs_generic(self, block4):
        with pytest.raises(NotGeneric):
            halmos.symmetry_j(*block4)

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from([2, 4, 6, 8]), st.integers(0, 2**32))
    def test_generic_identities(self, n, seed):
        p, q = generic_pair(n, seed)
        u, v = halmos.symmetries_uv(p, q)
        c, s = halmos.cos_sin(p, q)
        j = halmos.symmetry_j(p, q)
        pp = orthocomplement(p)
        assert norm2(u @ p @ u - q) <= 1e-8 * n
        assert norm2(u @ v + v @ u) <= 1e-9 * n
        assert norm2(halmos.symmetry_ell(p) - (c @ u + s @ v)) <= 1e-8 * n
        assert norm2(j @ j - np.eye(n)) <= 1e-8 * n
        assert norm2(j @ p @ j - pp) <= 1e-9 * n
        assert norm2(j - halmos.symmetry_k(p, q)) <= 1e-8


class TestGeneralCS:
    def test_sixty(self, pq60):
        p, q = pq60
        dec = halmos.general_cs(p, q)
        expect = 0.25 * p + np.sqrt(3) / 4 * SWAP + 0.75 * orthocomplement(p)
        assert close(dec.reconstruct(), expect) and close(expect, q, 1e-15)

    def test_commuting(self):
        p, q = commuting_pair()
        dec = halmos.general_cs(p, q)
        assert close(dec.c @ dec.s, 0)
        assert close(dec.c @ dec.c @ p + dec.s @ dec.s @ orthocomplement(p), q)

    def test_block4(self, block4):
        dec = halmos.general_cs(*block4)
        assert dec.residual() <= 1e-9 * 4 and dec.complement_residual() <= 1e-9 * 4

    @settings(max_examples=80, deadline=None)
    @given(pairs())
    def test_reconstruction(self, pq):
        p, q = pq
        n = len(p)
        dec = halmos.general_cs(p, q)
        assert dec.residual() <= 1e-9 * n
        assert dec.complement_residual() <= 1e-9 * n
        c, s, k = dec.c, dec.s, dec.k
        for a, b in ((c, s), (c, k), (s, k)):
            assert norm2(a @ b - b @ a) <= 1e-8 * n


class TestCommutingEquivalences:
    def test_commuting(self):
        assert all(halmos.commuting_equivalences(*commuting_pair()))

    def test_generic(self, pq60):
        assert not any(halmos.commuting_equivalences(*pq60))

    def test_equal(self, pq60):
        p, _ = pq60
        assert all(halmos.commuting_equivalences(p, p))

    @settings(max_examples=60, deadline=None)
    @given(pairs())
    def test_agree(self, pq):
        assert halmos.commuting_equivalences(*pq).agree()


class TestCompression:
    def test_commuting(self):
        g = halmos.compress_to_commutator(*commuting_pair())
        assert g.m == 0 and g.p_c.shape == (0, 0)

    def test_sixty(self, pq60):
        p, q = pq60
        g = halmos.compress_to_commutator(p, q)
        assert g.m == 2
        assert close(g.decompress(g.p_c), p) and close(g.decompress(g.q_c), q)

    def test_block4(self, block4):
        p, q = block4
        g = halmos.compress_to_commutator(p, q)
        assert g.m == 2
        assert is_generic(g.p_c, g.q_c)
        # orthogonally equivalent to the 60 degree pair: same spectrum of pqp
        w = np.linalg.eigvalsh(g.p_c @ g.q_c @ g.p_c)
        assert np.allclose(w, [0.0, 0.25], atol=1e-12)
        res = residuals(p, q)
        assert close(g.decompress(g.p_c), res.r_p) and close(g.decompress(g.q_c), res.r_q)
        gen = halmos.generic_cs(g.p_c, g.q_c)
        assert close(gen.c, C60 * np.eye(2)) and close(gen.s, S60 * np.eye(2))
        assert abs(abs(np.linalg.det(gen.k)) - 1) < 1e-12

    @settings(max_examples=60, deadline=None)
    @given(pairs(modes=("random", "block")))
    def test_compressed_pair_generic(self, pq):
        p, q = pq
        g = halmos.compress_to_commutator(p, q)
        if g.m:
            assert is_generic(g.p_c, g.q_c)
            assert 2 * rank(g.p_c) == g.m


class TestRestricted:
    def test_generic(self, pq60):
        rc = halmos.restricted_cos_sin(*pq60)
        c, _ = halmos.cos_sin(*pq60)
        assert close(rc.c_r, c) and rc.c_residual <= 1e-12

    def test_commuting(self):
        p, q = commuting_pair()
        rc = halmos.restricted_cos_sin(p, q)
        assert close(rc.c_r, 0) and rc.c_residual <= 1e-12 and rc.s_residual <= 1e-12

    def test_block4(self, block4):
        rc = halmos.restricted_cos_sin(*block4)
        c, _ = halmos.cos_sin(*block4)
        assert close(c, direct_sum(np.diag([1.0, 1.0]), C60 * np.eye(2)))
        assert close(rc.c_r, direct_sum(np.zeros((2, 2)), C60 * np.eye(2)))
        assert rc.c_residual <= 1e-12 and rc.s_residual <= 1e-12


class TestGenericCS:
    def test_sixty(self, pq60):
        dec = halmos.generic_cs(*pq60)
        assert dec.generic
        assert close(dec.c, C60 * np.eye(2))
        assert close(dec.s, S60 * np.eye(2))
        assert close(dec.k, SWAP)

    def test_requires_generic(self, block4):
        with pytest.raises(NotGeneric):
            halmos.generic_cs(*block4)

    @pytest.mark.parametrize("seed", range(5))
    def test_random(self, seed):
        p, q = generic_pair(8, seed)
        assert halmos.generic_cs(p, q).residual() <= 1e-9 * 8


class TestCanonicalForm:
    def test_sixty(self, pq60):
        form = halmos.canonical_form(*pq60)
        assert form.d == 1
        assert close(form.C, [[C60]]) and close(form.S, [[S60]])
        assert close(np.abs(form.R), [[1.0]])
        # in the canonical basis q has the block form of the 2x2 example
        assert close(form.q_block(), [[0.25, np.sqrt(3) / 4], [np.sqrt(3) / 4, 0.75]])
        assert close(form.angles(), [np.pi / 3])

    def test_rank_mismatch(self):
        # a generic pair needs rank p = n/2; the gate rejects odd n outright
        with pytest.raises((NotGeneric, RankMismatch)):
            halmos.canonical_form(np.diag([1.0, 0, 0]), np.diag([0.0, 1, 0]))

    @pytest.mark.parametrize("seed", range(5))
    def test_random_8(self, seed):
        p, q = generic_pair(8, seed)
        form = halmos.canonical_form(p, q)
        j = halmos.symmetry_j(p, q)
        b = form.basis
        assert norm2(form.assemble(form.q_block()) - q) <= 1e-9 * 8
        assert norm2(b.T @ j @ b - form.j_block()) <= 1e-8 * 8
        assert norm2(form.R.T @ form.R - np.eye(4)) <= 1e-8
        assert min(np.linalg.eigvalsh(form.C)[0], np.linalg.eigvalsh(form.S)[0]) > 1e-9

    def test_theta_family(self):
        for theta in (0.1, 0.7, 1.3):
            form = halmos.canonical_form(*theta_pair(theta))
            assert close(form.cosines(), [np.cos(theta)])
