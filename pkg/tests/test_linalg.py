import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from kbasis.linalg import (RatMatrix, SingularMatrixError, det, hnf, invert,
                           lattice_from_generators, nullspace, orthogonal_extension, rank, solve)

import data


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def is_hnf(H):
    """Lower echelon in columns, positive pivots, entries left of a pivot in [0, pivot)."""
    nr, nc = len(H), len(H[0])
    last_row = -1
    zero_seen = False
    for j in range(nc):
        col = [H[i][j] for i in range(nr)]
        if not any(col):
            zero_seen = True
            continue
        if zero_seen:
            return False
        p = next(i for i in range(nr) if col[i])
        if p <= last_row or col[p] <= 0:
            return False
        for k in range(j):
            if not 0 <= H[p][k] < col[p]:
                return False
        last_row = p
    return True


def brute_lattice_contains(gens, v, box=4):
    """Integer-combination search oracle (small boxes only)."""
    for coeffs in itertools.product(range(-box, box + 1), repeat=len(gens)):
        if all(sum(c * g[i] for c, g in zip(coeffs, gens)) == v[i] for i in range(len(v))):
            return True
    return False


class TestHNF:
    def test_identity(self):
        H, U = hnf([[1, 0], [0, 1]])
        assert H == [[1, 0], [0, 1]] and U == [[1, 0], [0, 1]]

    def test_small_generators(self):
        # columns (2,0), (0,2), (1,1) span the lattice with basis (1,1), (0,2)
        H, U = hnf([[2, 0, 1], [0, 2, 1]])
        cols = [tuple(H[i][j] for i in range(2)) for j in range(3)]
        assert cols[:2] == [(1, 1), (0, 2)] and cols[2] == (0, 0)
        assert matmul([[2, 0, 1], [0, 2, 1]], U) == H
        # brute-force oracle: each generator is in the span of the basis and vice versa
        for g in [(2, 0), (0, 2), (1, 1)]:
            assert brute_lattice_contains(cols[:2], g)
        for b in cols[:2]:
            assert brute_lattice_contains([(2, 0), (0, 2), (1, 1)], b)

    def test_zero_matrix(self):
        H, U = hnf([[0, 0], [0, 0]])
        assert H == [[0, 0], [0, 0]]
        assert abs(det(RatMatrix.from_rows(U))) == 1

    def test_cubics_kernel_block(self):
        W = data.CUBICS_W
        K = [[W[i][j] for j in range(5)] for i in range(8)]
        H, U = hnf(K)
        assert is_hnf(H)
        assert matmul(K, U) == H
        assert abs(det(RatMatrix.from_rows(U))) == 1
        L1 = lattice_from_generators([tuple(r[j] for r in K) for j in range(5)])
        L2 = lattice_from_generators([tuple(H[i][j] for i in range(8)) for j in range(5)])
        assert L1 == L2 and L1.rank == 5

    @given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
    @settings(max_examples=300)
    def test_hnf_properties(self, rows):
        H, U = hnf(rows)
        assert matmul(rows, U) == H
        assert abs(det(RatMatrix.from_rows(U))) == 1
        assert is_hnf(H)
        # idempotence
        H2, _ = hnf(H)
        assert H2 == H


class TestLattice:
    def test_single_vector(self):
        L = lattice_from_generators([(0, 3, 0, -2)])
        assert L.rank == 1 and L.generators() == [(0, 3, 0, -2)]

    def test_toric_kernel_exponent(self):
        L = lattice_from_generators([(3, -2)])
        assert L.rank == 1 and (3, -2) in L and (6, -4) in L and (1, 0) not in L

    def test_cubics_k_orthogonal_to_degrees(self):
        L = lattice_from_generators(data.plane_cubics().K)
        assert L.rank == 5
        for g in L.generators():
            assert sum(a * b for a, b in zip(g, data.CUBICS_D)) == 0

    def test_empty(self):
        L = lattice_from_generators([], 3)
        assert L.rank == 0 and (0, 0, 0) in L and (1, 0, 0) not in L

    def test_rational_scale(self):
        L = lattice_from_generators([(F(1, 2), 0), (0, F(1, 3))])
        assert L.scale == 6 and L.covolume() == F(1, 6)
        assert (F(1, 2), F(2, 3)) in L and (F(1, 4), 0) not in L

    def test_order_independence(self):
        gens = [(2, 0, 1), (0, 2, 1), (1, 1, 1), (4, 4, 0)]
        L = lattice_from_generators(gens)
        for perm in itertools.permutations(gens):
            assert lattice_from_generators(list(perm)) == L

    def test_reference_lprime_equals_lattice(self):
        # the reference L' is not in reduced HNF, so compare lattices, not matrices
        W = data.plane_cubics().W
        Winv = invert(W)
        rows = Winv.submatrix(range(5, 8), range(8))
        L = lattice_from_generators(rows.columns())
        reference = RatMatrix.from_rows(data.CUBICS_LPRIME)
        Lp = lattice_from_generators(reference.columns())
        assert L == Lp
        assert L.covolume() == F(1, 190) == abs(reference.det())

    @given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
    @settings(max_examples=300)
    def test_membership(self, gens):
        L = lattice_from_generators(gens)
        for g in gens:
            assert g in L
        for b in L.generators():
            # each basis vector is an integer combination of the generators:
            # the generators' lattice contains the basis lattice
            assert b in lattice_from_generators(gens)
        assert lattice_from_generators(L.generators(), 3) == L


class TestInvert:
    def test_identity(self):
        assert invert(RatMatrix.identity(3)) == RatMatrix.identity(3)

    def test_two_by_two(self):
        inv = invert(RatMatrix.from_rows([[2, 1], [0, 3]]))
        assert inv == RatMatrix.from_rows([[F(1, 2), F(-1, 6)], [0, F(1, 3)]])

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            invert(RatMatrix.from_rows([[1, 2], [2, 4]]))

    def test_cubics_v_rows(self):
        Winv = invert(data.plane_cubics().W)
        d = data.CUBICS_D
        V = [[str(Winv[r, i] / d[i]) for i in range(8)] for r in (6, 7)]
        assert V == data.CUBICS_V

    def test_random_up_to_8(self):
        rng = random.Random(20240611)
        for n in range(1, 9):
            for _ in range(6):
                while True:
                    A = RatMatrix.from_rows([[F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
                                             for _ in range(n)])
                    if A.det() != 0:
                        break
                I = RatMatrix.identity(n)
                assert A @ invert(A) == I and invert(A) @ A == I


class TestSolveAndNullspace:
    def test_nullspace(self):
        ns = nullspace(RatMatrix.from_rows([[1, 2, 3]]))
        assert len(ns) == 2
        for v in ns:
            assert v[0] + 2 * v[1] + 3 * v[2] == 0

    def test_solve_inconsistent(self):
        assert solve(RatMatrix.from_rows([[1, 0], [1, 0]]), (1, 2)) is None

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            RatMatrix.from_rows([[0.5]])


class TestOrthogonalExtension:
    def check(self, K, d, ext):
        for v in ext:
            assert sum(a * b for a, b in zip(v, d)) == 0
        cols = list(K.generators()) + [tuple(F(x) for x in d)] + [tuple(F(x) for x in v) for v in ext]
        assert len(cols) == len(d) and rank(cols) == len(d)

    def test_nothing_to_extend(self):
        K = lattice_from_generators([(1, -1)])
        assert orthogonal_extension(K, (1, 1)) == []

    def test_cubics(self):
        c = data.plane_cubics()
        K = lattice_from_generators(c.K)
        ext = orthogonal_extension(K, c.d)
        assert len(ext) == 2
        self.check(K, c.d, ext)
        # the reference columns 7-8 are another valid choice
        self.check(K, c.d, [(0, 0, 0, 0, 0, 2, -1, 0), (0, 0, 0, 0, 0, 3, 0, -1)])
        assert orthogonal_extension(K, c.d) == ext  # deterministic

    def test_alternating(self):
        K = lattice_from_generators([(0, 3, 0, -2)])
        ext = orthogonal_extension(K, (1, 2, 3, 3))
        assert len(ext) == 2
        self.check(K, (1, 2, 3, 3), ext)

    def test_not_orthogonal(self):
        K = lattice_from_generators([(1, 0)])
        with pytest.raises(ValueError):
            orthogonal_extension(K, (1, 1))

    def test_zero_d(self):
        with pytest.raises(ValueError):
            orthogonal_extension(lattice_from_generators([], 2), (0, 0))

    @given(st.lists(st.integers(1, 5), min_size=2, max_size=6))
    @settings(max_examples=200)
    def test_random_degrees(self, d):
        K = lattice_from_generators([], len(d))
        ext = orthogonal_extension(K, d)
        assert len(ext) == len(d) - 1
        self.check(K, d, ext)
