import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from spinhl.arith import sample_point
from spinhl.pfaffian import (
    MGammaSpec,
    SkewMatrix,
    b_matrix,
    cor_entry,
    det,
    m_conjugated,
    m_gamma,
    rhs_cor,
    rhs_main1,
    rhs_main2,
    subset_labels,
)


def random_skew(rng, labels):
    return SkewMatrix.from_function(
        labels, lambda a, b: F(rng.randint(-30, 30), rng.randint(1, 15))
    )


def kernel_pole_list(n):
    def no_kernel_poles(pt):
        val = F(1)
        for i in range(n):
            val *= 1 - pt.u[i]
            val *= 1 - pt.s(0) * pt.u[i]
            for j in range(i, n):
                val *= (1 - pt.u[i] * pt.u[j]) * (1 - pt.q * pt.u[i] * pt.u[j])
        return val

    return [no_kernel_poles]


def test_pfaffian_small_dims():
    assert SkewMatrix((), {}).pfaffian() == 1
    two = SkewMatrix((1, 2), {(1, 2): F(5, 3)})
    assert two.pfaffian() == F(5, 3)
    four = SkewMatrix.from_function((1, 2, 3, 4), lambda a, b: F(10 * a + b))
    # dim 4 expands over the three matchings with signs +, -, +
    assert four.pfaffian() == F(12) * F(34) - F(13) * F(24) + F(14) * F(23)


def test_pfaffian_odd_dimension_rejected():
    with pytest.raises(ValueError):
        SkewMatrix((1, 2, 3), {(1, 2): F(1), (1, 3): F(1), (2, 3): F(1)}).pfaffian()


def test_laplace_matches_matching_sum():
    rng = random.Random(11)
    for dim in (2, 4, 6):
        for _ in range(4):
            mat = random_skew(rng, tuple(range(1, dim + 1)))
            assert mat.pfaffian() == mat.pfaffian_matchings()


def test_pfaffian_antisymmetry_under_permutations():
    rng = random.Random(23)
    for dim in (4, 6):
        mat = random_skew(rng, tuple(range(1, dim + 1)))
        base = mat.pfaffian()
        for _ in range(20):
            sigma = list(range(dim))
            rng.shuffle(sigma)
            inv = sum(
                1
                for i in range(dim)
                for j in range(i + 1, dim)
                if sigma[i] > sigma[j]
            )
            sign = -1 if inv % 2 else 1
            assert mat.permute_positions(tuple(sigma)).pfaffian() == sign * base


def test_pfaffian_multiplicativity_general_conjugation():
    rng = random.Random(5)
    dim = 4
    A = [[F(0)] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            A[i][j] = F(rng.randint(-20, 20), rng.randint(1, 9))
            A[j][i] = -A[i][j]
    B = [[F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(dim)] for _ in range(dim)]
    C = [[sum(B[i][k] * A[k][l] * B[j][l] for k in range(dim) for l in range(dim)) for j in range(dim)] for i in range(dim)]
    skew_a = SkewMatrix.from_function(tuple(range(dim)), lambda a, b: A[a][b])
    skew_c = SkewMatrix.from_function(tuple(range(dim)), lambda a, b: C[a][b])
    assert skew_c.pfaffian() == det(B) * skew_a.pfaffian()


def test_zero_label_parity_convention():
    assert subset_labels((1, 2)) == (1, 2)
    assert subset_labels((3,)) == (0, 3)
    assert subset_labels(()) == ()
    assert subset_labels((1, 2, 3)) == (0, 1, 2, 3)


def test_b_matrix_identity_and_determinant():
    pt = sample_point(3, 4, p=1, pole_list=kernel_pole_list(4))
    q = pt.q
    assert all(v == 1 for v in b_matrix((), (1, 2, 3), pt).values())
    for U in [(1, 2), (2, 3, 4), (1, 4)]:
        for V in [(1, 3), (2, 4), (1, 2, 3)]:
            diag = b_matrix(U, V, pt)
            detval = F(1)
            for val in diag.values():
                detval *= val
            expect = F(1)
            for i in V:
                for j in U:
                    if i < j:
                        expect *= (1 - pt.u[i - 1] * pt.u[j - 1]) * (
                            1 - q * pt.u[i - 1] * pt.u[j - 1]
                        )
            assert detval == expect


def test_conjugation_clears_to_product_formula():
    # pf of the conjugated block equals the pair product times pf of the block
    pt = sample_point(9, 4, p=1, pole_list=kernel_pole_list(4))
    spec = MGammaSpec(pt, F(1), pt.s(0))
    q = pt.q
    for size in range(5):
        for U in combinations((1, 2, 3, 4), size):
            plain = m_gamma(spec, U).pfaffian()
            conj = m_conjugated(spec, U).pfaffian()
            expect = F(1)
            for a in range(len(U)):
                for b in range(a + 1, len(U)):
                    ui, uj = pt.u[U[a] - 1], pt.u[U[b] - 1]
                    expect *= (1 - ui * uj) * (1 - q * ui * uj)
            assert conj == expect * plain, U


def test_commutation_relation_for_nested_subsets():
    # restriction of a conjugated block versus conjugating the restriction;
    # |T| even with |S| odd is skipped since the smaller block then carries
    # label 0, which the larger one does not have
    pt = sample_point(17, 4, p=1, pole_list=kernel_pole_list(4))
    spec = MGammaSpec(pt, F(1), pt.s(0))
    q = pt.q
    full = (1, 2, 3, 4)
    for tsize in range(5):
        for T in combinations(full, tsize):
            conj_T = m_conjugated(spec, T)
            for ssize in range(tsize + 1):
                for S in combinations(T, ssize):
                    if len(T) % 2 == 0 and len(S) % 2 == 1:
                        continue
                    lhs = conj_T.restrict(subset_labels(S)).pfaffian()
                    factor = F(1)
                    for i in S:
                        for j in T:
                            if j not in S and i < j:
                                factor *= (1 - pt.u[i - 1] * pt.u[j - 1]) * (
                                    1 - q * pt.u[i - 1] * pt.u[j - 1]
                                )
                    assert lhs == factor * m_conjugated(spec, S).pfaffian(), (T, S)


def test_gamma_one_matrix_row_zero_and_entry():
    pt = sample_point(4, 3, p=1, pole_list=kernel_pole_list(3))
    spec = MGammaSpec(pt, F(1), pt.s(0))
    mat = m_gamma(spec, (1, 2, 3))
    t, q = pt.t, pt.q
    for j in (1, 2, 3):
        assert mat.entry(0, j) == 1
    ui, uj = pt.u[0], pt.u[1]
    expect = (ui - uj) * ((1 + q) * (1 - t * ui * uj) + (ui + uj) * (t - q))
    expect /= (1 + t) * (1 - ui * uj) * (1 - q * ui * uj)
    assert mat.entry(1, 2) == expect
    assert mat.entry(1, 2) == cor_entry(1, 2, pt.u, t)


def test_repeated_spectral_value_kills_pfaffian():
    pt = sample_point(6, 4, p=1, pole_list=kernel_pole_list(4))
    spec = MGammaSpec(pt, pt.gamma, pt.s(0))
    u = (pt.u[0], pt.u[0], pt.u[2], pt.u[3])
    mat = m_gamma(spec, (1, 2, 3, 4), u=u)
    assert mat.entry(1, 2) == 0
    assert mat.pfaffian() == 0


def test_rhs_values_small_n():
    pt = sample_point(8, 1, p=1, pole_list=kernel_pole_list(1))
    assert rhs_main1(pt) == 1 / (1 - pt.u[0])
    assert rhs_cor(pt) == (1 + pt.t) / (1 - pt.u[0])


def test_rhs_main2_at_gamma_one_matches_direct_builder():
    for seed in (1, 2, 3):
        for n in (1, 2, 3, 4):
            pt = sample_point(seed, n, p=1, pole_list=kernel_pole_list(n))
            spec = MGammaSpec(pt, F(1), pt.s(0))
            assert rhs_main2(spec, n) == rhs_cor(pt, n)
