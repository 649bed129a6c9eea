import math
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from mixdisc.errors import InputError
from mixdisc.exact import det, perm_sign
from mixdisc.harness import SplitMix64, gen_hermitian, gen_psd
from mixdisc.mixed import expand_multi, mixed_disc, mixed_disc_multi, mixed_disc_oracle

from conftest import H, diag, eye, hermitian


def star_of_wedge(mats):
    """*(Â_1 ∧ ... ∧ Â_n) computed in the exterior algebra.

    Â = (i/2) Σ a_ij dz^i ∧ dz̄^j and the volume form is Π_k (i/2) dz^k ∧ dz̄^k,
    so the (i/2)^n factors cancel and only the reordering sign of
    dz^{i_1} dz̄^{j_1} ... dz^{i_n} dz̄^{j_n} into dz^1 dz̄^1 ... dz^n dz̄^n remains.
    Generators are indexed dz^i -> 2i, dz̄^j -> 2j + 1.
    """
    n = len(mats)
    total = 0
    for idx in product(range(n), repeat=2 * n):
        gens = []
        coeff = 1
        for k in range(n):
            i, j = idx[2 * k], idx[2 * k + 1]
            coeff = coeff * mats[k].entries[i][j]
            if not coeff:
                break
            gens += [2 * i, 2 * j + 1]
        if not coeff or len(set(gens)) != 2 * n:
            continue
        total = total + coeff * perm_sign(gens)
    assert total.im == 0
    return total.re


def test_examples():
    assert mixed_disc([diag(1, 2), diag(3, 4)]) == 10
    assert mixed_disc([eye(2), eye(2)]) == 2
    assert mixed_disc([eye(3), eye(3), diag(1, 1, -1)]) == 2
    assert mixed_disc([H([[5]])]) == 5
    # off-diagonal only: D(S, S) = 2 det S
    S = H([[0, 1], [1, 0]])
    assert mixed_disc([S, S]) == -2


@pytest.mark.parametrize("n, value", [(1, 1), (2, 2), (3, 6), (4, 24), (5, 120)])
def test_identity_normalization(n, value):
    assert mixed_disc([eye(n)] * n) == value


def test_diagonal_is_permanent(rng):
    # D(diag(d_1), ..., diag(d_n)) = permanent of the n x n table d_k[i]
    for n in range(1, 5):
        for _ in range(10):
            ds = [[rng.rational(6) for _ in range(n)] for _ in range(n)]
            perm = sum(math.prod(ds[k][s[k]] for k in range(n)) for s in permutations(range(n)))
            assert mixed_disc([diag(*d) for d in ds]) == perm


def test_oracle_agreement(rng):
    for n in range(1, 5):
        for _ in range(25):
            mats = [gen_hermitian(rng, n, 10) for _ in range(n)]
            assert mixed_disc(mats) == mixed_disc_oracle(mats)


def test_oracle_cap():
    with pytest.raises(InputError):
        mixed_disc_oracle([eye(6)] * 6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exterior_algebra_cross_check(n, rng):
    for _ in range(8 if n < 3 else 3):
        mats = [gen_hermitian(rng, n, 5) for _ in range(n)]
        assert mixed_disc(mats) == star_of_wedge(mats)


def test_normalization_matches_det(rng):
    for n in range(1, 6):
        for _ in range(10):
            A = gen_hermitian(rng, n, 10)
            assert mixed_disc([A] * n) == math.factorial(n) * det(A).re


def test_dimension_errors():
    with pytest.raises(InputError):
        mixed_disc([eye(2)])
    with pytest.raises(InputError):
        mixed_disc([eye(2), eye(3)])


def test_multi():
    assert len(expand_multi([(eye(3), 2), (diag(1, 2, 3), 1)])) == 3
    assert mixed_disc_multi([(eye(3), 2), (diag(1, 2, 3), 1)]) == 2 * 6
    with pytest.raises(InputError):
        mixed_disc_multi([(eye(3), 2)])


tuples = st.integers(1, 4).flatmap(lambda n: st.lists(hermitian(n), min_size=n + 1, max_size=n + 1))


@given(tuples, st.randoms(use_true_random=False))
def test_symmetric(mats, r):
    n = len(mats) - 1
    base = mats[:n]
    shuffled = base[:]
    r.shuffle(shuffled)
    assert mixed_disc(base) == mixed_disc(shuffled)


@given(tuples, st.fractions(max_denominator=7), st.fractions(max_denominator=7))
def test_multilinear_first_slot(mats, s, t):
    n = len(mats) - 1
    A, B, rest = mats[0], mats[n], mats[1:n]
    lhs = mixed_disc([A.scale(s) + B.scale(t)] + rest)
    assert lhs == s * mixed_disc([A] + rest) + t * mixed_disc([B] + rest)


@given(tuples, st.integers(0, 2**64 - 1))
def test_congruence_scales_by_det(mats, seed):
    # D(M^H A_k M) = |det M|^2 D(A_k)
    n = len(mats) - 1
    rng = SplitMix64(seed)
    M = [[rng.gaussian(3) for _ in range(n)] for _ in range(n)]
    lhs = mixed_disc([A.congruent(M) for A in mats[:n]])
    assert lhs == det(M).abs2() * mixed_disc(mats[:n])


@given(st.integers(1, 4), st.integers(0, 2**64 - 1))
def test_psd_tuples_nonnegative(n, seed):
    rng = SplitMix64(seed)
    mats = [gen_psd(rng, n, rng.randint(0, n), 5) for _ in range(n)]
    assert mixed_disc(mats) >= 0


@given(st.integers(2, 4), st.integers(0, 2**64 - 1))
def test_alexandrov_nonnegative_gap(n, seed):
    rng = SplitMix64(seed)
    omega = [gen_psd(rng, n, rng.randint(1, n), 5) for _ in range(n - 2)]
    a = gen_psd(rng, n, rng.randint(1, n), 5)
    b = gen_hermitian(rng, n, 5)
    dab = mixed_disc(omega + [a, b])
    assert dab * dab >= mixed_disc(omega + [a, a]) * mixed_disc(omega + [b, b])
