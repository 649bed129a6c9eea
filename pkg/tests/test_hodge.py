import pytest
from hypothesis import given, strategies as st

from mixdisc.errors import InputError, PreconditionError
from mixdisc.exact import HermitianMatrix, decompose_in_basis, hermitian_basis, recompose
from mixdisc.harness import SplitMix64, gen_hermitian, gen_psd
from mixdisc.hodge import (
    INDEFINITE,
    SATISFIES_HIT,
    SEMI_NEGATIVE,
    functional,
    functional_rank,
    gram,
    hodge_index_check,
    lefschetz,
    primitive_space,
    signature_on,
    zero_vector_check,
)
from mixdisc.linalg import Signature, congruence_diagonalize, restrict, signature_of
from mixdisc.mixed import mixed_disc

from conftest import H, diag, eye

S12 = H([[0, 1], [1, 0]])
K12 = H([[0, 1j], [-1j, 0]])


def test_gram_n2_is_determinant_form():
    g = gram([], 2)
    # Q(C, C) = 2 (c11 c22 - |c12|^2) in coordinates (c11, c22, Re c12, Im c12)
    assert [list(r) for r in g.entries] == [
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, -2, 0],
        [0, 0, 0, -2],
    ]
    assert g.signature() == Signature(1, 0, 3)


def test_gram_matches_mixed_disc(rng):
    for n in (2, 3):
        omega = [gen_hermitian(rng, n, 5) for _ in range(n - 2)]
        g = gram(omega, n)
        B = hermitian_basis(n)
        for k in range(n * n):
            row = functional(omega, B[k]).coeffs
            for l in range(n * n):
                want = mixed_disc(omega + [B[k], B[l]])
                assert g.entries[k][l] == want == row[l]


def test_gram_pd_omega_detects_identity(rng):
    for n in (2, 3, 4):
        omega = [gen_psd(rng, n, n, 5) for _ in range(n - 2)]
        g = gram(omega, n)
        v = decompose_in_basis(eye(n))
        assert any(sum(a * b for a, b in zip(r, v)) for r in g.entries)


def test_functional_examples():
    f = functional([], diag(1, 0))
    assert f.coeffs == (0, 1, 0, 0)
    c = H([[3, 2 - 5j], [2 + 5j, 7]])
    assert f(c) == 7
    g = functional([], S12)
    assert g(c) == -(2 * 2)  # -(c12 + c21)
    assert functional([eye(3)], HermitianMatrix.zero(3)).is_zero()


def test_functional_evaluation_matches_mixed_disc(rng):
    for n in (2, 3, 4):
        omega = [gen_hermitian(rng, n, 5) for _ in range(n - 2)]
        x, y = gen_hermitian(rng, n, 5), gen_hermitian(rng, n, 5)
        assert functional(omega, x)(y) == mixed_disc(omega + [x, y])


def test_primitive_space_examples():
    sub = primitive_space([], eye(2))
    assert sub.dimension == 3
    mats = sub.matrices()
    for m in (diag(1, -1), S12, K12):
        assert functional([], eye(2))(m) == 0
    assert all(m.trace() == 0 for m in mats)
    sub = primitive_space([], diag(1, 0))
    assert sub.dimension == 3 and all(m.entries[1][1] == 0 for m in sub.matrices())
    assert primitive_space([], HermitianMatrix.zero(2)).dimension == 4


def test_signature_on_examples():
    assert signature_on(gram([], 2), primitive_space([], eye(2))) == Signature(0, 0, 3)
    omega = [eye(3)]
    restricted = restrict(gram(omega).entries, [decompose_in_basis(eye(3))])
    assert signature_of(restricted) == Signature(1, 0, 0)


def test_rank_one_factor_gives_null_direction():
    omega = [gen_psd(SplitMix64(7), 4, 1, 5), eye(4)]
    res = hodge_index_check(omega, eye(4))
    assert res.verdict == SEMI_NEGATIVE
    assert res.signature.zero >= 1 and res.kernel


def test_hodge_index_examples(rng):
    r = hodge_index_check([], eye(2))
    assert r.verdict == SATISFIES_HIT and r.signature == Signature(0, 0, 3)
    for n in (3, 4):
        omega = [gen_psd(rng, n, n, 5) for _ in range(n - 2)]
        r = hodge_index_check(omega, gen_psd(rng, n, n, 5))
        assert r.verdict == SATISFIES_HIT and r.primitive_dimension == n * n - 1


def test_indefinite_witness():
    # η not PSD: the primitive space of diag(1,-1) contains I, with Q(I, I) = 2 > 0
    r = hodge_index_check([], diag(1, -1))
    assert r.verdict == INDEFINITE
    w = r.witness
    assert gram([], 2).form(w, w) > 0
    assert functional([], diag(1, -1))(recompose(w, 2)) == 0


def test_kernel_vectors_are_null_and_primitive():
    omega = [diag(1, 1, 0)]
    res = hodge_index_check(omega, eye(3))
    assert res.verdict == SEMI_NEGATIVE
    g = gram(omega)
    for v in res.kernel:
        gamma = recompose(v, 3)
        assert mixed_disc(omega + [eye(3), gamma]) == 0
        assert g.form(v, v) == 0
        assert zero_vector_check(omega, eye(3), gamma)


@given(st.integers(2, 3), st.integers(0, 2**64 - 1))
def test_sylvester_invariance(n, seed):
    # the signature is a property of the subspace, not of the chosen basis
    rng = SplitMix64(seed)
    omega = [gen_psd(rng, n, rng.randint(1, n), 4) for _ in range(n - 2)]
    eta = gen_psd(rng, n, rng.randint(1, n), 4)
    g = gram(omega, n)
    sub = primitive_space(omega, eta)
    base = signature_on(g, sub)
    k = sub.dimension
    while True:
        T = [[rng.rational(3) for _ in range(k)] for _ in range(k)]
        d, _ = congruence_diagonalize([[sum(T[i][t] * T[j][t] for t in range(k)) for j in range(k)] for i in range(k)])
        if all(d):
            break
    mixed = [[sum(T[i][t] * sub.basis_vectors[t][c] for t in range(k)) for c in range(n * n)] for i in range(k)]
    assert signature_of(restrict(g.entries, mixed)) == base


def test_congruence_pivot_fallback():
    M = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    d, P = congruence_diagonalize(M)
    assert sorted(x > 0 for x in d) == [False, False, True]
    assert signature_of(M) == Signature(1, 1, 1)
    # P^T M P = diag(d)
    for i in range(3):
        for j in range(3):
            v = sum(P[i][a] * M[a][b] * P[j][b] for a in range(3) for b in range(3))
            assert v == (d[i] if i == j else 0)


def test_lefschetz_examples(rng):
    c, gamma = lefschetz([], eye(2), diag(3, 1))
    assert c == 2 and gamma == diag(1, -1)
    for n in (2, 3):
        omega = [gen_psd(rng, n, n, 5) for _ in range(n - 2)]
        eta = gen_psd(rng, n, n, 5)
        assert lefschetz(omega, eta, eta) == (1, HermitianMatrix.zero(n))
        _, prim = lefschetz(omega, eta, gen_hermitian(rng, n, 5))
        assert lefschetz(omega, eta, prim) == (0, prim)
        beta = gen_hermitian(rng, n, 5)
        c, gamma = lefschetz(omega, eta, beta)
        assert eta.scale(c) + gamma == beta
        assert mixed_disc(omega + [eta, gamma]) == 0


def test_lefschetz_precondition():
    with pytest.raises(PreconditionError):
        lefschetz([], diag(1, 0), eye(2))


def test_zero_vector_check_trivial_and_guards():
    n = 3
    assert zero_vector_check([eye(n)], eye(n), HermitianMatrix.zero(n))
    with pytest.raises(PreconditionError):
        zero_vector_check([diag(1, -1, 1)], eye(n), HermitianMatrix.zero(n))
    with pytest.raises(PreconditionError):
        zero_vector_check([eye(n)], eye(n), eye(n))  # not primitive
    with pytest.raises(PreconditionError):
        zero_vector_check([eye(n)], eye(n), diag(1, -1, 0))  # primitive but Q < 0


def test_dimension_guard():
    with pytest.raises(InputError):
        gram([eye(3)], 2)
    with pytest.raises(InputError):
        hodge_index_check([eye(3)], eye(2))


def test_functional_injective_under_hit(rng):
    for n in (2, 3):
        omega = [gen_psd(rng, n, n, 5) for _ in range(n - 2)]
        assert functional_rank(omega, n) == n * n
    assert functional_rank([diag(1, 0, 0)], 3) < 9
