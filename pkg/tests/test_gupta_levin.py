import numpy as np
import pytest

from engel_lab.errors import CapabilityError, UsageError
from engel_lab.group import engel_commutator
from engel_lab.gupta_levin import gupta_levin_group, matrix_mul


@pytest.fixture(scope="module")
def M():
    return gupta_levin_group(2, 3)


def test_group_axioms_on_10k_triples(M):
    rng = np.random.default_rng(11)
    e = M.identity
    for _ in range(10_000):
        a, b, c = (M.random_element(rng, terms=3) for _ in range(3))
        assert M.mul(M.mul(a, b), c) == M.mul(a, M.mul(b, c))
        assert M.mul(a, e) == a == M.mul(e, a)
        assert M.mul(a, M.inv(a)).is_identity


def test_pair_law_matches_matrix_product(M):
    rng = np.random.default_rng(12)
    for _ in range(1_000):
        a, b = M.random_element(rng), M.random_element(rng)
        assert M.as_matrix(M.mul(a, b)) == matrix_mul(M.as_matrix(a), M.as_matrix(b))


def test_kernel_commutator_formula(M):
    rng = np.random.default_rng(13)
    for _ in range(200):
        A = M.random_kernel_element(rng)
        B = M.random_element(rng)
        assert M.comm(A, B) == M.kernel_element(A.r * M.ring.aug(B.g))


def test_six_engel_on_named_elements(M):
    for i in range(M.rank):
        for j in range(M.rank):
            assert engel_commutator(M, M.X(i), M.X(j), 6).is_identity
        assert engel_commutator(M, M.Y, M.X(i), 4).is_identity


def test_u_elements_nonzero(M):
    for m in (1, 2):
        u = M.u(m)
        assert not u.is_zero
        w = M.Y
        for j in range(1, m + 1):
            w = M.comm(w, M.comm(M.X(0), M.X(j)))
        assert w == M.kernel_element(u)
    with pytest.raises(UsageError):
        M.u(3)


def test_black_box_refuses_enumeration(M):
    with pytest.raises(CapabilityError):
        len(M)
    with pytest.raises(CapabilityError):
        list(M)
    with pytest.raises(CapabilityError):
        M.order


def test_foreign_elements_rejected(M):
    other = gupta_levin_group(2, 2)
    with pytest.raises(UsageError):
        M.mul(M.Y, other.Y)
    with pytest.raises(UsageError):
        M.X(5)


def test_odd_prime_variant():
    M = gupta_levin_group(3, 2)
    assert M.base.order == 27
    rng = np.random.default_rng(5)
    for _ in range(100):
        X, Z = M.random_element(rng), M.random_element(rng)
        assert M.power(X, 9).is_identity
        assert engel_commutator(M, X, Z, 5).is_identity
