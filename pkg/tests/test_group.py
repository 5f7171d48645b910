import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engel_lab.errors import CapacityError, PreconditionError, UsageError, ValidationError
from engel_lab.group import (
    CayleyRep,
    FiniteGroup,
    PermutationRep,
    build_enumerable,
    closure,
    engel_commutator,
    format_cayley_text,
    load_cayley,
    parse_cayley_text,
    quotient,
    subgroup_from_elements,
)
from engel_lab.structure import center

from conftest import group

elements = st.integers(min_value=0, max_value=23)


def test_table_basics(small_group):
    G = small_group
    n = G.order
    T = G.mul_table
    assert np.array_equal(T[0], np.arange(n)) and np.array_equal(T[:, 0], np.arange(n))
    for row in T:
        assert np.array_equal(np.sort(row), np.arange(n))
    assert np.all(T[np.arange(n), G.inv_table] == 0)
    assert G.labels[0] == "1"
    assert len(set(G.labels)) == n


def test_labels_evaluate_back(small_group):
    G = small_group
    for i, lab in enumerate(G.labels):
        assert G.element(lab) == i


def test_tables_are_read_only():
    G = group("S3")
    with pytest.raises(ValueError):
        G.mul_table[0, 0] = 1


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_s4_axioms(a, b, c):
    G = group("S4")
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.comm(a, b) == G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b))
    assert G.inv(G.comm(a, b)) == G.comm(b, a)
    assert G.conj(a, b) == G.mul(G.mul(G.inv(b), a), b)
    # [a, bc] = [a, c][a, b]^c
    assert G.comm(a, G.mul(b, c)) == G.mul(G.comm(a, c), G.conj(G.comm(a, b), c))


@settings(max_examples=100, deadline=None)
@given(elements, st.integers(min_value=-30, max_value=30))
def test_power_matches_repeated_product(a, m):
    G = group("S4")
    x = 0
    base = a if m >= 0 else G.inv(a)
    for _ in range(abs(m)):
        x = G.mul(x, base)
    assert G.power(a, m) == x
    assert G.power_array(np.array([a]), m)[0] == x


def test_element_orders_and_exponent():
    G = group("S4")
    assert np.bincount(G.orders).tolist() == [0, 1, 9, 8, 6]
    assert G.exponent == 12


def test_engel_commutator_is_left_normed():
    G = group("S4")
    x, y = G.element("s"), G.element("c")
    assert engel_commutator(G, x, y, 0) == x
    assert engel_commutator(G, x, y, 2) == G.comm(G.comm(x, y), y)


def test_check_element_rejects_out_of_range():
    G = group("S3")
    with pytest.raises(UsageError):
        G.check_element(6)
    with pytest.raises(UsageError):
        G.element("zz")


def test_validation_rejects_non_latin_table():
    bad = np.array([[0, 1], [1, 1]])
    with pytest.raises(ValidationError):
        FiniteGroup(bad, [1])


def test_validation_rejects_non_associative_table():
    # a Latin square with identity 0 that is not associative (a loop of order 5)
    T = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(ValidationError):
        FiniteGroup(T, [1, 2])


def test_generators_must_generate():
    G = group("C6")
    with pytest.raises(ValidationError):
        FiniteGroup(G.mul_table, [G.power(G.generators[0], 2)])


def test_permutation_rep_and_cap():
    rep = PermutationRep(((1, 0, 2, 3), (1, 2, 3, 0)), ("s", "c"))
    G = build_enumerable(rep, name="S4p")
    assert G.order == 24
    with pytest.raises(CapacityError):
        build_enumerable(rep, cap=10)


def test_cayley_round_trip(tmp_path):
    G = group("D8")
    text = format_cayley_text(G)
    p = tmp_path / "d8.txt"
    p.write_text(text)
    H = load_cayley(p)
    assert H.order == 8
    assert np.array_equal(H.mul_table, G.mul_table)
    rep = parse_cayley_text(format_cayley_text(G, with_generators=False))
    assert isinstance(rep, CayleyRep) and rep.generators is None
    assert build_enumerable(rep).order == 8


@pytest.mark.parametrize("text", ["", "x\n", "2\n0 1\n", "2\n0 1\n1 0\nextra"])
def test_cayley_parse_errors(text):
    with pytest.raises(ValidationError):
        parse_cayley_text(text)


def test_closure_and_subgroup_ops():
    G = group("S4")
    H = closure(G, [G.element("s")])
    assert H.order == 2 and not H.is_normal()
    assert closure(G, []).is_trivial
    assert closure(G, G.generators).is_whole
    K = subgroup_from_elements(G, H.elements)
    assert K == H and hash(K) == hash(H) and K <= G.whole
    with pytest.raises(PreconditionError):
        subgroup_from_elements(G, [G.element("s"), G.element("c")])


def test_quotient():
    G = group("D8")
    Z = center(G)
    Q = quotient(G, Z)
    assert Q.order == 4 and Q.is_abelian
    with pytest.raises(PreconditionError):
        quotient(G, closure(G, [G.element("s")]))
