import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engel_lab.errors import SpecParseError, UsageError
from engel_lab.specs import (
    Alternating,
    Cyclic,
    Dihedral,
    FreeNil,
    FreeNil4,
    GuptaLevin,
    Product,
    Quaternion,
    Symmetric,
    Wreath,
    parse_group_spec,
)

atoms = st.one_of(
    st.builds(Cyclic, st.integers(1, 40)),
    st.builds(Dihedral, st.integers(1, 20).map(lambda m: 2 * m)),
    st.builds(Symmetric, st.integers(1, 6)),
    st.builds(Alternating, st.integers(3, 6)),
    st.just(Quaternion()),
    st.builds(FreeNil, st.sampled_from([3, 5, 7]), st.integers(2, 4)),
    st.builds(FreeNil4, st.integers(2, 4)),
)


def _extend(children):
    return st.one_of(
        st.builds(Wreath, children, children),
        st.lists(atoms, min_size=2, max_size=3).map(lambda fs: Product(tuple(fs))),
    )


descriptors = st.recursive(atoms, _extend, max_leaves=5)


@settings(max_examples=200, deadline=None)
@given(descriptors)
def test_round_trip(desc):
    assert parse_group_spec(str(desc)) == desc


@given(st.sampled_from([2, 3, 5]), st.integers(2, 4))
def test_gl_round_trip(p, k):
    d = GuptaLevin(p, k)
    assert parse_group_spec(str(d)) == d
    assert d.order is None


@pytest.mark.parametrize(
    "text,expected",
    [
        ("C2 x C2", Product((Cyclic(2), Cyclic(2)))),
        ("wreath(C4, C2 x C2)", Wreath(Cyclic(4), Product((Cyclic(2), Cyclic(2))))),
        ("fnil(p=3,k=2)", FreeNil(3, 2)),
        (" fnil4( k = 3 ) ", FreeNil4(3)),
        ("Q8", Quaternion()),
    ],
)
def test_examples(text, expected):
    assert parse_group_spec(text) == expected


def test_projected_orders():
    assert parse_group_spec("wreath(C4, C2 x C2)").order == 1024
    assert parse_group_spec("fnil(p=3,k=2)").order == 27
    assert parse_group_spec("fnil4(k=3)").order == 512


@pytest.mark.parametrize(
    "text,position",
    [("C2 x", 4), ("X3", 0), ("C2 ) ", 3), ("D7", 0), ("fnil(p=4,k=2)", 0), ("wreath(C2 C2)", 10)],
)
def test_parse_errors_name_position(text, position):
    with pytest.raises(SpecParseError) as info:
        parse_group_spec(text)
    assert info.value.position == position
    assert isinstance(info.value, UsageError)


@pytest.mark.parametrize("text", ["", "gl(p=2,k=3)xC2", "wreath(gl(p=2,k=2),C2)", "fnil(p=3,k=1)"])
def test_rejected(text):
    with pytest.raises(SpecParseError):
        parse_group_spec(text)
