import numpy as np
import pytest

from engel_lab.engel import (
    NOT_ENGEL,
    engel_level_sets,
    engel_lengths,
    left_engel_status,
    right_engel_status,
    rho_sets,
)
from engel_lab.errors import CapacityError, UsageError
from engel_lab.group import closure
from engel_lab.structure import normal_closure, subnormal_defect

from conftest import SMALL, brute_left_length, brute_right_length, group


@pytest.mark.parametrize("spec", SMALL + ("wreath(C2,C2xC2)",))
def test_lengths_match_direct_iteration(spec):
    G = group(spec)
    left = engel_lengths(G, "left")
    right = engel_lengths(G, "right")
    for a in range(G.order):
        bl = brute_left_length(G, a)
        br = brute_right_length(G, a)
        assert left[a] == (bl if bl is not None else NOT_ENGEL)
        assert right[a] == (br if br is not None else NOT_ENGEL)


def test_scalar_status():
    G = group("S3")
    assert left_engel_status(G, 0) == (True, 1)
    r = G.element("c")
    assert left_engel_status(G, r) == (True, 2)
    assert right_engel_status(G, r) == (False, None)
    assert left_engel_status(G, G.element("s")) == (False, None)


def test_known_values():
    E = engel_level_sets(group("S3"))
    assert E.L_set.sum() == 3 and E.R_set.sum() == 1
    assert E.rho.sum() == 1
    E = engel_level_sets(group("D8"))
    assert E.L(2).all() and E.R(2).all()
    E = engel_level_sets(group("S4"))
    assert E.L_set.sum() == 4 and E.R_set.sum() == 1


def test_wreath_level_sets():
    E = engel_level_sets(group("wreath(C2,C2xC2)"), max_n=4)
    assert [int(m.sum()) for m in E.level_sets["L"]] == [2, 40, 64, 64]
    assert [int(m.sum()) for m in E.level_sets["R"]] == [2, 16, 64, 64]


def test_level_sets_are_monotone_and_class_closed(small_group):
    G = small_group
    E = engel_level_sets(G)
    for n in range(1, E.max_n):
        assert np.all(E.L(n) <= E.L(n + 1)) and np.all(E.R(n) <= E.R(n + 1))
    for mask in (E.L(2), E.R(2), E.L_set, E.rho):
        for rep in G.class_reps:
            cls = G.class_index == G.class_index[rep]
            assert mask[cls].all() or not mask[cls].any()


def test_rho_matches_definition_on_small_groups():
    for spec in ("S3", "S4", "D8", "A4"):
        G = group(spec)
        rho, rho_bar, bound = rho_sets(G)
        for a in range(G.order):
            N = normal_closure(G, [a])
            ok = True
            worst = 0
            for x in range(G.order):
                d = subnormal_defect(G, closure(G, [x]), within=closure(G, [x, *N.elements]))
                if d is None:
                    ok = False
                    break
                worst = max(worst, d)
            assert rho[a] == ok
            if ok:
                assert bound[a] == worst


def test_errors():
    with pytest.raises(UsageError):
        engel_level_sets(group("S3"), max_n=0)
    with pytest.raises(CapacityError):
        engel_level_sets(group("S4"), full_limit=10)
    E = engel_level_sets(group("S3"))
    with pytest.raises(UsageError):
        E.L(0)
