import itertools

import numpy as np
import pytest

from engel_lab.errors import UsageError
from engel_lab.group import closure
from engel_lab.structure import (
    center,
    centralizer,
    commutator_subgroup,
    derived_length,
    derived_series,
    hypercenter,
    largest_normal_p_subgroup,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    normalizer,
    radical,
    radicals,
    series,
    structure_report,
    subnormal_defect,
)

from conftest import SMALL, group

KNOWN = {
    # spec: (class, derived length, |Fitt|, |hypercenter|)
    "C1": (0, 0, 1, 1),
    "C6": (1, 1, 6, 6),
    "S3": (None, 2, 3, 1),
    "S4": (None, 3, 4, 1),
    "A4": (None, 2, 4, 1),
    "D8": (2, 2, 8, 8),
    "D16": (3, 2, 16, 16),
    "Q8": (2, 2, 8, 8),
    "wreath(C2,C2)": (2, 2, 8, 8),
    "wreath(C2,C2xC2)": (3, 2, 64, 64),
    "wreath(C3,C3)": (3, 2, 81, 81),
    "fnil(p=3,k=2)": (2, 2, 27, 27),
    "fnil4(k=2)": (2, 2, 32, 32),
}


@pytest.mark.parametrize("spec", sorted(KNOWN))
def test_known_invariants(spec):
    G = group(spec)
    cls, dl, fitt, hyper = KNOWN[spec]
    rep = structure_report(G)
    assert rep.nilpotency_class == cls
    assert rep.derived_length == dl
    assert rep.radicals.fitting.order == fitt
    assert rep.hypercenter.order == hyper


def _brute_center(G):
    return np.array([all(G.mul(x, g) == G.mul(g, x) for g in range(G.order)) for x in range(G.order)])


def _brute_commutator_subgroup(G, A, B):
    return closure(G, {G.comm(a, b) for a in A.elements for b in B.elements})


@pytest.mark.parametrize("spec", SMALL)
def test_center_and_commutators_against_brute_force(spec):
    G = group(spec)
    assert np.array_equal(center(G).mask, _brute_center(G))
    W = G.whole
    assert commutator_subgroup(G, W, W) == _brute_commutator_subgroup(G, W, W)
    lcs = lower_central_series(G)
    for a, b in zip(lcs, lcs[1:]):
        assert b == _brute_commutator_subgroup(G, a, W)


@pytest.mark.parametrize("spec", SMALL)
def test_series_are_consistent(spec):
    G = group(spec)
    upper = series(G, "upper_central")
    lower = series(G, "lower_central")
    assert upper.last.is_whole == (not lower.stabilized)
    if not lower.stabilized:
        # class from either end agrees
        assert upper.length == lower.length == nilpotency_class(G)
    for a, b in zip(upper.terms, upper.terms[1:]):
        assert a <= b and a.is_normal()
    d = derived_series(G)
    assert d[0].is_whole
    assert (derived_length(G) is not None) == d[-1].is_trivial


def test_normal_closure_normalizer_centralizer():
    G = group("S4")
    s = G.element("s")
    assert normal_closure(G, [s]).is_whole  # transpositions generate S4
    H = closure(G, [s])
    N = normalizer(G, H)
    assert N.order == 4
    assert centralizer(G, [s]).order == 4
    assert N == closure(G, [g for g in range(G.order) if all(G.conj(h, g) in H for h in H.elements)])


def test_subnormal_defect():
    G = group("D8")
    s = closure(G, [G.element("s")])
    assert subnormal_defect(G, s) == 2
    assert subnormal_defect(G, G.whole) == 0
    S3 = group("S3")
    assert subnormal_defect(S3, closure(S3, [S3.element("s")])) is None


def test_radicals_agree():
    for spec in ("S3", "S4", "A4", "D16", "C6"):
        G = group(spec)
        rep = radicals(G)
        assert rep.chain_holds()
        assert rep.fitting == rep.baer == rep.gruenberg == rep.hirsch_plotkin
    with pytest.raises(UsageError):
        radical(group("S3"), "nonsense")


def test_largest_normal_p_subgroup():
    G = group("S4")
    assert largest_normal_p_subgroup(G, 2).order == 4
    assert largest_normal_p_subgroup(G, 3).order == 1


def test_fitting_is_largest_normal_nilpotent_subgroup_s4():
    # brute force over normal closures of all subsets of size <= 2
    G = group("S4")
    best = 1
    for a, b in itertools.combinations_with_replacement(G.class_reps, 2):
        N = normal_closure(G, [int(a), int(b)])
        if nilpotency_class(G, N) is not None:
            best = max(best, N.order)
    assert radical(G, "fitting").order == best


def test_hypercenter_of_nilpotent_is_whole():
    assert hypercenter(group("D16")).is_whole
    assert hypercenter(group("S3")).is_trivial
