import numpy as np
import pytest

from engel_lab.config import Limits
from engel_lab.errors import UsageError
from engel_lab.verify import (
    CATALOG,
    CheckFailed,
    CheckResult,
    GroupContext,
    load_zoo,
    replay_search_witness,
    replay_witness,
    resolve_suite,
    run_check,
    search_report,
    search_witness,
)

from conftest import group

CHEAP_ZOO = ("C1", "C2", "C6", "C2xC2", "D8", "D16", "Q8", "S3", "S4", "A4", "wreath(C2,C2)", "fnil(p=3,k=2)")
ENUMERABLE_CHECKS = [c for c in CATALOG if c not in ("gupta_levin_6engel", "wreath_separation")]


@pytest.mark.parametrize("spec", CHEAP_ZOO)
def test_catalog_passes_on_small_groups(spec):
    ctx = GroupContext(spec)
    for cid in ENUMERABLE_CHECKS:
        r = run_check(cid, ctx)
        assert r.outcome == "pass", (cid, r.witness, r.stats)


def test_examples():
    r = run_check("peng_R", "S3")
    assert r.passed and r.stats["R"] == 1
    r = run_check("wreath_separation", "wreath(C2,C2xC2)")
    assert r.passed and r.stats["k"] == 1
    r = run_check("heineken_identity", "C6")
    assert r.passed


def test_skips_carry_reasons():
    r = run_check("wreath_separation", "S3")
    assert r.outcome == "skipped" and "wreath" in r.reason
    r = run_check("gupta_levin_6engel", "S3")
    assert r.outcome == "skipped"
    r = run_check("peng_R", "gl(p=2,k=2)")
    assert r.outcome == "skipped" and "black-box" in r.reason


def test_gupta_levin_check_is_seeded():
    a = run_check("gupta_levin_6engel", "gl(p=2,k=2)", limits=Limits(seed=7))
    b = run_check("gupta_levin_6engel", "gl(p=2,k=2)", limits=Limits(seed=7))
    assert a.passed and a.to_dict() == b.to_dict()


def test_sampled_mode_is_deterministic():
    lim = Limits(exhaustive_limit=4, samples=64, seed=3)
    a = run_check("heineken_identity", GroupContext("S4", lim))
    b = run_check("heineken_identity", GroupContext("S4", lim))
    assert a.passed and a.stats["mode"] == "sampled" and a.to_dict() == b.to_dict()


def test_unknown_check_and_suite():
    with pytest.raises(UsageError):
        run_check("nope", "S3")
    with pytest.raises(UsageError):
        resolve_suite("peng_R,nope")
    assert resolve_suite("peng_R, held_Lbar") == ["peng_R", "held_Lbar"]
    assert resolve_suite("all") == list(CATALOG)


def _false_l2_in_l1(ctx):
    """Deliberately false claim, used to exercise failure plumbing: L_2 <= L_1."""
    E = ctx.engel
    bad = E.L(2) & ~E.L(1)
    if np.any(bad):
        x = int(np.flatnonzero(bad)[0])
        raise CheckFailed({"x": ctx.label(x), "claim": "L_2 <= L_1"})
    return {}


def test_failures_carry_replayable_witness(monkeypatch):
    monkeypatch.setitem(CATALOG, "false_claim", _false_l2_in_l1)
    r = run_check("false_claim", "D8")
    assert r.outcome == "fail" and r.witness["claim"] == "L_2 <= L_1"
    assert replay_witness(r, group("D8"))


def test_wreath_separation_literal_claim_fails_with_replayable_witness():
    # a^2 has order 2 in C4, and a^2*x lands in L_3; the claim holds for a of order 4
    r = run_check("wreath_separation", "wreath(C4,C2xC2)")
    assert r.outcome == "fail"
    assert r.witness["a"] == "a^2"
    assert r.stats["holds_for_order_2^k"] is True
    assert [o["order"] for o in r.stats["offenders"]] == [2]
    assert replay_witness(r, group("wreath(C4,C2xC2)"))


def test_replay_of_fabricated_identity_witnesses():
    # witnesses built from valid tuples must not replay as violations
    G = group("S4")
    s, c = G.labels[G.element("s")], G.labels[G.element("c")]
    cases = [
        CheckResult("heineken_identity", "S4", "fail", {"x": s, "g": c, "n": 3}),
        CheckResult("involution_formula", "S4", "fail", {"g": c, "x": s, "n": 4}),
        CheckResult("lemma_xy", "S4", "fail", {"x": s, "y": c, "n": 1}),
        CheckResult("baer_plotkin_L", "S4", "fail", {"x": s, "claim": "L == HP"}),
        CheckResult("peng_R", "S4", "fail", {"x": c, "claim": "R == hypercenter"}),
    ]
    for r in cases:
        assert not replay_witness(r, G)
    with pytest.raises(UsageError):
        replay_witness(CheckResult("peng_R", "S4", "pass"), G)


def test_search_absent_on_abelian_and_class_two_zoos():
    assert search_witness("macdonald_r3", ["C2", "C4", "C2xC2", "C2xC4"]) is None
    assert search_witness("macdonald_rn_ln", ["C2", "C4", "C2xC2"]) is None
    assert search_witness("macdonald_r3", ["D8", "Q8", "fnil4(k=2)", "fnil(p=3,k=2)"]) is None
    with pytest.raises(UsageError):
        search_witness("nope", ["C2"])


def test_search_report_lists_skipped_groups():
    rep = search_report("macdonald_r3", ["C2", "wreath(C4,C4)", "gl(p=2,k=2)"], limits=Limits(full_engel_limit=512))
    assert rep.searched == ["C2"]
    assert set(rep.skipped) == {"wreath(C4,C4)", "gl(p=2,k=2)"}
    assert rep.to_dict()["outcome"] == "absent"


def test_search_witness_replay_on_synthetic_hit():
    # right-Engel elements are inverse-closed in a finite group, so a hit must be
    # fabricated; replay must then reject it
    G = group("S3")
    fake = CheckResult("macdonald_r3", "S3", "pass", {"a": "c", "n": 3})
    assert not replay_search_witness(fake, G)


def test_load_zoo(tmp_path):
    assert load_zoo(None)[0] == "C2" and len(load_zoo("default")) == 17
    f = tmp_path / "zoo.txt"
    f.write_text("# comment\nS3\n\nD8  # trailing\n")
    assert load_zoo(str(f)) == ["S3", "D8"]


MEMBERSHIP_CLAIMS = [
    ("baer_plotkin_L", "L == Lbar"), ("baer_plotkin_L", "L == HP"), ("held_Lbar", "Lbar == Fitt"),
    ("peng_R", "R == Rbar"), ("peng_R", "R == hypercenter"),
    ("l2_characterization", "L_2 == abelian_normal_closure"), ("l2_characterization", "L_2 <= Fitt"),
    ("l3_characterization", "L_3 == class2_pairs"), ("heineken_inclusions", "R <= L^-1"),
    ("heineken_inclusions", "Rbar <= Lbar^-1"), ("levi_kappe_identities", "R_2 <= L_2"),
    ("gruenberg_rho_chain", "zeta_omega <= rho_bar"), ("gruenberg_rho_chain", "rho_bar <= B"),
    ("gruenberg_rho_chain", "hypercenter <= rho"), ("gruenberg_rho_chain", "rho <= Gr"),
    ("gruenberg_rho_chain", "rho <= R"), ("gruenberg_rho_chain", "rho_bar <= Rbar"),
    ("hp_in_L", "HP <= L"), ("baer_in_Lbar", "B <= Lbar"), ("zomega_in_Rbar", "zeta_omega <= Rbar"),
]


@pytest.mark.parametrize("check_id,claim", MEMBERSHIP_CLAIMS)
@pytest.mark.parametrize("spec", ["S4", "D8"])
def test_membership_claims_replay_without_violation(check_id, claim, spec):
    G = group(spec)
    for x in G.class_reps:
        r = CheckResult(check_id, spec, "fail", {"x": G.labels[int(x)], "claim": claim})
        assert not replay_witness(r, G)
