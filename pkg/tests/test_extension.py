from itertools import combinations, product

import pytest

from braidset.catalog import admissible_family, load_entry, load_entry_solution
from braidset.conditions import check_condition
from braidset.errors import CarrierOverlap, IncompleteTable, MalformedDocument, NotRegular, TheoremViolation, UnknownLabel
from braidset.extension import (
    EXTENSION_SUITES,
    MIXED_CONDITIONS,
    Ground,
    automorphism_action_check,
    build_extension,
    check_mixed,
    double_braided_set,
    enumerate_extensions,
    factorization_check,
    load_ground,
    m3_check,
    mixed_profile,
    strong_twisted_union_report,
    to_ground_document,
    verify_extension_theorem,
)
from braidset.graph import find_isomorphism, orbit_partition
from braidset.qset import make_trivial, predicate

from families import catalog_sets


def direct_ybe(q):
    def r12(t):
        return q.r(t[0], t[1]) + (t[2],)

    def r23(t):
        return (t[0],) + q.r(t[1], t[2])

    return all(r12(r23(r12(t))) == r23(r12(r23(t))) for t in product(range(q.n), repeat=3))


def trivial_pairs():
    X2, X3 = make_trivial("ab", "Xab"), make_trivial("abe", "Xabe")
    Y1, Y2 = make_trivial("c", "Yc"), make_trivial("cd", "Ycd")
    return [(X2, Y1), (X2, Y2), (X3, Y1), (X3, Y2)]


@pytest.mark.parametrize("x_part, y_part", trivial_pairs(), ids=lambda q: q.name)
def test_bz_biconditional_on_all_trivial_extensions(x_part, y_part):
    count = 0
    for ext in enumerate_extensions(x_part, y_part):
        count += 1
        mixed = all(check_mixed(ext, c).holds for c in ("ml1", "mr1", "ml2", "mr2"))
        assert direct_ybe(ext.z) == mixed
        verify_extension_theorem(ext, "BZ")
        rep = verify_extension_theorem(ext, "trivial_parts")
        # length-3 cancellation in S(Z) is guaranteed only for braided Z
        assert rep.hypotheses_met or not direct_ybe(ext.z)
        stu = all(check_mixed(ext, c).holds for c in ("ml1", "mr1", "stu"))
        assert direct_ybe(ext.z) == stu
    from math import factorial

    assert count == factorial(x_part.n * y_part.n)


def test_bz_with_nontrivial_part():
    x_part = load_entry_solution("sqfree_three")
    y_part = make_trivial("c", "Yc")
    for ext in enumerate_extensions(x_part, y_part):
        for suite in ("BZ", "parts_lemma", "B_cancellative", "involutive_parts"):
            verify_extension_theorem(ext, suite)


def test_filters_select_braided_extensions():
    x_part, y_part = make_trivial("ab"), make_trivial("cd")
    braided = list(enumerate_extensions(x_part, y_part, ["ybe"]))
    assert braided and all(direct_ybe(e.z) for e in braided)
    everything = list(enumerate_extensions(x_part, y_part))
    assert len(braided) == sum(direct_ybe(e.z) for e in everything)


def test_enumeration_budget():
    from braidset.errors import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        next(enumerate_extensions(make_trivial("abcde"), make_trivial("fg")))


def test_build_errors():
    X, Y = make_trivial("ab"), make_trivial("c")
    with pytest.raises(CarrierOverlap):
        build_extension(X, make_trivial("a"), Ground(((0, 1),), ((0, 0),)))
    with pytest.raises(NotRegular):
        build_extension(X, Y, Ground(((0, 0),), ((0, 0),)))
    with pytest.raises(IncompleteTable):
        build_extension(X, Y, Ground(((0,),), ((0,),)))


def test_ground_document_errors():
    with pytest.raises(MalformedDocument):
        load_ground({"x_solution": "trivial_ab"})
    with pytest.raises(MalformedDocument):
        load_ground({"x_solution": "trivial_ab", "y_solution": "no_such_thing", "ground": []})
    with pytest.raises(IncompleteTable):
        load_ground({"x_solution": "trivial_ab", "y_solution": "trivial_c", "ground": []})
    with pytest.raises(UnknownLabel):
        load_ground(
            {"x_solution": "trivial_ab", "y_solution": "trivial_c", "ground": [{"alpha": "q", "x": "a", "left": "a", "right": "c"}]}
        )


def test_ground_document_round_trip(r_exts):
    ext = r_exts["r2"]
    again = load_ground(to_ground_document(ext))
    assert again.z == ext.z


# ------------------------------------------------------------ the 12 + 6 example


@pytest.mark.parametrize("key", ["r1", "r2", "r3"])
def test_extensions_are_symmetric_square_free(r_exts, key):
    z = r_exts[key].z
    for name in ("involutive", "square_free", "nondegenerate", "2cancellative"):
        assert predicate(z, name).holds
    for cond in ("ybe", "lri", "cyclic"):
        assert check_condition(z, cond).holds
    assert direct_ybe(z)
    x = [f"x{i}" for i in range(1, 5)]
    y = [f"y{i}" for i in range(1, 5)]
    assert orbit_partition(z) == [x + y, [f"z{i}" for i in range(1, 5)], ["a1", "a2", "a3", "b1", "b2", "b3"]]


def test_extensions_pairwise_non_isomorphic(r_exts):
    for a, b in combinations(sorted(r_exts), 2):
        assert find_isomorphism(r_exts[a].z, r_exts[b].z) is None


def test_stu_and_cs_conditions(r_exts):
    rep = check_mixed(r_exts["r1"], "stu")
    assert not rep.holds
    w = rep.witnesses[0]
    assert w.args == ("a1", "x1", "z1") and (w.lhs, w.rhs) == ("z4", "z2")
    assert not check_mixed(r_exts["r2"], "stu").holds
    for cond in ("stu", "csla", "csra"):
        assert check_mixed(r_exts["r3"], cond).holds


def test_automorphism_claims(r_exts):
    for key in ("r1", "r2"):
        rep = automorphism_action_check(r_exts[key])
        assert not rep.y_acts_by_automorphisms and rep.x_acts_by_automorphisms
    rep = automorphism_action_check(r_exts["r3"])
    assert rep.y_acts_by_automorphisms and rep.x_acts_by_automorphisms


@pytest.mark.parametrize("key", ["r1", "r2", "r3"])
def test_extension_suites_on_examples(r_exts, key):
    for suite in ("BZ", "parts_lemma", "B_cancellative", "involutive_parts", "stu_lri"):
        verify_extension_theorem(r_exts[key], suite, N=3)
    report = strong_twisted_union_report(r_exts[key])
    assert report.ybe and report.condition1
    assert report.is_strong_twisted_union == (key == "r3")


def test_factorization_of_r3(r_exts):
    reps = factorization_check(r_exts["r3"], 3)
    assert all(r.holds for r in reps.values()), [r.summary() for r in reps.values() if not r.holds]


def test_ground_matched_pair_and_m3_on_r3(r_exts):
    verify_extension_theorem(r_exts["r3"], "matched_pair_ST", N=2)
    assert all(r.holds for r in m3_check(r_exts["r3"], N=2).values())


def test_admissible_family_contains_examples(r_exts):
    X, Y = load_entry_solution("twelve"), load_entry_solution("six")
    grounds = [e.ground for e in enumerate_extensions(X, Y, (), "permutation_family", admissible_family())]
    assert len(grounds) == 80 * 18
    for ext in r_exts.values():
        assert ext.ground in grounds


def test_admissible_family_is_braided():
    X, Y = load_entry_solution("twelve"), load_entry_solution("six")
    fam = admissible_family()
    total = sum(1 for _ in enumerate_extensions(X, Y, ["ybe"], "permutation_family", fam))
    assert total == len(fam["L_alpha"]) * len(fam["L_x"])


def test_family_without_identity_shift_misses_r3(r_exts):
    X, Y = load_entry_solution("twelve"), load_entry_solution("six")
    fam = admissible_family(include_identity_shift=False)
    grounds = [e.ground for e in enumerate_extensions(X, Y, (), "permutation_family", fam)]
    assert r_exts["r3"].ground not in grounds
    assert r_exts["r1"].ground in grounds


# ------------------------------------------------------------------ doubling


@pytest.mark.parametrize("key", sorted(k for k, q in catalog_sets().items() if check_condition(q, "ybe", cap=1).holds))
def test_double_of_braided_set_is_braided(key):
    d = double_braided_set(catalog_sets()[key])
    assert check_condition(d.z, "ybe").holds


def test_double_needs_braided_input():
    from braidset.errors import PrerequisiteFailed

    with pytest.raises(PrerequisiteFailed):
        double_braided_set(load_entry_solution("l1r1_nonbraided"))


def test_suite_names_and_mixed_profile(r_exts):
    with pytest.raises(ValueError):
        verify_extension_theorem(r_exts["r1"], "nope")
    prof = mixed_profile(r_exts["r3"])
    assert set(prof) == set(MIXED_CONDITIONS)
    assert set(EXTENSION_SUITES) >= {"BZ", "trivial_parts", "factorization"}


def test_theorem_violation_on_forged_verdict(monkeypatch):
    import braidset.extension as E

    ext = load_entry("trivial_extension")
    real = E.check_mixed

    def lying(e, cond, cap=10):
        rep = real(e, cond, cap)
        if cond == "ml1":
            rep.holds = False
        return rep

    monkeypatch.setattr(E, "check_mixed", lying)
    with pytest.raises(TheoremViolation):
        verify_extension_theorem(ext, "BZ")
