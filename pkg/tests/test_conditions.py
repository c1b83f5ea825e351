from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from braidset.catalog import load_entry_solution
from braidset.conditions import CONDITIONS, SUITES, check_condition, check_local, classify, equivalence_suite, profile
from braidset.errors import TheoremViolation
from braidset.perm import compose, inverse
from braidset.qset import from_function, make_identity, make_trivial, predicate

from families import catalog_sets, permutational_pairs, square_free_involutive


def direct_ybe(q):
    """The braid relation computed from r alone, without any decomposition."""
    def r12(t):
        a, b = q.r(t[0], t[1])
        return (a, b, t[2])

    def r23(t):
        a, b = q.r(t[1], t[2])
        return (t[0], a, b)

    return all(r12(r23(r12(t))) == r23(r12(r23(t))) for t in product(range(q.n), repeat=3))


def test_flip_satisfies_everything():
    p = profile(make_trivial("abc"))
    assert all(v for v in p.values())


def test_identity_map_is_braided_but_degenerate():
    p = profile(make_identity("ab"))
    assert p["ybe"] and p["involutive"] and p["square_free"]
    assert not p["nondegenerate"]


def test_l1_r1_without_braid_relation():
    q = load_entry_solution("l1r1_nonbraided")
    assert check_condition(q, "l1").holds and check_condition(q, "r1").holds
    rep = check_condition(q, "ybe")
    assert not rep.holds and len(rep.witnesses[0].args) == 3
    suite = equivalence_suite(q, "lemma_ybe")
    assert suite.verdicts["lr3"] is False and suite.passed
    assert not check_local(q, "lr3", ("x", "y", "z"))
    assert not predicate(q, "2cancellative").holds


def test_check_local_agrees_with_global():
    q = load_entry_solution("l1r1_nonbraided")
    for cond in ("l1", "r1", "lr3", "ybe"):
        bad = [t for t in product(q.labels, repeat=3) if not check_local(q, cond, t)]
        assert (not bad) == check_condition(q, cond).holds
        assert len(bad) == check_condition(q, cond).violations


def test_unknown_condition():
    with pytest.raises(ValueError):
        check_condition(make_trivial("a"), "bogus")


def test_classify_lists_every_condition():
    rep = classify(load_entry_solution("rho_cycle"))
    assert set(CONDITIONS) <= set(rep)


@pytest.mark.parametrize("index", range(36))
def test_permutational_criterion(index):
    f, g, q = permutational_pairs()[index]
    braided = check_condition(q, "ybe").holds
    assert braided == direct_ybe(q)
    assert braided == (compose(f, g) == compose(g, f))
    symmetric = braided and predicate(q, "involutive").holds
    assert symmetric == (braided and f == inverse(g))


def test_exhaustive_three_point_family():
    fam = square_free_involutive(3)
    assert len(fam) == 4
    for q in fam:
        for suite in SUITES:
            equivalence_suite(q, suite)


def test_exhaustive_four_point_family():
    fam = square_free_involutive(4)
    assert len(fam) == 140
    braided = sum(direct_ybe(q) for q in fam)
    assert braided == 30
    for q in fam:
        rep = equivalence_suite(q, "quantum_binomial")
        assert rep.hypotheses_met and rep.passed
        for suite in ("lemma_ybe", "l2_decomposition", "lri_two_of_three", "squarefree_implications", "csl_symmetric"):
            equivalence_suite(q, suite)


@pytest.mark.parametrize("key", sorted(catalog_sets()))
def test_suites_on_catalog(key):
    q = catalog_sets()[key]
    for suite in SUITES:
        equivalence_suite(q, suite)


def test_theorem_violation_is_raised_on_a_forged_report(monkeypatch):
    # force a wrong verdict on an input meeting the hypotheses
    import braidset.conditions as C

    q = load_entry_solution("sqfree_three")
    real = C.check_condition

    def lying(qs, cond, cap=10):
        rep = real(qs, cond, cap)
        if cond == "l1":
            rep.holds = False
        return rep

    monkeypatch.setattr(C, "check_condition", lying)
    with pytest.raises(TheoremViolation):
        equivalence_suite(q, "quantum_binomial")


tables3 = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=9, max_size=9)


def _q(table):
    return from_function("h", "abc", lambda x, y: table[x * 3 + y])


@settings(max_examples=200)
@given(tables3)
def test_braid_relation_decomposes_pointwise(table):
    q = _q(table)
    for t in product(range(3), repeat=3):
        ybe = check_local(q, "ybe", t)
        assert ybe == (check_local(q, "l1", t) and check_local(q, "lr3", t) and check_local(q, "r1", t))
        assert check_local(q, "l2", t) == (check_local(q, "l1", t) and check_local(q, "lr3", t))
        assert check_local(q, "r2", t) == (check_local(q, "lr3", t) and check_local(q, "r1", t))
    assert check_condition(q, "ybe").holds == direct_ybe(q)


@settings(max_examples=150, deadline=None)
@given(st.permutations(range(9)))
def test_suites_never_contradict_on_random_bijections(images):
    pairs = [divmod(k, 3) for k in images]
    q = from_function("b", "abc", lambda x, y: pairs[x * 3 + y])
    for suite in SUITES:
        equivalence_suite(q, suite)
