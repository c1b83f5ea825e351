from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from braidset.catalog import load_entry_solution
from braidset.errors import SearchBudgetExceeded
from braidset.graph import (
    automorphisms,
    brute_force_isomorphism,
    export_dot,
    find_isomorphism,
    gamma_graph,
    is_isomorphism,
    orbit_partition,
)
from braidset.qset import QuadraticSet, from_function, make_trivial

from families import catalog_sets, permutational_pairs, square_free_involutive

SQFREE_DOT = """digraph G {
  x;
  y;
  z;
  x -> y [label="z"];
  y -> x [label="z"];
}
"""


def permuted(q: QuadraticSet, image, name="p") -> QuadraticSet:
    """q transported along the relabelling i -> image[i], with labels kept in order."""
    inv = [0] * q.n
    for i, j in enumerate(image):
        inv[j] = i

    def r(x, y):
        a, b = q.r(inv[x], inv[y])
        return image[a], image[b]

    return from_function(name, q.labels, r)


def small_sets():
    sets = [q for q in catalog_sets().values() if q.n <= 5]
    sets += [q for _, _, q in permutational_pairs()]
    sets += list(square_free_involutive(3))
    return sets


def test_find_isomorphism_agrees_with_brute_force():
    sets = small_sets()
    for a, b in product(sets, repeat=2):
        fast = find_isomorphism(a, b)
        slow = brute_force_isomorphism(a, b)
        assert (fast is None) == (slow is None), (a.name, b.name)
        if fast is not None:
            assert is_isomorphism(a, b, fast)


def test_four_point_family_against_brute_force():
    fam = square_free_involutive(4)[:40]
    for a, b in product(fam, repeat=2):
        assert (find_isomorphism(a, b) is None) == (brute_force_isomorphism(a, b) is None)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(12)))
def test_relabelled_twelve_is_found(image):
    q = load_entry_solution("twelve")
    p = permuted(q, tuple(image))
    phi = find_isomorphism(q, p)
    assert phi is not None and is_isomorphism(q, p, phi)


def test_automorphisms_preserve_labelled_graph():
    for key in ("sqfree_three", "six", "perm_symmetric"):
        q = catalog_sets()[key]
        g = gamma_graph(q)
        auts = automorphisms(q)
        assert auts
        for phi in auts:
            assert is_isomorphism(q, q, phi)
            moved = {(phi[s], phi[t], phi[z]) for s, t, z in g.edge_triples()}
            assert moved == g.edge_triples()


def test_small_automorphism_group_is_complete():
    q = make_trivial("abc")
    assert len(automorphisms(q)) == 6


def test_generators_for_large_carriers(twelve):
    gens = automorphisms(twelve)
    assert all(is_isomorphism(twelve, twelve, g) for g in gens)


def test_search_budget(twelve):
    with pytest.raises(SearchBudgetExceeded):
        find_isomorphism(twelve, permuted(twelve, tuple(reversed(range(12)))), budget=1)


def test_orbit_partition_blocks():
    q = load_entry_solution("sqfree_three")
    assert orbit_partition(q) == [["x", "y"], ["z"]]


def test_dot_golden():
    q = load_entry_solution("sqfree_three")
    assert export_dot(gamma_graph(q)) == SQFREE_DOT
    with_loops = export_dot(gamma_graph(q), self_loops=True)
    assert '  z -> z [label="x,y,z"];' in with_loops
    assert export_dot(gamma_graph(q)) == export_dot(gamma_graph(q))


def test_dot_quotes_unusual_labels():
    q = make_trivial(["a b", 'q"'])
    text = export_dot(gamma_graph(q), self_loops=True)
    assert '"a b";' in text and '"q\\"";' in text


def test_gamma_graph_edges_follow_left_actions(twelve):
    g = gamma_graph(twelve)
    for s, t, z in g.edge_triples():
        assert twelve.left_action(z, s) == t


def _labelled_graph_isomorphic(a, b):
    from itertools import permutations

    def triples(q):
        g = gamma_graph(q)
        return g.edge_triples() | {(v, v, z) for v, zs in g.loops.items() for z in zs}

    ta, tb = triples(a), triples(b)
    for image in permutations(b.labels):
        phi = dict(zip(a.labels, image))
        if {(phi[s], phi[t], phi[z]) for s, t, z in ta} == tb:
            return True
    return False


def test_labelled_graph_determines_symmetric_sets():
    fam = list(square_free_involutive(3)) + list(square_free_involutive(4)[:30])
    for a, b in product(fam, repeat=2):
        if a.n == b.n:
            assert _labelled_graph_isomorphic(a, b) == (find_isomorphism(a, b) is not None)
