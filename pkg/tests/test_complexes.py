import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from coverhom.complexes import (
    Hypergraph,
    SimplicialComplex,
    complex_from_labels,
    contract,
    delete_vertex,
    deletion,
    find_leaves,
    good_leaf_certificate,
    good_leaf_order,
    good_vertex_sequences,
    hypergraph_from_labels,
    hypergraph_of,
    independence_complex,
    is_connected,
    is_forest,
    is_grafted,
    is_simplicial_tree,
    is_unmixed,
    link,
    minimal_vertex_covers,
    strip_isolated,
    subcollection,
)
from coverhom.errors import FaceNotInComplex, InputError, NotAGoodLeaf
from coverhom.fixtures import tree_a, tree_b, tree_c
from coverhom.ideals import colon_by_variable, edge_ideal, eliminate_variable

from oracles import (
    brute_deletion,
    brute_is_leaf,
    brute_link,
    brute_min_covers,
    maximal,
)

TRIANGLE = [("x1", "x2"), ("x2", "x3"), ("x1", "x3")]


def small_hypergraphs(seed=0, count=80, max_vertices=6):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_vertices)
        edges = set()
        for _ in range(rng.randint(0, 5)):
            size = rng.randint(1, n)
            edges.add(tuple(sorted(rng.sample(range(n), size))))
        edges = [e for e in edges if not any(set(f) < set(e) for f in edges)]
        out.append(
            Hypergraph(
                tuple(f"x{i + 1}" for i in range(n)),
                tuple(range(n)),
                tuple(sorted(set(edges))),
            )
        )
    return out


def test_link_empty_face_is_identity():
    delta = tree_a()
    assert link(delta, ()).facets == delta.facets


def test_link_tree_a_at_x1():
    got = link(tree_a(), (0,))
    assert set(got.label_facets()) == {
        ("x2", "x3", "x4"),
        ("x2", "x3", "x5"),
        ("x5", "x6"),
    }
    assert got.facets == tuple(brute_link(tree_a().facets, (0,)))


def test_link_of_simplex_vertex():
    delta = complex_from_labels([("x1", "x2", "x3")])
    assert link(delta, (1,)).facets == ((0, 2),)


def test_link_requires_a_face():
    with pytest.raises(FaceNotInComplex):
        link(tree_a(), (3, 7))


def test_deletion_empty_face_is_identity():
    delta = tree_a()
    assert deletion(delta, ()).facets == delta.facets


def test_deletion_tree_a_at_x6():
    # {x1,x5} is swallowed by {x1,x2,x3,x5}; only maximal faces remain
    got = deletion(tree_a(), (5,))
    assert set(got.label_facets()) == {
        ("x1", "x2", "x3", "x4"),
        ("x1", "x2", "x3", "x5"),
        ("x7", "x8"),
    }
    assert got.facets == tuple(brute_deletion(tree_a().facets, (5,)))


def test_deletion_edge():
    delta = complex_from_labels([("x1", "x2")])
    assert deletion(delta, (0,)).facets == ((1,),)


def test_find_leaves_single_facet():
    assert find_leaves(complex_from_labels([("x1", "x2", "x3")])) == [(0, None)]


def test_find_leaves_tree_a():
    leaves = dict(find_leaves(tree_a()))
    assert 0 in leaves and leaves[0] == 1


def test_find_leaves_triangle_cycle():
    delta = complex_from_labels(TRIANGLE)
    assert find_leaves(delta) == []
    for f in range(3):
        assert not brute_is_leaf(delta.facets, f)


def test_good_leaf_certificate_tree_a():
    cert = good_leaf_certificate(tree_a(), 0)
    assert cert.intersections == ((0, 1, 2), (0,), ())
    assert cert.chain == (1, 2, 3)


def test_good_leaf_certificate_single_facet():
    cert = good_leaf_certificate(complex_from_labels([("x1", "x2")]), 0)
    assert cert.chain == ()


def test_good_leaf_certificate_triangle_none():
    delta = complex_from_labels(TRIANGLE)
    assert all(good_leaf_certificate(delta, f) is None for f in range(3))


def test_good_vertex_sequences_tree_a():
    seqs = good_vertex_sequences(tree_a(), 0)
    assert seqs == [(0, 1, 2), (0, 2, 1)]


def test_good_vertex_sequences_isolated_leaf():
    assert good_vertex_sequences(complex_from_labels([("x1", "x2")]), 0) == [()]


def test_good_vertex_sequences_tree_b_tail():
    delta = tree_b()
    tail = subcollection(delta, (1, 2))
    seqs = good_vertex_sequences(tail, 0)
    labels = [tuple(delta.labels[v] for v in s) for s in seqs]
    assert ("x5", "x6") in labels


def test_good_vertex_sequences_needs_good_leaf():
    with pytest.raises(NotAGoodLeaf):
        good_vertex_sequences(complex_from_labels(TRIANGLE), 0)


def test_good_leaf_order_tree_a():
    assert good_leaf_order(tree_a()) == (0, 1, 2, 3)


def test_good_leaf_order_single_and_cycle():
    assert good_leaf_order(complex_from_labels([("x1",)])) == (0,)
    assert good_leaf_order(complex_from_labels(TRIANGLE)) is None


def test_tree_verdicts():
    assert is_simplicial_tree(tree_b())
    assert not is_simplicial_tree(complex_from_labels(TRIANGLE))
    two = complex_from_labels([("x1", "x2"), ("x3", "x4")])
    assert is_forest(two) and not is_connected(two)
    assert not is_simplicial_tree(two)


def test_good_vertex_sequences_match_prefix_oracle():
    # a sequence is valid iff every nonempty chain intersection is a prefix
    from itertools import permutations as perms

    from coverhom.verify import enumerate_trees

    for delta in enumerate_trees(5, 3):
        for f in range(delta.t):
            cert = good_leaf_certificate(delta, f)
            if cert is None:
                continue
            inters = [set(s) for s in cert.intersections if s]
            if not inters:
                assert good_vertex_sequences(delta, f) == [()]
                continue
            ground = sorted(inters[0])
            expected = sorted(
                seq
                for seq in perms(ground)
                if all(set(seq[: len(s)]) == s for s in inters)
            )
            got = sorted(good_vertex_sequences(delta, f))
            assert got == expected, (delta.label_facets(), f)


def test_link_and_deletion_match_oracle_on_random_complexes():
    rng = random.Random(14)
    for _ in range(40):
        n = rng.randint(2, 6)
        facets = set()
        for _ in range(rng.randint(1, 5)):
            facets.add(tuple(sorted(rng.sample(range(n), rng.randint(1, n)))))
        facets = [f for f in facets if not any(set(f) < set(g) for g in facets)]
        delta = SimplicialComplex(
            tuple(f"x{i}" for i in range(n)), tuple(sorted(set(facets)))
        )
        faces = list(delta.faces())
        for _ in range(4):
            face = faces[rng.randrange(len(faces))]
            assert link(delta, face).facets == tuple(
                brute_link(delta.facets, face)
            )
            assert deletion(delta, face).facets == tuple(
                brute_deletion(delta.facets, face)
            )


def test_good_leaf_order_iff_every_subcollection_has_leaf():
    rng = random.Random(5)
    complexes = [tree_a(), tree_b(), complex_from_labels(TRIANGLE)]
    for _ in range(30):
        n = rng.randint(2, 6)
        facets = set()
        for _ in range(rng.randint(1, 5)):
            facets.add(tuple(sorted(rng.sample(range(n), rng.randint(1, n)))))
        facets = [f for f in facets if not any(set(f) < set(g) for g in facets)]
        complexes.append(
            SimplicialComplex(
                tuple(f"x{i}" for i in range(n)), tuple(sorted(set(facets)))
            )
        )
    for delta in complexes:
        if delta.t > 6:
            continue
        every = all(
            any(brute_is_leaf([delta.facets[i] for i in sub], p)
                for p in range(len(sub)))
            for r in range(1, delta.t + 1)
            for sub in combinations(range(delta.t), r)
        )
        assert (good_leaf_order(delta) is not None) == every


def test_good_leaf_is_leaf_and_converse_fails():
    # every good leaf is a leaf ...
    for delta in (tree_a(), tree_b(), tree_c()):
        for f in range(delta.t):
            if good_leaf_certificate(delta, f) is not None:
                assert brute_is_leaf(delta.facets, f)
    # ... and some leaf is not good: incomparable lower intersections
    delta = complex_from_labels(
        [("x1", "x2", "x3", "x4"), ("x1", "x2", "x3", "x5"),
         ("x1", "x2", "x6"), ("x2", "x3", "x7")]
    )
    leaves = [f for f, _ in find_leaves(delta)]
    assert 0 in leaves
    assert good_leaf_certificate(delta, 0) is None


def test_grafted_basic():
    assert is_grafted(complex_from_labels([("x1", "x2")]))
    assert not is_grafted(complex_from_labels([("x1", "x2"), ("x2", "x3")]))
    assert not is_grafted(tree_a())


def test_grafted_examples():
    # disjoint simplices graft trivially; a star grafts onto its centre
    assert is_grafted(complex_from_labels([("x1", "x2"), ("x3", "x4")]))
    star = complex_from_labels([("x1", "x2"), ("x1", "x3"), ("x1", "x4")])
    # every vertex of the remaining facet must lie in the chosen leaves
    assert is_grafted(star) == is_unmixed(hypergraph_of(star))


def test_minimal_vertex_covers_path():
    h = hypergraph_from_labels([("x1", "x2"), ("x2", "x3")])
    assert minimal_vertex_covers(h) == [(0, 2), (1,)]
    assert brute_min_covers(range(3), h.edges) == [(0, 2), (1,)]


def test_minimal_vertex_covers_single_edge():
    h = hypergraph_from_labels([tuple(f"x{i}" for i in range(1, 6))])
    assert minimal_vertex_covers(h) == [(i,) for i in range(5)]


def test_minimal_vertex_covers_against_cover_ideal_tree_b():
    from coverhom.ideals import cover_ideal

    h = hypergraph_of(tree_b())
    covers = {tuple(c) for c in minimal_vertex_covers(h)}
    gens = {tuple(s) for s in cover_ideal(h).supports()}
    assert covers == gens


def test_unmixed():
    assert not is_unmixed(hypergraph_from_labels([("x1", "x2"), ("x2", "x3")]))
    assert is_unmixed(hypergraph_from_labels([("x1", "x2")]))
    assert is_unmixed(hypergraph_from_labels([("x1", "x2"), ("x3", "x4")]))


def test_independence_complex():
    h = hypergraph_from_labels([("x1", "x2")])
    assert independence_complex(h).label_facets() == [("x1",), ("x2",)]
    h2 = hypergraph_from_labels([("x1", "x2"), ("x2", "x3")])
    assert set(independence_complex(h2).label_facets()) == {("x1", "x3"), ("x2",)}
    iso = Hypergraph(("x1", "x2"), (0, 1), ())
    assert independence_complex(iso).label_facets() == [("x1", "x2")]


def test_independence_facets_are_cover_complements():
    for h in small_hypergraphs(seed=2, count=60, max_vertices=8):
        covers = minimal_vertex_covers(h)
        expect = maximal(
            tuple(v for v in h.present if v not in set(c)) for c in covers
        )
        got = independence_complex(h)
        relabeled = [
            tuple(h.present[v] for v in f) for f in got.facets
        ]
        assert sorted(relabeled) == list(expect)


def test_contract_path():
    h = hypergraph_from_labels([("x1", "x2"), ("x2", "x3")])
    hc = contract(h, 1)
    assert hc.label_edges() == [("x1",), ("x3",)]
    assert tuple(h.labels[v] for v in hc.present) == ("x1", "x3")


def test_contract_vertex_in_no_edge():
    h = Hypergraph(("x1", "x2", "x3"), (0, 1, 2), ((0, 1),))
    hc = contract(h, 2)
    assert hc.edges == ((0, 1),) and 2 not in hc.present


def test_contract_chain_block_matches_trace():
    # first contraction of the layered chain expansion: ten edges remain
    from coverhom.construction import build_H_k

    hk, vid_of, _, _ = build_H_k(hypergraph_of(tree_b()), (1, 2, 2))
    hc = contract(hk, vid_of[(0, 1)])
    assert len(hc.edges) == 10
    assert ("x2_1", "x3_1") in hc.edge_label_set()


def test_delete_vertex():
    h = hypergraph_from_labels([("x1", "x2"), ("x2", "x3")])
    hd = delete_vertex(h, 1)
    assert hd.edges == () and tuple(hd.present) == (0, 2)
    h2 = hypergraph_from_labels([("x1", "x2"), ("x3", "x4")])
    assert delete_vertex(h2, 0).label_edges() == [("x3", "x4")]


def test_strip_isolated():
    none = Hypergraph(("x1", "x2"), (0, 1), ())
    assert strip_isolated(none).present == ()
    h = hypergraph_from_labels([("x1",), ("x2", "x3")])
    s = strip_isolated(h)
    assert s.label_edges() == [("x2", "x3")]
    assert tuple(h.labels[v] for v in s.present) == ("x2", "x3")


def test_colon_coherence_with_contract():
    rng = random.Random(9)
    for h in small_hypergraphs(seed=3, count=50, max_vertices=6):
        if not h.edges:
            continue
        ih = edge_ideal(h)
        for v in h.present:
            lab = h.labels[v]
            if (v,) in h.edges:
                continue
            hc = contract(h, v)
            left = {
                frozenset(d.items()) for d in edge_ideal(hc).gen_dicts()
            }
            right = {
                frozenset(d.items())
                for d in colon_by_variable(ih, lab).gen_dicts()
                if d
            }
            assert left == right, (h.label_edges(), lab)
            hd = delete_vertex(h, v)
            dl = {frozenset(d.items()) for d in edge_ideal(hd).gen_dicts()}
            dr = {
                frozenset(d.items())
                for d in eliminate_variable(ih, lab).gen_dicts()
            }
            assert dl == dr


def test_contraction_shrinks_every_edge():
    # for every vertex and edge there is a contracted edge inside E minus x
    for h in small_hypergraphs(seed=4, count=60, max_vertices=6):
        for v in h.present:
            if (v,) in h.edges:
                continue
            try:
                hc = contract(h, v)
            except InputError:
                continue
            for e in h.edges:
                target = set(e) - {v}
                assert any(set(e2) <= target for e2 in hc.edges)


def test_antichain_preserved_by_operations():
    def antichain(sets):
        sets = [frozenset(s) for s in sets]
        return not any(
            a < b for a in sets for b in sets
        )

    for h in small_hypergraphs(seed=6, count=40, max_vertices=6):
        assert antichain(h.edges)
        for v in h.present:
            if (v,) not in h.edges:
                assert antichain(contract(h, v).edges)
            assert antichain(delete_vertex(h, v).edges)
        assert antichain(strip_isolated(h).edges)
        if h.edges:
            assert antichain(independence_complex(h).facets)


@given(
    st.lists(
        st.frozensets(st.integers(0, 5), min_size=1, max_size=4),
        min_size=1,
        max_size=5,
    )
)
@settings(max_examples=60, deadline=None)
def test_cover_enumeration_matches_brute_force(raw_edges):
    edges = [
        tuple(sorted(e))
        for e in raw_edges
        if not any(set(f) < set(e) for f in raw_edges)
    ]
    edges = sorted(set(edges))
    if not edges:
        return
    n = max(v for e in edges for v in e) + 1
    h = Hypergraph(tuple(f"x{i}" for i in range(n)), tuple(range(n)), tuple(edges))
    assert minimal_vertex_covers(h) == brute_min_covers(range(n), edges)


def test_constructors_reject_bad_input():
    with pytest.raises(InputError):
        SimplicialComplex(("x1",), ())  # no facets
    with pytest.raises(InputError):
        SimplicialComplex(("x1", "x2"), ((0,), (0, 1)))  # nested facets
    with pytest.raises(InputError):
        Hypergraph(("x1",), (0,), ((),))  # empty edge
