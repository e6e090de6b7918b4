import random

import pytest
from hypothesis import given, settings, strategies as st

from coverhom.complexes import hypergraph_from_labels, hypergraph_of
from coverhom.errors import InputError, NoEdges, NotAPolarizedGenerator, NotSquarefree
from coverhom.fixtures import tree_a, tree_b, tree_c
from coverhom.ideals import (
    MonomialIdeal,
    alexander_dual,
    colon_by_variable,
    component,
    cover_ideal,
    cover_ideal_symbolic,
    depolarize_order,
    edge_ideal,
    eliminate_variable,
    facet_ideal,
    ideal_from_dicts,
    intersect,
    multiply,
    polarize,
    power,
    stanley_reisner_complex,
    symbolic_power,
)

from oracles import brute_membership, brute_min_covers, divides, lcm_vec

VARS3 = ("x1", "x2", "x3")


def path_cover_ideal():
    return cover_ideal(hypergraph_from_labels([("x1", "x2"), ("x2", "x3")]))


def random_ideal(rng, n_vars=4, n_gens=4, max_deg=3):
    gens = set()
    for _ in range(rng.randint(1, n_gens)):
        g = tuple(rng.randint(0, max_deg) for _ in range(n_vars))
        if any(g):
            gens.add(g)
    if not gens:
        gens = {(1,) + (0,) * (n_vars - 1)}
    return MonomialIdeal(tuple(f"x{i}" for i in range(n_vars)), tuple(gens))


def test_facet_and_edge_ideal():
    delta = tree_b()
    fi = facet_ideal(delta)
    assert sorted(fi.gen_dicts(), key=str) == sorted(
        [
            {"x1": 1, "x2": 1, "x3": 1},
            {"x1": 1, "x4": 1, "x5": 1, "x6": 1},
            {"x5": 1, "x6": 1, "x7": 1, "x8": 1},
        ],
        key=str,
    )
    assert edge_ideal(hypergraph_of(delta)).gens == fi.gens
    small = hypergraph_from_labels([("x1", "x2"), ("x2", "x3")])
    assert sorted(edge_ideal(small).gen_dicts(), key=str) == [
        {"x1": 1, "x2": 1},
        {"x2": 1, "x3": 1},
    ]


def test_cover_ideal_path_and_single_edge():
    assert path_cover_ideal().gen_dicts() == [{"x2": 1}, {"x1": 1, "x3": 1}]
    single = cover_ideal(hypergraph_from_labels([tuple(f"x{i}" for i in range(1, 5))]))
    assert single.gen_dicts() == [{f"x{i}": 1} for i in range(1, 5)]


def test_cover_ideal_matches_brute_covers_tree_a():
    h = hypergraph_of(tree_a())
    j = cover_ideal(h)
    expect = brute_min_covers(range(8), h.edges)
    assert sorted(j.supports()) == list(expect)


def test_cover_ideal_needs_edges():
    from coverhom.complexes import Hypergraph

    with pytest.raises(NoEdges):
        cover_ideal(Hypergraph(("x1",), (0,), ()))


def test_power_and_multiply():
    j = path_cover_ideal()
    j2 = power(j, 2)
    assert j2.gen_dicts() == [
        {"x2": 2},
        {"x1": 1, "x2": 1, "x3": 1},
        {"x1": 2, "x3": 2},
    ]
    assert power(j, 1) == j
    a = ideal_from_dicts([{"x1": 1}], VARS3)
    b = ideal_from_dicts([{"x2": 1}], VARS3)
    assert multiply(a, b).gen_dicts() == [{"x1": 1, "x2": 1}]


def test_intersect():
    a = ideal_from_dicts([{"x1": 1}], VARS3)
    b = ideal_from_dicts([{"x2": 1}], VARS3)
    assert intersect(a, b).gen_dicts() == [{"x1": 1, "x2": 1}]
    c = ideal_from_dicts([{"x1": 1}, {"x2": 1}], VARS3)
    d = ideal_from_dicts([{"x2": 1}, {"x3": 1}], VARS3)
    assert intersect(c, d).gen_dicts() == [{"x2": 1}, {"x1": 1, "x3": 1}]
    assert intersect(c, c) == c


def test_symbolic_power_examples():
    j = path_cover_ideal()
    assert symbolic_power(j, 1) == j
    s2 = symbolic_power(j, 2)
    a = power(ideal_from_dicts([{"x1": 1}, {"x2": 1}], VARS3), 2)
    b = power(ideal_from_dicts([{"x2": 1}, {"x3": 1}], VARS3), 2)
    assert s2 == intersect(a, b)
    jb = cover_ideal(hypergraph_of(tree_b()))
    assert symbolic_power(jb, 2) == power(jb, 2)


def test_symbolic_equals_power_on_trees():
    for delta in (tree_a(), tree_b(), tree_c()):
        j = cover_ideal(hypergraph_of(delta))
        for k in (2, 3):
            assert symbolic_power(j, k) == power(j, k)


def test_power_inside_symbolic_always():
    rng = random.Random(12)
    for _ in range(25):
        n = rng.randint(2, 5)
        edges = set()
        for _ in range(rng.randint(1, 4)):
            edges.add(tuple(sorted(rng.sample(range(n), rng.randint(1, n)))))
        edges = [e for e in edges if not any(set(f) < set(e) for f in edges)]
        h = hypergraph_from_labels(
            [tuple(f"x{v + 1}" for v in e) for e in sorted(set(edges))]
        )
        if not h.edges:
            continue
        j = cover_ideal(h)
        for k in (2, 3):
            pk, sk = power(j, k), symbolic_power(j, k)
            assert all(sk.contains(g) for g in pk.gens)


def test_alexander_dual():
    i = ideal_from_dicts([{"x1": 1, "x2": 1}, {"x2": 1, "x3": 1}], VARS3)
    assert alexander_dual(i).gen_dicts() == [{"x2": 1}, {"x1": 1, "x3": 1}]
    full = ideal_from_dicts([{v: 1} for v in VARS3], VARS3)
    assert alexander_dual(full).gen_dicts() == [{"x1": 1, "x2": 1, "x3": 1}]


def test_alexander_dual_involutive_and_cover_identity():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 6)
        edges = set()
        for _ in range(rng.randint(1, 5)):
            edges.add(tuple(sorted(rng.sample(range(n), rng.randint(1, n)))))
        edges = [e for e in edges if not any(set(f) < set(e) for f in edges)]
        h = hypergraph_from_labels(
            [tuple(f"x{v + 1}" for v in e) for e in sorted(set(edges))]
        )
        if not h.edges:
            continue
        ih = edge_ideal(h)
        assert alexander_dual(alexander_dual(ih)) == ih
        assert alexander_dual(ih) == cover_ideal(h)


def test_alexander_dual_rejects_non_squarefree():
    with pytest.raises(NotSquarefree):
        alexander_dual(ideal_from_dicts([{"x1": 2}], VARS3))


def test_stanley_reisner_complex():
    i = ideal_from_dicts([{"x1": 1, "x2": 1}], VARS3)
    assert stanley_reisner_complex(i).label_facets() == [
        ("x1", "x3"),
        ("x2", "x3"),
    ]
    variables = ideal_from_dicts([{v: 1} for v in VARS3], VARS3)
    assert stanley_reisner_complex(variables).facets == ((),)
    h = hypergraph_from_labels([("x1", "x2"), ("x2", "x3")])
    from coverhom.complexes import independence_complex

    assert stanley_reisner_complex(edge_ideal(h)).facets == (
        independence_complex(h).facets
    )


def test_polarize():
    i = ideal_from_dicts([{"x1": 2}, {"x1": 1, "x2": 1}], ("x1", "x2"))
    p, pmap = polarize(i)
    assert p.variables == ("x1_1", "x1_2", "x2_1")
    assert {frozenset(d.items()) for d in p.gen_dicts()} == {
        frozenset({"x1_1": 1, "x1_2": 1}.items()),
        frozenset({"x1_1": 1, "x2_1": 1}.items()),
    }
    sq = ideal_from_dicts([{"x1": 1, "x2": 1}], ("x1", "x2"))
    psq, _ = polarize(sq)
    assert psq.gen_dicts() == [{"x1_1": 1, "x2_1": 1}]


def test_polarization_identity_mixed_small():
    h = hypergraph_from_labels([("x1", "x2"), ("x2", "x3")])
    for kvec in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        sym = cover_ideal_symbolic(h, kvec)
        pol, _ = polarize(sym)
        from coverhom.construction import build_H_k

        hk, _, _, _ = build_H_k(h, kvec)
        layered = cover_ideal(hk)
        assert {frozenset(d.items()) for d in pol.gen_dicts()} == {
            frozenset(d.items()) for d in layered.gen_dicts()
        }


def test_depolarize_order():
    i = ideal_from_dicts([{"x1": 2}, {"x1": 1, "x2": 1}], ("x1", "x2"))
    p, pmap = polarize(i)
    back = depolarize_order(p.gens, pmap)
    assert sorted(back) == sorted(i.gens)
    layer1 = ideal_from_dicts([{"x1": 1, "x2": 1}], ("x1", "x2"))
    q, qmap = polarize(layer1)
    assert depolarize_order(q.gens, qmap) == list(layer1.gens)


def test_depolarize_rejects_non_prefix_layers():
    i = ideal_from_dicts([{"x1": 2}], ("x1",))
    _, pmap = polarize(i)
    with pytest.raises(NotAPolarizedGenerator):
        depolarize_order([(0, 1)], pmap)  # layer 2 without layer 1


def test_colon_and_eliminate():
    i = ideal_from_dicts([{"x1": 1, "x2": 1}, {"x2": 1, "x3": 1}], VARS3)
    assert colon_by_variable(i, "x2").gen_dicts() == [{"x1": 1}, {"x3": 1}]
    j = ideal_from_dicts([{"x1": 1, "x2": 1}, {"x3": 1}], VARS3)
    assert eliminate_variable(j, "x1").gen_dicts() == [{"x3": 1}]


def test_component():
    j = path_cover_ideal()
    c3 = component(j, 3)
    assert all(sum(g) == 3 for g in c3.gens)
    assert all(j.contains(g) for g in c3.gens)
    # every degree-3 multiple of a generator appears
    assert len(c3.gens) == 8


def test_minimality_invariant():
    rng = random.Random(7)
    for _ in range(40):
        i = random_ideal(rng)
        gens = i.gens
        assert all(
            not divides(a, b) for a in gens for b in gens if a != b
        )


def test_membership_oracle_products_and_intersections():
    rng = random.Random(8)
    for _ in range(25):
        a = random_ideal(rng, n_vars=4, n_gens=3)
        b = random_ideal(rng, n_vars=4, n_gens=3)
        prod = multiply(a, b)
        meet = intersect(a, b)
        for _ in range(40):
            m = tuple(rng.randint(0, 6) for _ in range(4))
            in_prod = any(
                divides(lcm_vec(g, (0, 0, 0, 0)), m)
                and brute_membership(
                    [tuple(x + y for x, y in zip(g, h)) for h in b.gens], m
                )
                for g in a.gens
            )
            expect_prod = any(
                divides(tuple(x + y for x, y in zip(g, h)), m)
                for g in a.gens
                for h in b.gens
            )
            assert prod.contains(m) == expect_prod
            expect_meet = brute_membership(a.gens, m) and brute_membership(
                b.gens, m
            )
            assert meet.contains(m) == expect_meet


@given(
    st.lists(
        st.tuples(
            st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)
        ).filter(any),
        min_size=1,
        max_size=5,
    ),
    st.integers(2, 3),
)
@settings(max_examples=40, deadline=None)
def test_symbolic_power_membership(gens_raw, k):
    squarefree = [tuple(min(e, 1) for e in g) for g in gens_raw]
    ideal = MonomialIdeal(VARS3, tuple(squarefree))
    if ideal.is_zero() or ideal.is_ring():
        return
    sk = symbolic_power(ideal, k)
    # membership in every k-th prime power, checked from the primes
    from coverhom.ideals import minimal_primes

    primes = minimal_primes(ideal)
    for g in sk.gens:
        assert all(sum(g[v] for v in p) >= k for p in primes)
        for v, e in enumerate(g):
            if e:
                reduced = g[:v] + (e - 1,) + g[v + 1 :]
                assert any(sum(reduced[u] for u in p) < k for p in primes)


def test_exponent_guard():
    with pytest.raises(InputError):
        ideal_from_dicts([{"x1": 1 << 33}], ("x1",))
