"""Bundled verification suites.

Each suite returns a sorted list of check dicts {id, passed, details}.
The CLI exposes them through ``verify-paper``; the acceptance tests call
the same functions, so both surfaces exercise one implementation.
"""

import time
from itertools import combinations, permutations, product

from . import fixtures
from .complexes import (
    SimplicialComplex,
    good_leaf_certificate,
    good_leaf_order,
    good_vertex_sequences,
    hypergraph_of,
    is_connected,
    is_grafted,
    is_unmixed,
    subcollection,
)
from .construction import (
    advance,
    build_H_k,
    compute_U,
    initial_state,
    is_constructible,
    k_budgets,
    layer_tuples,
    prepare_run,
    run_string,
    selection,
    terminal_decomposition,
)
from .errors import UnknownSuite
from .homological import (
    cover_ideal,
    has_linear_quotients,
    has_linear_resolution,
    hypergraph_shedding_vertex,
    is_cohen_macaulay_facet_ring,
    is_componentwise_linear,
    is_vertex_decomposable_hypergraph,
    regularity,
    shelling_from_vd,
    shelling_to_linear_quotients,
    verify_vd_tree,
)
from .ideals import (
    cover_ideal_symbolic,
    depolarize_order,
    polarize,
    power,
    symbolic_power,
)

SUITES = (
    "examples",
    "theorem1",
    "theorem2",
    "regularity",
    "construction-lemmas",
    "counterexamples",
)


def _check(out, check_id, passed, details=""):
    out.append({"id": check_id, "passed": bool(passed), "details": str(details)})


# ---------------------------------------------------------------------------
# corpus: all small trees up to isomorphism, facets in good-leaf order
# ---------------------------------------------------------------------------


def enumerate_trees(max_vertices=6, max_facets=3):
    """All simplicial trees on <= max_vertices with <= max_facets, up to
    isomorphism; every vertex lies in a facet and the facet order returned
    is the canonical good-leaf order."""
    found = []
    seen = set()
    for n in range(1, max_vertices + 1):
        subsets = [m for m in range(1, 1 << n)]
        labels = tuple(f"x{i + 1}" for i in range(n))
        for t in range(1, max_facets + 1):
            for combo in combinations(subsets, t):
                union = 0
                for m in combo:
                    union |= m
                if union != (1 << n) - 1:
                    continue
                if any(
                    a != b and a & b == a for a in combo for b in combo
                ):
                    continue
                facets = tuple(
                    tuple(v for v in range(n) if m >> v & 1) for m in combo
                )
                delta = SimplicialComplex(labels, facets)
                if not is_connected(delta):
                    continue
                order = good_leaf_order(delta)
                if order is None:
                    continue
                canon = min(
                    tuple(
                        sorted(
                            sum(1 << perm[v] for v in f) for f in facets
                        )
                    )
                    for perm in permutations(range(n))
                )
                if (n, canon) in seen:
                    continue
                seen.add((n, canon))
                found.append(subcollection(delta, order))
    return found


def _k_vectors(t, bound):
    return list(product(range(1, bound + 1), repeat=t))


def _named_trees():
    return [
        ("tree_a", fixtures.tree_a()),
        ("tree_b", fixtures.tree_b()),
        ("tree_c", fixtures.tree_c()),
    ]


# ---------------------------------------------------------------------------
# worked-example suite
# ---------------------------------------------------------------------------


def _label_edge_set(h):
    return {tuple(sorted(e)) for e in h.label_edges()}


EXPECTED_BLOCK_EDGES = {
    tuple(sorted(e))
    for e in [
        ("x1_1", "x2_1", "x3_1"),
        ("x1_2", "x2_1", "x3_1"),
        ("x1_1", "x2_2", "x3_1"),
        ("x1_1", "x2_1", "x3_2"),
        ("x3_1", "x4_1", "x5_1"),
        ("x4_1", "x5_1", "x6_1"),
        ("x4_2", "x5_1", "x6_1"),
        ("x4_1", "x5_2", "x6_1"),
        ("x4_1", "x5_1", "x6_2"),
        ("x4_3", "x5_1", "x6_1"),
        ("x4_1", "x5_3", "x6_1"),
        ("x4_1", "x5_1", "x6_3"),
        ("x4_2", "x5_2", "x6_1"),
        ("x4_2", "x5_1", "x6_2"),
        ("x4_1", "x5_2", "x6_2"),
    ]
}

EXPECTED_TRACE_B = {
    1: [
        ("x2_1", "x3_1"),
        ("x4_1", "x5_1", "x6_1"),
        ("x4_2", "x5_1", "x6_1"),
        ("x4_1", "x5_2", "x6_1"),
        ("x4_1", "x5_1", "x6_2"),
        ("x5_1", "x6_1", "x7_1", "x8_1"),
        ("x5_2", "x6_1", "x7_1", "x8_1"),
        ("x5_1", "x6_2", "x7_1", "x8_1"),
        ("x5_1", "x6_1", "x7_2", "x8_1"),
        ("x5_1", "x6_1", "x7_1", "x8_2"),
    ],
    2: [
        ("x2_1", "x3_1"),
        ("x4_1", "x5_2", "x6_1"),
        ("x5_2", "x6_1", "x7_1", "x8_1"),
    ],
    3: [("x2_1", "x3_1"), ("x4_1", "x6_1"), ("x6_1", "x7_1", "x8_1")],
    4: [("x2_1", "x3_1"), ("x4_1",), ("x7_1", "x8_1")],
}

EXPECTED_STRIPPED_C3 = {
    tuple(sorted(e))
    for e in [
        ("x2_1", "x3_1"),
        ("x5_1", "x6_1"),
        ("x8_2", "x9_3", "x10_1"),
        ("x8_2", "x9_1", "x10_3"),
        ("x8_2", "x9_2", "x10_2"),
        ("x9_1", "x10_1"),
        ("x9_2", "x10_1"),
        ("x9_1", "x10_2"),
    ]
}


def suite_examples():
    out = []
    tree_a = fixtures.tree_a()
    cert = good_leaf_certificate(tree_a, 0)
    _check(
        out,
        "examples/good-leaf-first-facet",
        cert is not None
        and cert.intersections[0] == (0, 1, 2)
        and cert.intersections[1] == (0,),
        "nested intersections {x1,x2,x3} >= {x1} >= {}",
    )
    seqs = {
        tuple(tree_a.labels[v] for v in s)
        for s in good_vertex_sequences(tree_a, 0)
    }
    _check(
        out,
        "examples/good-vertex-sequences",
        seqs == {("x1", "x2", "x3"), ("x1", "x3", "x2")},
        sorted(seqs),
    )
    chain = fixtures.chain_hypergraph()
    hk, _, _, _ = build_H_k(chain, (2, 1, 3))
    _check(
        out,
        "examples/block-expansion-15-edges",
        _label_edge_set(hk) == EXPECTED_BLOCK_EDGES,
        f"{len(hk.edges)} edges",
    )
    tree_b = fixtures.tree_b()
    run = prepare_run(tree_b, (1, 2, 2))
    states, a = run_string(run, "LDLL")
    trace_ok = a == 4
    picks = [(tree_b.labels[u], c) for u, c, _ in states[-1].history]
    trace_ok &= picks == [("x1", 1), ("x5", 1), ("x5", 2), ("x6", 1)]
    for s, expected in EXPECTED_TRACE_B.items():
        trace_ok &= _label_edge_set(states[s].hyper) == {
            tuple(sorted(e)) for e in expected
        }
    _check(out, "examples/layer-trace-b", trace_ok, f"alpha={a}, picks={picks}")
    blocks = terminal_decomposition(states[-1])
    _check(
        out,
        "examples/terminal-blocks-b",
        blocks == [(0, 1), (2, 1)],
        blocks,
    )
    tree_c = fixtures.tree_c()
    run_c = prepare_run(tree_c, (1, 1, 1, 4, 2))
    st = initial_state(run_c)
    for letter in "LLL":
        st = advance(st, letter)
    picks_c = [(tree_c.labels[u], c) for u, c, _ in st.history]
    stripped = st.stripped()
    _check(
        out,
        "examples/layer-trace-c-stripped",
        picks_c == [("x1", 1), ("x4", 1), ("x7", 1)]
        and _label_edge_set(stripped) == EXPECTED_STRIPPED_C3,
        picks_c,
    )
    u3 = compute_U(st)
    sel = selection(st)
    _check(
        out,
        "examples/next-step-c",
        u3 == {3} and sel is not None and (tree_c.labels[sel[1]], sel[2]) == ("x9", 1),
        f"U={sorted(u3)}, sel={sel}",
    )
    lab = {l: i for i, l in enumerate(tree_c.labels)}
    probe = [(lab["x8"], 2), (lab["x9"], 1), (lab["x10"], 1)]
    edge_sets = {
        frozenset((run_c.base_of[v], run_c.layer_of[v]) for v in e)
        for e in stripped.edges
    }
    ok, witness = is_constructible(st, probe)
    _check(
        out,
        "examples/constructible-not-edge-c",
        ok and witness == 3 and frozenset(probe) not in edge_sets,
        f"witness={witness}",
    )
    return sorted(out, key=lambda c: c["id"])


# ---------------------------------------------------------------------------
# polarization identity and the linear-quotient pipeline
# ---------------------------------------------------------------------------


def polarization_identity_holds(h, kvec):
    """polarize(mixed symbolic cover power) equals the layered cover ideal."""
    sym = cover_ideal_symbolic(h, kvec)
    pol, _ = polarize(sym)
    hk, _, _, _ = build_H_k(h, kvec)
    layered = cover_ideal(hk)
    a = {frozenset(d.items()) for d in pol.gen_dicts()}
    b = {frozenset(d.items()) for d in layered.gen_dicts()}
    return a == b


def cover_power_pipeline(delta, k, fields=("Q", "GF(2)")):
    """The full route: decomposition of H(k), shelling, layered linear
    quotients, depolarized order for J^k, componentwise verdicts."""
    h = hypergraph_of(delta)
    hk, _, _, _ = build_H_k(h, (k,) * delta.t)
    node = is_vertex_decomposable_hypergraph(hk)
    result = {"vd": node is not None}
    if node is None:
        return result
    verify_vd_tree(hk, node)
    shelling = shelling_from_vd(hk, node)
    layered = cover_ideal(hk)
    lq = shelling_to_linear_quotients(hk, shelling)
    result["layered_lq"] = has_linear_quotients(layered, lq.order)
    base = power(cover_ideal(h), k)
    pol, pmap = polarize(base)
    name_pos = {v: i for i, v in enumerate(pol.variables)}
    converted = []
    for vec in lq.order:
        out = [0] * len(pol.variables)
        for pos, e in enumerate(vec):
            if e:
                out[name_pos[layered.variables[pos]]] = e
        converted.append(tuple(out))
    base_order = depolarize_order(converted, pmap)
    result["depolarized_bijective"] = sorted(base_order) == sorted(base.gens)
    result["base_lq"] = has_linear_quotients(base, base_order)
    result["componentwise"] = {
        f: is_componentwise_linear(base, f, lq_order=base_order) for f in fields
    }
    result["order"] = base_order
    result["ideal"] = base
    return result


def suite_theorem1(k_max=3, corpus_vertices=5):
    out = []
    for name, delta in _named_trees():
        h = hypergraph_of(delta)
        j = cover_ideal(h)
        for k in range(1, k_max + 1):
            eq = power(j, k) == symbolic_power(j, k)
            _check(out, f"theorem1/{name}/k{k}/symbolic-equals-power", eq)
            _check(
                out,
                f"theorem1/{name}/k{k}/polarization-identity",
                polarization_identity_holds(h, (k,) * delta.t),
            )
            res = cover_power_pipeline(delta, k)
            good = (
                res.get("vd")
                and res.get("layered_lq")
                and res.get("depolarized_bijective")
                and res.get("base_lq")
                and all(res.get("componentwise", {}).values())
            )
            _check(out, f"theorem1/{name}/k{k}/linear-quotients", good, res.get("vd"))
    for idx, delta in enumerate(enumerate_trees(corpus_vertices, 3)):
        res = cover_power_pipeline(delta, 2)
        good = (
            res.get("vd")
            and res.get("base_lq")
            and all(res.get("componentwise", {}).values())
        )
        _check(
            out,
            f"theorem1/corpus-{idx:03d}/k2/linear-quotients",
            good,
            [delta.label_facets()],
        )
    return sorted(out, key=lambda c: c["id"])


def suite_theorem2(max_vertices=6, max_facets=3):
    out = []
    for idx, delta in enumerate(enumerate_trees(max_vertices, max_facets)):
        j = cover_ideal(hypergraph_of(delta))
        v1 = has_linear_resolution(j, "Q", "betti")
        v2 = has_linear_resolution(power(j, 2), "Q", "betti")
        v3 = has_linear_resolution(power(j, 3), "Q", "betti")
        v4 = is_cohen_macaulay_facet_ring(delta, "Q")
        v5 = is_unmixed(hypergraph_of(delta))
        v6 = is_grafted(delta)
        verdicts = (v1, v2, v3, v4, v5, v6)
        _check(
            out,
            f"theorem2/tree-{idx:03d}",
            len(set(verdicts)) == 1,
            f"facets={delta.label_facets()} verdicts={verdicts}",
        )
    return sorted(out, key=lambda c: c["id"])


def suite_regularity():
    out = []
    for name, delta in [("tree_a", fixtures.tree_a()), ("tree_b", fixtures.tree_b())]:
        j = cover_ideal(hypergraph_of(delta))
        d = max(j.degrees())
        for s in (1, 2):
            js = j if s == 1 else power(j, s)
            reg = regularity(js, "Q")
            _check(
                out,
                f"regularity/{name}/s{s}",
                reg == s * d,
                f"reg={reg}, s*deg={s * d}",
            )
    return sorted(out, key=lambda c: c["id"])


def suite_counterexamples():
    out = []
    sturm = fixtures.sturmfels_ideal()
    for fld in ("Q", "GF(2)"):
        _check(
            out,
            f"counterexamples/sturmfels-linear-{fld}",
            has_linear_resolution(sturm, fld, "betti"),
        )
        _check(
            out,
            f"counterexamples/sturmfels-square-nonlinear-{fld}",
            not has_linear_resolution(power(sturm, 2), fld, "betti"),
        )
    terai = fixtures.terai_ideal()
    _check(
        out,
        "counterexamples/terai-linear-Q",
        has_linear_resolution(terai, "Q", "betti"),
    )
    _check(
        out,
        "counterexamples/terai-nonlinear-GF(2)",
        not has_linear_resolution(terai, "GF(2)", "betti"),
    )
    return sorted(out, key=lambda c: c["id"])


# ---------------------------------------------------------------------------
# construction-lemma property checks
# ---------------------------------------------------------------------------


def _all_constructible_sets(state):
    run = state.run
    budgets = k_budgets(state)
    floor = {}
    for u, c, p in state.history:
        if p == "D" and u in state.B and u not in state.A:
            floor[u] = max(floor.get(u, 0), c)
    sets = []
    for i, facet in enumerate(run.delta.facets):
        rest = sorted(set(facet) - state.A)
        if not rest:
            continue
        b = len(rest)
        k_i = run.kvec[i]
        for f in product(range(1, k_i + 1), repeat=b):
            if sum(f) > budgets[i] + b - 1:
                continue
            if any(
                v in floor and fp <= floor[v] for v, fp in zip(rest, f)
            ):
                continue
            sets.append(tuple(zip(rest, f)))
    return sets


def check_state_properties(state, incremental_budgets):
    """The per-step lemma properties; returns a list of violation strings."""
    bad = []
    run = state.run
    budgets = k_budgets(state)
    if tuple(incremental_budgets) != tuple(budgets):
        bad.append(f"budget mismatch at s={state.s}")
    pairs_of = {
        e: frozenset((run.base_of[v], run.layer_of[v]) for v in e)
        for e in state.hyper.edges
    }
    for e, pairs in pairs_of.items():
        ok, _ = is_constructible(state, pairs, budgets)
        if not ok:
            bad.append(f"edge {e} not constructible at s={state.s}")
    edge_sets = set(pairs_of.values())
    for cand in _all_constructible_sets(state):
        cs = frozenset(cand)
        if not any(es <= cs for es in edge_sets):
            bad.append(f"constructible {cand} holds no edge at s={state.s}")
    sel = selection(state)
    if sel is not None:
        _, u, c = sel
        stripped = state.stripped()
        vid = run.vid_of[(u, c)]
        if vid not in stripped.present:
            bad.append(f"selected vertex not live at s={state.s}")
        elif not hypergraph_shedding_vertex(stripped, vid):
            bad.append(f"selected vertex not shedding at s={state.s}")
        for uq, cq, pq in state.history:
            if pq == "D" and uq == u and c <= cq:
                bad.append(f"layer monotonicity broken at s={state.s}")
    return bad


def _incremental_next(run, budgets, u, c, letter):
    out = list(budgets)
    if letter == "L":
        for i, facet in enumerate(run.delta.facets):
            if u in facet:
                out[i] = max(0, out[i] - (c - 1))
    return tuple(out)


def run_with_properties(delta, kvec, letters):
    """Walk one string, checking every lemma property at every step."""
    run = prepare_run(delta, kvec)
    state = initial_state(run)
    inc = tuple(run.kvec)
    bad = check_state_properties(state, inc)
    steps = 0
    while steps < len(letters):
        sel = selection(state)
        if sel is None:
            state = advance(state, "L")  # marks termination
            break
        _, u, c = sel
        inc = _incremental_next(run, inc, u, c, letters[steps])
        state = advance(state, letters[steps])
        steps += 1
        bad.extend(check_state_properties(state, inc))
    if selection(state) is None and not state.terminated:
        from dataclasses import replace

        state = replace(state, terminated=True)
    if state.terminated:
        try:
            terminal_decomposition(state)
        except Exception as exc:  # disjointness or block mismatch
            bad.append(f"terminal decomposition: {exc}")
    return bad


def suite_construction_lemmas(string_length=6, k_bound=2):
    out = []
    strings = ["".join(s) for s in product("LD", repeat=string_length)]
    for name, delta in [("tree_a", fixtures.tree_a()), ("tree_b", fixtures.tree_b())]:
        violations = []
        for kvec in _k_vectors(delta.t, k_bound):
            for letters in strings:
                violations.extend(run_with_properties(delta, kvec, letters))
        _check(
            out,
            f"construction-lemmas/{name}",
            not violations,
            violations[:3],
        )
    return sorted(out, key=lambda c: c["id"])


_SUITE_FUNCS = {
    "examples": suite_examples,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "regularity": suite_regularity,
    "construction-lemmas": suite_construction_lemmas,
    "counterexamples": suite_counterexamples,
}


def run_suite(name):
    """Run one suite (or 'all'); returns (checks, elapsed_seconds)."""
    if name == "all":
        checks = []
        t0 = time.time()
        for suite in SUITES:
            checks.extend(_SUITE_FUNCS[suite]())
        return sorted(checks, key=lambda c: c["id"]), time.time() - t0
    if name not in _SUITE_FUNCS:
        raise UnknownSuite(
            f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all"
        )
    t0 = time.time()
    checks = _SUITE_FUNCS[name]()
    return checks, time.time() - t0
