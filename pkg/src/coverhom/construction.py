"""Layered hypergraphs from facet budgets and their contraction/deletion
state machine.

``build_F_k`` expands one facet into a block of layered edges bounded by
|f| <= k + b - 1; ``build_H_k`` glues the blocks.  ``ConstructionState``
then walks the recursive triplet sequence: at each step a good vertex of
the active facet is contracted (L) or deleted (D) at its lowest live
layer, until no facet admits a constructible edge any more.  The
stationary state decomposes into disjoint shifted blocks.
"""

from dataclasses import dataclass, replace
from itertools import product

from .complexes import (
    Hypergraph,
    contract,
    delete_vertex,
    good_leaf_certificate,
    good_vertex_sequences,
    is_good_leaf_order,
    is_simplicial_tree,
    strip_isolated,
    subcollection,
)
from .errors import (
    InconsistentState,
    DecompositionMismatch,
    InputError,
    KVectorLengthMismatch,
    NotAGoodLeafOrder,
    NotATree,
    NotTerminated,
    StringTooShort,
)
from .ideals import polarized_label


def layer_tuples(k, b):
    """All layer vectors f in [k]^b with |f| <= k + b - 1."""
    if k <= 0:
        return []
    return [f for f in product(range(1, k + 1), repeat=b) if sum(f) <= k + b - 1]


def build_F_k(base_labels, k):
    """The block hypergraph of one edge; k = 0 gives the isolated block."""
    base_labels = tuple(base_labels)
    if not base_labels:
        raise InputError("empty facet")
    b = len(base_labels)
    layers = max(k, 1)
    labels = tuple(
        polarized_label(lab, f) for lab in base_labels for f in range(1, layers + 1)
    )
    idx = {
        (p, f): p * layers + (f - 1)
        for p in range(b)
        for f in range(1, layers + 1)
    }
    if k == 0:
        present = tuple(idx[(p, 1)] for p in range(b))
        return Hypergraph(labels, present, ())
    edges = tuple(
        tuple(sorted(idx[(p, f[p])] for p in range(b))) for f in layer_tuples(k, b)
    )
    return Hypergraph(labels, tuple(range(len(labels))), edges)


def build_H_k(h, kvec):
    """Union of the per-edge blocks F_i(k_i) of a hypergraph."""
    kvec = tuple(int(k) for k in kvec)
    if len(kvec) != len(h.edges):
        raise KVectorLengthMismatch(
            f"{len(kvec)} budgets for {len(h.edges)} edges"
        )
    if any(k < 0 for k in kvec):
        raise InputError("budgets must be nonnegative")
    max_layer = {}
    for e, k in zip(h.edges, kvec):
        for v in e:
            max_layer[v] = max(max_layer.get(v, 0), max(k, 1))
    bases = sorted(max_layer)
    labels = []
    vid_of = {}
    for v in bases:
        for f in range(1, max_layer[v] + 1):
            vid_of[(v, f)] = len(labels)
            labels.append(polarized_label(h.labels[v], f))
    present = set()
    edges = set()
    for e, k in zip(h.edges, kvec):
        if k == 0:
            present.update(vid_of[(v, 1)] for v in e)
            continue
        present.update(vid_of[(v, f)] for v in e for f in range(1, k + 1))
        for f in layer_tuples(k, len(e)):
            edges.add(tuple(sorted(vid_of[(v, fp)] for v, fp in zip(e, f))))
    hk = Hypergraph(tuple(labels), tuple(sorted(present)), tuple(sorted(edges)))
    base_of = {}
    layer_of = {}
    for (v, f), vid in vid_of.items():
        base_of[vid] = v
        layer_of[vid] = f
    return hk, vid_of, base_of, layer_of


@dataclass(frozen=True)
class ConstructionRun:
    """Immutable context shared by every state of one construction run."""

    delta: object
    kvec: tuple
    hk: Hypergraph
    vid_of: dict
    base_of: dict
    layer_of: dict
    branches: tuple  # smallest-index branch of F_i within <F_i..F_t>
    sequences: tuple  # canonical good-vertex sequence of F_i within <F_i..F_t>


def prepare_run(delta, kvec):
    """Validate the tree and precompute branches and good-vertex sequences.

    The facet order of ``delta`` must itself be a good leaf order, so that
    the budget vector aligns with the printed facet indexing.
    """
    if not is_simplicial_tree(delta):
        raise NotATree("the construction needs a simplicial tree")
    if not is_good_leaf_order(delta):
        raise NotAGoodLeafOrder(
            "facet order must be a good leaf order; reorder the fixture"
        )
    kvec = tuple(int(k) for k in kvec)
    if len(kvec) != delta.t:
        raise KVectorLengthMismatch(f"{len(kvec)} budgets for {delta.t} facets")
    from .complexes import hypergraph_of

    hk, vid_of, base_of, layer_of = build_H_k(hypergraph_of(delta), kvec)
    branches = []
    sequences = []
    for i in range(delta.t - 1):
        sub = subcollection(delta, range(i, delta.t))
        cert = good_leaf_certificate(sub, 0)
        if cert is None:  # pragma: no cover - excluded by the order check
            raise NotAGoodLeafOrder(f"facet {i} is not a good leaf of its tail")
        inters = [frozenset(s) for s in cert.intersections]
        top = inters[0] if inters else frozenset()
        branch = None
        for j, s in zip(cert.chain, inters):
            if frozenset(s) == top:
                # chain indices live in the tail subcollection <F_i..F_t>
                orig = i + j
                branch = min(branch, orig) if branch is not None else orig
        branches.append(branch)
        sequences.append(good_vertex_sequences(sub, 0)[0])
    return ConstructionRun(
        delta=delta,
        kvec=kvec,
        hk=hk,
        vid_of=vid_of,
        base_of=base_of,
        layer_of=layer_of,
        branches=tuple(branches),
        sequences=tuple(sequences),
    )


@dataclass(frozen=True)
class ConstructionState:
    run: ConstructionRun
    s: int
    hyper: Hypergraph
    A: frozenset
    B: frozenset
    history: tuple  # (base vertex, layer, 'L' or 'D') per step
    terminated: bool

    def stripped(self):
        return strip_isolated(self.hyper)

    def k_budgets(self):
        return k_budgets(self)


def initial_state(run):
    return ConstructionState(
        run=run,
        s=0,
        hyper=run.hk,
        A=frozenset(),
        B=frozenset(),
        history=(),
        terminated=False,
    )


def k_budgets(state):
    """Per-facet budgets k_i^(s) = max(0, k_i - d_i^(s)).

    The offset d_i^(s) subtracts one per contracted vertex of F_i and adds
    back the layer at which each was contracted (deletion steps never move
    budgets; the stationary worked example pins this reading down).
    """
    run = state.run
    out = []
    for i, f in enumerate(run.delta.facets):
        fs = set(f)
        inter = fs & state.A
        d = -len(inter)
        for u, c, p in state.history:
            if p == "L" and u in fs:
                d += c
        out.append(max(0, run.kvec[i] - d))
    return tuple(out)


def _deleted_layer_floor(state):
    """For each base vertex in B∖A, the largest layer it was deleted at."""
    floor = {}
    for u, c, p in state.history:
        if p == "D" and u in state.B and u not in state.A:
            floor[u] = max(floor.get(u, 0), c)
    return floor


def constructible_witnesses(state, layered_set, budgets=None):
    """All facet indices for which the layered set is constructible.

    ``layered_set`` is an iterable of (base vertex, layer) pairs.  Distinct
    facets can leave the same residual support, so an edge may carry
    several witnesses.
    """
    run = state.run
    pairs = sorted(set(layered_set))
    if not pairs:
        return []
    bases = [b for b, _ in pairs]
    if len(set(bases)) != len(bases):
        return []
    base_set = set(bases)
    b = len(pairs)
    total = sum(f for _, f in pairs)
    floor = _deleted_layer_floor(state)
    budgets = budgets if budgets is not None else k_budgets(state)
    out = []
    for i, facet in enumerate(run.delta.facets):
        if set(facet) - state.A != base_set:
            continue
        k_i = run.kvec[i]
        if any(f > k_i for _, f in pairs):
            continue
        if any(v in floor and f <= floor[v] for v, f in pairs):
            continue
        if total <= budgets[i] + b - 1:
            out.append(i)
    return out


def is_constructible(state, layered_set, budgets=None):
    """Constructibility test; returns (bool, smallest witnessing facet)."""
    witnesses = constructible_witnesses(state, layered_set, budgets)
    if witnesses:
        return True, witnesses[0]
    return False, None


def _edge_pairs(state, edge):
    run = state.run
    return [(run.base_of[v], run.layer_of[v]) for v in edge]


def compute_U(state):
    """Facet indices (over [t-1]) that can still host a step."""
    run = state.run
    t = run.delta.t
    stripped = state.stripped()
    budgets = k_budgets(state)
    witnessed = set()
    for e in stripped.edges:
        witnessed.update(constructible_witnesses(state, _edge_pairs(state, e), budgets))
    out = set()
    for i in range(t - 1):
        if i not in witnessed:
            continue
        gi = run.branches[i]
        inter = set(run.delta.facets[i]) & set(run.delta.facets[gi])
        if not inter <= state.A:
            out.add(i)
    return out


def selection(state):
    """The (facet, base vertex, layer) the next step would use, or None."""
    run = state.run
    if state.terminated or run.delta.t == 1:
        return None
    if state.s == 0:
        ell = 0
    else:
        u_set = compute_U(state)
        if not u_set:
            return None
        ell = min(u_set)
    seq = run.sequences[ell]
    live = {
        (run.base_of[v], run.layer_of[v]) for v in state.stripped().present
    }
    u = next((w for w in seq if w not in state.A), None)
    if u is None:
        if state.s == 0:
            return None
        raise InconsistentState("no good vertex outside A for the active facet")
    layers = sorted(c for (b2, c) in live if b2 == u)
    if not layers:
        if state.s == 0:
            return None
        raise InconsistentState("selected vertex has no live layer")
    return ell, u, layers[0]


def advance(state, letter):
    """One step of the recursion; a terminated state is a fixed point."""
    if letter not in ("L", "D"):
        raise InputError(f"step letter must be L or D, got {letter!r}")
    if state.terminated:
        return state
    sel = selection(state)
    if sel is None:
        return replace(state, terminated=True)
    _, u, c = sel
    vid = state.run.vid_of[(u, c)]
    if letter == "L":
        hyper = contract(state.hyper, vid)
        a, b = state.A | {u}, state.B
    else:
        hyper = delete_vertex(state.hyper, vid)
        a, b = state.A, state.B | {u}
    return ConstructionState(
        run=state.run,
        s=state.s + 1,
        hyper=hyper,
        A=a,
        B=b,
        history=state.history + ((u, c, letter),),
        terminated=False,
    )


def run_string(run, letters):
    """All states along a letter string, stopping at the stationary state.

    Raises StringTooShort when the string ends before termination.
    """
    state = initial_state(run)
    states = [state]
    while True:
        if selection(state) is None:
            states[-1] = replace(state, terminated=True)
            return states, state.s
        if state.s >= len(letters):
            raise StringTooShort(
                f"need step letter P_{state.s + 1}; string has {len(letters)}"
            )
        state = advance(state, letters[state.s])
        states.append(state)


def alpha(delta, kvec, letters):
    """Smallest s with U_s empty, plus the stationary state."""
    run = prepare_run(delta, kvec)
    states, a = run_string(run, letters)
    return a, states[-1]


def terminal_decomposition(state):
    """Blocks (facet index, reduced budget) with the shift isomorphism checked."""
    if not state.terminated:
        raise NotTerminated("state is not stationary")
    run = state.run
    stripped = state.stripped()
    budgets = k_budgets(state)
    live = {}
    for v in stripped.present:
        b, c = run.base_of[v], run.layer_of[v]
        live.setdefault(b, set()).add(c)
    winners = set()
    for e in stripped.edges:
        winners.update(constructible_witnesses(state, _edge_pairs(state, e), budgets))
    blocks = []
    supports = []
    shifted_edges = set()
    for i in sorted(winners):
        rest = sorted(set(run.delta.facets[i]) - state.A)
        offsets = {v: min(live[v]) - 1 for v in rest}
        dbar = sum(offsets.values())
        kbar = max(0, budgets[i] - dbar)
        blocks.append((i, kbar))
        supports.append(set(rest))
        for f in layer_tuples(kbar, len(rest)):
            shifted_edges.add(
                frozenset((v, fp + offsets[v]) for v, fp in zip(rest, f))
            )
    for x in range(len(supports)):
        for y in range(x + 1, len(supports)):
            if supports[x] & supports[y]:
                raise DecompositionMismatch(
                    "terminal block supports are not disjoint"
                )
    actual = {frozenset(_edge_pairs(state, e)) for e in stripped.edges}
    if actual != shifted_edges:
        raise DecompositionMismatch(
            "stationary hypergraph is not the disjoint union of shifted blocks"
        )
    return blocks


def trace_records(states, letters):
    """Per-step JSON-friendly records for the --trace output."""
    out = []
    for st in states:
        run = st.run
        labels = run.delta.labels
        stripped = st.stripped()
        rec = {
            "s": st.s,
            "P": letters[st.s - 1] if st.s >= 1 else None,
            "u": labels[st.history[-1][0]] if st.history else None,
            "c": st.history[-1][1] if st.history else None,
            "A": sorted(labels[v] for v in st.A),
            "B": sorted(labels[v] for v in st.B),
            "kBudgets": list(k_budgets(st)),
            "edges": sorted(sorted(e) for e in st.hyper.label_edges()),
            "edgesStripped": sorted(sorted(e) for e in stripped.label_edges()),
            "terminated": st.terminated,
        }
        out.append(rec)
    return out
