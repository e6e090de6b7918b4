"""Simplicial complexes and simple hypergraphs.

Structural operations: faces, links, deletions, leaves, good leaves and
good-leaf orders, tree/forest detection, grafting, vertex covers,
independence complexes, and hypergraph contraction/deletion.

Conventions
- vertices are dense integer ids into a label table ("x1", "x2", ...);
- faces/edges are sorted duplicate-free tuples of ids;
- constructors preserve the facet/edge order they are given (fixture
  indexing is meaningful), while operations return canonically sorted
  results so that every derived object is deterministic.
"""

from dataclasses import dataclass
from itertools import combinations, permutations

from . import _kernels
from .errors import (
    FaceNotInComplex,
    InputError,
    NotAGoodLeaf,
    SizeLimitExceeded,
    VertexNotPresent,
)


def default_labels(n):
    return tuple(f"x{i + 1}" for i in range(n))


def _as_face(vertices):
    face = tuple(sorted(set(vertices)))
    if any(not isinstance(v, int) or v < 0 for v in face):
        raise InputError(f"bad vertex ids in face {vertices!r}")
    return face


def _is_antichain(sets):
    for a, b in combinations(sets, 2):
        if a <= b or b <= a:
            return False
    return True


def _max_antichain(faces):
    """Inclusion-maximal elements, sorted lexicographically."""
    sets = [frozenset(f) for f in set(faces)]
    keep = [
        f
        for f in sets
        if not any(f < g for g in sets)
    ]
    return tuple(sorted(tuple(sorted(f)) for f in keep))


@dataclass(frozen=True)
class SimplicialComplex:
    """Facet list over a label table; facets must form an antichain."""

    labels: tuple
    facets: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        facets = tuple(_as_face(f) for f in self.facets)
        object.__setattr__(self, "facets", facets)
        if not facets:
            raise InputError("a simplicial complex needs at least one facet")
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InputError("duplicate vertex labels")
        for f in facets:
            if f and f[-1] >= n:
                raise InputError(f"facet {f} exceeds vertex count {n}")
        if len(set(facets)) != len(facets) or not _is_antichain(
            [frozenset(f) for f in facets]
        ):
            raise InputError("facets must form an antichain")

    @property
    def vertex_count(self):
        return len(self.labels)

    @property
    def t(self):
        return len(self.facets)

    def label_facets(self):
        return [tuple(self.labels[v] for v in f) for f in self.facets]

    def faces(self):
        """All faces, as a set of tuples (the empty face included)."""
        out = {()}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return out

    def is_face(self, face):
        face = _as_face(face)
        fs = frozenset(face)
        return any(fs <= frozenset(g) for g in self.facets)

    def used_vertices(self):
        out = set()
        for f in self.facets:
            out.update(f)
        return out


def complex_from_labels(facets, labels=None):
    """Build a complex from label-valued facets, inferring the label table."""
    if labels is None:
        seen = sorted({v for f in facets for v in f}, key=_label_key)
        labels = tuple(seen)
    index = {lab: i for i, lab in enumerate(labels)}
    return SimplicialComplex(labels, tuple(tuple(index[v] for v in f) for f in facets))


def _label_key(lab):
    # natural order for "x12" / "x3_2" style labels, falling back to string
    body = lab[1:] if lab[:1] == "x" else lab
    parts = body.split("_")
    try:
        return (0, tuple(int(p) for p in parts))
    except ValueError:
        return (1, (lab,))


def link(delta, face):
    """Faces G disjoint from ``face`` with G ∪ face in the complex."""
    face = _as_face(face)
    fs = frozenset(face)
    if not delta.is_face(face):
        raise FaceNotInComplex(f"{face} is not a face")
    cands = [
        tuple(sorted(frozenset(h) - fs)) for h in delta.facets if fs <= frozenset(h)
    ]
    return SimplicialComplex(delta.labels, _max_antichain(cands))


def deletion(delta, face):
    """Faces disjoint from ``face``."""
    face = _as_face(face)
    fs = frozenset(face)
    if not delta.is_face(face):
        raise FaceNotInComplex(f"{face} is not a face")
    cands = [tuple(sorted(frozenset(h) - fs)) for h in delta.facets]
    return SimplicialComplex(delta.labels, _max_antichain(cands))


def subcollection(delta, facet_indices):
    facets = tuple(delta.facets[i] for i in facet_indices)
    return SimplicialComplex(delta.labels, facets)


# ---------------------------------------------------------------------------
# leaves, good leaves, good-leaf orders
# ---------------------------------------------------------------------------


def _branch_of(facets, f):
    """Smallest-index witnessing branch of facet ``f``, or None."""
    F = frozenset(facets[f])
    inters = [F & frozenset(g) for i, g in enumerate(facets) if i != f]
    union = frozenset().union(*inters) if inters else frozenset()
    for i, g in enumerate(facets):
        if i != f and F & frozenset(g) == union:
            return i
    return None


def find_leaves(delta):
    """All leaf facets with one witnessing branch each (None for t = 1)."""
    if delta.t == 1:
        return [(0, None)]
    out = []
    for f in range(delta.t):
        b = _branch_of(delta.facets, f)
        if b is not None:
            out.append((f, b))
    return out


@dataclass(frozen=True)
class GoodLeafCertificate:
    leaf: int
    chain: tuple  # facet indices ordered by weakly decreasing intersection
    intersections: tuple  # the intersections along the chain


def good_leaf_certificate(delta, f):
    """Chain certificate if facet ``f`` is a good leaf, else None."""
    if not 0 <= f < delta.t:
        raise InputError(f"no facet {f}")
    F = frozenset(delta.facets[f])
    others = [(i, F & frozenset(delta.facets[i])) for i in range(delta.t) if i != f]
    others.sort(key=lambda p: (-len(p[1]), p[0]))
    for (_, a), (_, b) in zip(others, others[1:]):
        if not b <= a:
            return None
    return GoodLeafCertificate(
        leaf=f,
        chain=tuple(i for i, _ in others),
        intersections=tuple(tuple(sorted(s)) for _, s in others),
    )


def good_vertex_sequences(delta, f):
    """All good-vertex sequences of good leaf ``f``, canonical one first.

    The sequence linearly orders the largest intersection so that, for each
    nonempty intersection in the chain, the vertices of that intersection
    form a prefix: innermost shell first, then each enclosing shell in any
    order within the shell.
    """
    cert = good_leaf_certificate(delta, f)
    if cert is None:
        raise NotAGoodLeaf(f"facet {f} is not a good leaf")
    shells = []
    for s in cert.intersections:
        if s and (not shells or set(s) != set(shells[-1])):
            shells.append(s)
    shells.reverse()  # innermost first
    if not shells:
        return [()]
    seqs = [()]
    prev = set()
    for shell in shells:
        new = sorted(set(shell) - prev)
        seqs = [s + p for s in seqs for p in permutations(new)]
        prev = set(shell)
    canonical = ()
    prev = set()
    for shell in shells:
        canonical += tuple(sorted(set(shell) - prev))
        prev = set(shell)
    seqs.sort()
    seqs.remove(canonical)
    return [canonical] + seqs


def good_leaf_order(delta):
    """Greedy good-leaf order (smallest facet index first), or None.

    Succeeds exactly on forests: any subcollection of a forest is a forest
    and every forest has a good leaf, so the greedy choice never dead-ends.
    """
    remaining = list(range(delta.t))
    order = []
    while len(remaining) > 1:
        pick = None
        for f in remaining:
            sub = subcollection(delta, remaining)
            if good_leaf_certificate(sub, remaining.index(f)) is not None:
                pick = f
                break
        if pick is None:
            return None
        order.append(pick)
        remaining.remove(pick)
    order.extend(remaining)
    return tuple(order)


def is_good_leaf_order(delta, order=None):
    """Check that ``order`` (default: the given facet order) is a good leaf order."""
    order = tuple(order) if order is not None else tuple(range(delta.t))
    if sorted(order) != list(range(delta.t)):
        return False
    for i in range(delta.t - 1):
        tail = order[i:]
        sub = subcollection(delta, tail)
        if good_leaf_certificate(sub, 0) is None:
            return False
    return True


def is_connected(delta):
    t = delta.t
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(t):
            if j not in seen and set(delta.facets[i]) & set(delta.facets[j]):
                seen.add(j)
                frontier.append(j)
    return len(seen) == t


def is_forest(delta):
    return good_leaf_order(delta) is not None


def is_simplicial_tree(delta):
    return is_connected(delta) and is_forest(delta)


def has_leaf(delta):
    return bool(find_leaves(delta))


# ---------------------------------------------------------------------------
# grafting
# ---------------------------------------------------------------------------


def _joints(facets):
    """Facets that are nonempty branches of some leaf."""
    out = set()
    if len(facets) == 1:
        return out
    for f in range(len(facets)):
        F = frozenset(facets[f])
        inters = [F & frozenset(g) for i, g in enumerate(facets) if i != f]
        union = frozenset().union(*inters)
        if not union:
            continue
        for i, g in enumerate(facets):
            if i != f and F & frozenset(g) == union:
                out.add(i)
    return out


def is_grafted(delta, max_facets=12):
    """Exhaustive search for a grafting decomposition.

    A complex is grafted when its facet set splits into pairwise-disjoint
    leaf simplices covering every vertex of the remaining subcollection,
    with the property persisting after removing any joint of the complex.
    """
    if delta.t > max_facets:
        raise SizeLimitExceeded(f"{delta.t} facets exceeds bound {max_facets}")
    facets = delta.facets
    all_idx = frozenset(range(delta.t))
    memo = {}

    def check(sub):
        if sub in memo:
            return memo[sub]
        memo[sub] = False  # cycle guard; recursion only shrinks sub
        subl = sorted(sub)
        subfacets = [facets[i] for i in subl]
        leaves = set()
        if len(subl) == 1:
            leaves = {subl[0]}
        else:
            for pos, i in enumerate(subl):
                if _branch_of(subfacets, pos) is not None:
                    leaves.add(i)
        joint_pos = _joints(subfacets)
        joints = {subl[p] for p in joint_pos}
        ok = False
        leaf_list = sorted(leaves)
        for r in range(len(leaf_list), -1, -1):
            for S in combinations(leaf_list, r):
                T = sub - set(S)
                sets = [set(facets[i]) for i in S]
                if any(a & b for a, b in combinations(sets, 2)):
                    continue
                covered = set().union(*sets) if sets else set()
                if any(set(facets[i]) - covered for i in T):
                    continue
                if all(check(sub - {g}) for g in T & joints):
                    ok = True
                    break
            if ok:
                break
        memo[sub] = ok
        return ok

    return check(all_idx)


# ---------------------------------------------------------------------------
# hypergraphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypergraph:
    """Simple hypergraph: explicit vertex set (isolated vertices allowed)
    plus an antichain of nonempty edges over a stable ambient label table."""

    labels: tuple
    present: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "present", tuple(sorted(set(self.present))))
        # edge order is preserved: budget vectors are indexed by it
        edges = tuple(_as_face(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate vertex labels")
        pres = set(self.present)
        if pres and max(pres) >= len(self.labels):
            raise InputError("present vertex out of label range")
        for e in edges:
            if not e:
                raise InputError("edges must be nonempty")
            if not set(e) <= pres:
                raise InputError(f"edge {e} not within the vertex set")
        if len(set(edges)) != len(edges) or not _is_antichain(
            [frozenset(e) for e in edges]
        ):
            raise InputError("edges must form an antichain (simple hypergraph)")

    def label_edges(self):
        return [tuple(self.labels[v] for v in e) for e in self.edges]

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def edge_label_set(self):
        return {tuple(self.labels[v] for v in e) for e in self.edges}


def hypergraph_from_labels(edges, vertices=None):
    if vertices is None:
        vertices = sorted({v for e in edges for v in e}, key=_label_key)
    labels = tuple(vertices)
    index = {lab: i for i, lab in enumerate(labels)}
    return Hypergraph(
        labels,
        tuple(range(len(labels))),
        tuple(tuple(index[v] for v in e) for e in edges),
    )


def hypergraph_of(delta):
    """The hypergraph whose edge set is the facet set of the complex."""
    return Hypergraph(delta.labels, tuple(range(len(delta.labels))), delta.facets)


def isolated_vertices(h):
    """Vertices in a trivial edge, or in no edge at all."""
    in_edge = set()
    trivial = set()
    for e in h.edges:
        in_edge.update(e)
        if len(e) == 1:
            trivial.add(e[0])
    return {v for v in h.present if v not in in_edge} | trivial


def is_isolated_hypergraph(h):
    return all(v in isolated_vertices(h) for v in h.present)


def strip_isolated(h):
    """Delete every isolated vertex (trivial edges disappear with them)."""
    iso = isolated_vertices(h)
    present = tuple(v for v in h.present if v not in iso)
    edges = tuple(sorted(e for e in h.edges if not set(e) & iso))
    return Hypergraph(h.labels, present, edges)


def contract(h, v):
    """Contraction H/v: the hypergraph of the colon ideal I(H) : x_v."""
    if v not in h.present:
        raise VertexNotPresent(f"vertex {v} not present")
    if (v,) in h.edges:
        raise InputError("cannot contract a vertex carrying a trivial edge")
    e_prime = [tuple(u for u in e if u != v) for e in h.edges if v in e]
    prime_sets = [frozenset(e) for e in e_prime]
    e_rest = [
        e
        for e in h.edges
        if v not in e and not any(p <= frozenset(e) for p in prime_sets)
    ]
    present = tuple(u for u in h.present if u != v)
    return Hypergraph(h.labels, present, tuple(sorted(e_prime + e_rest)))


def delete_vertex(h, v):
    """Deletion H∖v: drop the vertex and every edge through it."""
    if v not in h.present:
        raise VertexNotPresent(f"vertex {v} not present")
    present = tuple(u for u in h.present if u != v)
    edges = tuple(sorted(e for e in h.edges if v not in e))
    return Hypergraph(h.labels, present, edges)


def _present_masks(h):
    pos = {v: i for i, v in enumerate(h.present)}
    masks = [sum(1 << pos[v] for v in e) for e in h.edges]
    return pos, masks


def minimal_vertex_covers(h):
    """All inclusion-minimal transversals, lexicographically sorted."""
    if not h.edges:
        return [()]
    pos, masks = _present_masks(h)
    back = list(h.present)
    n = len(back)
    if n <= 64:
        import numpy as np

        res = _kernels.minimal_transversals_u64(np.array(masks, np.uint64))
        masks_out = [int(x) for x in res]
    else:
        masks_out = _kernels.minimal_transversals_pyint(masks)
    covers = [
        tuple(back[i] for i in range(n) if m >> i & 1) for m in masks_out
    ]
    return sorted(covers)


def is_unmixed(h):
    sizes = {len(c) for c in minimal_vertex_covers(h)}
    return len(sizes) <= 1


def independence_complex(h):
    """Faces are the independent sets; facets are complements of minimal covers."""
    covers = minimal_vertex_covers(h)
    labels = tuple(h.labels[v] for v in h.present)
    pos = {v: i for i, v in enumerate(h.present)}
    facets = _max_antichain(
        [tuple(pos[v] for v in h.present if v not in set(c)) for c in covers]
    )
    return SimplicialComplex(labels, facets)


def maximal_independent_sets(h):
    """Complements of minimal covers, as vertex tuples of ``h``."""
    return sorted(
        tuple(v for v in h.present if v not in set(c))
        for c in minimal_vertex_covers(h)
    )


def is_independent(h, subset):
    s = set(subset)
    return not any(set(e) <= s for e in h.edges)
