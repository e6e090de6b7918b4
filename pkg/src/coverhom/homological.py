"""Certificates and verdicts.

Shedding vertices, vertex decomposability (complex and hypergraph forms),
shellability, linear quotients, exact simplicial homology, Betti tables of
monomial ideals via restriction homology on the squarefree polarization,
regularity, linear resolution, componentwise linearity, and the
Cohen-Macaulay / sequentially Cohen-Macaulay verdicts through duality.

All arithmetic is exact: rationals go through integer fraction-free
elimination, finite fields through dense elimination mod p in {2, 3, 5}.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .complexes import (
    SimplicialComplex,
    contract,
    delete_vertex,
    deletion,
    hypergraph_of,
    link,
    maximal_independent_sets,
    strip_isolated,
)
from .errors import (
    InputError,
    NotAPermutation,
    NotAShelling,
    SizeLimitExceeded,
    VertexNotPresent,
)
from .ideals import (
    alexander_dual,
    component,
    cover_ideal,
    polarize,
    squarefree_ideal,
)


def parse_field(field):
    """Normalize a field spec to 'Q' or ('GF', p) with p in {2, 3, 5}."""
    if isinstance(field, tuple) and len(field) == 2 and field[0] == "GF":
        return field
    if field in ("Q", "QQ", None):
        return "Q"
    if isinstance(field, int):
        field = f"GF({field})"
    text = str(field).upper().replace(" ", "")
    if text in ("GF2", "GF(2)", "F2"):
        return ("GF", 2)
    if text in ("GF3", "GF(3)", "F3"):
        return ("GF", 3)
    if text in ("GF5", "GF(5)", "F5"):
        return ("GF", 5)
    if text in ("Q", "QQ"):
        return "Q"
    raise InputError(f"unsupported field {field!r}; use Q or GF(p), p in 2,3,5")


def field_name(field):
    fld = parse_field(field)
    return "Q" if fld == "Q" else f"GF({fld[1]})"


def _rank(mat, field):
    fld = parse_field(field)
    if fld == "Q":
        return _kernels.rank_exact(mat)
    p = fld[1]
    if p == 2:
        return _kernels.rank_gf2(mat)
    return _kernels.rank_gfp(mat, p)


# ---------------------------------------------------------------------------
# exact reduced homology
# ---------------------------------------------------------------------------

_MATRIX_CELL_CAP = 80_000_000


def _rank_gf2_boundary(lower, upper):
    """GF(2) rank of the incidence, built bit-packed (no dense matrix)."""
    if len(lower) * len(upper) > 1 << 34:
        raise SizeLimitExceeded("boundary matrix too large")
    index = {m: i for i, m in enumerate(lower)}
    words = (len(upper) + 63) // 64
    packed = np.zeros((len(lower), words), np.uint64)
    one = np.uint64(1)
    for col, face in enumerate(upper):
        rem = face
        while rem:
            v = rem & -rem
            rem ^= v
            row = index.get(face ^ v)
            if row is not None:
                packed[row, col >> 6] |= one << np.uint64(col & 63)
    return int(_kernels._rank_gf2_jit(packed, len(upper)))


def _boundary_matrix(lower, upper):
    """Signed incidence from size-k cells to present size-(k-1) cells.

    Subfaces missing from ``lower`` are skipped: after Morse reduction the
    cell set is no longer downward closed, and the restricted boundary is
    exactly the right differential.
    """
    if len(lower) * len(upper) > _MATRIX_CELL_CAP:
        raise SizeLimitExceeded("boundary matrix too large")
    index = {m: i for i, m in enumerate(lower)}
    mat = np.zeros((len(lower), len(upper)), np.int64)
    for col, face in enumerate(upper):
        rem = face
        pos = 0
        while rem:
            v = rem & -rem
            rem ^= v
            row = index.get(face ^ v)
            if row is not None:
                mat[row, col] = 1 if pos % 2 == 0 else -1
            pos += 1
    return mat


def homology_dims_from_masks(face_masks, field, collapse=True):
    """Reduced homology dimensions of a complex given by all its face masks.

    Returns a dict dim -> rank (dims -1 .. top); the empty face must be among
    the masks.  Free pairs are collapsed away first, which preserves the
    homotopy type and keeps the exact rank computations on a small core.
    """
    universe = 0
    for m in face_masks:
        universe |= int(m)
    if collapse and len(face_masks) > 8 and universe < (1 << 64):
        face_masks = _kernels.reduce_cells(
            np.array(sorted(map(int, face_masks)), np.uint64), universe
        )
        if len(face_masks) == 0:
            return {}
    by_size = {}
    for m in face_masks:
        by_size.setdefault(int(m).bit_count(), []).append(int(m))
    for group in by_size.values():
        group.sort()
    top = max(by_size)

    def dims_over(fld, needed=None):
        ranks = {0: 0}  # nothing below the empty face
        for k in range(1, top + 1):
            if needed is not None and k not in needed:
                continue
            lower = by_size.get(k - 1, [])
            upper = by_size.get(k, [])
            if not lower or not upper:
                ranks[k] = 0
                continue
            if parse_field(fld) == ("GF", 2):
                ranks[k] = _rank_gf2_boundary(lower, upper)
            else:
                ranks[k] = _rank(_boundary_matrix(lower, upper), fld)
        out = {}
        for k in range(0, top + 1):
            if needed is not None and (k not in needed or k + 1 not in needed):
                continue
            f_k = len(by_size.get(k, []))
            h = f_k - ranks.get(k, 0) - ranks.get(k + 1, 0)
            if h:
                out[k - 1] = h
        return out

    if parse_field(field) != "Q":
        return dims_over(field)
    # rational ranks are the expensive step; a GF(2) pass bounds them from
    # above dimension-wise, so zero mod-2 homology certifies zero over Q
    over_two = dims_over(("GF", 2))
    if not over_two:
        return {}
    needed = set()
    for d in over_two:
        needed.update({d + 1, d + 2})
    needed |= {0}
    out = dims_over("Q", needed=needed)
    return out


def reduced_homology(delta, field="Q"):
    """Ranks of reduced simplicial homology, indexed -1 .. dim."""
    masks = [sum(1 << v for v in f) for f in delta.faces()]
    dims = homology_dims_from_masks(masks, field)
    top = max(len(f) for f in delta.facets) - 1
    return [dims.get(d, 0) for d in range(-1, top + 1)]


# ---------------------------------------------------------------------------
# Betti tables via restriction homology on the squarefree polarization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    field: str
    entries: tuple  # sorted ((i, j, beta), ...)

    def as_dict(self):
        return {(i, j): b for i, j, b in self.entries}

    def regularity(self):
        if not self.entries:
            raise InputError("empty Betti table has no regularity")
        return max(j - i for i, j, _ in self.entries)

    def max_homological_degree(self):
        return max((i for i, _, _ in self.entries), default=0)


def _union_closure(supports):
    closure = set(supports)
    frontier = list(closure)
    while frontier:
        m = frontier.pop()
        for s in supports:
            u = m | s
            if u not in closure:
                closure.add(u)
                frontier.append(u)
    return sorted(closure)


_RESTRICTION_CACHE = {}
_RESTRICTION_CACHE_CAP = 200_000


def _restriction_homology(sigma, inside, field):
    """Homology of the restriction, cached on its remapped support pattern."""
    bits = []
    m = sigma
    while m:
        v = m & -m
        m ^= v
        bits.append(v)
    remap = {v: i for i, v in enumerate(bits)}
    canon = []
    for s in inside:
        out = 0
        mm = s
        while mm:
            v = mm & -mm
            mm ^= v
            out |= 1 << remap[v]
        canon.append(out)
    key = (len(bits), tuple(sorted(canon)), field_name(field))
    hit = _RESTRICTION_CACHE.get(key)
    if hit is not None:
        return hit
    universe = (1 << len(bits)) - 1
    faces, overflow = _kernels.enum_faces_u64(
        np.array(sorted(canon), np.uint64), universe
    )
    if overflow:
        raise SizeLimitExceeded("restricted face enumeration overflow")
    dims = homology_dims_from_masks(faces, field)
    if len(_RESTRICTION_CACHE) < _RESTRICTION_CACHE_CAP:
        _RESTRICTION_CACHE[key] = dims
    return dims


def betti_numbers(ideal, field="Q", max_polarized=22):
    """Graded Betti numbers of the ideal (not the quotient).

    Non-squarefree input is polarized first; for the squarefree ideal the
    table is assembled from reduced homology of restrictions of its
    Stanley-Reisner complex.  Restriction subsets are pruned to unions of
    generator supports, off which every multigraded Betti number vanishes.
    """
    if ideal.is_zero():
        return BettiTable(field_name(field), ())
    if ideal.is_ring():
        return BettiTable(field_name(field), ((0, 0, 1),))
    work = ideal
    if not work.is_squarefree():
        work, _ = polarize(work)
    supports = work.supports()
    used = sorted({v for s in supports for v in s})
    if len(used) > max_polarized:
        raise SizeLimitExceeded(
            f"{len(used)} polarized variables exceed bound {max_polarized}"
        )
    if len(used) > 64:
        raise SizeLimitExceeded("more than 64 polarized variables")
    pos = {v: i for i, v in enumerate(used)}
    masks = [sum(1 << pos[v] for v in s) for s in supports]
    table = {}
    for sigma in _union_closure(masks):
        inside = [m for m in masks if m & ~sigma == 0]
        dims = _restriction_homology(sigma, inside, field)
        j = sigma.bit_count()
        for d, h in dims.items():
            i = j - d - 2
            if i >= 0:
                table[(i, j)] = table.get((i, j), 0) + h
    entries = tuple(sorted((i, j, b) for (i, j), b in table.items() if b))
    return BettiTable(field_name(field), entries)


def regularity(ideal, field="Q", max_polarized=22):
    return betti_numbers(ideal, field, max_polarized).regularity()


# ---------------------------------------------------------------------------
# linear quotients
# ---------------------------------------------------------------------------


def has_linear_quotients(ideal, order, with_witness=False):
    """Check a generator order for linear quotients.

    Returns a bool, or (bool, violating index) with ``with_witness``.
    """
    order = [tuple(g) for g in order]
    if sorted(order) != sorted(ideal.gens):
        raise NotAPermutation("order is not a permutation of the generators")
    if len(order) <= 1:
        return (True, None) if with_witness else True
    viol = _kernels.lq_violation(np.array(order, np.int64))
    ok = viol < 0
    return (ok, None if ok else viol) if with_witness else ok


@dataclass(frozen=True)
class LinearQuotientOrder:
    order: tuple  # exponent vectors in quotient order


def _colon_variable_generated(chosen, cand):
    quotients = []
    for g in chosen:
        q = tuple(max(a - b, 0) for a, b in zip(g, cand))
        if any(q):
            quotients.append(q)
    units = {q.index(1) for q in quotients if sum(q) == 1}
    return all(any(q[v] > 0 for v in units) for q in quotients)


def _static_orders(gens):
    canonical = sorted(gens, key=lambda g: (sum(g), g))
    rev_in_degree = sorted(gens, key=lambda g: (sum(g),) + tuple(-e for e in g))
    flipped = sorted(gens, key=lambda g: (sum(g), tuple(reversed(g))))
    return [canonical, rev_in_degree, flipped]


def _greedy_order(gens):
    remaining = sorted(gens, key=lambda g: (sum(g), g))
    chosen = []
    while remaining:
        pick = next(
            (g for g in remaining if _colon_variable_generated(chosen, g)), None
        )
        if pick is None:
            return None
        chosen.append(pick)
        remaining.remove(pick)
    return chosen


def _heuristic_lq_order(ideal, greedy_cap=800):
    gens = list(ideal.gens)
    if len(gens) <= 1:
        return list(gens)
    for order in _static_orders(gens):
        if _kernels.lq_violation(np.array(order, np.int64)) < 0:
            return order
    if len(gens) <= greedy_cap:
        return _greedy_order(gens)
    return None


def find_linear_quotients_order(
    ideal, exhaustive_cap=20, field="Q", max_polarized=22
):
    """Search for a linear-quotient order; None is a certified negative.

    Heuristic orders come first, then full backtracking below the
    exhaustive cap.  Above it, equigenerated ideals without a linear
    resolution are certified negative (linear quotients would force one);
    anything else raises SizeLimitExceeded.
    """
    gens = list(ideal.gens)
    if len(gens) <= 1:
        return LinearQuotientOrder(tuple(gens))
    found = _heuristic_lq_order(ideal)
    if found is not None:
        return LinearQuotientOrder(tuple(found))
    if len(gens) <= exhaustive_cap:
        order = _backtrack_lq(gens)
        return None if order is None else LinearQuotientOrder(tuple(order))
    degs = {sum(g) for g in gens}
    if len(degs) == 1:
        d = degs.pop()
        reg = regularity(ideal, field, max_polarized)
        if reg != d:
            return None
    raise SizeLimitExceeded(
        f"{len(gens)} generators exceed the exhaustive bound {exhaustive_cap}"
    )


def _backtrack_lq(gens):
    gens = sorted(gens, key=lambda g: (sum(g), g))
    n = len(gens)
    failed = set()

    def rec(chosen, used):
        if len(chosen) == n:
            return list(chosen)
        key = frozenset(used)
        if key in failed:
            return None
        for i in range(n):
            if i in used:
                continue
            if _colon_variable_generated(chosen, gens[i]):
                chosen.append(gens[i])
                used.add(i)
                out = rec(chosen, used)
                if out is not None:
                    return out
                chosen.pop()
                used.remove(i)
        failed.add(key)
        return None

    return rec([], set())


# ---------------------------------------------------------------------------
# linear resolution / componentwise linear
# ---------------------------------------------------------------------------


def has_linear_resolution(ideal, field="Q", method="auto", max_polarized=22):
    """Equigenerated in degree d with regularity d.

    With method='auto', a discovered linear-quotient order certifies the
    verdict without a Betti table (linear quotients force a linear
    resolution over every field); method='betti' always builds the table.
    """
    if ideal.is_zero() or ideal.is_ring():
        raise InputError("linear resolution needs a proper nonzero ideal")
    degs = set(ideal.degrees())
    if len(degs) > 1:
        return False
    d = degs.pop()
    if method == "auto":
        order = _heuristic_lq_order(ideal)
        if order is not None:
            return True
    return regularity(ideal, field, max_polarized) == d


def _component_shadow_order(parent_order, comp):
    """Order the degree-j component by first dividing parent generator."""
    rank = {}
    for idx, g in enumerate(parent_order):
        rank[g] = idx
    keyed = []
    for w in comp.gens:
        best = min(
            (rank[g] for g in parent_order if all(a <= b for a, b in zip(g, w))),
            default=None,
        )
        if best is None:
            return None
        keyed.append((best, w))
    keyed.sort()
    return [w for _, w in keyed]


def is_componentwise_linear(
    ideal,
    field="Q",
    method="auto",
    lq_order=None,
    max_polarized=22,
    component_cap=500000,
):
    """Every degree component has a linear resolution.

    With method='auto', a linear-quotient order for the ideal (supplied or
    found) certifies the verdict at once; otherwise each component in the
    generator-degree range is tested, preferring the shadow of the parent
    order and falling back to its Betti table.  method='components' skips
    the whole-ideal shortcut.
    """
    if ideal.is_zero() or ideal.is_ring():
        raise InputError("componentwise linearity needs a proper nonzero ideal")
    parent = None
    if lq_order is not None:
        if not has_linear_quotients(ideal, lq_order):
            raise InputError("supplied order fails the linear-quotient check")
        parent = [tuple(g) for g in lq_order]
    elif method == "auto":
        parent = _heuristic_lq_order(ideal)
    if parent is not None and method != "components":
        return True
    degs = ideal.degrees()
    for j in range(min(degs), max(degs) + 1):
        comp = component(ideal, j, cap=component_cap)
        if parent is not None:
            shadow = _component_shadow_order(parent, comp)
            if shadow is not None and _kernels.lq_violation(
                np.array(shadow, np.int64)
            ) < 0:
                continue
        if not has_linear_resolution(comp, field, "auto", max_polarized):
            return False
    return True


# ---------------------------------------------------------------------------
# shedding vertices and vertex decomposability
# ---------------------------------------------------------------------------


def is_shedding_vertex(delta, x):
    """No face of the link is a facet of the deletion."""
    if not delta.is_face((x,)):
        raise VertexNotPresent(f"{x} is not a vertex of the complex")
    lk = link(delta, (x,))
    dl = deletion(delta, (x,))
    link_sets = [set(g) for g in lk.facets]
    return not any(
        any(set(f) <= g for g in link_sets) for f in dl.facets
    )


def hypergraph_shedding_vertex(h, x):
    """Shedding vertex of the independence complex, tested combinatorially.

    x sheds iff no maximal independent set of H∖x stays independent once x
    is added, i.e. every such set contains E∖{x} for some edge E through x.
    """
    if x not in h.present:
        raise VertexNotPresent(f"vertex {x} not present")
    if (x,) in h.edges:
        raise InputError("a trivial-edge vertex is outside the independence complex")
    stubs = [set(e) - {x} for e in h.edges if x in e]
    hdel = delete_vertex(h, x)
    for m in maximal_independent_sets(hdel):
        ms = set(m)
        if not any(s <= ms for s in stubs):
            return False
    return True


@dataclass(frozen=True)
class VDNode:
    """One node of a vertex-decomposition certificate (shared as a DAG)."""

    key: tuple
    vertex: object  # label of the shedding vertex; None at leaves
    link_child: object
    del_child: object

    @property
    def is_leaf(self):
        return self.vertex is None

    def node_count(self):
        seen = set()

        def walk(n):
            if id(n) in seen:
                return
            seen.add(id(n))
            if not n.is_leaf:
                walk(n.link_child)
                walk(n.del_child)

        walk(self)
        return len(seen)


def _hyper_key(hs):
    return (
        tuple(hs.labels[v] for v in hs.present),
        tuple(tuple(hs.labels[v] for v in e) for e in hs.edges),
    )


class VDSearch:
    """Memoized search for hypergraph vertex decompositions.

    States are memoized on the stripped hypergraph: isolated junk changes
    neither independence complexes nor shedding status, so certificates
    are shared across runs that meet the same core.
    """

    def __init__(self, max_vertices=64):
        self.max_vertices = max_vertices
        self.cache = {}
        self.exemplars = {}

    def search(self, h):
        hs = strip_isolated(h)
        if len(hs.present) > self.max_vertices:
            raise SizeLimitExceeded(
                f"{len(hs.present)} vertices exceed bound {self.max_vertices}"
            )
        key = _hyper_key(hs)
        if key in self.cache:
            return self.cache[key]
        self.exemplars[key] = hs
        if not hs.edges:
            node = VDNode(key, None, None, None)
            self.cache[key] = node
            return node
        self.cache[key] = None  # provisional; cycles are impossible
        result = None
        candidates = sorted(
            hs.present, key=lambda v: (-hs.degree(v), v)
        )
        for x in candidates:
            if (x,) in hs.edges:
                continue
            if not hypergraph_shedding_vertex(hs, x):
                continue
            link_node = self.search(contract(hs, x))
            if link_node is None:
                continue
            del_node = self.search(delete_vertex(hs, x))
            if del_node is None:
                continue
            result = VDNode(key, hs.labels[x], link_node, del_node)
            break
        self.cache[key] = result
        return result


_GLOBAL_VD_SEARCH = VDSearch()


def is_vertex_decomposable_hypergraph(h, max_vertices=64, search=None):
    """A decomposition certificate (shared DAG) or None."""
    search = search or _GLOBAL_VD_SEARCH
    search.max_vertices = max(search.max_vertices, max_vertices)
    return search.search(h)


def verify_vd_tree(h, node, search=None):
    """Re-verify a certificate node by node; raises on any mismatch."""
    search = search or _GLOBAL_VD_SEARCH
    hs = strip_isolated(h)
    if _hyper_key(hs) != node.key:
        raise InputError("certificate root does not match the hypergraph")
    seen = set()

    def walk(n):
        if id(n) in seen:
            return
        seen.add(id(n))
        g = search.exemplars[n.key]
        if n.is_leaf:
            if g.edges:
                raise InputError("leaf certificate on a non-isolated hypergraph")
            return
        x = g.labels.index(n.vertex)
        if not hypergraph_shedding_vertex(g, x):
            raise InputError(f"{n.vertex} is not a shedding vertex")
        if _hyper_key(strip_isolated(contract(g, x))) != n.link_child.key:
            raise InputError("link child mismatch")
        if _hyper_key(strip_isolated(delete_vertex(g, x))) != n.del_child.key:
            raise InputError("deletion child mismatch")
        walk(n.link_child)
        walk(n.del_child)

    walk(node)
    return True


def is_vertex_decomposable_complex(delta, max_vertices=24):
    """Decomposition tree of a complex, or None; memoized on facet sets."""
    if len(delta.used_vertices()) > max_vertices:
        raise SizeLimitExceeded(
            f"{len(delta.used_vertices())} vertices exceed bound {max_vertices}"
        )
    cache = {}

    def rec(facets):
        key = tuple(sorted(facets))
        if key in cache:
            return cache[key]
        sub = SimplicialComplex(delta.labels, key)
        if len(key) == 1:
            node = ("simplex", key)
            cache[key] = node
            return node
        cache[key] = None
        result = None
        verts = sorted(
            {v for f in key for v in f},
            key=lambda v: (-sum(v in f for f in key), v),
        )
        for x in verts:
            if not is_shedding_vertex(sub, x):
                continue
            lk = link(sub, (x,))
            dl = deletion(sub, (x,))
            ln = rec(lk.facets)
            if ln is None:
                continue
            dn = rec(dl.facets)
            if dn is None:
                continue
            result = ("shed", x, key, ln, dn)
            break
        cache[key] = result
        return result

    return rec(delta.facets)


# ---------------------------------------------------------------------------
# shellability
# ---------------------------------------------------------------------------


def is_shelling(facets):
    """Validate a facet order against the shelling condition."""
    masks = [sum(1 << v for v in f) for f in facets]
    for s in range(1, len(masks)):
        narrow = 0
        for j in range(s):
            diff = masks[s] & ~masks[j]
            if diff.bit_count() == 1:
                narrow |= diff
        for r in range(s):
            if masks[s] & ~masks[r] & narrow == 0:
                return False
    return True


def _complex_shelling_from_vd(node):
    # deletion part first; star-first breaks on nonpure complexes
    if node[0] == "simplex":
        return [node[1][0]]
    _, x, _, ln, dn = node
    link_part = [tuple(sorted(f + (x,))) for f in _complex_shelling_from_vd(ln)]
    return _complex_shelling_from_vd(dn) + link_part


def is_shellable(delta, max_facets=12, max_vertices=24):
    """A shelling order (facet list), or None after exhaustive search."""
    try:
        node = is_vertex_decomposable_complex(delta, max_vertices)
    except SizeLimitExceeded:
        node = None
    if node is not None:
        order = _complex_shelling_from_vd(node)
        if sorted(order) == sorted(delta.facets) and is_shelling(order):
            return order
    if delta.t > max_facets:
        raise SizeLimitExceeded(f"{delta.t} facets exceed bound {max_facets}")
    masks = [sum(1 << v for v in f) for f in delta.facets]

    def rec(order_idx, chosen_masks):
        if len(order_idx) == delta.t:
            return list(order_idx)
        for i in range(delta.t):
            if i in order_idx:
                continue
            if chosen_masks:
                narrow = 0
                for m in chosen_masks:
                    d = masks[i] & ~m
                    if d.bit_count() == 1:
                        narrow |= d
                if any(masks[i] & ~m & narrow == 0 for m in chosen_masks):
                    continue
            out = rec(order_idx + [i], chosen_masks + [masks[i]])
            if out is not None:
                return out
        return None

    found = rec([], [])
    if found is None:
        return None
    return [delta.facets[i] for i in found]


def _noedge_labels(h):
    in_edge = {v for e in h.edges for v in e}
    return {h.labels[v] for v in h.present if v not in in_edge}


def shelling_from_vd(h, node, search=None):
    """Shelling of the independence complex linearized from a VD certificate.

    Deletion-part facets come first, then the facets through the shedding
    vertex; vertices outside every edge rejoin every facet.
    """
    search = search or _GLOBAL_VD_SEARCH
    memo = {}

    def core(n):
        if id(n) in memo:
            return memo[id(n)]
        if n.is_leaf:
            out = [frozenset()]
        else:
            g = search.exemplars[n.key]
            x = g.labels.index(n.vertex)
            glink = contract(g, x)
            gdel = delete_vertex(g, x)
            link_junk = _noedge_labels(glink)
            del_junk = _noedge_labels(gdel)
            out = [f | del_junk for f in core(n.del_child)] + [
                f | link_junk | {n.vertex} for f in core(n.link_child)
            ]
        memo[id(n)] = out
        return out

    junk = _noedge_labels(h)
    lab_pos = {lab: v for v, lab in enumerate(h.labels)}
    facets = [tuple(sorted(lab_pos[l] for l in (f | junk))) for f in core(node)]
    return facets


def shelling_to_linear_quotients(h, shelling):
    """Map a shelling of the independence complex to a cover-ideal order."""
    expected = {tuple(f) for f in maximal_independent_sets(h)}
    if {tuple(f) for f in shelling} != expected or len(shelling) != len(expected):
        raise NotAShelling("order is not the facet list of the independence complex")
    pos = {v: i for i, v in enumerate(h.present)}
    relabeled = [tuple(sorted(pos[v] for v in f)) for f in shelling]
    if not is_shelling(relabeled):
        raise NotAShelling("facet order fails the shelling condition")
    n = len(h.present)
    order = []
    for f in shelling:
        fs = set(f)
        order.append(tuple(0 if v in fs else 1 for v in h.present))
    return LinearQuotientOrder(tuple(order))


# ---------------------------------------------------------------------------
# Cohen-Macaulay and sequentially Cohen-Macaulay via duality
# ---------------------------------------------------------------------------


def stanley_reisner_ideal(delta):
    """Squarefree ideal on the minimal non-faces of the complex."""
    n = len(delta.labels)
    comp_masks = [
        sum(1 << v for v in range(n) if v not in set(f)) for f in delta.facets
    ]
    if n <= 64:
        trs = [
            int(x)
            for x in _kernels.minimal_transversals_u64(
                np.array(comp_masks, np.uint64)
            )
        ]
    else:
        trs = _kernels.minimal_transversals_pyint(comp_masks)
    supports = [tuple(v for v in range(n) if t >> v & 1) for t in trs]
    return squarefree_ideal(supports, delta.labels)


def is_cohen_macaulay_facet_ring(delta, field="Q", max_polarized=22):
    """CM-ness of the facet ring, via linearity of the cover ideal."""
    return has_linear_resolution(
        cover_ideal(hypergraph_of(delta)), field, "betti", max_polarized
    )


def is_sequentially_cm(delta_sr, field="Q", max_polarized=22):
    """Sequential CM-ness of a complex, via componentwise linearity of the
    Alexander dual of its Stanley-Reisner ideal."""
    dual = alexander_dual(stanley_reisner_ideal(delta_sr))
    return is_componentwise_linear(
        dual, field, method="auto", max_polarized=max_polarized
    )
