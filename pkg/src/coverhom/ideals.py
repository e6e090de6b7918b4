"""Monomials and monomial ideals.

Minimal generators, products and powers, intersections, the squarefree
dictionaries (facet/edge/cover ideals, Alexander dual, Stanley-Reisner),
symbolic powers, polarization and depolarization, variable colon and
elimination.

A monomial is an exponent vector aligned with the ideal's variable table;
generators are kept as the unique minimal generating set sorted by
(degree, exponent vector).
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from . import _kernels
from .complexes import SimplicialComplex, _max_antichain
from .errors import (
    InputError,
    NoEdges,
    NotAPolarizedGenerator,
    NotSquarefree,
    SizeLimitExceeded,
    VariableNotPresent,
)

_EXP_BOUND = 1 << 31


def _check_vector(vec):
    for e in vec:
        if not isinstance(e, int) or e < 0:
            raise InputError(f"bad exponent {e!r}")
    if sum(vec) >= _EXP_BOUND:
        raise InputError("degree exceeds the guarded machine-word range")
    return tuple(vec)


def canonical_key(g):
    """Sort key: total degree, then earlier variables with higher exponents."""
    return (sum(g), tuple(-e for e in g))


def minimalize(vectors):
    """Divisibility-minimal elements of a set of exponent vectors."""
    vecs = sorted(set(map(tuple, vectors)), key=canonical_key)
    if len(vecs) <= 1:
        return vecs
    arr = np.array(vecs, np.int64)
    keep = _kernels.minimalize_rows(arr)
    return [v for v, k in zip(vecs, keep) if k]


@dataclass(frozen=True)
class MonomialIdeal:
    variables: tuple
    gens: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise InputError("duplicate variable names")
        gens = []
        for g in self.gens:
            g = _check_vector(g)
            if len(g) != n:
                raise InputError("generator length does not match variable count")
            gens.append(g)
        object.__setattr__(self, "gens", tuple(minimalize(gens)))

    @property
    def num_gens(self):
        return len(self.gens)

    def degrees(self):
        return [sum(g) for g in self.gens]

    def is_squarefree(self):
        return all(max(g, default=0) <= 1 for g in self.gens)

    def is_zero(self):
        return not self.gens

    def is_ring(self):
        return any(sum(g) == 0 for g in self.gens)

    def supports(self):
        return [tuple(i for i, e in enumerate(g) if e) for g in self.gens]

    def contains(self, vec):
        """Membership test: some generator divides the monomial."""
        vec = _check_vector(vec)
        return any(all(e <= f for e, f in zip(g, vec)) for g in self.gens)

    def gen_dicts(self):
        return [
            {self.variables[i]: e for i, e in enumerate(g) if e} for g in self.gens
        ]


def ideal_from_dicts(gens, variables):
    """Build an ideal from {label: exponent} generator mappings."""
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    vecs = []
    for g in gens:
        vec = [0] * len(variables)
        for lab, e in g.items():
            if lab not in index:
                raise VariableNotPresent(f"unknown variable {lab}")
            vec[index[lab]] = int(e)
        vecs.append(tuple(vec))
    return MonomialIdeal(variables, tuple(vecs))


def squarefree_ideal(supports, variables):
    n = len(variables)
    vecs = [tuple(1 if i in set(s) else 0 for i in range(n)) for s in supports]
    return MonomialIdeal(tuple(variables), tuple(vecs))


# ---------------------------------------------------------------------------
# combinatorial dictionaries
# ---------------------------------------------------------------------------


def facet_ideal(delta):
    return squarefree_ideal(delta.facets, delta.labels)


def edge_ideal(h):
    labels = tuple(h.labels[v] for v in h.present)
    pos = {v: i for i, v in enumerate(h.present)}
    return squarefree_ideal(
        [tuple(pos[v] for v in e) for e in h.edges], labels
    )


def cover_ideal(h):
    """Squarefree ideal on the minimal vertex covers.

    Computed both from cover enumeration and as the intersection of the
    edge primes; the two must agree.
    """
    if not h.edges:
        raise NoEdges("cover ideal needs at least one edge")
    from .complexes import minimal_vertex_covers

    labels = tuple(h.labels[v] for v in h.present)
    pos = {v: i for i, v in enumerate(h.present)}
    covers = minimal_vertex_covers(h)
    by_covers = squarefree_ideal([tuple(pos[v] for v in c) for c in covers], labels)
    supports = [tuple(pos[v] for v in e) for e in h.edges]
    by_primes = MonomialIdeal(
        labels, _prime_power_intersection(len(labels), supports, [1] * len(supports))
    )
    if by_covers != by_primes:
        raise InputError("cover ideal cross-check failed")  # pragma: no cover
    return by_covers


def alexander_dual(ideal):
    """Generators are the minimal transversals of the generator supports."""
    if not ideal.is_squarefree():
        raise NotSquarefree("Alexander dual needs a squarefree ideal")
    if ideal.is_zero() or ideal.is_ring():
        raise InputError("Alexander dual needs a proper nonzero ideal")
    n = len(ideal.variables)
    masks = [sum(1 << i for i in s) for s in ideal.supports()]
    if n <= 64:
        trs = [int(x) for x in _kernels.minimal_transversals_u64(
            np.array(masks, np.uint64)
        )]
    else:
        trs = _kernels.minimal_transversals_pyint(masks)
    return squarefree_ideal(
        [tuple(i for i in range(n) if t >> i & 1) for t in trs], ideal.variables
    )


def stanley_reisner_complex(ideal):
    """The complex whose Stanley-Reisner ideal is the given squarefree ideal."""
    if not ideal.is_squarefree():
        raise NotSquarefree("Stanley-Reisner complex needs a squarefree ideal")
    if ideal.is_ring():
        raise InputError("the whole ring has no Stanley-Reisner complex")
    n = len(ideal.variables)
    masks = [sum(1 << i for i in s) for s in ideal.supports()]
    if n <= 64:
        trs = [int(x) for x in _kernels.minimal_transversals_u64(
            np.array(masks, np.uint64)
        )] if masks else [0]
    else:
        trs = _kernels.minimal_transversals_pyint(masks)
    facets = _max_antichain(
        [tuple(i for i in range(n) if not t >> i & 1) for t in trs]
    )
    return SimplicialComplex(ideal.variables, facets)


# ---------------------------------------------------------------------------
# products, powers, intersections
# ---------------------------------------------------------------------------


def _same_ring(a, b):
    if a.variables != b.variables:
        raise InputError("ideals live in different rings")


def multiply(a, b):
    _same_ring(a, b)
    cands = {
        tuple(x + y for x, y in zip(g, h)) for g in a.gens for h in b.gens
    }
    return MonomialIdeal(a.variables, tuple(cands))


def power(ideal, k):
    if k < 1:
        raise InputError("power needs k >= 1")
    out = ideal
    for _ in range(k - 1):
        out = multiply(out, ideal)
    return out


def intersect(a, b, cap=10**6):
    _same_ring(a, b)
    if len(a.gens) * len(b.gens) > cap:
        raise SizeLimitExceeded("pairwise-lcm expansion above the size cap")
    cands = {
        tuple(max(x, y) for x, y in zip(g, h)) for g in a.gens for h in b.gens
    }
    return MonomialIdeal(a.variables, tuple(cands))


# ---------------------------------------------------------------------------
# symbolic powers via prime-power intersections
# ---------------------------------------------------------------------------


def _compositions(total, slots):
    if not slots:
        if total == 0:
            yield ()
        return
    for combo in combinations_with_replacement(range(len(slots)), total):
        vec = [0] * len(slots)
        for i in combo:
            vec[i] += 1
        yield tuple(vec)


def _prime_power_intersection(n, prime_supports, ks):
    """Minimal generators of the intersection of variable-prime powers.

    A monomial lies in p_S^k iff its total degree on S is at least k, so
    minimality is a per-constraint tightness condition; each stage extends
    the running generators by minimal completions on the new support.
    """
    gens = {tuple([0] * n)}
    done = []
    for support, k in zip(prime_supports, ks):
        support = tuple(support)
        done.append((support, k))
        if k == 0:
            continue
        stage = set()
        for g in gens:
            deficit = k - sum(g[v] for v in support)
            if deficit <= 0:
                stage.add(g)
                continue
            for e in _compositions(deficit, support):
                new = list(g)
                for v, d in zip(support, e):
                    new[v] += d
                stage.add(tuple(new))
        gens = set()
        for m in stage:
            ok = True
            for v in range(n):
                if m[v] == 0:
                    continue
                if not any(
                    v in s and sum(m[u] for u in s) == kk for s, kk in done if kk > 0
                ):
                    ok = False
                    break
            if ok:
                gens.add(m)
    return tuple(gens)


def minimal_primes(ideal):
    """Supports of the minimal primes of a squarefree ideal, via transversals."""
    if not ideal.is_squarefree():
        raise NotSquarefree("symbolic powers need a squarefree ideal")
    dual = alexander_dual(ideal)
    return dual.supports()


def symbolic_power(ideal, k):
    """Intersection of the k-th powers of the minimal primes."""
    if k < 1:
        raise InputError("symbolic power needs k >= 1")
    primes = minimal_primes(ideal)
    gens = _prime_power_intersection(
        len(ideal.variables), primes, [k] * len(primes)
    )
    return MonomialIdeal(ideal.variables, gens)


def cover_ideal_symbolic(h, kvec):
    """Mixed-exponent prime intersection over the edges of a hypergraph.

    With all entries equal to k this is the k-th symbolic power of the
    cover ideal; mixed entries give the edge-aligned generalisation.
    """
    if not h.edges:
        raise NoEdges("no edges")
    if len(kvec) != len(h.edges):
        raise InputError("one exponent per edge required")
    labels = tuple(h.labels[v] for v in h.present)
    pos = {v: i for i, v in enumerate(h.present)}
    supports = [tuple(pos[v] for v in e) for e in h.edges]
    gens = _prime_power_intersection(len(labels), supports, list(kvec))
    return MonomialIdeal(labels, gens)


# ---------------------------------------------------------------------------
# polarization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolarizationMap:
    base_variables: tuple
    layers: tuple  # max exponent of each base variable across the generators
    polarized_variables: tuple

    def polarized_index(self, base_index, layer):
        offset = sum(self.layers[:base_index])
        return offset + layer - 1


def polarized_label(base_label, layer):
    return f"{base_label}_{layer}"


def polarize(ideal):
    """Replace x^a by a product of layered squarefree variables."""
    n = len(ideal.variables)
    layers = tuple(
        max((g[j] for g in ideal.gens), default=0) for j in range(n)
    )
    pol_vars = []
    for j in range(n):
        for f in range(1, layers[j] + 1):
            pol_vars.append(polarized_label(ideal.variables[j], f))
    pmap = PolarizationMap(ideal.variables, layers, tuple(pol_vars))
    gens = []
    for g in ideal.gens:
        vec = [0] * len(pol_vars)
        for j in range(n):
            for f in range(1, g[j] + 1):
                vec[pmap.polarized_index(j, f)] = 1
        gens.append(tuple(vec))
    return MonomialIdeal(tuple(pol_vars), tuple(gens)), pmap


def depolarize_order(order, pmap):
    """Substitute layered variables back; errors on non-polarized shapes.

    Every generator must use a prefix of layers 1..e per base variable,
    which is exactly the image shape of the polarization map.
    """
    n = len(pmap.base_variables)
    out = []
    for vec in order:
        base = [0] * n
        pos = 0
        for j in range(n):
            used = [vec[pos + f] for f in range(pmap.layers[j])]
            pos += pmap.layers[j]
            e = sum(used)
            if used[:e] != [1] * e or any(used[e:]):
                raise NotAPolarizedGenerator(
                    "layers do not form a prefix; not a polarized generator"
                )
            base[j] = e
        out.append(tuple(base))
    return out


# ---------------------------------------------------------------------------
# colon and elimination by a variable
# ---------------------------------------------------------------------------


def _variable_index(ideal, var):
    if isinstance(var, str):
        try:
            return ideal.variables.index(var)
        except ValueError:
            raise VariableNotPresent(f"unknown variable {var}") from None
    if not 0 <= var < len(ideal.variables):
        raise VariableNotPresent(f"variable index {var} out of range")
    return var


def colon_by_variable(ideal, var):
    j = _variable_index(ideal, var)
    gens = []
    for g in ideal.gens:
        if g[j] > 0:
            g = g[:j] + (g[j] - 1,) + g[j + 1 :]
        gens.append(g)
    return MonomialIdeal(ideal.variables, tuple(gens))


def eliminate_variable(ideal, var):
    j = _variable_index(ideal, var)
    return MonomialIdeal(
        ideal.variables, tuple(g for g in ideal.gens if g[j] == 0)
    )


def component(ideal, j, cap=500000):
    """The ideal generated by the degree-j monomials of the ideal."""
    n = len(ideal.variables)
    gens = set()
    for g in ideal.gens:
        d = sum(g)
        if d > j:
            continue
        extra = j - d
        total = 1
        for _ in range(extra):
            total *= n
        if len(gens) + total > cap and extra > 3:
            raise SizeLimitExceeded("component expansion above the size cap")
        for e in _compositions(extra, tuple(range(n))):
            gens.add(tuple(x + y for x, y in zip(g, e)))
            if len(gens) > cap:
                raise SizeLimitExceeded("component expansion above the size cap")
    out = MonomialIdeal(ideal.variables, ())
    object.__setattr__(out, "gens", tuple(sorted(gens, key=canonical_key)))
    return out
