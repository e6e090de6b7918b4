"""Hot combinatorial kernels with a numba backend and a plain-Python fallback.

The fallback is selected by setting COVERHOM_DISABLE_NUMBA=1 (the standard
NUMBA_DISABLE_JIT is honoured as well).  Every kernel is written once as
nopython-compatible code; the two backends must return identical results and
``benchmarks/bench_kernels.py`` compares their speed.

Masks are uint64 bitsets, so the compiled paths require at most 64 vertices.
Callers fall back to Python-int bitsets above that (see ``*_pyint`` helpers).
"""

import os

import numpy as np

NUMBA_ENABLED = not (
    os.environ.get("COVERHOM_DISABLE_NUMBA") or os.environ.get("NUMBA_DISABLE_JIT")
)

if NUMBA_ENABLED:
    try:
        from numba import njit as _numba_njit

        def _njit(func):
            return _numba_njit(cache=True)(func)

    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def _njit(func):
        return func


U64_ONE = np.uint64(1)


# ---------------------------------------------------------------------------
# minimal transversals (hitting sets) of a family of uint64 edge masks
# ---------------------------------------------------------------------------


def _minimal_transversals_core(edges):
    m = edges.shape[0]
    out = np.empty(64, np.uint64)
    nout = 0
    if m == 0:
        out[0] = np.uint64(0)
        return out[:1]
    # DFS over (T, untried vertices of the first edge missed by T)
    cap = 64
    t_stack = np.empty(cap, np.uint64)
    r_stack = np.empty(cap, np.uint64)
    top = 0
    t_stack[0] = np.uint64(0)
    r_stack[0] = edges[0]
    top = 1
    while top > 0:
        top -= 1
        t = t_stack[top]
        rem = r_stack[top]
        if rem == np.uint64(0):
            continue
        v = rem & (~rem + U64_ONE)  # lowest set bit
        # sibling branch: same T, remaining choices minus v
        t_stack[top] = t
        r_stack[top] = rem ^ v
        top += 1
        t2 = t | v
        # prune unless every chosen vertex still owns a private edge
        ok = True
        u_rem = t2
        while u_rem != np.uint64(0):
            u = u_rem & (~u_rem + U64_ONE)
            u_rem ^= u
            private = False
            for k in range(m):
                if (edges[k] & t2) == u:
                    private = True
                    break
            if not private:
                ok = False
                break
        if not ok:
            continue
        # first edge not hit by t2
        nxt = np.uint64(0)
        found = False
        for k in range(m):
            if (edges[k] & t2) == np.uint64(0):
                nxt = edges[k]
                found = True
                break
        if not found:
            if nout == out.shape[0]:
                bigger = np.empty(out.shape[0] * 2, np.uint64)
                bigger[:nout] = out
                out = bigger
            out[nout] = t2
            nout += 1
        else:
            if top + 1 > t_stack.shape[0]:
                nt = np.empty(t_stack.shape[0] * 2, np.uint64)
                nr = np.empty(t_stack.shape[0] * 2, np.uint64)
                nt[:top] = t_stack
                nr[:top] = r_stack
                t_stack, r_stack = nt, nr
            t_stack[top] = t2
            r_stack[top] = nxt
            top += 1
    return out[:nout]


_minimal_transversals_jit = _njit(_minimal_transversals_core)


def minimal_transversals_u64(edges):
    """All inclusion-minimal hitting sets of the given uint64 edge masks."""
    edges = np.asarray(edges, np.uint64)
    raw = _minimal_transversals_jit(edges)
    return np.unique(raw)


def minimal_transversals_pyint(edges):
    """Python-int variant for > 64 vertices; returns a sorted list of masks."""
    edges = list(edges)
    if not edges:
        return [0]
    found = set()

    def rec(t):
        nxt = None
        for e in edges:
            if e & t == 0:
                nxt = e
                break
        if nxt is None:
            found.add(t)
            return
        rem = nxt
        while rem:
            v = rem & -rem
            rem ^= v
            t2 = t | v
            ok = True
            u_rem = t2
            while u_rem:
                u = u_rem & -u_rem
                u_rem ^= u
                if not any(e & t2 == u for e in edges):
                    ok = False
                    break
            if ok:
                rec(t2)

    rec(0)
    return sorted(found)


# ---------------------------------------------------------------------------
# all faces (independent subsets) of a complex given by minimal non-faces
# ---------------------------------------------------------------------------


def _enum_faces_core(edges, universe, cap):
    m = edges.shape[0]
    out = np.empty(256, np.uint64)
    out[0] = np.uint64(0)
    nout = 1
    stack_s = np.empty(64, np.uint64)
    stack_c = np.empty(64, np.uint64)
    stack_s[0] = np.uint64(0)
    stack_c[0] = universe
    top = 1
    overflow = False
    while top > 0:
        top -= 1
        s = stack_s[top]
        cand = stack_c[top]
        if cand == np.uint64(0):
            continue
        v = cand & (~cand + U64_ONE)
        stack_s[top] = s
        stack_c[top] = cand ^ v
        top += 1
        s2 = s | v
        ok = True
        for k in range(m):
            e = edges[k]
            if (e & v) != np.uint64(0) and (e & s2) == e:
                ok = False
                break
        if not ok:
            continue
        if nout == cap:
            overflow = True
            break
        if nout == out.shape[0]:
            bigger = np.empty(out.shape[0] * 2, np.uint64)
            bigger[:nout] = out
            out = bigger
        out[nout] = s2
        nout += 1
        above = ~((v << np.uint64(1)) - U64_ONE)
        child_cand = cand & above
        if child_cand != np.uint64(0):
            if top + 1 > stack_s.shape[0]:
                ns = np.empty(stack_s.shape[0] * 2, np.uint64)
                nc = np.empty(stack_s.shape[0] * 2, np.uint64)
                ns[:top] = stack_s
                nc[:top] = stack_c
                stack_s, stack_c = ns, nc
            stack_s[top] = s2
            stack_c[top] = child_cand
            top += 1
    return out[:nout], overflow


_enum_faces_jit = _njit(_enum_faces_core)


def enum_faces_u64(edges, universe, cap=1 << 26):
    """All subsets of ``universe`` containing none of ``edges``, empty set included."""
    edges = np.asarray(edges, np.uint64)
    faces, overflow = _enum_faces_jit(edges, np.uint64(universe), np.int64(cap))
    return np.sort(faces), overflow


# ---------------------------------------------------------------------------
# exact ranks: GF(2) bit-packed, GF(p) dense, and integer Bareiss for Q
# ---------------------------------------------------------------------------


def _rank_gf2_core(packed, ncols):
    nrows = packed.shape[0]
    r = 0
    for col in range(ncols):
        w = col >> 6
        bit = U64_ONE << np.uint64(col & 63)
        piv = -1
        for i in range(r, nrows):
            if packed[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(packed.shape[1]):
                tmp = packed[r, k]
                packed[r, k] = packed[piv, k]
                packed[piv, k] = tmp
        for i in range(r + 1, nrows):
            if packed[i, w] & bit:
                for k in range(packed.shape[1]):
                    packed[i, k] ^= packed[r, k]
        r += 1
        if r == nrows:
            break
    return r


_rank_gf2_jit = _njit(_rank_gf2_core)


def rank_gf2(mat):
    """Rank over GF(2) of an integer matrix (entries reduced mod 2)."""
    mat = np.asarray(mat)
    nrows, ncols = mat.shape
    if nrows == 0 or ncols == 0:
        return 0
    words = (ncols + 63) // 64
    packed = np.zeros((nrows, words), np.uint64)
    rr, cc = np.nonzero(mat & 1)
    for i, j in zip(rr.tolist(), cc.tolist()):
        packed[i, j >> 6] |= U64_ONE << np.uint64(j & 63)
    return int(_rank_gf2_jit(packed, ncols))


def _rank_gfp_core(mat, p):
    nrows, ncols = mat.shape
    r = 0
    for col in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if mat[i, col] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(ncols):
                tmp = mat[r, k]
                mat[r, k] = mat[piv, k]
                mat[piv, k] = tmp
        pv = mat[r, col] % p
        for i in range(r + 1, nrows):
            a = mat[i, col] % p
            if a != 0:
                for k in range(col, ncols):
                    mat[i, k] = (mat[i, k] * pv - mat[r, k] * a) % p
        r += 1
        if r == nrows:
            break
    return r


_rank_gfp_jit = _njit(_rank_gfp_core)


def rank_gfp(mat, p):
    """Rank over GF(p) for a small prime p."""
    mat = np.array(mat, np.int64, copy=True)
    if mat.size == 0:
        return 0
    return int(_rank_gfp_jit(mat % p, np.int64(p)))


_BAREISS_BOUND = np.int64(1) << 30


def _rank_bareiss_core(mat):
    nrows, ncols = mat.shape
    prev = np.int64(1)
    r = 0
    for col in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if mat[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(ncols):
                tmp = mat[r, k]
                mat[r, k] = mat[piv, k]
                mat[piv, k] = tmp
        pv = mat[r, col]
        if pv > _BAREISS_BOUND or -pv > _BAREISS_BOUND:
            return -1
        # rows with a zero pivot entry still need the piv/prev rescale,
        # or later exact divisions break
        for i in range(r + 1, nrows):
            a = mat[i, col]
            if a > _BAREISS_BOUND or -a > _BAREISS_BOUND:
                return -1
            for k in range(col, ncols):
                x = mat[i, k]
                y = mat[r, k]
                if (
                    x > _BAREISS_BOUND
                    or -x > _BAREISS_BOUND
                    or y > _BAREISS_BOUND
                    or -y > _BAREISS_BOUND
                ):
                    return -1
                mat[i, k] = (x * pv - a * y) // prev
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


_rank_bareiss_jit = _njit(_rank_bareiss_core)


def _rank_exact_bigint(rows):
    """Fraction-free elimination with Python integers; always exact."""
    rows = [list(map(int, row)) for row in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    prev = 1
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        for i in range(r + 1, nrows):
            a = rows[i][col]
            ri, rr_ = rows[i], rows[r]
            for k in range(col, ncols):
                ri[k] = (ri[k] * pv - a * rr_[k]) // prev
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def _rank_unit_elim_core(mat):
    # eliminate +-1 pivots with integer row operations (exact over Z);
    # returns (#pivots eliminated, ok) where ok=0 signals overflow risk
    nrows, ncols = mat.shape
    row_alive = np.ones(nrows, np.bool_)
    col_alive = np.ones(ncols, np.bool_)
    row_nnz = np.zeros(nrows, np.int64)
    col_nnz = np.zeros(ncols, np.int64)
    for i in range(nrows):
        for j in range(ncols):
            if mat[i, j] != 0:
                row_nnz[i] += 1
                col_nnz[j] += 1
    rank = 0
    while True:
        best_i = -1
        best_j = -1
        best_score = np.int64(1) << 60
        for i in range(nrows):
            if not row_alive[i] or row_nnz[i] == 0:
                continue
            for j in range(ncols):
                if not col_alive[j]:
                    continue
                v = mat[i, j]
                if v == 1 or v == -1:
                    score = (row_nnz[i] - 1) * (col_nnz[j] - 1)
                    if score < best_score:
                        best_score = score
                        best_i = i
                        best_j = j
                        if score == 0:
                            break
            if best_score == 0:
                break
        if best_i < 0:
            return rank, 1
        r0 = best_i
        c0 = best_j
        piv = mat[r0, c0]
        for i in range(nrows):
            if i == r0 or not row_alive[i]:
                continue
            a = mat[i, c0]
            if a == 0:
                continue
            f = a * piv  # piv in {1,-1}: f = a/piv
            for j in range(ncols):
                if not col_alive[j]:
                    continue
                y = mat[r0, j]
                if y == 0:
                    continue
                x = mat[i, j]
                newv = x - f * y
                if newv > _BAREISS_BOUND or -newv > _BAREISS_BOUND:
                    return rank, 0
                if x != 0 and newv == 0:
                    row_nnz[i] -= 1
                    col_nnz[j] -= 1
                elif x == 0 and newv != 0:
                    row_nnz[i] += 1
                    col_nnz[j] += 1
                mat[i, j] = newv
        row_alive[r0] = False
        col_alive[c0] = False
        for j in range(ncols):
            if mat[r0, j] != 0 and col_alive[j]:
                col_nnz[j] -= 1
            mat[r0, j] = 0
        for i in range(nrows):
            if mat[i, c0] != 0 and row_alive[i]:
                row_nnz[i] -= 1
            mat[i, c0] = 0
        rank += 1


_rank_unit_elim_jit = _njit(_rank_unit_elim_core)


def rank_exact(mat):
    """Rank over Q of an integer matrix, exact arithmetic only.

    Unit-entry pivots are eliminated first with integer row operations
    (sparsest-first), then a guarded int64 Bareiss finishes the remainder;
    any overflow risk falls back to arbitrary-precision elimination.
    """
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    work = np.array(mat, np.int64, copy=True)
    units, ok = _rank_unit_elim_jit(work)
    if ok:
        keep_r = [i for i in range(work.shape[0]) if np.any(work[i])]
        if not keep_r:
            return int(units)
        rest = work[keep_r]
        keep_c = np.any(rest != 0, axis=0)
        rest = np.ascontiguousarray(rest[:, keep_c])
        r = int(_rank_bareiss_jit(rest))
        if r >= 0:
            return int(units) + r
        return int(units) + _rank_exact_bigint(rest.tolist())
    return _rank_exact_bigint(mat.tolist())


# ---------------------------------------------------------------------------
# monomial-ideal kernels: divisibility minimalisation, linear-quotient check
# ---------------------------------------------------------------------------


def _minimalize_core(exp, supp, keep):
    m = exp.shape[0]
    n = exp.shape[1]
    for i in range(m):
        si = supp[i]
        for j in range(i):
            if not keep[j]:
                continue
            if (supp[j] & ~si) != np.uint64(0):
                continue
            dom = True
            for v in range(n):
                if exp[j, v] > exp[i, v]:
                    dom = False
                    break
            if dom:
                keep[i] = False
                break
    return keep


_minimalize_jit = _njit(_minimalize_core)


def minimalize_rows(exp):
    """Keep-mask of divisibility-minimal rows; rows must be degree-sorted."""
    exp = np.asarray(exp, np.int64)
    m, n = exp.shape
    if m == 0:
        return np.zeros(0, np.bool_)
    if n <= 64:
        supp = np.zeros(m, np.uint64)
        for v in range(n):
            supp |= np.where(exp[:, v] > 0, np.uint64(1) << np.uint64(v), np.uint64(0))
    else:
        supp = np.zeros(m, np.uint64)  # no support prefilter beyond 64 vars
    keep = np.ones(m, np.bool_)
    return _minimalize_jit(exp, supp, keep)


def _lq_violation_core(exp):
    m = exp.shape[0]
    n = exp.shape[1]
    unit = np.zeros(n, np.bool_)
    for i in range(1, m):
        for v in range(n):
            unit[v] = False
        for j in range(i):
            s = 0
            last = -1
            for v in range(n):
                d = exp[j, v] - exp[i, v]
                if d > 0:
                    s += d
                    last = v
                    if s > 1:
                        break
            if s == 1:
                unit[last] = True
        for j in range(i):
            ok = False
            nontrivial = False
            for v in range(n):
                if exp[j, v] > exp[i, v]:
                    nontrivial = True
                    if unit[v]:
                        ok = True
                        break
            if nontrivial and not ok:
                return i
    return -1


_lq_violation_jit = _njit(_lq_violation_core)


def lq_violation(exp):
    """First index at which an ordered generator list fails linear quotients.

    Returns -1 when the order has linear quotients.  Each colon ideal
    <u_1..u_{i-1}> : u_i is variable-generated iff every quotient
    lcm(u_j,u_i)/u_i is divisible by a quotient that is a single variable.
    """
    exp = np.asarray(exp, np.int64)
    if exp.shape[0] <= 1:
        return -1
    return int(_lq_violation_jit(exp))


# ---------------------------------------------------------------------------
# elementary collapses: shrink a face set to a homotopy-equivalent core
# ---------------------------------------------------------------------------


def _reduce_cells_impl(faces, universe):
    # reductions remove a cell with a unique live coface, coreductions a
    # cell with a unique live boundary cell; both preserve homology of the
    # augmented cell set (the empty face is the (-1)-cell).
    n = faces.shape[0]
    alive = np.ones(n, np.bool_)
    up = np.zeros(n, np.int64)
    down = np.zeros(n, np.int64)
    for i in range(n):
        m = faces[i]
        rest = universe & ~m
        while rest != np.uint64(0):
            v = rest & (~rest + U64_ONE)
            rest ^= v
            target = m | v
            lo = 0
            hi = n
            while lo < hi:
                mid = (lo + hi) // 2
                if faces[mid] < target:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < n and faces[lo] == target:
                up[i] += 1
                down[lo] += 1
    stack = np.empty(2 * max(n, 1), np.int64)
    top = 0
    for i in range(n):
        if up[i] == 1 or down[i] == 1:
            stack[top] = i
            top += 1

    while top > 0:
        top -= 1
        i = stack[top]
        if not alive[i]:
            continue
        m = faces[i]
        partner = -1
        if up[i] == 1:
            rest = universe & ~m
            while rest != np.uint64(0):
                v = rest & (~rest + U64_ONE)
                rest ^= v
                target = m | v
                lo = 0
                hi = n
                while lo < hi:
                    mid = (lo + hi) // 2
                    if faces[mid] < target:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < n and faces[lo] == target and alive[lo]:
                    partner = lo
                    break
        elif down[i] == 1:
            sub = m
            while sub != np.uint64(0):
                v = sub & (~sub + U64_ONE)
                sub ^= v
                target = m ^ v
                lo = 0
                hi = n
                while lo < hi:
                    mid = (lo + hi) // 2
                    if faces[mid] < target:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < n and faces[lo] == target and alive[lo]:
                    partner = lo
                    break
        else:
            continue
        if partner < 0:
            continue
        alive[i] = False
        alive[partner] = False
        for r in range(2):
            removed = i if r == 0 else partner
            fm = faces[removed]
            # neighbours below lose a coface
            sub = fm
            while sub != np.uint64(0):
                v = sub & (~sub + U64_ONE)
                sub ^= v
                target = fm ^ v
                lo = 0
                hi = n
                while lo < hi:
                    mid = (lo + hi) // 2
                    if faces[mid] < target:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < n and faces[lo] == target and alive[lo]:
                    up[lo] -= 1
                    if up[lo] == 1 or down[lo] == 1:
                        if top >= stack.shape[0]:
                            bigger = np.empty(stack.shape[0] * 2, np.int64)
                            bigger[: stack.shape[0]] = stack
                            stack = bigger
                        stack[top] = lo
                        top += 1
            # neighbours above lose a boundary cell
            rest = universe & ~fm
            while rest != np.uint64(0):
                v = rest & (~rest + U64_ONE)
                rest ^= v
                target = fm | v
                lo = 0
                hi = n
                while lo < hi:
                    mid = (lo + hi) // 2
                    if faces[mid] < target:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < n and faces[lo] == target and alive[lo]:
                    down[lo] -= 1
                    if up[lo] == 1 or down[lo] == 1:
                        if top >= stack.shape[0]:
                            bigger = np.empty(stack.shape[0] * 2, np.int64)
                            bigger[: stack.shape[0]] = stack
                            stack = bigger
                        stack[top] = lo
                        top += 1
    return faces[alive]


_reduce_cells_jit = _njit(_reduce_cells_impl)


def reduce_cells(faces, universe):
    """Morse-style reduction of an augmented face set.

    Input must be sorted masks of a downward-closed face set including the
    empty face.  The output cells carry the same homology under the
    restricted simplicial boundary (subfaces outside the set are skipped).
    """
    faces = np.asarray(faces, np.uint64)
    if faces.shape[0] == 0:
        return faces
    return np.sort(_reduce_cells_jit(faces, np.uint64(universe)))


def warm_up():
    """Compile every jitted kernel on tiny inputs (no-op for the fallback)."""
    edges = np.array([0b11, 0b110], np.uint64)
    minimal_transversals_u64(edges)
    enum_faces_u64(edges, 0b111, 1 << 10)
    rank_gf2(np.array([[1, 0], [1, 1]]))
    rank_gfp(np.array([[1, 2], [2, 4]]), 3)
    rank_exact(np.array([[1, 2], [2, 4]]))
    minimalize_rows(np.array([[1, 0], [1, 1]]))
    lq_violation(np.array([[1, 0], [0, 1]]))
