"""Smith normal form of integer matrices over arbitrary-precision integers.

Two implementations: a sparse elimination used for homology (invariant
factors and rank only), and a small dense variant that additionally tracks
the unimodular transforms.  Pivots are chosen by minimal absolute value,
ties broken in row-major order; on boundary matrices this pivots on the
plentiful +-1 entries first, so coefficients stay small.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors d_1 | d_2 | ... and the matrix rank.

    transforms, when requested, is a pair (U, V) of unimodular matrices
    (nested lists) with U * A * V = diag(invariant_factors).
    """

    invariant_factors: tuple
    rank: int
    shape: tuple
    transforms: tuple | None = None


def _divisibility_chain(values):
    """Invariant factors of diag(values): pairwise gcd/lcm until d_i | d_(i+1)."""
    vals = sorted(abs(v) for v in values)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals) - 1):
            a, b = vals[i], vals[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                vals[i], vals[i + 1] = g, a // g * b
                changed = True
        if changed:
            vals.sort()
    return tuple(vals)


def smith_normal_form(matrix, shape=None, want_transforms=False) -> SNFResult:
    """SNF of an integer matrix.

    matrix may be a dense nested sequence / 2-D numpy array, or a sparse dict
    {(row, col): value} together with an explicit shape.  Entries are handled
    as Python ints throughout; there is no overflow path.
    """
    entries, shape = _to_entries(matrix, shape)
    if want_transforms:
        return _snf_dense_tracked(entries, shape)
    return _snf_sparse(entries, shape)


def _to_entries(matrix, shape):
    if isinstance(matrix, dict):
        if shape is None:
            raise ValueError("sparse input needs an explicit shape")
        return {k: int(v) for k, v in matrix.items() if int(v) != 0}, tuple(shape)
    rows = [list(r) for r in matrix]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    if shape is None:
        shape = (nr, nc)
    entries = {}
    for i, r in enumerate(rows):
        if len(r) != nc:
            raise ValueError("ragged matrix")
        for j, v in enumerate(r):
            v = int(v)
            if v:
                entries[(i, j)] = v
    return entries, tuple(shape)


def _snf_sparse(entries, shape) -> SNFResult:
    """Two-phase sparse elimination.

    Phase 1 pivots on +-1 entries chosen from the currently shortest row (a
    fill-minimizing heuristic; unit pivots keep every coefficient an integer
    combination with no growth through division).  Once the pivot row's column
    is cleared, dropping the pivot row and column is equivalent to the textbook
    row/column cleanup.  Phase 2 runs generic min-|value| SNF on whatever
    non-unit core remains (empty for torsion-free complexes).
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    row_heap = [(len(cs), r) for r, cs in rows.items()]
    heapq.heapify(row_heap)
    pivots = 0

    while row_heap:
        ln, r = heapq.heappop(row_heap)
        row = rows.get(r)
        if row is None or len(row) != ln:
            continue  # stale
        # best unit entry: fewest column neighbours
        best = None
        for j, v in row.items():
            if v == 1 or v == -1:
                sz = len(cols[j])
                if best is None or sz < best[0] or (sz == best[0] and j < best[1]):
                    best = (sz, j)
        if best is None:
            continue  # no unit entry now; any later change re-queues the row
        c = best[1]
        v = row[c]
        pivot_items = [(j, val) for j, val in row.items() if j != c]
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            q = row2[c] * v  # v*v == 1, so this clears the entry exactly
            del row2[c]
            for j, pv in pivot_items:
                cur = row2.get(j, 0) - q * pv
                if cur:
                    row2[j] = cur
                    cols[j].add(r2)
                else:
                    if j in row2:
                        del row2[j]
                        cols[j].discard(r2)
            if row2:
                heapq.heappush(row_heap, (len(row2), r2))
            else:
                del rows[r2]
        del cols[c]
        for j, _ in pivot_items:
            cols[j].discard(r)
            if not cols[j]:
                del cols[j]
        del rows[r]
        pivots += 1

    unit_pivots = pivots
    if not rows:
        return SNFResult(tuple([1] * unit_pivots), unit_pivots, shape)

    # non-unit core: generic minimal-|value| pivoting with exact Euclid sweeps
    core = _snf_core(rows, cols)
    factors = _divisibility_chain([1] * unit_pivots + list(core))
    return SNFResult(factors, unit_pivots + len(core), shape)


def _snf_core(rows, cols) -> list:
    """Generic sparse SNF sweep for a (small) core without unit entries."""
    heap: list[tuple[int, int, int]] = []
    for i, row in rows.items():
        for j, v in row.items():
            heap.append((abs(v), i, j))
    heapq.heapify(heap)

    def set_entry(i, j, v):
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
            heapq.heappush(heap, (abs(v), i, j))
        else:
            r = rows.get(i)
            if r and j in r:
                del r[j]
                if not r:
                    del rows[i]
            c = cols.get(j)
            if c and i in c:
                c.discard(i)
                if not c:
                    del cols[j]

    done_rows: set[int] = set()
    done_cols: set[int] = set()
    pivots = []

    while heap:
        a, r, c = heapq.heappop(heap)
        if r in done_rows or c in done_cols:
            continue
        v = rows.get(r, {}).get(c)
        if v is None or abs(v) != a:
            continue  # stale
        if v < 0:
            row = rows[r]
            for j in list(row):
                row[j] = -row[j]
            v = -v
        clean = True
        for r2 in [x for x in cols.get(c, ()) if x != r]:
            w = rows[r2][c]
            q = w // v
            if q:
                for j, pv in list(rows[r].items()):
                    set_entry(r2, j, rows.get(r2, {}).get(j, 0) - q * pv)
            if rows.get(r2, {}).get(c, 0):
                clean = False
        for c2 in [x for x in list(rows.get(r, {})) if x != c]:
            w = rows[r].get(c2, 0)
            q = w // v
            if q:
                for r2 in list(cols.get(c, ())):
                    pv = rows[r2][c]
                    set_entry(r2, c2, rows.get(r2, {}).get(c2, 0) - q * pv)
            if rows.get(r, {}).get(c2, 0):
                clean = False
        if clean:
            done_rows.add(r)
            done_cols.add(c)
            pivots.append(v)
        else:
            heapq.heappush(heap, (v, r, c))

    return pivots


def _snf_dense_tracked(entries, shape) -> SNFResult:
    nr, nc = shape
    A = [[0] * nc for _ in range(nr)]
    for (i, j), v in entries.items():
        A[i][j] = v
    U = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    V = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_axpy(dst, src, q):  # row dst -= q * row src
        for j in range(nc):
            A[dst][j] -= q * A[src][j]
        for j in range(nr):
            U[dst][j] -= q * U[src][j]

    def col_axpy(dst, src, q):
        for i in range(nr):
            A[i][dst] -= q * A[i][src]
        for i in range(nc):
            V[i][dst] -= q * V[i][src]

    def row_swap(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]

    def col_swap(a, b):
        for i in range(nr):
            A[i][a], A[i][b] = A[i][b], A[i][a]
        for i in range(nc):
            V[i][a], V[i][b] = V[i][b], V[i][a]

    def row_negate(a):
        A[a] = [-x for x in A[a]]
        U[a] = [-x for x in U[a]]

    t = 0
    while True:
        # pivot: minimal |value| in the uneliminated block, row-major ties
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if A[t][t] < 0:
            row_negate(t)
        dirty = False
        for i in range(t + 1, nr):
            if A[i][t]:
                q = A[i][t] // A[t][t]
                if q:
                    row_axpy(i, t, q)
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, nc):
            if A[t][j]:
                q = A[t][j] // A[t][t]
                if q:
                    col_axpy(j, t, q)
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        t += 1

    rank = t
    # enforce the divisibility chain with explicit unimodular operations
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if b % a != 0:
                changed = True
                col_axpy(i, i + 1, -1)  # col i += col i+1, so A[i+1][i] = b
                # Euclid on column i; the 2x2 block becomes diag(gcd, +-lcm)
                while A[i + 1][i]:
                    if abs(A[i + 1][i]) <= abs(A[i][i]):
                        q = A[i][i] // A[i + 1][i]
                        row_axpy(i, i + 1, q)
                        if A[i][i] == 0:
                            row_swap(i, i + 1)
                    else:
                        q = A[i + 1][i] // A[i][i]
                        row_axpy(i + 1, i, q)
                if A[i][i] < 0:
                    row_negate(i)
                # clear fill created in row i / row i+1 off-diagonal
                if A[i][i + 1]:
                    q = A[i][i + 1] // A[i][i]
                    col_axpy(i + 1, i, q)
                if A[i + 1][i + 1] < 0:
                    row_negate(i + 1)
    factors = tuple(A[i][i] for i in range(rank))
    return SNFResult(factors, rank, shape, transforms=(U, V))


def integer_determinant(matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(map(int, row)) for row in matrix]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
