"""Pure facet-based simplicial complexes and the operations on them.

A complex is stored as its top-dimensional faces only (an (m, n+1) int64
array with strictly increasing rows); lower faces are enumerated on demand.
Orientations are signs relative to the sorted vertex order of each facet.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np


class SphereMapError(Exception):
    """Base error for this package."""


class NotPseudomanifoldError(SphereMapError):
    pass


class NonOrientableError(SphereMapError):
    pass


def _facet_array(facets, width: int | None = None) -> np.ndarray:
    arr = np.asarray(facets, dtype=np.int64)
    if arr.ndim != 2:
        arr = arr.reshape(len(facets), -1)
    if width is not None and arr.shape[1] != width:
        raise ValueError(f"expected facets of {width} vertices, got {arr.shape[1]}")
    return np.ascontiguousarray(arr)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class SimplicialComplex:
    """A pure simplicial complex given by its facets.

    Parameters
    ----------
    num_vertices : int
        Vertex ids are 0..num_vertices-1 and every id must occur in a facet.
    facets : array-like of shape (m, n+1)
        Each row a strictly increasing vertex tuple; rows pairwise distinct.
    labels : optional tuple of str, one per vertex.
    """

    __slots__ = ("num_vertices", "facets", "labels", "_row_index", "_lex_order")

    def __init__(self, num_vertices, facets, labels=None, validate=True):
        arr = _facet_array(facets)
        if arr.shape[0] == 0:
            raise ValueError("a complex needs at least one facet")
        if validate:
            if np.any(np.diff(arr, axis=1) <= 0):
                bad = int(np.nonzero(np.any(np.diff(arr, axis=1) <= 0, axis=1))[0][0])
                raise ValueError(f"facet {tuple(arr[bad])} is not strictly increasing")
            used = np.unique(arr)
            if used[0] < 0 or used[-1] >= num_vertices:
                raise ValueError("facet vertex id out of range")
            if len(used) != num_vertices:
                missing = sorted(set(range(num_vertices)) - set(used.tolist()))
                raise ValueError(f"vertices {missing[:5]} appear in no facet (complex not pure)")
            order = np.lexsort(arr.T[::-1])
            if np.any(np.all(arr[order[1:]] == arr[order[:-1]], axis=1)):
                raise ValueError("duplicate facets")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != num_vertices:
                raise ValueError("one label per vertex required")
        self.num_vertices = int(num_vertices)
        self.facets = _freeze(arr)
        self.labels = labels
        self._row_index = None
        self._lex_order = None

    @property
    def dim(self) -> int:
        return self.facets.shape[1] - 1

    @property
    def num_facets(self) -> int:
        return self.facets.shape[0]

    def facet_tuples(self):
        return [tuple(int(v) for v in row) for row in self.facets]

    def lex_order(self) -> np.ndarray:
        """Indices putting facets in lexicographic order."""
        if self._lex_order is None:
            self._lex_order = _freeze(np.lexsort(self.facets.T[::-1]))
        return self._lex_order

    def facet_index(self, facet) -> int:
        """Storage index of a facet given as a vertex tuple; KeyError if absent."""
        if self._row_index is None:
            self._row_index = {tuple(int(v) for v in row): i for i, row in enumerate(self.facets)}
        return self._row_index[tuple(int(v) for v in facet)]

    def has_facet(self, facet) -> bool:
        try:
            self.facet_index(facet)
            return True
        except KeyError:
            return False

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        if self.num_vertices != other.num_vertices or self.facets.shape != other.facets.shape:
            return False
        return bool(np.array_equal(self.facets[self.lex_order()], other.facets[other.lex_order()]))

    def __hash__(self):
        return hash((self.num_vertices, self.facets[self.lex_order()].tobytes()))

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, vertices={self.num_vertices}, facets={self.num_facets})"


class OrientedComplex:
    """A complex together with one sign per facet (relative to sorted order)."""

    __slots__ = ("base", "signs")

    def __init__(self, base: SimplicialComplex, signs):
        signs = np.asarray(signs, dtype=np.int8)
        if signs.shape != (base.num_facets,):
            raise ValueError("one sign per facet required")
        if not np.all(np.abs(signs) == 1):
            raise ValueError("signs must be +1 or -1")
        self.base = base
        self.signs = _freeze(np.ascontiguousarray(signs))

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def num_vertices(self) -> int:
        return self.base.num_vertices

    @property
    def num_facets(self) -> int:
        return self.base.num_facets

    @property
    def facets(self) -> np.ndarray:
        return self.base.facets

    def sign_of(self, facet) -> int:
        return int(self.signs[self.base.facet_index(facet)])

    def sign_map(self) -> dict:
        return {tuple(int(v) for v in row): int(s) for row, s in zip(self.base.facets, self.signs)}

    def __eq__(self, other):
        if not isinstance(other, OrientedComplex):
            return NotImplemented
        return self.base == other.base and self.sign_map() == other.sign_map()

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        return f"OrientedComplex(dim={self.dim}, vertices={self.num_vertices}, facets={self.num_facets})"


def as_complex(K) -> SimplicialComplex:
    return K.base if isinstance(K, OrientedComplex) else K


def as_oriented(K) -> OrientedComplex:
    return K if isinstance(K, OrientedComplex) else orient(K)


# ---------------------------------------------------------------------------
# constructors

def simplex_boundary(n: int, labels=None) -> OrientedComplex:
    """Boundary of the (n+1)-simplex: the n-sphere on n+2 vertices.

    Facet i omits vertex i and carries sign (-1)**i.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    nv = n + 2
    facets = np.empty((nv, nv - 1), dtype=np.int64)
    for i in range(nv):
        facets[i, :i] = np.arange(i)
        facets[i, i:] = np.arange(i + 1, nv)
    signs = np.where(np.arange(nv) % 2 == 0, 1, -1).astype(np.int8)
    base = SimplicialComplex(nv, facets, labels=labels, validate=False)
    return OrientedComplex(base, signs)


def cycle(m: int, labels=None) -> OrientedComplex:
    """The m-gon graph, oriented as the directed cycle 0 -> 1 -> ... -> 0."""
    if m < 3:
        raise ValueError("a simplicial circle needs at least 3 vertices")
    facets = np.empty((m, 2), dtype=np.int64)
    facets[:-1, 0] = np.arange(m - 1)
    facets[:-1, 1] = np.arange(1, m)
    facets[-1] = (0, m - 1)
    signs = np.ones(m, dtype=np.int8)
    signs[-1] = -1  # edge {0, m-1} is traversed against sorted order
    base = SimplicialComplex(m, facets, labels=labels, validate=False)
    return OrientedComplex(base, signs)


def join(K, L):
    """Join of two complexes; oriented if both inputs are oriented.

    Vertices of L are re-indexed after those of K; the joined facet set is the
    ordered product (K-major), and the sign of a joined facet is the product
    of the factor signs (the K-then-L vertex order is already sorted).
    """
    oriented = isinstance(K, OrientedComplex) and isinstance(L, OrientedComplex)
    KB, LB = as_complex(K), as_complex(L)
    mK, mL = KB.num_facets, LB.num_facets
    iK = np.repeat(np.arange(mK), mL)
    iL = np.tile(np.arange(mL), mK)
    facets = np.hstack([KB.facets[iK], LB.facets[iL] + KB.num_vertices])
    if KB.labels is not None and LB.labels is not None:
        labels = KB.labels + LB.labels
    else:
        labels = None
    base = SimplicialComplex(KB.num_vertices + LB.num_vertices, facets, labels=labels, validate=False)
    if not oriented:
        return base
    signs = (K.signs[iK].astype(np.int16) * L.signs[iL]).astype(np.int8)
    return OrientedComplex(base, signs)


def join_all(parts):
    out = parts[0]
    for p in parts[1:]:
        out = join(out, p)
    return out


# ---------------------------------------------------------------------------
# face enumeration and f-vectors

def faces(K, k: int) -> np.ndarray:
    """All k-faces as a lexicographically sorted (N, k+1) array."""
    KB = as_complex(K)
    if not 0 <= k <= KB.dim:
        raise ValueError(f"face dimension {k} out of range 0..{KB.dim}")
    if k == KB.dim:
        return KB.facets[KB.lex_order()]
    cols = list(combinations(range(KB.dim + 1), k + 1))
    stacked = np.vstack([KB.facets[:, c] for c in cols])
    return np.unique(stacked, axis=0)


@dataclass(frozen=True)
class FVector:
    """Face counts (f_0, ..., f_n); the f-polynomial is 1 + f_0 t + f_1 t^2 + ..."""

    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __len__(self):
        return len(self.counts)

    @property
    def dim(self):
        return len(self.counts) - 1

    @property
    def euler_characteristic(self) -> int:
        return sum(c if i % 2 == 0 else -c for i, c in enumerate(self.counts))


def f_vector(K) -> FVector:
    """f-vector by explicit face enumeration."""
    KB = as_complex(K)
    return FVector(tuple(faces(KB, k).shape[0] for k in range(KB.dim + 1)))


def f_polynomial_product(a, b) -> FVector:
    """Multiply two f-polynomials (constant term 1); exact for joins."""
    pa = [1] + [int(c) for c in a]
    pb = [1] + [int(c) for c in b]
    out = [0] * (len(pa) + len(pb) - 1)
    for i, x in enumerate(pa):
        for j, y in enumerate(pb):
            out[i + j] += x * y
    return FVector(tuple(out[1:]))


def euler_characteristic(K) -> int:
    return f_vector(K).euler_characteristic


# ---------------------------------------------------------------------------
# ridges, pseudomanifold check, orientation

def _ridge_pairs(KB: SimplicialComplex):
    """Group the (n-1)-faces of all facets.

    Returns (ok, diagnostic, pair_a, pair_b, omit_a, omit_b) where the pair
    arrays list, for every ridge shared by exactly two facets, the two facet
    indices and the vertex position omitted in each.  ok is False when some
    ridge is not shared by exactly two facets.
    """
    m, w = KB.facets.shape
    n = w - 1
    ridges = np.empty((m * w, n), dtype=np.int64)
    owner = np.empty(m * w, dtype=np.int64)
    omit = np.empty(m * w, dtype=np.int8)
    keep = list(range(w))
    for i in range(w):
        cols = keep[:i] + keep[i + 1:]
        ridges[i * m:(i + 1) * m] = KB.facets[:, cols]
        owner[i * m:(i + 1) * m] = np.arange(m)
        omit[i * m:(i + 1) * m] = i
    order = np.lexsort(ridges.T[::-1])
    ridges = ridges[order]
    owner = owner[order]
    omit = omit[order]
    new_group = np.empty(len(ridges), dtype=bool)
    new_group[0] = True
    if len(ridges) > 1:
        new_group[1:] = np.any(ridges[1:] != ridges[:-1], axis=1)
    starts = np.flatnonzero(new_group)
    counts = np.diff(np.append(starts, len(ridges)))
    if np.any(counts != 2):
        bad = int(starts[np.flatnonzero(counts != 2)[0]])
        ridge = tuple(int(v) for v in ridges[bad])
        cnt = int(counts[np.flatnonzero(counts != 2)[0]])
        return False, f"ridge {ridge} lies in {cnt} facet(s), expected 2", None, None, None, None
    a = starts
    b = starts + 1
    return True, "", owner[a], owner[b], omit[a], omit[b]


@dataclass(frozen=True)
class PseudomanifoldReport:
    ok: bool
    message: str

    def __bool__(self):
        return self.ok


def is_closed_pseudomanifold(K) -> PseudomanifoldReport:
    """Every ridge in exactly two facets and the facet adjacency graph connected.

    Dimension 0 is special-cased: the only closed 0-pseudomanifold accepted is
    a pair of points (two vertex facets).
    """
    KB = as_complex(K)
    if KB.dim == 0:
        if KB.num_facets == 2:
            return PseudomanifoldReport(True, "")
        return PseudomanifoldReport(False, f"{KB.num_facets} point(s), a closed 0-manifold has 2")
    ok, msg, pa, pb, _, _ = _ridge_pairs(KB)
    if not ok:
        return PseudomanifoldReport(False, msg)
    from . import kernels
    visited, _, conflict = kernels.propagate_signs(
        KB.num_facets, pa, pb, np.ones(len(pa), dtype=np.int8))
    if not visited.all():
        n_unreached = int(len(visited) - visited.sum())
        return PseudomanifoldReport(False, f"facet adjacency graph disconnected ({n_unreached} facets unreachable)")
    return PseudomanifoldReport(True, "")


def orient(K) -> OrientedComplex:
    """Coherent facet signs by traversal of the ridge adjacency graph.

    The first stored facet is normalized to +1.  Raises NonOrientableError
    when a cycle of ridge constraints is contradictory and
    NotPseudomanifoldError when the input is not a closed pseudomanifold.
    """
    KB = as_complex(K)
    if KB.dim == 0:
        if KB.num_facets != 2:
            raise NotPseudomanifoldError("a closed 0-manifold has exactly 2 points")
        return OrientedComplex(KB, np.array([1, -1], dtype=np.int8))
    ok, msg, pa, pb, oa, ob = _ridge_pairs(KB)
    if not ok:
        raise NotPseudomanifoldError(msg)
    # coherence across a shared ridge: s_b = -s_a * (-1)**(omit_a + omit_b)
    rel = np.where((oa.astype(np.int16) + ob) % 2 == 0, -1, 1).astype(np.int8)
    from . import kernels
    visited, signs, conflict = kernels.propagate_signs(KB.num_facets, pa, pb, rel)
    if not visited.all():
        raise NotPseudomanifoldError("facet adjacency graph disconnected")
    if conflict:
        raise NonOrientableError("ridge constraints force a sign contradiction")
    return OrientedComplex(KB, signs)


def verify_coherent(K: OrientedComplex) -> bool:
    """Check that the stored signs induce opposite orientations on every ridge."""
    KB = K.base
    if KB.dim == 0:
        return int(K.signs.sum()) == 0
    ok, _, pa, pb, oa, ob = _ridge_pairs(KB)
    if not ok:
        return False
    rel = np.where((oa.astype(np.int16) + ob) % 2 == 0, -1, 1)
    return bool(np.all(K.signs[pb] == rel * K.signs[pa]))


# ---------------------------------------------------------------------------
# central (stellar) subdivision

def central_subdivision(K: OrientedComplex, facet):
    """Replace one facet by the cone over its boundary from a new vertex.

    Returns (subdivided complex, new vertex id).  The cone facets are appended
    in the order of the omitted vertex and inherit the signs forced by their
    ridge with the rest of the complex.
    """
    if not isinstance(K, OrientedComplex):
        raise TypeError("central_subdivision needs an oriented complex")
    KB = K.base
    try:
        idx = KB.facet_index(facet)
    except KeyError:
        raise ValueError(f"facet {tuple(facet)} not in complex") from None
    n = KB.dim
    w = n + 1
    new_vertex = KB.num_vertices
    old = KB.facets[idx]
    s = int(K.signs[idx])
    cone = np.empty((w, w), dtype=np.int64)
    cone_signs = np.empty(w, dtype=np.int8)
    for i in range(w):
        cone[i, :n] = np.concatenate([old[:i], old[i + 1:]])
        cone[i, n] = new_vertex
        # ridge old-minus-vertex-i sits at the last position of the cone facet;
        # matching its induced sign from the removed facet forces the cone sign
        cone_signs[i] = s if (n + i) % 2 == 0 else -s
    facets = np.vstack([KB.facets[:idx], KB.facets[idx + 1:], cone])
    signs = np.concatenate([K.signs[:idx], K.signs[idx + 1:], cone_signs])
    labels = None
    if KB.labels is not None:
        labels = KB.labels + (f"w{new_vertex}",)
    base = SimplicialComplex(KB.num_vertices + 1, facets, labels=labels, validate=False)
    return OrientedComplex(base, signs), new_vertex


# ---------------------------------------------------------------------------
# links

def vertex_link(K, v: int) -> SimplicialComplex:
    """Link of a vertex: facets containing v with v removed, densely re-indexed."""
    KB = as_complex(K)
    if not 0 <= v < KB.num_vertices:
        raise ValueError(f"vertex {v} out of range")
    if KB.dim == 0:
        raise ValueError("links of 0-dimensional complexes are empty")
    mask = np.any(KB.facets == v, axis=1)
    rows = KB.facets[mask]
    rows = rows[rows != v].reshape(rows.shape[0], KB.dim)
    used = np.unique(rows)
    remap = np.empty(KB.num_vertices, dtype=np.int64)
    remap[used] = np.arange(len(used))
    labels = None
    if KB.labels is not None:
        labels = tuple(KB.labels[int(u)] for u in used)
    return SimplicialComplex(len(used), remap[rows], labels=labels, validate=False)
