"""Simplicial maps, their validity, composition, joins, and the signed-count degree."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .complexes import (
    OrientedComplex,
    SimplicialComplex,
    SphereMapError,
    as_complex,
    as_oriented,
    join,
    simplex_boundary,
    cycle,
)


class InvalidMapError(SphereMapError):
    pass


class SimplicialMap:
    """A vertex assignment between two complexes.

    Source and target may be plain or oriented complexes; degree computations
    require oriented ones.  The assignment is a total map on source vertices.
    """

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source, target, assignment, validate=True):
        assignment = np.ascontiguousarray(np.asarray(assignment, dtype=np.int64))
        sc, tc = as_complex(source), as_complex(target)
        if assignment.shape != (sc.num_vertices,):
            raise ValueError("assignment must cover every source vertex")
        if assignment.min() < 0 or assignment.max() >= tc.num_vertices:
            raise ValueError("assignment hits a vertex outside the target")
        self.source = source
        self.target = target
        assignment.flags.writeable = False
        self.assignment = assignment
        if validate:
            check = validate_map(self)
            if not check.ok:
                raise InvalidMapError(check.message)

    @property
    def source_complex(self) -> SimplicialComplex:
        return as_complex(self.source)

    @property
    def target_complex(self) -> SimplicialComplex:
        return as_complex(self.target)

    def __call__(self, v: int) -> int:
        return int(self.assignment[v])

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (self.source_complex == other.source_complex
                and self.target_complex == other.target_complex
                and np.array_equal(self.assignment, other.assignment))

    def __repr__(self):
        return (f"SimplicialMap({self.source_complex.num_vertices} vertices -> "
                f"{self.target_complex.num_vertices} vertices)")


@dataclass(frozen=True)
class MapCheck:
    ok: bool
    message: str

    def __bool__(self):
        return self.ok


def validate_map(f: SimplicialMap) -> MapCheck:
    """Check that the image of every source facet is a face of the target."""
    sc, tc = f.source_complex, f.target_complex
    img = f.assignment[sc.facets]
    img = np.sort(img, axis=1)
    distinct = np.unique(img, axis=0)
    # vertex -> target facet ids, for subset queries
    incidence = [set() for _ in range(tc.num_vertices)]
    for i, row in enumerate(tc.facets):
        for v in row:
            incidence[int(v)].add(i)
    for row in distinct:
        verts = sorted(set(int(v) for v in row))
        carriers = incidence[verts[0]].copy()
        for v in verts[1:]:
            carriers &= incidence[v]
            if not carriers:
                break
        if not carriers:
            where = np.flatnonzero(np.all(img == row, axis=1))[0]
            facet = tuple(int(v) for v in sc.facets[where])
            return MapCheck(False, f"image {tuple(verts)} of facet {facet} is not a face of the target")
    return MapCheck(True, "")


def _oriented_pair(f: SimplicialMap):
    if not isinstance(f.source, OrientedComplex) or not isinstance(f.target, OrientedComplex):
        raise InvalidMapError("degree needs oriented source and target")
    return f.source, f.target


def _image_table(f: SimplicialMap):
    """Kernel pass: per source facet, lex target row index and sorting parity."""
    tc = f.target_complex
    tgt_lex = np.ascontiguousarray(tc.facets[tc.lex_order()])
    idx, parity = kernels.facet_image_lookup(f.source_complex.facets, f.assignment, tgt_lex)
    return idx, parity, tgt_lex


def facet_sign(f: SimplicialMap, facet) -> int:
    """Sign of one source facet: 0 if its image is degenerate, else the product
    of the source sign, the image facet's target sign, and the permutation parity."""
    so, to = _oriented_pair(f)
    sc, tc = so.base, to.base
    if sc.dim != tc.dim:
        raise InvalidMapError("facet signs need equal dimensions")
    i = sc.facet_index(facet)
    row = sc.facets[i]
    img = f.assignment[row]
    if len(set(img.tolist())) < len(img):
        return 0
    inv = sum(1 for a in range(len(img)) for b in range(a + 1, len(img)) if img[a] > img[b])
    parity = 1 if inv % 2 == 0 else -1
    key = tuple(int(v) for v in np.sort(img))
    try:
        j = tc.facet_index(key)
    except KeyError:
        raise InvalidMapError(f"image {key} is not a target facet") from None
    return int(so.signs[i]) * int(to.signs[j]) * parity


@dataclass(frozen=True)
class DegreeReport:
    """Signed preimage counts for every target facet.

    consistent is True when all per-facet signed counts agree; degree is that
    common value.  degenerate_count tallies source facets with degenerate image.
    """

    degree: int
    per_target_facet: tuple
    consistent: bool
    degenerate_count: int


def degree(f: SimplicialMap) -> DegreeReport:
    """Signed count of preimage facets, evaluated over every target facet."""
    so, to = _oriented_pair(f)
    sc, tc = so.base, to.base
    if sc.dim != tc.dim:
        raise InvalidMapError("degree needs equal dimensions")
    idx, parity, tgt_lex = _image_table(f)
    if np.any(idx == -2):
        bad = int(np.flatnonzero(idx == -2)[0])
        facet = tuple(int(v) for v in sc.facets[bad])
        raise InvalidMapError(f"facet {facet} has a nondegenerate image that is no target facet")
    lex = tc.lex_order()
    tgt_signs = to.signs[lex].astype(np.int64)
    nd = idx >= 0
    signs = parity[nd].astype(np.int64) * so.signs[nd.nonzero()[0]] * tgt_signs[idx[nd]]
    where = idx[nd]
    mt = tc.num_facets
    pos = np.bincount(where[signs > 0], minlength=mt)
    neg = np.bincount(where[signs < 0], minlength=mt)
    net = pos - neg
    consistent = bool(np.all(net == net[0]))
    per_facet = tuple(
        (tuple(int(v) for v in tgt_lex[t]), int(pos[t]), int(neg[t])) for t in range(mt)
    )
    return DegreeReport(int(net[0]), per_facet, consistent, int((~nd).sum()))


def facet_signs_all(f: SimplicialMap) -> np.ndarray:
    """Signs of all source facets in storage order (0 for degenerate images)."""
    so, to = _oriented_pair(f)
    idx, parity, _ = _image_table(f)
    tgt_signs = to.signs[to.base.lex_order()].astype(np.int64)
    out = np.zeros(so.num_facets, dtype=np.int64)
    nd = idx >= 0
    out[nd] = parity[nd].astype(np.int64) * so.signs[nd.nonzero()[0]] * tgt_signs[idx[nd]]
    return out


# ---------------------------------------------------------------------------
# constructors and combinators

def identity_map(K) -> SimplicialMap:
    KC = as_complex(K)
    return SimplicialMap(K, K, np.arange(KC.num_vertices), validate=False)


def constant_map(K, vertex: int = 0) -> SimplicialMap:
    """Everything to one target vertex (always simplicial)."""
    KC = as_complex(K)
    return SimplicialMap(K, K, np.full(KC.num_vertices, vertex), validate=False)


def compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """g after f.  The middle complexes must agree as oriented complexes
    (equal facet sets and, when both oriented, equal signs facet-by-facet)."""
    mid_f, mid_g = f.target, g.source
    if as_complex(mid_f) != as_complex(mid_g):
        raise InvalidMapError("compose: target of f differs from source of g")
    if isinstance(mid_f, OrientedComplex) and isinstance(mid_g, OrientedComplex):
        if mid_f.sign_map() != mid_g.sign_map():
            raise InvalidMapError("compose: middle orientations disagree")
    return SimplicialMap(f.source, g.target, g.assignment[f.assignment], validate=False)


def join_maps(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """The map f*g on the joins, f on the first vertex block and g on the second."""
    source = join(f.source, g.source)
    target = join(f.target, g.target)
    shift = as_complex(f.target).num_vertices
    assignment = np.concatenate([f.assignment, g.assignment + shift])
    return SimplicialMap(source, target, assignment, validate=False)


def wrap_map(source_size: int, m: int) -> SimplicialMap:
    """cycle(a*m) -> cycle(m), vertex i to i mod m; degree a, every edge positive."""
    if m < 3:
        raise ValueError("target cycle needs at least 3 vertices")
    if source_size % m != 0 or source_size < m:
        raise ValueError(f"source size {source_size} is not a positive multiple of {m}")
    return SimplicialMap(cycle(source_size), cycle(m), np.arange(source_size) % m, validate=False)


def reflect(K) -> SimplicialMap:
    """Reflection i -> (m - i) mod m of a cycle; degree -1."""
    KC = as_complex(K)
    if not _is_cycle(KC):
        raise ValueError("reflect expects a cycle complex")
    m = KC.num_vertices
    K_or = K if isinstance(K, OrientedComplex) else as_oriented(K)
    return SimplicialMap(K_or, K_or, (m - np.arange(m)) % m, validate=False)


def _is_cycle(KC: SimplicialComplex) -> bool:
    if KC.dim != 1 or KC.num_facets != KC.num_vertices:
        return False
    deg = np.bincount(KC.facets.ravel(), minlength=KC.num_vertices)
    return bool(np.all(deg == 2))


def swap_automorphism(K, u: int, v: int) -> SimplicialMap:
    """Transposition of two vertices; an automorphism when it maps facets to facets."""
    KC = as_complex(K)
    perm = np.arange(KC.num_vertices)
    perm[u], perm[v] = v, u
    return SimplicialMap(K, K, perm)


def collapse_map(k: int, m: int) -> SimplicialMap:
    """Degree-1 collapse of the join of two standard spheres onto one.

    simplex_boundary(k) * simplex_boundary(m) -> simplex_boundary(k+m+1),
    sending a_i -> c_i and b_j -> c_(k+1+j); the images of a_(k+1) and b_0
    coincide.  The sign is normalized to +1 by precomposing with a vertex
    transposition of the source when needed.
    """
    return collapse_map_normalized(k, m)[0]


def collapse_map_normalized(k: int, m: int):
    """collapse_map plus whether the (0, 1) source transposition was applied."""
    if k < 0 or m < 0:
        raise ValueError("sphere dimensions must be >= 0")
    A = simplex_boundary(k, labels=tuple(f"a{i}" for i in range(k + 2)))
    B = simplex_boundary(m, labels=tuple(f"b{j}" for j in range(m + 2)))
    source = join(A, B)
    target = simplex_boundary(k + m + 1, labels=tuple(f"c{t}" for t in range(k + m + 3)))
    assignment = np.concatenate([np.arange(k + 2), np.arange(m + 2) + (k + 1)])
    f = SimplicialMap(source, target, assignment, validate=False)
    d = degree(f)
    if not d.consistent or abs(d.degree) != 1:
        raise SphereMapError("collapse construction lost degree +-1")  # pragma: no cover
    swapped = d.degree == -1
    if swapped:
        f = compose(swap_automorphism(source, 0, 1), f)
    return f, swapped
