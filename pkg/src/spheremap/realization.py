"""Exact rational convex-polytope realizations with per-facet support certificates.

Everything here runs over Fraction; there is no floating point in this module.
A realization is certified by solving, for each combinatorial facet, the
hyperplane <u, x> = 1 through its vertices and checking <u, w> < 1 strictly
for every other vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import SphereMapError, as_complex, cycle, join_all, simplex_boundary


class RealizationError(SphereMapError):
    pass


@dataclass(frozen=True)
class PolytopeRealization:
    """One exact rational point per vertex; the origin must end up interior."""

    ambient_dim: int
    coordinates: tuple  # tuple of point tuples (Fraction)

    @property
    def num_points(self) -> int:
        return len(self.coordinates)


@dataclass(frozen=True)
class SupportCertificate:
    """Facet normals u with <u, v> = 1 on the facet and <u, w> < 1 elsewhere,
    aligned with the complex's facet storage order."""

    normals: tuple


def _solve_unit_rhs(rows):
    """Solve M u = (1,...,1) over Fractions; None when singular."""
    n = len(rows)
    M = [[Fraction(x) for x in row] + [Fraction(1)] for row in rows]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col]
        M[col] = [x / inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                factor = M[r][col]
                M[r] = [a - factor * b for a, b in zip(M[r], M[col])]
    return tuple(M[r][n] for r in range(n))


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def verify_polytope(R: PolytopeRealization, K) -> SupportCertificate:
    """Support certificate for every facet of K under the coordinates of R.

    Raises RealizationError naming the offending facet/vertex when a facet
    hyperplane is singular, passes through the origin, or fails strictness.
    """
    KC = as_complex(K)
    if KC.num_vertices != R.num_points:
        raise RealizationError("one point per vertex required")
    if KC.dim + 1 != R.ambient_dim:
        raise RealizationError(
            f"complex of dimension {KC.dim} needs ambient dimension {KC.dim + 1}, got {R.ambient_dim}")
    pts = R.coordinates
    for i, p in enumerate(pts):
        if len(p) != R.ambient_dim:
            raise RealizationError(f"point {i} has wrong dimension")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise RealizationError(f"vertices {i} and {j} share coordinates {pts[i]}")
    normals = []
    for row in KC.facets:
        facet = tuple(int(v) for v in row)
        u = _solve_unit_rhs([pts[v] for v in facet])
        if u is None:
            raise RealizationError(f"facet {facet}: singular support system")
        inside = set(facet)
        for w in range(len(pts)):
            if w in inside:
                continue
            val = _dot(u, pts[w])
            if not val < 1:
                raise RealizationError(
                    f"facet {facet}: vertex {w} lies on or beyond its hyperplane (<u,x> = {val})")
        normals.append(tuple(u))
    return SupportCertificate(tuple(normals))


# ---------------------------------------------------------------------------
# constructors

def realize_cycle(k: int, parameters=None) -> PolytopeRealization:
    """k rational points on the unit circle in angular order matching cycle(k).

    Points come from the tangent half-angle map t -> ((1-t^2), 2t)/(1+t^2);
    the default parameters are the symmetric half-integer ladder plus the
    point at infinity (-1, 0), which keeps the origin interior.
    """
    if k < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    if parameters is None:
        parameters = [Fraction(2 * i - (k - 2), 2) for i in range(k - 1)] + [None]
    if len(parameters) != k:
        raise ValueError("one parameter per vertex required")
    pts = []
    for t in parameters:
        if t is None:  # the parameter at infinity
            pts.append((Fraction(-1), Fraction(0)))
        else:
            t = Fraction(t)
            den = 1 + t * t
            pts.append(((1 - t * t) / den, 2 * t / den))
    return PolytopeRealization(2, tuple(pts))


def realize_simplex_boundary(n: int) -> PolytopeRealization:
    """Vertices e_1..e_(n+1) and -(1,...,1) in dimension n+1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    dim = n + 1
    pts = []
    for i in range(dim):
        pts.append(tuple(Fraction(1) if j == i else Fraction(0) for j in range(dim)))
    pts.append(tuple(Fraction(-1) for _ in range(dim)))
    return PolytopeRealization(dim, tuple(pts))


def realize_join(RA: PolytopeRealization, RB: PolytopeRealization) -> PolytopeRealization:
    """Product embedding of a join: A-points at (x, 0), B-points at (0, y).

    Matches the vertex re-indexing of join(): A-vertices first.  The support
    normal of a joined facet is the concatenation (u, v) of the factor normals.
    """
    da, db = RA.ambient_dim, RB.ambient_dim
    zeros_b = tuple(Fraction(0) for _ in range(db))
    zeros_a = tuple(Fraction(0) for _ in range(da))
    pts = [p + zeros_b for p in RA.coordinates] + [zeros_a + q for q in RB.coordinates]
    return PolytopeRealization(da + db, tuple(pts))


def realize_subdivision(R: PolytopeRealization, K, cert: SupportCertificate, facet) -> PolytopeRealization:
    """Pull a new vertex just beyond one facet: the subdivided complex becomes
    the boundary of the enlarged hull.

    The new point is t * barycenter(facet) with 1 < t < min over other facets
    of 1/<u_G, barycenter>; it lies beyond the chosen facet and strictly
    beneath every other one.
    """
    KC = as_complex(K)
    idx = KC.facet_index(facet)
    row = [int(v) for v in KC.facets[idx]]
    w = len(row)
    bary = tuple(sum((R.coordinates[v][j] for v in row), Fraction(0)) / w
                 for j in range(R.ambient_dim))
    t_max = None
    for g, u in enumerate(cert.normals):
        if g == idx:
            continue
        beta = _dot(u, bary)
        if beta > 0:
            bound = 1 / beta
            if t_max is None or bound < t_max:
                t_max = bound
    t = Fraction(3, 2) if t_max is None else (1 + t_max) / 2
    if not t > 1:  # pragma: no cover
        raise RealizationError("no pulling factor above 1; certificate inconsistent")
    new_pt = tuple(t * x for x in bary)
    return PolytopeRealization(R.ambient_dim, R.coordinates + (new_pt,))


def realize_construction(tree) -> PolytopeRealization:
    """Realize a construction tree of cycles, standard spheres, joins, and
    central subdivisions (in recorded order)."""
    op = tree.get("op")
    if op == "cycle":
        return realize_cycle(int(tree["m"]))
    if op == "simplex_boundary":
        return realize_simplex_boundary(int(tree["n"]))
    if op == "join":
        parts = [realize_construction(p) for p in tree["parts"]]
        out = parts[0]
        for p in parts[1:]:
            out = realize_join(out, p)
        return out
    if op == "subdivide":
        R = realize_construction(tree["base"])
        K = complex_of_tree(tree["base"])
        from .complexes import central_subdivision

        for facet in tree["facets"]:
            cert = verify_polytope(R, K)
            R = realize_subdivision(R, K, cert, facet)
            K, _ = central_subdivision(K, facet)
        return R
    raise ValueError(f"unknown construction op {op!r}")


def complex_of_tree(tree):
    """Materialize the complex a construction tree describes (oriented)."""
    op = tree.get("op")
    if op == "cycle":
        return cycle(int(tree["m"]))
    if op == "simplex_boundary":
        return simplex_boundary(int(tree["n"]))
    if op == "join":
        return join_all([complex_of_tree(p) for p in tree["parts"]])
    if op == "subdivide":
        from .complexes import central_subdivision

        K = complex_of_tree(tree["base"])
        for facet in tree["facets"]:
            K, _ = central_subdivision(K, facet)
        return K
    raise ValueError(f"unknown construction op {op!r}")
