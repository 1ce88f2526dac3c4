import numpy as np
import pytest

import spheremap as sm
from oracles import rank_over_Q
from spheremap.homology import (
    boundary_matrix,
    degree_via_homology,
    fundamental_class,
    homology,
    verify_sphere_evidence,
)


def dense_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


class TestBoundaryMatrix:
    def test_cycle3_rank(self):
        B = boundary_matrix(sm.cycle(3), 1)
        assert B.shape == (3, 3)
        M = B.dense()
        assert all(sum(col) == 0 for col in zip(*M))
        assert rank_over_Q(M) == 2

    def test_simplex_boundary_1_same_as_cycle(self):
        # S^1_3 is the triangle; same boundary matrix as cycle(3)
        assert boundary_matrix(sm.simplex_boundary(1), 1).dense() == \
            boundary_matrix(sm.cycle(3), 1).dense()

    @pytest.mark.parametrize("K", [
        sm.simplex_boundary(2), sm.simplex_boundary(3),
        sm.join(sm.cycle(3), sm.cycle(4)),
    ])
    def test_dd_zero(self, K):
        KC = K.base
        for k in range(2, KC.dim + 1):
            B1 = boundary_matrix(KC, k - 1).dense()
            B2 = boundary_matrix(KC, k).dense()
            prod = dense_mul(B1, B2)
            assert all(all(x == 0 for x in row) for row in prod)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            boundary_matrix(sm.cycle(3), 2)


class TestHomology:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_spheres(self, n):
        H = homology(sm.simplex_boundary(n))
        assert H.is_sphere(n)
        assert str(H) == "(" + ", ".join(
            ["Z"] + ["0"] * (n - 1) + ["Z"]) + ")"

    def test_point_pair(self):
        H = homology(sm.simplex_boundary(0))
        assert H.is_sphere(0)
        assert H.betti(0) == 2

    def test_join_of_cycles_is_s3(self):
        H = homology(sm.join(sm.cycle(4), sm.cycle(5)))
        assert H.is_sphere(3)

    def test_rp2(self, rp2):
        H = homology(rp2)
        assert H.betti(0) == 1 and H.betti(1) == 0 and H.betti(2) == 0
        assert H.torsion(1) == (2,)
        assert not H.is_sphere(2)

    def test_betti_sum_is_euler(self, rp2):
        for K in (rp2, sm.join(sm.cycle(3), sm.cycle(3)).base,
                  sm.simplex_boundary(4).base):
            assert homology(K).euler_characteristic == sm.euler_characteristic(K)

    def test_boundary_snf_matches_sympy(self, rp2):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form as sympy_snf

        from spheremap.snf import smith_normal_form

        for K in (rp2, sm.join(sm.cycle(3), sm.cycle(4)).base):
            for k in range(1, K.dim + 1):
                B = boundary_matrix(K, k)
                mine = smith_normal_form(B.entries(), shape=B.shape)
                S = sympy_snf(sympy.Matrix(B.dense()))
                diag = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)
                assert sorted(mine.invariant_factors) == diag


class TestFundamentalClass:
    def test_s2_alternating(self):
        fc = fundamental_class(sm.simplex_boundary(2))
        assert sorted(fc.tolist()) == [-1, -1, 1, 1]

    def test_join_cycle(self):
        J = sm.join(sm.cycle(3), sm.cycle(3))
        fc = fundamental_class(J)
        assert len(fc) == 9
        B = boundary_matrix(J.base, 3)
        assert np.all(B.matvec(fc) == 0)

    def test_incoherent_signs_rejected(self):
        S = sm.simplex_boundary(2)
        bad = sm.OrientedComplex(S.base, np.abs(S.signs))  # all +1: not a cycle
        with pytest.raises(sm.SphereMapError):
            fundamental_class(bad)

    def test_single_simplex_has_boundary(self):
        K = sm.SimplicialComplex(3, [(0, 1, 2)])
        with pytest.raises(sm.SphereMapError):
            fundamental_class(sm.OrientedComplex(K, [1]))


class TestDegreeViaHomology:
    def test_identity(self):
        assert degree_via_homology(sm.identity_map(sm.simplex_boundary(3))) == 1

    def test_wrap(self):
        assert degree_via_homology(sm.wrap_map(9, 3)) == 3

    def test_collapse(self):
        assert degree_via_homology(sm.collapse_map(1, 1)) == 1

    def test_constant(self):
        assert degree_via_homology(sm.constant_map(sm.simplex_boundary(2), 0)) == 0

    def test_agrees_with_signed_count(self):
        maps = [
            sm.wrap_map(12, 4),
            sm.reflect(sm.cycle(5)),
            sm.join_maps(sm.wrap_map(6, 3), sm.wrap_map(9, 3)),
            sm.compose(sm.wrap_map(12, 6), sm.wrap_map(6, 3)),
            sm.collapse_map(2, 1),
        ]
        for f in maps:
            assert degree_via_homology(f) == sm.degree(f).degree


class TestVertexLink:
    def test_link_is_sphere_in_join(self):
        J = sm.join(sm.cycle(3), sm.cycle(4))
        link = sm.vertex_link(J, 0)  # a cycle(3) vertex: edge pair * cycle(4)
        assert link.num_vertices == 6
        assert link.dim == 2
        assert homology(link).is_sphere(2)

    def test_star_shape(self):
        J = sm.join(sm.cycle(3), sm.cycle(4))
        link = sm.vertex_link(J, 0)
        assert link.num_facets == 8  # 2 points * 4 edges


class TestSphereEvidence:
    def test_join_passes(self):
        ev = verify_sphere_evidence(sm.join(sm.cycle(3), sm.cycle(3)), depth=1)
        assert ev.ok
        assert ev.pseudomanifold and ev.orientable and ev.homology_is_sphere
        assert ev.links_checked == 6 and not ev.link_failures

    def test_rp2_fails(self, rp2):
        ev = verify_sphere_evidence(rp2, depth=0)
        assert not ev.ok
        assert ev.orientable is False
        assert ev.homology_is_sphere is False

    def test_open_complex_fails(self):
        ev = verify_sphere_evidence(sm.SimplicialComplex(3, [(0, 1, 2)]), depth=0)
        assert not ev.ok
        assert not ev.pseudomanifold

    def test_budget_skips_recorded(self):
        K = sm.join(sm.cycle(3), sm.cycle(3))
        ev = verify_sphere_evidence(K, depth=1, facet_budget=4)
        assert ev.homology_is_sphere is None
        assert ev.skipped
        assert ev.ok  # combinatorial checks still pass; skips are not failures

    def test_incoherent_stored_signs_fail_evidence(self):
        S = sm.simplex_boundary(3)
        bad = sm.OrientedComplex(S.base, np.abs(S.signs))
        ev = verify_sphere_evidence(bad, depth=0)
        assert ev.orientable is False
        assert not ev.ok

    def test_depth_zero_skips_links(self):
        ev = verify_sphere_evidence(sm.simplex_boundary(3), depth=0)
        assert ev.links_checked == 0
        assert ev.ok

    def test_torus_fails_homology(self):
        # the 7-vertex Csaszar torus: closed and orientable, but b_1 = 2
        facets = sorted({tuple(sorted(((i % 7), (i + a) % 7, (i + b) % 7)))
                         for i in range(7) for a, b in ((1, 3), (2, 3))})
        K = sm.SimplicialComplex(7, facets)
        assert sm.is_closed_pseudomanifold(K).ok  # guards the fixture
        H = homology(K)
        assert H.betti(1) == 2
        ev = verify_sphere_evidence(K, depth=0)
        assert ev.pseudomanifold and ev.orientable
        assert ev.homology_is_sphere is False
