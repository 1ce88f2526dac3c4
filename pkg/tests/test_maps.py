import numpy as np
import pytest

import spheremap as sm
from oracles import brute_degree, brute_signed_counts


def oracle_degree(f):
    """Signed count recomputed from scratch, independent of the kernels."""
    so, to = f.source, f.target
    return brute_degree(so.base.facet_tuples(), so.signs.tolist(),
                        to.base.facet_tuples(), to.signs.tolist(),
                        f.assignment.tolist())


class TestValidate:
    def test_identity_valid(self):
        assert sm.validate_map(sm.identity_map(sm.simplex_boundary(3))).ok

    def test_constant_valid(self):
        assert sm.validate_map(sm.constant_map(sm.simplex_boundary(3), 0)).ok

    def test_edge_to_nonedge_invalid(self):
        f = sm.SimplicialMap(sm.cycle(4), sm.cycle(4), [0, 2, 0, 2], validate=False)
        chk = sm.validate_map(f)
        assert not chk.ok
        assert "facet" in chk.message

    def test_constructor_validates(self):
        with pytest.raises(sm.InvalidMapError):
            sm.SimplicialMap(sm.cycle(4), sm.cycle(4), [0, 2, 0, 2])


class TestFacetSign:
    def test_identity_positive(self):
        S = sm.simplex_boundary(2)
        for facet in S.base.facet_tuples():
            assert sm.facet_sign(sm.identity_map(S), facet) == 1

    def test_reflection_all_negative(self):
        f = sm.reflect(sm.cycle(3))
        for facet in f.source.base.facet_tuples():
            assert sm.facet_sign(f, facet) == -1

    def test_degenerate_zero(self):
        S = sm.simplex_boundary(3)
        f = sm.constant_map(S, 0)
        assert sm.facet_sign(f, (0, 1, 2, 3)) == 0


class TestDegree:
    def test_identity(self):
        for n in range(1, 5):
            rep = sm.degree(sm.identity_map(sm.simplex_boundary(n)))
            assert rep.degree == 1 and rep.consistent

    def test_constant_zero(self):
        rep = sm.degree(sm.constant_map(sm.simplex_boundary(3), 0))
        assert rep.degree == 0 and rep.consistent
        assert rep.degenerate_count == 5

    def test_wrap_9_3_oracle(self):
        f = sm.wrap_map(9, 3)
        rep = sm.degree(f)
        assert oracle_degree(f) == 3
        assert rep.degree == 3 and rep.consistent
        # every target edge has exactly 3 preimages, all positive
        for _, pos, neg in rep.per_target_facet:
            assert (pos, neg) == (3, 0)

    def test_per_facet_counts_match_oracle(self):
        f = sm.join_maps(sm.wrap_map(6, 3), sm.reflect(sm.cycle(4)))
        rep = sm.degree(f)
        oracle = brute_signed_counts(
            f.source.base.facet_tuples(), f.source.signs.tolist(),
            f.target.base.facet_tuples(), f.target.signs.tolist(),
            f.assignment.tolist())
        assert {facet: (p, n) for facet, p, n in rep.per_target_facet} == oracle

    def test_kernel_path_matches_oracle_at_scale(self):
        # 3600 facets through the compiled kernel vs the from-scratch count
        f = sm.join_maps(sm.wrap_map(60, 3), sm.wrap_map(60, 3))
        rep = sm.degree(f)
        assert rep.degree == 400 and rep.consistent
        assert oracle_degree(f) == 400

    def test_dimension_mismatch(self):
        f = sm.SimplicialMap(sm.join(sm.cycle(3), sm.cycle(3)), sm.cycle(3),
                             [0, 1, 2, 0, 1, 2], validate=False)
        with pytest.raises(sm.InvalidMapError):
            sm.degree(f)


class TestCompose:
    def test_identity_neutral(self):
        f = sm.wrap_map(9, 3)
        assert sm.compose(sm.identity_map(f.source), f) == f

    def test_wrap_chain(self):
        f = sm.compose(sm.wrap_map(12, 6), sm.wrap_map(6, 3))
        assert sm.degree(f).degree == 4
        assert oracle_degree(f) == 4

    def test_wrap_then_identity_wrap(self):
        f = sm.compose(sm.wrap_map(9, 3), sm.wrap_map(3, 3))
        assert sm.degree(f).degree == 3

    def test_mismatched_middle_rejected(self):
        with pytest.raises(sm.InvalidMapError):
            sm.compose(sm.wrap_map(9, 3), sm.wrap_map(8, 4))


class TestJoinMaps:
    def test_degree_multiplies(self):
        f = sm.join_maps(sm.wrap_map(6, 3), sm.wrap_map(6, 3))
        assert sm.degree(f).degree == 4
        assert oracle_degree(f) == 4

    def test_identity_joins_to_identity(self):
        f = sm.join_maps(sm.identity_map(sm.cycle(3)), sm.identity_map(sm.cycle(4)))
        assert sm.degree(f).degree == 1
        assert np.array_equal(f.assignment, np.arange(7))

    def test_with_reflection(self):
        f = sm.join_maps(sm.wrap_map(9, 3), sm.reflect(sm.cycle(3)))
        assert sm.degree(f).degree == -3
        assert oracle_degree(f) == -3


class TestWrap:
    def test_wrap_identity(self):
        f = sm.wrap_map(3, 3)
        assert sm.degree(f).degree == 1

    def test_wrap_not_multiple(self):
        with pytest.raises(ValueError):
            sm.wrap_map(8, 3)

    def test_wrap_positive_preimages(self):
        rep = sm.degree(sm.wrap_map(15, 5))
        for _, pos, neg in rep.per_target_facet:
            assert (pos, neg) == (3, 0)


class TestReflect:
    def test_degree(self):
        assert sm.degree(sm.reflect(sm.cycle(3))).degree == -1
        assert oracle_degree(sm.reflect(sm.cycle(5))) == -1

    def test_involution(self):
        r = sm.reflect(sm.cycle(6))
        assert sm.compose(r, r) == sm.identity_map(r.source)

    def test_rejects_non_cycle(self):
        with pytest.raises(ValueError):
            sm.reflect(sm.simplex_boundary(2))


class TestCollapse:
    @pytest.mark.parametrize("k,m", [(1, 1), (1, 0), (0, 0), (2, 1), (0, 3)])
    def test_degree_one(self, k, m):
        f = sm.collapse_map(k, m)
        assert sm.validate_map(f).ok
        assert sm.degree(f).degree == 1
        assert oracle_degree(f) == 1

    def test_shapes(self):
        f = sm.collapse_map(1, 1)
        assert f.source.num_vertices == 6 and f.source.dim == 3
        assert f.target.num_vertices == 5
        assert f.target.base == sm.simplex_boundary(3).base

    def test_unique_preimage_facet(self):
        # one target facet has exactly one nondegenerate preimage
        f = sm.collapse_map(1, 1)
        rep = sm.degree(f)
        count = {facet: p + n for facet, p, n in rep.per_target_facet}
        assert count[(0, 1, 3, 4)] == 1

    def test_square_to_triangle(self):
        f = sm.collapse_map(0, 0)
        assert f.source.num_facets == 4 and f.target.num_facets == 3
        assert sm.degree(f).degree == 1
