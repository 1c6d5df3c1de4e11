import itertools
import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coupledemb.simplicial import (
    ComplexTooLargeError,
    DeletedJoinPoint,
    EmptyComplexError,
    RealizedPoint,
    SimplicialComplex,
    SimplicialError,
    crosspolytope_chart,
    deleted_join,
    dist_to_subcomplex,
    from_facets,
    full_simplex,
    join,
    named,
    project_to_simplex,
    skeleton,
    three_points_power,
)

from helpers import (
    complexes_isomorphic,
    icosahedron_quotient_facets,
    qp_face_distance,
)


def masks_to_sets(masks):
    return sorted(tuple(i + 1 for i in range(64) if m >> i & 1) for m in masks)


def generic_minimal_nonfaces(K):
    """Strip the structured rule and enumerate from the facets alone."""
    bare = from_facets(K.n, K.facet_sets())
    return bare.minimal_nonfaces()


class TestConstruction:
    def test_downward_closure_example(self):
        K = from_facets(3, [{1, 2}, {2, 3}])
        assert masks_to_sets(K.faces()) == [(), (1,), (1, 2), (2,), (2, 3), (3,)]

    def test_full_simplex(self):
        K = from_facets(3, [{1, 2, 3}])
        assert len(K.faces()) == 8
        assert K.dim() == 2

    def test_contained_facets_dropped(self):
        K = from_facets(3, [{1, 2}, {1}, {1, 2}])
        assert K.facet_sets() == [(1, 2)]

    def test_errors(self):
        with pytest.raises(SimplicialError):
            from_facets(0, [])
        with pytest.raises(SimplicialError):
            from_facets(3, [{4}])
        with pytest.raises(SimplicialError):
            from_facets(3, [set()])

    def test_canonical_order_deterministic(self):
        K1 = from_facets(4, [{3, 4}, {1, 2}])
        K2 = from_facets(4, [{1, 2}, {3, 4}])
        assert K1.facets == K2.facets

    def test_json_round_trip(self):
        K = named("rp2_6")
        K2 = SimplicialComplex.from_json(json.loads(json.dumps(K.to_json())))
        assert K2.facets == K.facets and K2.n == K.n


class TestNamed:
    def test_rp2_matches_icosahedron_quotient(self):
        K = named("rp2_6")
        oracle = icosahedron_quotient_facets()
        assert len(K.facets) == 10
        assert complexes_isomorphic(K.facet_sets(), oracle, 6)

    def test_rp2_counts_and_euler(self):
        K = named("rp2_6")
        assert K.f_vector() == (6, 15, 10)
        assert K.euler_characteristic() == 1
        # complete 1-skeleton: every pair of vertices spans an edge
        for pair in itertools.combinations(range(1, 7), 2):
            assert K.is_face(pair)

    def test_rp2_vertex_links_are_5_cycles(self):
        K = named("rp2_6")
        for v in range(1, 7):
            star = [set(f) - {v} for f in K.facet_sets() if v in f]
            assert len(star) == 5
            degree = Counter(u for e in star for u in e)
            assert set(degree.values()) == {2}

    def test_cp2_counts_and_euler(self):
        K = named("cp2_9")
        assert K.n == 9
        assert len(K.facets) == 36
        assert K.dim() == 4
        assert K.euler_characteristic() == 3

    def test_cp2_pseudomanifold(self):
        K = named("cp2_9")
        ridges = Counter()
        for f in K.facet_sets():
            for r in itertools.combinations(f, 4):
                ridges[r] += 1
        assert set(ridges.values()) == {2}

    def test_cp2_three_neighborly(self):
        K = named("cp2_9")
        for triple in itertools.combinations(range(1, 10), 3):
            assert K.is_face(triple)

    def test_named_nonfaces_pairwise_intersect(self):
        for ident in ("rp2_6", "cp2_9"):
            mnf = named(ident).minimal_nonfaces()
            assert all(a & b for a, b in itertools.combinations(mnf, 2))

    def test_unknown_id(self):
        with pytest.raises(SimplicialError):
            named("nope")


class TestSkeleton:
    def test_skeleton_4_1(self):
        K = skeleton(4, 1)
        faces = masks_to_sets(K.faces())
        assert all(len(f) <= 2 for f in faces)
        assert len(faces) == 1 + 5 + 10

    def test_full_skeleton_is_simplex(self):
        assert skeleton(2, 2).facets == full_simplex(2).facets

    def test_bad_range(self):
        with pytest.raises(SimplicialError):
            skeleton(2, 3)

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_minimal_nonfaces_match_generic(self, k):
        K = skeleton(2 * k + 2, k)
        rule = K.minimal_nonfaces()
        assert rule == generic_minimal_nonfaces(K)
        assert all(bin(m).count("1") == k + 2 for m in rule)


class TestJoin:
    def test_two_points_make_an_edge(self):
        K = join(from_facets(1, [{1}]), from_facets(1, [{1}]))
        assert masks_to_sets(K.facets) == [(1, 2)]

    def test_three_by_three_is_k33(self):
        K = join(from_facets(3, [{1}, {2}, {3}]), from_facets(3, [{1}, {2}, {3}]))
        faces = [f for f in masks_to_sets(K.faces()) if len(f) == 2]
        assert len(faces) == 9
        assert all(f[0] <= 3 < f[1] for f in faces)
        assert K.dim() == 1

    def test_dimension_additive(self):
        K = join(skeleton(2, 0), skeleton(2, 0))
        assert K.dim() == 1

    def test_join_minimal_nonfaces_match_generic(self):
        K = join(skeleton(3, 1), from_facets(3, [{1}, {2}, {3}]))
        assert K.minimal_nonfaces() == generic_minimal_nonfaces(K)


class TestThreePointsPower:
    def test_k0(self):
        K = three_points_power(0)
        assert masks_to_sets(K.facets) == [(1,), (2,), (3,)]

    def test_k1_is_k33(self):
        K = three_points_power(1)
        assert K.n == 6 and K.dim() == 1
        assert len([f for f in K.faces() if bin(f).count("1") == 2]) == 9

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_minimal_nonfaces_are_block_pairs(self, k):
        K = three_points_power(k)
        mnf = masks_to_sets(K.minimal_nonfaces())
        expected = sorted(
            (3 * b + i, 3 * b + j)
            for b in range(k + 1)
            for i, j in [(1, 2), (1, 3), (2, 3)]
        )
        assert mnf == expected
        if K.n <= 12:
            assert K.minimal_nonfaces() == generic_minimal_nonfaces(K)


class TestDeletedJoin:
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_simplex_deleted_join_is_crosspolytope(self, n):
        DJ = deleted_join(full_simplex(n))
        assert len(DJ.facets) == 2 ** (n + 1)
        assert DJ.euler_characteristic() == 1 + (-1) ** n  # chi of S^n

    def test_point(self):
        DJ = deleted_join(from_facets(1, [{1}]))
        assert masks_to_sets(DJ.facets) == [(1,), (2,)]

    @pytest.mark.parametrize(
        "K", [skeleton(2, 0), skeleton(3, 1), three_points_power(1)]
    )
    def test_f_vector_matches_pair_enumeration(self, K):
        DJ = deleted_join(K)
        # oracle: classify all subsets of the doubled ground set directly
        face_set = set(K.faces())
        low = (1 << K.n) - 1
        count = Counter()
        for m in range(1, 1 << (2 * K.n)):
            s, t = m & low, m >> K.n
            if s in face_set and t in face_set and s & t == 0:
                count[bin(m).count("1") - 1] += 1
        assert DJ.f_vector() == tuple(count[k] for k in range(DJ.dim() + 1))


class TestEnumerationGuards:
    def test_large_generic_enumeration_refused(self):
        K = skeleton(18, 8)
        assert len(K.minimal_nonfaces()) == 92378  # closed-form rule is fine
        with pytest.raises(ComplexTooLargeError):
            from_facets(K.n, K.facet_sets()).minimal_nonfaces()

    def test_faces_guard(self):
        with pytest.raises(ComplexTooLargeError):
            skeleton(18, 8).faces()


class TestDistance:
    def test_vertex_membership(self):
        K = from_facets(3, [{1}, {2, 3}])
        assert dist_to_subcomplex(np.array([1.0, 0, 0]), K) == 0.0

    def test_edge_projection_closed_form(self):
        K = from_facets(3, [{2, 3}])
        d = dist_to_subcomplex(np.array([1.0, 0, 0]), K)
        assert abs(d - np.sqrt(1.5)) < 1e-12

    def test_empty_complex(self):
        with pytest.raises(EmptyComplexError):
            dist_to_subcomplex(np.zeros(2), SimplicialComplex(2, ()))

    @pytest.mark.parametrize("ident", ["rp2_6", "cp2_9"])
    def test_matches_qp_oracle(self, ident):
        K = named(ident)
        rng = np.random.default_rng(3)
        for _ in range(10):
            x = rng.normal(size=K.n)
            want = min(qp_face_distance(x, f) for f in K.facet_sets())
            assert abs(dist_to_subcomplex(x, K) - want) < 1e-6

    def test_lipschitz(self):
        K = named("rp2_6")
        rng = np.random.default_rng(11)
        for _ in range(200):
            x, y = rng.normal(size=6), rng.normal(size=6)
            dx, dy = dist_to_subcomplex(x, K), dist_to_subcomplex(y, K)
            assert abs(dx - dy) <= np.linalg.norm(x - y) + 1e-12


class TestSimplexProjection:
    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=8))
    @settings(max_examples=200, deadline=None)
    def test_projection_lands_on_simplex(self, values):
        p = project_to_simplex(np.array(values))
        assert np.all(p >= 0)
        assert abs(p.sum() - 1) < 1e-9

    def test_idempotent_on_simplex_points(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            v = rng.dirichlet(np.ones(5))
            assert np.allclose(project_to_simplex(v), v, atol=1e-12)

    def test_optimality_against_qp(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            v = rng.normal(size=4)
            p = project_to_simplex(v)
            d = float(np.linalg.norm(v - p))
            assert abs(d - qp_face_distance(v, [1, 2, 3, 4])) < 1e-6


class TestChart:
    def test_pure_positive(self):
        pt = crosspolytope_chart(2).to_join(np.array([1.0, 0, 0]))
        assert pt.lambda1 == 1.0 and pt.lambda2 == 0.0
        assert pt.p1.support == (1,) and pt.p2 is None

    def test_symmetric_split(self):
        pt = crosspolytope_chart(2).to_join(np.array([0.5, -0.5, 0.0]))
        assert pt.lambda1 == 0.5 and pt.lambda2 == 0.5
        assert pt.p1.support == (1,) and pt.p2.support == (2,)

    def test_round_trip(self):
        chart = crosspolytope_chart(4)
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(10_000):
            z = rng.normal(size=5)
            z /= np.linalg.norm(z)
            back = chart.to_sphere(chart.to_join(z))
            worst = max(worst, float(np.max(np.abs(back - z))))
        assert worst < 1e-12

    def test_equivariance_exact(self):
        chart = crosspolytope_chart(3)
        rng = np.random.default_rng(8)
        for _ in range(100):
            z = rng.normal(size=4)
            a = chart.to_join(z)
            b = chart.to_join(-z)
            assert b == a.swap()

    def test_zero_vector_rejected(self):
        with pytest.raises(SimplicialError):
            crosspolytope_chart(2).to_join(np.zeros(3))


class TestRealizedPoints:
    def test_weight_validation(self):
        with pytest.raises(SimplicialError):
            RealizedPoint((1, 2), (0.5, 0.2))
        with pytest.raises(SimplicialError):
            RealizedPoint((1,), (0.0,))

    def test_disjoint_support_required(self):
        p = RealizedPoint((1,), (1.0,))
        with pytest.raises(SimplicialError):
            DeletedJoinPoint(0.5, 0.5, p, p)

    def test_weight_presence(self):
        with pytest.raises(SimplicialError):
            DeletedJoinPoint(1.0, 0.0, None, None)
