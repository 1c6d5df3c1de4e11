import jsonschema
import numpy as np
import pytest

from coupledemb.hopf import ActionSignature
from coupledemb.kneser import chromatic_number, kneser_graph
from coupledemb.maps import (
    Box,
    EquivariantMap,
    Simplex,
    Sphere,
    additive_map,
    compose_bilinear,
    embedding,
    joint_obstruction,
    random_trig,
    simplex_pair_obstruction,
)
from coupledemb.bilinear import scalar
from coupledemb.search import (
    WITNESS_SCHEMA,
    ZERO_SCHEMA,
    ParallelogramWitness,
    SearchError,
    SearchReport,
    ZeroWitness,
    find_equivariant_zero,
    minimize_defect,
    verify_witness,
    witness_to_json,
    zero_to_json,
)
from coupledemb.simplicial import skeleton


def trig_sphere_map(seed):
    return random_trig(seed, Sphere(1), Sphere(2), 3, degree=3)


class TestMinimizeDefect:
    def test_additive_map_immediate_witness(self):
        rng = np.random.default_rng(0)
        f = additive_map(
            Box((-1.0,) * 2, (1.0,) * 2), Box((-1.0,) * 2, (1.0,) * 2),
            rng.normal(size=(3, 2)), rng.normal(size=(3, 2)),
        )
        w = minimize_defect(f, min_sep=0.05, seed=1, starts=5)
        assert isinstance(w, ParallelogramWitness)
        assert w.start_index == 0
        # exact cancellation up to float rounding (the Fraction path is
        # exactly zero; see test_maps)
        assert w.defect_norm < 1e-12

    def test_z2_trig_witness(self):
        f = trig_sphere_map(41)
        w = minimize_defect(f, z2=True, seed=2)
        assert isinstance(w, ParallelogramWitness)
        assert w.defect_norm < 1e-6
        assert "z2_constrained" in w.flags
        assert np.array_equal(np.asarray(w.x2), -np.asarray(w.x1))
        assert np.array_equal(np.asarray(w.y2), -np.asarray(w.y1))
        assert w.sep_x == pytest.approx(np.pi)

    def test_composed_map_reports_no_witness(self):
        f = compose_bilinear(scalar("H", 1), embedding("rp2_r4"), embedding("rp2_r4"))
        r = minimize_defect(f, min_sep=0.1, tol=1e-4, starts=25, seed=3)
        assert isinstance(r, SearchReport)
        assert r.verdict == "NoWitnessBelowTolerance"
        assert r.best_defect >= 1e-4
        assert len(r.per_start) == 25

    def test_deterministic_reports(self):
        f = compose_bilinear(scalar("H", 1), embedding("rp2_r4"), embedding("rp2_r4"))
        a = minimize_defect(f, min_sep=0.1, tol=1e-4, starts=6, seed=4)
        b = minimize_defect(f, min_sep=0.1, tol=1e-4, starts=6, seed=4)
        assert a == b

    def test_deterministic_witnesses(self):
        f = trig_sphere_map(43)
        a = minimize_defect(f, z2=True, seed=5)
        b = minimize_defect(f, z2=True, seed=5)
        assert a == b

    def test_invalid_config(self):
        f = trig_sphere_map(44)
        with pytest.raises(SearchError):
            minimize_defect(f, min_sep=0.0)
        with pytest.raises(SearchError):
            minimize_defect(f, tol=-1.0)
        with pytest.raises(SearchError):
            minimize_defect(f, starts=0)

    def test_z2_needs_spheres(self):
        rng = np.random.default_rng(6)
        f = additive_map(Box((0.0,), (1.0,)), Box((0.0,), (1.0,)),
                         rng.normal(size=(1, 1)), rng.normal(size=(1, 1)))
        with pytest.raises(SearchError):
            minimize_defect(f, z2=True)


class TestVerifyWitness:
    def test_returned_witnesses_verify(self):
        f = trig_sphere_map(45)
        w = minimize_defect(f, z2=True, seed=7)
        assert verify_witness(f, w, tol=1e-6)

    def test_perturbation_fails(self):
        f = trig_sphere_map(46)
        w = minimize_defect(f, z2=True, seed=8)
        rng = np.random.default_rng(9)
        from coupledemb.maps import defect

        for _ in range(50):
            bump = rng.normal(size=2)
            x1 = np.asarray(w.x1) + 1e-2 * bump
            x1 /= np.linalg.norm(x1)
            cand = ParallelogramWitness(
                tuple(x1), w.y1, tuple(-x1), w.y2,
                w.defect_norm, w.sep_x, w.sep_y, w.flags, w.start_index, w.seed,
            )
            moved = float(np.linalg.norm(defect(f, x1, np.asarray(w.y1), -x1, np.asarray(w.y2))))
            if moved > 10 * 1e-6:
                assert not verify_witness(f, cand, tol=1e-6)
                break
        else:
            pytest.fail("no defect-increasing perturbation found")

    def test_z2_flag_requires_exact_antipodes(self):
        f = trig_sphere_map(47)
        w = minimize_defect(f, z2=True, seed=10)
        broken = ParallelogramWitness(
            w.x1, w.y1, tuple(-v * (1 + 1e-12) for v in w.x1), w.y2,
            w.defect_norm, w.sep_x, w.sep_y, w.flags, w.start_index, w.seed,
        )
        assert not verify_witness(f, broken, tol=1e-3)


class TestEquivariantZero:
    def test_simplex_pair_zero_found(self):
        f = random_trig(48, Simplex(3), Simplex(4), 3, degree=2)
        g = simplex_pair_obstruction(f, 2, 3)
        z = find_equivariant_zero(g, seed=11)
        assert isinstance(z, ZeroWitness)
        assert z.norm < 1e-6
        # decoded supports are vertex-disjoint within each factor
        s1 = set(z.join_x.p1.support) if z.join_x.p1 else set()
        s2 = set(z.join_x.p2.support) if z.join_x.p2 else set()
        assert not s1 & s2

    def test_joint_obstruction_zero_and_weights(self):
        K1, K2 = skeleton(4, 1), skeleton(6, 2)
        col1 = chromatic_number(kneser_graph(K1))[1]
        col2 = chromatic_number(kneser_graph(K2))[1]
        f = random_trig(49, Simplex(5), Simplex(7), 6, degree=2)
        g = joint_obstruction(K1, K2, col1, col2, f)
        z = find_equivariant_zero(g, seed=12)
        assert isinstance(z, ZeroWitness)
        assert all(abs(w - 0.5) < 1e-3 for w in z.weights)

    def test_constant_coordinate_reports(self):
        def ev(zx, zy):
            return np.array([1.0, zx[0] * zy[0]])

        g = EquivariantMap(1, 1, ActionSignature(1, 1, 0), "custom", ev)
        r = find_equivariant_zero(g, starts=5, iters=20, seed=13)
        assert isinstance(r, SearchReport)
        assert r.verdict == "NoZeroBelowTolerance"
        assert r.best_defect >= 1.0

    def test_deterministic(self):
        f = random_trig(50, Simplex(3), Simplex(4), 3, degree=2)
        g = simplex_pair_obstruction(f, 2, 3)
        a = find_equivariant_zero(g, seed=14)
        b = find_equivariant_zero(g, seed=14)
        assert (a.zx, a.zy, a.norm) == (b.zx, b.zy, b.norm)


class TestJson:
    def test_witness_schema(self):
        f = trig_sphere_map(51)
        w = minimize_defect(f, z2=True, seed=15)
        doc = witness_to_json(w, {"starts": 200})
        jsonschema.validate(doc, WITNESS_SCHEMA)
        assert doc["verdict"] == "WitnessFound"

    def test_report_schema(self):
        f = compose_bilinear(scalar("H", 1), embedding("rp2_r4"), embedding("rp2_r4"))
        r = minimize_defect(f, min_sep=0.1, tol=1e-4, starts=4, seed=16)
        doc = witness_to_json(r)
        jsonschema.validate(doc, WITNESS_SCHEMA)
        assert doc["verdict"] == "NoWitnessBelowTolerance"

    def test_zero_schema(self):
        f = random_trig(52, Simplex(3), Simplex(4), 3, degree=2)
        g = simplex_pair_obstruction(f, 2, 3)
        z = find_equivariant_zero(g, seed=17)
        doc = zero_to_json(z)
        jsonschema.validate(doc, ZERO_SCHEMA)
        assert doc["verdict"] == "ZeroFound"
