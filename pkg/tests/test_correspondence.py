"""Correspondence transport: functions, submeasures, composition, models."""

import numpy as np
import pytest

from submeasure.correspondence import (
    Correspondence,
    EndoCorrespondence,
    compose,
    identity_correspondence,
)
from submeasure.errors import ModelError, ModelIncompleteError, PreconditionError
from submeasure.measures import (
    SignedMeasure,
    StrongSubmeasure,
    dirac,
    is_dominated,
    uniform,
    weak_limit,
)
from submeasure.models import (
    build_blowup_model,
    build_cremona_model,
    build_transcendental_model,
    cycle_model,
)
from submeasure.space import FiniteSpace, FunctionVector, indicator_basis

TOL = 1e-9


def rand_positive_submeasure(space, rng, max_gens=3):
    gens = []
    for _ in range(rng.integers(1, max_gens + 1)):
        w = rng.uniform(0, 1, size=len(space))
        w[rng.random(len(space)) < 0.4] = 0
        if not np.any(w > 0):
            w[rng.integers(len(space))] = 1.0
        gens.append(SignedMeasure(space, w))
    return StrongSubmeasure(space, gens)


def permutation_sum_correspondence(rng, n, d):
    """Union of d random permutation graphs: every target is covered with
    incoming multiplicity exactly d."""
    space_x = FiniteSpace([f"u{i}" for i in range(n)])
    space_y = FiniteSpace([f"w{i}" for i in range(n)])
    edges = []
    for _ in range(d):
        perm = rng.permutation(n)
        edges.extend((f"u{i}", f"w{perm[i]}", 1) for i in range(n))
    fan = {}
    for x, y, _ in edges:
        fan.setdefault(x, set()).add(y)
    ind = [x for x, ys in fan.items() if len(ys) > 1]
    return Correspondence(space_x, space_y, edges, ind, generic_degree=d)


def rand_endo(rng, n, d):
    space = FiniteSpace([f"u{i}" for i in range(n)])
    edges = []
    for _ in range(d):
        perm = rng.permutation(n)
        edges.extend((f"u{i}", f"u{perm[i]}", 1) for i in range(n))
    fan = {}
    for x, y, _ in edges:
        fan.setdefault(x, set()).add(y)
    ind = [x for x, ys in fan.items() if len(ys) > 1]
    return EndoCorrespondence(space, edges, ind, generic_degree=d)


class TestValidation:
    def test_missing_outgoing_edge(self):
        x = FiniteSpace(["a", "b"])
        y = FiniteSpace(["c"])
        with pytest.raises(ModelError, match="outgoing"):
            Correspondence(x, y, [("a", "c", 1)])

    def test_non_dominant(self):
        x = FiniteSpace(["a"])
        y = FiniteSpace(["c", "d"])
        with pytest.raises(ModelError, match="dominant"):
            Correspondence(x, y, [("a", "c", 1)])

    def test_indeterminacy_must_match(self):
        x = FiniteSpace(["a", "b"])
        y = FiniteSpace(["c", "d"])
        edges = [("a", "c", 1), ("a", "d", 1), ("b", "c", 1)]
        with pytest.raises(ModelError, match="indeterminacy"):
            Correspondence(x, y, edges, indeterminacy=[], generic_degree=2)

    def test_rational_multiplicity_rejected(self):
        x = FiniteSpace(["a"])
        y = FiniteSpace(["c"])
        with pytest.raises(ModelError, match="positive integer"):
            Correspondence(x, y, [("a", "c", 0.5)])

    def test_covering_count_enforced(self):
        x = FiniteSpace(["a", "b", "z"])
        y = FiniteSpace(["c", "d"])
        edges = [("a", "c", 1), ("b", "c", 1), ("z", "d", 1)]
        # c receives 2 != degree 1 with no indeterminacy and no limit data
        with pytest.raises(ModelError, match="incoming multiplicity"):
            Correspondence(x, y, edges, indeterminacy=[], generic_degree=1)


class TestFunctionTransport:
    def test_pullback_single_valued_is_composition(self):
        f = cycle_model(4)
        phi = FunctionVector(f.space, [1.0, 2.0, 3.0, 4.0])
        pulled = f.pullback_function(phi)
        for i, p in enumerate(f.space.points):
            assert pulled.values[i] == phi.values[f.space.index(f.image_point(p))]

    def test_pullback_fiber_max_at_blown_up_point(self):
        model = build_blowup_model(4, 3)
        pi_t = model.projection.transpose()
        phi = FunctionVector(model.blownup_space, [5.0, -1.0, 2.0, 0.0, 0.0, -3.0])
        pulled = pi_t.pullback_function(phi)
        v_idx = [model.blownup_space.index(v) for v in model.exceptional]
        assert pulled.values[model.base_space.index("p")] == max(
            phi.values[i] for i in v_idx
        )

    def test_pullback_constant(self):
        model = build_cremona_model(3)
        c = FunctionVector.constant(model.space, 2.5)
        assert np.allclose(model.map.pullback_function(c).values, 2.5)

    def test_pushforward_identity(self):
        f = identity_correspondence(FiniteSpace(["a", "b"]))
        phi = FunctionVector(f.space, [1.0, -2.0])
        assert np.allclose(f.pushforward_function(phi).values, phi.values)

    def test_pushforward_degree_two_cover(self):
        x = FiniteSpace(["a", "b"])
        y = FiniteSpace(["c"])
        f = Correspondence(x, y, [("a", "c", 1), ("b", "c", 1)], generic_degree=2)
        phi = FunctionVector(x, [3.0, 4.0])
        assert f.pushforward_function(phi).values[0] == 7.0

    def test_cremona_pushforward_of_one_on_generic_points(self):
        model = build_cremona_model(3)
        ones = FunctionVector.constant(model.space, 1.0)
        pushed = model.map.pushforward_function(ones)
        for g in model.space.subset_labels("generic"):
            assert pushed.values[model.space.index(g)] == 1.0
        for k in model.samples(0):
            assert pushed.values[model.space.index(k)] == 1.0

    def test_exceptional_without_limit_data_errors(self):
        x = FiniteSpace(["a", "b"])
        y = FiniteSpace(["c", "d"])
        # b is indeterminate onto both targets; c gets 2 incoming, d gets 1
        f = Correspondence(
            x, y, [("a", "c", 1), ("b", "c", 1), ("b", "d", 1)],
            indeterminacy=["b"], generic_degree=2,
        )
        with pytest.raises(ModelIncompleteError):
            f.pushforward_function(FunctionVector.constant(x, 1.0))

    def test_pushforward_needs_equal_dimension_mode(self):
        model = build_transcendental_model(4)
        with pytest.raises(PreconditionError):
            model.map.pushforward_function(FunctionVector.constant(model.space, 1.0))


class TestSubmeasureTransport:
    def test_point_mass_off_indeterminacy(self):
        model = build_cremona_model(3)
        mu = StrongSubmeasure.from_measure(dirac(model.space, "s0_1"))
        pushed = model.map.pushforward_submeasure(mu)
        for phi in indicator_basis(model.space):
            assert pushed.evaluate(phi) == dirac(model.space, "e0")(phi)

    def test_blowup_roundtrip_restores_point_mass(self):
        model = build_blowup_model(5, 4)
        delta_p = StrongSubmeasure.from_measure(dirac(model.base_space, "p"))
        pulled = model.projection.pullback_submeasure(delta_p)
        back = model.projection.pushforward_submeasure(pulled)
        for phi in indicator_basis(model.base_space):
            assert back.evaluate(phi) == pytest.approx(delta_p.evaluate(phi), abs=TOL)

    def test_cremona_pushforward_of_fundamental_point(self):
        model = build_cremona_model(3)
        rng = np.random.default_rng(0)
        mu = StrongSubmeasure.from_measure(dirac(model.space, "e0"))
        pushed = model.map.pushforward_submeasure(mu)
        sigma0 = [model.space.index(q) for q in model.sigma(0)]
        for _ in range(20):
            phi = FunctionVector(model.space, rng.normal(size=len(model.space)))
            assert pushed.evaluate(phi) == pytest.approx(
                max(phi.values[i] for i in sigma0), abs=TOL
            )

    def test_pullback_mass_scales_by_degree(self):
        rng = np.random.default_rng(1)
        f = permutation_sum_correspondence(rng, 5, 3)
        nu = StrongSubmeasure.from_measure(uniform(f.target, mass=1.0))
        pulled = f.pullback_submeasure(nu)
        info = pulled.mass_info()
        assert info.mass_plus == pytest.approx(3.0, abs=TOL)
        assert info.mass_minus == pytest.approx(-3.0, abs=TOL)

    def test_pullback_identity(self):
        space = FiniteSpace(["a", "b", "c"])
        f = identity_correspondence(space)
        nu = StrongSubmeasure.sup_of([dirac(space, "a"), uniform(space, mass=1)])
        pulled = f.pullback_submeasure(nu)
        rng = np.random.default_rng(2)
        for _ in range(10):
            phi = FunctionVector(space, rng.normal(size=3))
            assert pulled.evaluate(phi) == pytest.approx(nu.evaluate(phi), abs=TOL)

    def test_mass_preservation_under_pushforward(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            f = rand_endo(rng, 6, 2)
            mu = rand_positive_submeasure(f.space, rng)
            pushed = f.pushforward_submeasure(mu)
            assert pushed.mass_info().mass_plus == pytest.approx(
                mu.mass_info().mass_plus, abs=TOL
            )
            assert pushed.mass_info().mass_minus == pytest.approx(
                mu.mass_info().mass_minus, abs=TOL
            )
            assert pushed.positivity_flag

    def test_pushforward_evaluates_through_pullback_function(self):
        rng = np.random.default_rng(4)
        for _ in range(15):
            f = rand_endo(rng, 5, 2)
            mu = rand_positive_submeasure(f.space, rng)
            pushed = f.pushforward_submeasure(mu)
            for _ in range(5):
                phi = FunctionVector(f.space, rng.normal(size=5))
                assert pushed.evaluate(phi) == pytest.approx(
                    mu.evaluate(f.pullback_function(phi)), abs=TOL
                )

    def test_lazy_transport_for_signed_submeasure(self):
        space = FiniteSpace(["a", "b"])
        f = identity_correspondence(space)
        mu = StrongSubmeasure.from_measure(dirac(space, "a") - dirac(space, "b"))
        lazy = f.pushforward_submeasure(mu)
        phi = FunctionVector(space, [2.0, 1.0])
        assert lazy.evaluate(phi) == pytest.approx(mu.envelope(phi), abs=TOL)

    def test_sup_commutation_with_dominated_measures(self):
        rng = np.random.default_rng(5)
        model = build_cremona_model(2)
        f = model.map
        mu = StrongSubmeasure.sup_of(
            [dirac(model.space, "e0"), uniform(model.space, model.samples(1), mass=1)]
        )
        pushed = f.pushforward_submeasure(mu)
        # sample the dominated set: generators and hull points
        dominated = list(mu.generators)
        for _ in range(30):
            lam = rng.dirichlet(np.ones(len(mu.generators)))
            mix = sum(
                (lam[k] * g for k, g in enumerate(mu.generators)),
                start=SignedMeasure(model.space, np.zeros(len(model.space))),
            )
            dominated.append(mix)
        for nu in dominated:
            assert is_dominated(
                SignedMeasure(model.space, np.maximum(nu.weights, 0)), mu
            )
        for _ in range(10):
            phi = FunctionVector(model.space, rng.normal(size=len(model.space)))
            transported = [
                f.pushforward_submeasure(StrongSubmeasure.from_measure(nu)).evaluate(phi)
                for nu in dominated
            ]
            assert max(transported) == pytest.approx(pushed.evaluate(phi), abs=1e-8)

    def test_smaller_generating_family_fails_sup_commutation(self):
        # A declared weak limit adjoins the fundamental point to a family
        # of generic point masses; transporting only the generic family
        # misses the line supremum.
        model = build_cremona_model(3)
        space = model.space
        f = model.map
        generic = space.subset_labels("generic")
        small_family = [dirac(space, g) for g in generic]
        mu = StrongSubmeasure.sup_of(small_family + [dirac(space, "e0")])
        pushed = f.pushforward_submeasure(mu)
        small_pushes = [
            f.pushforward_submeasure(StrongSubmeasure.from_measure(nu)) for nu in small_family
        ]
        witness = FunctionVector.indicator(space, ["s0_2"])
        lhs = pushed.evaluate(witness)
        rhs = max(p.evaluate(witness) for p in small_pushes)
        assert lhs == 1.0
        assert rhs == 0.0


class TestComposition:
    def test_single_valued_composition_is_function_composite(self):
        f = cycle_model(5)
        g = cycle_model(5)
        h = compose(f, g)
        assert h.is_single_valued()
        for p in f.space.points:
            assert h.image_point(p) == g.image_point(f.image_point(p))

    def test_pushforwards_commute_when_single_valued(self):
        rng = np.random.default_rng(6)
        f = cycle_model(4)
        g = cycle_model(4)
        h = compose(f, g)
        mu = rand_positive_submeasure(f.space, rng)
        lhs = g.pushforward_submeasure(f.pushforward_submeasure(mu))
        rhs = h.pushforward_submeasure(mu)
        for _ in range(10):
            phi = FunctionVector(f.space, rng.normal(size=4))
            assert lhs.evaluate(phi) == pytest.approx(rhs.evaluate(phi), abs=TOL)

    def test_composition_with_identity(self):
        rng = np.random.default_rng(7)
        f = rand_endo(rng, 5, 2)
        h = compose(f, identity_correspondence(f.space))
        assert sorted(h.edges) == sorted(f.edges)

    def test_composition_inequality_on_random_pairs(self):
        rng = np.random.default_rng(8)
        for _ in range(40):
            n = int(rng.integers(3, 7))
            f = rand_endo(rng, n, int(rng.integers(1, 3)))
            g = rand_endo(rng, n, int(rng.integers(1, 3)))
            h = compose(f, g)
            mu = rand_positive_submeasure(f.space, rng)
            lhs = g.pushforward_submeasure(f.pushforward_submeasure(mu))
            rhs = h.pushforward_submeasure(mu)
            for _ in range(4):
                phi = FunctionVector(f.space, rng.normal(size=n))
                assert lhs.evaluate(phi) >= rhs.evaluate(phi) - TOL

    def test_pullback_composition_inequality(self):
        rng = np.random.default_rng(9)
        for _ in range(25):
            n = int(rng.integers(3, 6))
            f = rand_endo(rng, n, int(rng.integers(1, 3)))
            g = rand_endo(rng, n, int(rng.integers(1, 3)))
            h = compose(f, g)
            nu = rand_positive_submeasure(g.space, rng)
            lhs = f.pullback_submeasure(g.pullback_submeasure(nu))
            rhs = h.pullback_submeasure(nu)
            for _ in range(4):
                phi = FunctionVector(f.space, rng.normal(size=n))
                assert rhs.evaluate(phi) <= lhs.evaluate(phi) + TOL

    def test_cremona_strictness_against_identity_composite(self):
        model = build_cremona_model(3)
        f = model.map
        mu = StrongSubmeasure.from_measure(dirac(model.space, "e0"))
        twice = f.pushforward_submeasure(f.pushforward_submeasure(mu))
        identity_push = identity_correspondence(model.space).pushforward_submeasure(mu)
        witness = FunctionVector.indicator(model.space, [model.samples(1)[0]])
        assert twice.evaluate(witness) >= 1.0 - TOL
        assert identity_push.evaluate(witness) == 0.0
        # and on every function the composite-map pushforward is dominated
        rng = np.random.default_rng(10)
        for _ in range(10):
            phi = FunctionVector(model.space, rng.normal(size=len(model.space)))
            assert twice.evaluate(phi) >= identity_push.evaluate(phi) - TOL
            assert twice.evaluate(phi) >= max(
                max(phi.values[model.space.index(q)] for q in model.sigma(1)),
                max(phi.values[model.space.index(q)] for q in model.sigma(2)),
            ) - TOL


class TestSuperadditivity:
    def test_pushforward_superadditive(self):
        from submeasure.measures import combine

        rng = np.random.default_rng(11)
        for _ in range(30):
            n = int(rng.integers(3, 6))
            f = rand_endo(rng, n, 2)
            mu1 = rand_positive_submeasure(f.space, rng)
            mu2 = rand_positive_submeasure(f.space, rng)
            lhs = f.pushforward_submeasure(combine(mu1, mu2, "sum"))
            rhs1 = f.pushforward_submeasure(mu1)
            rhs2 = f.pushforward_submeasure(mu2)
            for _ in range(4):
                phi = FunctionVector(f.space, rng.normal(size=n))
                assert lhs.evaluate(phi) >= rhs1.evaluate(phi) + rhs2.evaluate(phi) - TOL


class TestClusterContinuity:
    def test_cluster_points_dominated_by_pushforward_of_limit(self):
        rng = np.random.default_rng(12)
        model = build_cremona_model(2)
        f = model.map
        base = rand_positive_submeasure(model.space, rng)
        seq = []
        for k in range(1, 25):
            bump = SignedMeasure(
                model.space, rng.uniform(0, 1, len(model.space)) * 0.5**k
            )
            seq.append(StrongSubmeasure(model.space, [g + bump for g in base.generators]))
        pushed_seq = [f.pushforward_submeasure(mu) for mu in seq]
        out = weak_limit(pushed_seq, tol=1e-4)
        assert out.converged
        target = f.pushforward_submeasure(base)
        for phi in indicator_basis(model.space):
            assert out.limit.evaluate(phi) <= target.evaluate(phi) + 1e-4

    def test_example_strict_cluster_gap(self):
        # generic point masses marching into the fundamental point: the
        # declared geometric limit dominates the point mass there, while
        # the transported sequence never sees the blown-up line
        model = build_cremona_model(3)
        space = model.space
        f = model.map
        generic = space.subset_labels("generic")
        family = [dirac(space, g) for g in generic]
        mu_n = [StrongSubmeasure.sup_of(family[: k + 1]) for k in range(len(family))]
        pushed = [f.pushforward_submeasure(m) for m in mu_n]
        nu = weak_limit(pushed + [pushed[-1]] * 3, tol=TOL).limit
        declared_limit = StrongSubmeasure.sup_of(family + [dirac(space, "e0")])
        pushed_limit = f.pushforward_submeasure(declared_limit)
        witness = FunctionVector.indicator(space, ["s0_1"])
        assert nu.evaluate(witness) < pushed_limit.evaluate(witness) - 0.5
        for phi in indicator_basis(space):
            assert nu.evaluate(phi) <= pushed_limit.evaluate(phi) + TOL


class TestSingleValuedMaps:
    def test_any_generating_family_commutes_for_single_valued_maps(self):
        rng = np.random.default_rng(13)
        f = cycle_model(6)
        gens = [
            SignedMeasure(f.space, rng.uniform(0, 1, 6) * (rng.random(6) < 0.7))
            for _ in range(4)
        ]
        gens = [g if np.any(g.weights) else dirac(f.space, "c0") for g in gens]
        mu = StrongSubmeasure(f.space, gens)
        pushed = f.pushforward_submeasure(mu)
        parts = [
            f.pushforward_submeasure(StrongSubmeasure.from_measure(g)) for g in gens
        ]
        for _ in range(10):
            phi = FunctionVector(f.space, rng.normal(size=6))
            assert pushed.evaluate(phi) == pytest.approx(
                max(p.evaluate(phi) for p in parts), abs=TOL
            )


class TestGraphResolution:
    def test_transport_invariant_under_edge_subdivision(self):
        rng = np.random.default_rng(14)
        f = rand_endo(rng, 5, 1)
        # subdivide every edge through an intermediate space of edge points
        edge_labels = [f"E{i}_{j}" for i, j, _ in f.edges]
        mid = FiniteSpace(edge_labels)
        to_mid_edges = []
        from_mid_edges = []
        for (i, j, m), lab in zip(f.edges, edge_labels):
            to_mid_edges.append((f.source.points[i], lab, m))
            from_mid_edges.append((lab, f.source.points[j], m))
        fan = {}
        for x, y, _ in to_mid_edges:
            fan.setdefault(x, set()).add(y)
        ind = [x for x, ys in fan.items() if len(ys) > 1]
        lift = Correspondence(f.source, mid, to_mid_edges, ind, generic_degree=1)
        drop = Correspondence(mid, f.source, from_mid_edges, [], generic_degree=1)
        resolved = compose(lift, drop)
        assert sorted(resolved.edges) == sorted(f.edges)
        mu = rand_positive_submeasure(f.space, rng)
        a = f.pushforward_submeasure(mu)
        b = drop.pushforward_submeasure(lift.pushforward_submeasure(mu))
        for _ in range(8):
            phi = FunctionVector(f.space, rng.normal(size=5))
            assert a.evaluate(phi) == pytest.approx(b.evaluate(phi), abs=TOL)


class TestBundledModels:
    def test_blowup_with_single_fiber_point_is_bijection(self):
        model = build_blowup_model(3, 1)
        assert model.projection.is_single_valued()
        mu = StrongSubmeasure.from_measure(dirac(model.blownup_space, "v1"))
        pushed = model.projection.pushforward_submeasure(mu)
        assert pushed.evaluate(
            FunctionVector.indicator(model.base_space, ["p"])
        ) == 1.0

    def test_generating_family_size_and_sup(self):
        model = build_blowup_model(4, 3)
        fam = model.generating_family()
        assert len(fam) == 3
        rng = np.random.default_rng(15)
        pulled = model.projection.pullback_submeasure(
            StrongSubmeasure.from_measure(dirac(model.base_space, "p"))
        )
        sup_fam = StrongSubmeasure.sup_of(fam)
        for _ in range(10):
            phi = FunctionVector(model.blownup_space, rng.normal(size=len(model.blownup_space)))
            v_idx = [model.blownup_space.index(v) for v in model.exceptional]
            expect = max(phi.values[i] for i in v_idx)
            assert pulled.evaluate(phi) == pytest.approx(expect, abs=TOL)
            assert sup_fam.evaluate(phi) == pytest.approx(expect, abs=TOL)

    def test_cremona_involution_on_generic_points(self):
        model = build_cremona_model(4)
        f = model.map
        for g in model.space.subset_labels("generic"):
            assert f.image_point(g) == g  # model generic points are fixed
        h = compose(f, f)
        for g in model.space.subset_labels("generic"):
            assert h.image_point(g) == g

    def test_cremona_dominates_other_fundamental_points(self):
        model = build_cremona_model(3)
        f = model.map
        pushed = f.pushforward_submeasure(
            StrongSubmeasure.from_measure(dirac(model.space, "e0"))
        )
        rng = np.random.default_rng(16)
        for _ in range(10):
            phi = FunctionVector(model.space, rng.normal(size=len(model.space)))
            assert pushed.evaluate(phi) >= max(
                phi.values[model.space.index("e1")],
                phi.values[model.space.index("e2")],
            ) - TOL

    def test_transcendental_pushforward_of_infinity(self):
        model = build_transcendental_model(5)
        f = model.map
        pushed = f.pushforward_submeasure(
            StrongSubmeasure.from_measure(dirac(model.space, "inf"))
        )
        rng = np.random.default_rng(17)
        for _ in range(10):
            phi = FunctionVector(model.space, rng.normal(size=len(model.space)))
            assert pushed.evaluate(phi) == pytest.approx(np.max(phi.values), abs=TOL)

    def test_transcendental_decomposition_formula(self):
        model = build_transcendental_model(6)
        f = model.map
        space = model.space
        mu0 = uniform(space, labels=["q1", "q3"], mass=0.5)
        for a in (0.0, 0.5, 1.0):
            mu = StrongSubmeasure.from_measure(mu0 + a * dirac(space, "inf"))
            pushed = f.pushforward_submeasure(mu)
            pushed_mu0 = f.pushforward_submeasure(StrongSubmeasure.from_measure(mu0))
            mu_x = model.point_mass_sup()
            for phi in indicator_basis(space):
                assert pushed.evaluate(phi) == pytest.approx(
                    pushed_mu0.evaluate(phi) + a * mu_x.evaluate(phi), abs=TOL
                )

    def test_transcendental_fixes_point_mass_sup(self):
        model = build_transcendental_model(5)
        mu_x = model.point_mass_sup()
        pushed = model.map.pushforward_submeasure(mu_x)
        for phi in indicator_basis(model.space):
            assert pushed.evaluate(phi) == pytest.approx(mu_x.evaluate(phi), abs=TOL)
