import random
from dataclasses import replace

import pytest

from evencob.cobordism import (
    CobordismMorphism,
    SurfaceObject,
    compose,
    empty_surface,
    epsilon,
    identity,
    inverse_pseudo_cylinder,
    is_even,
    is_pseudo_cylinder,
    pseudo_cylinder,
    pull_back,
    push_forward,
    validate,
)
from evencob.errors import (
    GeneraMismatchError,
    LagrangianMismatchError,
    NotAPseudoCylinderError,
    NotLagrangianError,
)
from evencob.generators import cap, handlebody, twisted_cylinder
from evencob.linalg import RationalMatrix, Subspace, canonical_basis
from evencob.sampling import random_even_chain, random_even_pair
from evencob.symplectic import random_lagrangian

SPAN_E = canonical_basis([(1, 0)], 2)
SPAN_F = canonical_basis([(0, 1)], 2)
TORUS_E = SurfaceObject((1,), SPAN_E)
ROT = RationalMatrix([[0, -1], [1, 0]])


def standard_lagrangian(g):
    return canonical_basis(
        [tuple(1 if c == 2 * i else 0 for c in range(2 * g)) for i in range(g)], 2 * g
    )


class TestSurfaceObject:
    def test_validates_lagrangian(self):
        with pytest.raises(NotLagrangianError):
            SurfaceObject((1,), Subspace.full(2))

    def test_empty_surface(self):
        empty = empty_surface()
        assert empty.beta0 == 0 and empty.beta1 == 0 and empty.is_empty

    def test_betti_numbers(self):
        assert TORUS_E.beta0 == 1 and TORUS_E.beta1 == 2


class TestIdentity:
    def test_torus(self):
        m = identity(TORUS_E)
        assert m.weight == 0
        assert m.h1_dim == 2 and m.h0_dim == 1
        assert m.j_src_h1 == RationalMatrix.identity(2)
        assert m.j_tgt_h1 == RationalMatrix.identity(2)

    def test_empty(self):
        m = identity(empty_surface())
        assert m.h1_dim == 0 and m.h0_dim == 0
        assert validate(m) == []

    def test_validates(self):
        assert validate(identity(TORUS_E)) == []


class TestPseudoCylinder:
    def test_record_fields(self):
        c = pseudo_cylinder(TORUS_E, SPAN_F, 3)
        assert c.weight == 3
        assert c.source.lagrangian == SPAN_E and c.target.lagrangian == SPAN_F
        assert is_pseudo_cylinder(c)

    def test_same_lagrangian_weight_zero_equals_identity(self):
        assert pseudo_cylinder(TORUS_E, SPAN_E, 0) == identity(TORUS_E)

    def test_genus_two(self):
        g2 = SurfaceObject((2,), standard_lagrangian(2))
        lag_f = canonical_basis([(0, 1, 0, 0), (0, 0, 0, 1)], 4)
        c = pseudo_cylinder(g2, lag_f, 1)
        assert validate(c) == []

    def test_rejects_non_lagrangian(self):
        with pytest.raises(NotLagrangianError):
            pseudo_cylinder(TORUS_E, Subspace.full(2), 0)


class TestInversePseudoCylinder:
    def test_swaps_ends_and_negates_weight(self):
        c = pseudo_cylinder(TORUS_E, SPAN_F, 5)
        inv = inverse_pseudo_cylinder(c)
        assert inv.weight == -5
        assert inv.source.lagrangian == SPAN_F and inv.target.lagrangian == SPAN_E

    def test_identity_is_self_inverse(self):
        m = identity(TORUS_E)
        assert inverse_pseudo_cylinder(m) == m

    def test_rejects_non_cylinders(self):
        with pytest.raises(NotAPseudoCylinderError):
            inverse_pseudo_cylinder(handlebody(1, SPAN_E, 0))

    def test_composition_with_inverse_is_trivial(self):
        c = pseudo_cylinder(TORUS_E, SPAN_F, 5)
        inv = inverse_pseudo_cylinder(c)
        for left, right in ((c, inv), (inv, c)):
            loop = compose(left, right)
            assert loop.weight == 0
            assert loop.h1_dim == 2 and loop.h0_dim == 1
            for lag in (SPAN_E, SPAN_F, canonical_basis([(1, 1)], 2)):
                assert push_forward(loop, lag) == lag


class TestPushPull:
    def test_identity_cylinder(self):
        m = identity(TORUS_E)
        assert push_forward(m, SPAN_F) == SPAN_F
        assert pull_back(m, SPAN_F) == SPAN_F

    def test_twisted_cylinder_acts_by_the_twist(self):
        m = twisted_cylinder(TORUS_E, ROT, SPAN_F, 0)
        assert push_forward(m, SPAN_E) == SPAN_F
        assert pull_back(m, SPAN_F) == SPAN_E

    def test_handlebody_kernel(self):
        m = handlebody(1, SPAN_E, 0)
        assert push_forward(m, Subspace.zero(0)) == SPAN_F

    def test_cap_kernel(self):
        m = cap(1, SPAN_E, 0)
        assert pull_back(m, Subspace.zero(0)) == SPAN_F

    def test_lagrangian_outputs_on_random_even_morphisms(self):
        for seed in range(20):
            m1, m2 = random_even_pair(seed)
            for m in (m1, m2):
                assert validate(m) == []
                out = push_forward(m, m.source.lagrangian)
                assert m.target.space.is_lagrangian(out)
                back = pull_back(m, m.target.lagrangian)
                assert m.source.space.is_lagrangian(back)


class TestEpsilon:
    def test_one_sided(self):
        assert epsilon(handlebody(1, SPAN_E, 0)) == 1

    def test_two_sided(self):
        assert epsilon(identity(TORUS_E)) == 0

    def test_empty_both_sides(self):
        assert epsilon(identity(empty_surface())) == 0


class TestIsEven:
    def test_identity_cylinder_terms(self):
        report = is_even(identity(TORUS_E))
        assert sum(report.term_breakdown.values()) == 6
        assert report.parity_rhs == 0 and report.weight_parity == 0
        assert report.is_even

    def test_handlebody_terms(self):
        report = is_even(handlebody(1, SPAN_E, 1))
        assert sum(report.term_breakdown.values()) == 5
        assert report.is_even

    def test_pseudo_cylinder_is_odd(self):
        report = is_even(pseudo_cylinder(TORUS_E, SPAN_F, 0))
        assert not report.is_even
        assert report.parity_rhs == 1

    def test_report_consistency(self):
        report = is_even(handlebody(2, standard_lagrangian(2), 0))
        assert report.is_even == (report.parity_rhs == report.weight_parity)

    def test_cylinder_parity_shortcut(self):
        # for cylinders the expression collapses to beta1/2 + dim(l + l')
        rng = random.Random(5)
        for g in (1, 2, 3):
            for trial in range(20):
                lag1 = random_lagrangian(g, rng)
                lag2 = random_lagrangian(g, rng)
                w = rng.randint(-3, 3)
                c = pseudo_cylinder(SurfaceObject((g,), lag1), lag2, w)
                shortcut = (g + (lag1 + lag2).dim) % 2
                assert is_even(c).is_even == (w % 2 == shortcut)


class TestValidate:
    def test_generators_validate(self):
        assert validate(handlebody(2, standard_lagrangian(2), 1)) == []
        assert validate(cap(1, SPAN_E, 0, ROT)) == []
        assert validate(twisted_cylinder(TORUS_E, ROT, SPAN_F, 2)) == []

    def test_zero_target_map_violates(self):
        bad = CobordismMorphism(
            empty_surface(),
            TORUS_E,
            0,
            1,
            1,
            RationalMatrix.zeros(1, 0),
            RationalMatrix.zeros(1, 2),
            RationalMatrix.zeros(1, 0),
            RationalMatrix.identity(1),
        )
        issues = validate(bad)
        assert len(issues) == 1
        assert "not Lagrangian" in issues[0] and "2" in issues[0]

    def test_bad_h0_column_violates(self):
        bad = replace(identity(TORUS_E), j_tgt_h0=RationalMatrix([[2]]))
        issues = validate(bad)
        assert any("standard basis" in msg for msg in issues)


class TestCompose:
    def test_weight_formula_without_correction(self):
        # mu vanishes when two of the three middle Lagrangians coincide
        c1 = pseudo_cylinder(TORUS_E, SPAN_F, 1)
        c2 = pseudo_cylinder(SurfaceObject((1,), SPAN_F), SPAN_F, 1)
        assert compose(c1, c2).weight == 2

    def test_middle_genera_mismatch(self):
        with pytest.raises(GeneraMismatchError):
            compose(handlebody(1, SPAN_E, 0), cap(2, standard_lagrangian(2), 0))

    def test_middle_lagrangian_mismatch(self):
        with pytest.raises(LagrangianMismatchError):
            compose(handlebody(1, SPAN_E, 0), cap(1, SPAN_F, 0))

    def test_sphere_cross_circle_model(self):
        glued = compose(handlebody(1, SPAN_E, 1), cap(1, SPAN_E, 1))
        assert glued.weight == 2
        assert glued.h1_dim == 1 and glued.h0_dim == 1
        assert is_even(glued).is_even
        assert validate(glued) == []

    def test_three_sphere_model(self):
        glued = compose(handlebody(1, SPAN_E, 0), cap(1, SPAN_E, 0, ROT))
        assert glued.h1_dim == 0 and glued.h0_dim == 1

    def test_weight_formula_with_nonzero_correction(self):
        # kernels span{f} and span{e} against middle Lagrangian span{e+f}:
        # the correction term is mu(span f, span e+f, span e) = -1
        span_ef = canonical_basis([(1, 1)], 2)
        glued = compose(handlebody(1, span_ef, 0), cap(1, span_ef, 0, ROT))
        assert glued.weight == 1
        assert glued.h1_dim == 0 and glued.h0_dim == 1
        assert is_even(glued).is_even

    def test_left_identity_reproduces_the_record(self):
        for seed in range(10):
            m, _ = random_even_pair(seed)
            assert compose(identity(m.source), m) == m

    def test_right_identity_preserves_invariants(self):
        for seed in range(10):
            m, _ = random_even_pair(seed)
            composed = compose(m, identity(m.target))
            assert composed.weight == m.weight
            assert composed.h1_dim == m.h1_dim and composed.h0_dim == m.h0_dim
            assert push_forward(composed, m.source.lagrangian) == push_forward(
                m, m.source.lagrangian
            )
            assert is_even(composed).is_even == is_even(m).is_even

    def test_pushforward_functorial_on_random_pairs(self):
        for seed in range(15):
            m1, m2 = random_even_pair(seed)
            composite = compose(m1, m2)
            via_parts = push_forward(m2, push_forward(m1, m1.source.lagrangian))
            assert push_forward(composite, m1.source.lagrangian) == via_parts

    def test_pullback_functorial_on_random_pairs(self):
        for seed in range(15):
            m1, m2 = random_even_pair(seed)
            composite = compose(m1, m2)
            via_parts = pull_back(m1, pull_back(m2, m2.target.lagrangian))
            assert pull_back(composite, m2.target.lagrangian) == via_parts

    def test_composites_of_validated_records_validate(self):
        for seed in range(20):
            m1, m2 = random_even_pair(seed)
            assert validate(compose(m1, m2)) == []


class TestEvenClosure:
    def test_even_pairs_compose_even(self):
        for seed in range(60):
            m1, m2 = random_even_pair(seed)
            assert is_even(m1).is_even and is_even(m2).is_even
            assert is_even(compose(m1, m2)).is_even, seed

    def test_even_cylinder_absorption(self):
        # composing an even morphism with an even pseudo-cylinder on either
        # side stays even
        rng = random.Random(17)
        for trial in range(200):
            m, _ = random_even_pair(rng.getrandbits(32))

            def even_cylinder_onto(lagrangian, obj):
                base = pseudo_cylinder(obj, lagrangian, 0)
                if is_even(base).is_even:
                    return base
                return replace(base, weight=1)

            if not m.source.is_empty:
                g = sum(m.source.genera)
                fresh = random_lagrangian(g, rng) if g else Subspace.zero(0)
                pre_obj = SurfaceObject(m.source.genera, fresh)
                pre = even_cylinder_onto(m.source.lagrangian, pre_obj)
                assert is_even(pre).is_even
                assert is_even(compose(pre, m)).is_even, trial
            if not m.target.is_empty:
                g = sum(m.target.genera)
                fresh = random_lagrangian(g, rng) if g else Subspace.zero(0)
                post = even_cylinder_onto(fresh, m.target)
                assert is_even(post).is_even
                assert is_even(compose(m, post)).is_even, trial

    def test_inverse_of_even_pseudo_cylinder_is_even(self):
        rng = random.Random(23)
        for trial in range(50):
            g = rng.randint(1, 3)
            obj = SurfaceObject((g,), random_lagrangian(g, rng))
            c = pseudo_cylinder(obj, random_lagrangian(g, rng), rng.randint(-3, 3))
            if not is_even(c).is_even:
                c = replace(c, weight=c.weight + 1)
            assert is_even(inverse_pseudo_cylinder(c)).is_even, trial


def test_weight_associativity_sample():
    for seed in range(25):
        m1, m2, m3 = random_even_chain(seed, 3)
        left = compose(compose(m1, m2), m3)
        right = compose(m1, compose(m2, m3))
        assert left.weight == right.weight, seed
        assert (left.h1_dim, left.h0_dim) == (right.h1_dim, right.h0_dim)
