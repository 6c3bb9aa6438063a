import random

import pytest

from btquot.algebra import (FieldSpec, LaurentFragment, Polynomial,
                            RationalFunction, expand_at_infinity)
from btquot.btree import (BallVertex, Matrix2, RationalEnd, TreeError, act,
                          canonicalize, distance, distance_bfs,
                          distance_invariant_factors, moebius_end)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F4 = FieldSpec(2, 2)


def ball(field, r, terms):
    return BallVertex(field, r, LaurentFragment(field, terms, r))


def rand_vertex(field, rng, rmin=-4, rmax=4, span=4):
    r = rng.randint(rmin, rmax)
    terms = {e: rng.randrange(field.q) for e in range(r - span, r)}
    return ball(field, r, {e: c for e, c in terms.items() if c})


def rand_matrix(field, rng, max_deg=2):
    while True:
        m = Matrix2.from_polynomials(*(
            Polynomial(field, [rng.randrange(field.q)
                               for _ in range(max_deg + 1)])
            for _ in range(4)))
        if not m.det().is_zero():
            return m


class TestCanonicalize:
    def test_identity_basis(self):
        v = canonicalize(Matrix2.identity(F2))
        assert v == BallVertex.base(F2)

    def test_skewed_basis(self):
        # columns (t, 1), (1, 0): already of the ball shape with center t
        t = RationalFunction(Polynomial.t(F2))
        one = RationalFunction.one(F2)
        zero = RationalFunction.zero(F2)
        v = canonicalize(Matrix2(t, one, one, zero))
        assert v == ball(F2, 0, {-1: 1})
        assert distance(BallVertex.base(F2), v) == 2

    def test_normal_form_passthrough(self):
        a = RationalFunction.t_power(F2, -1)  # 1/t
        m = Matrix2(a, RationalFunction.t_power(F2, -2),
                    RationalFunction.one(F2), RationalFunction.zero(F2))
        assert canonicalize(m) == ball(F2, 2, {1: 1})

    def test_singular_rejected(self):
        one = RationalFunction.one(F2)
        with pytest.raises(TreeError):
            canonicalize(Matrix2(one, one, one, one))


class TestAction:
    def test_translation_shifts_center(self):
        tau_t = Matrix2.translation(RationalFunction(Polynomial.t(F2)))
        assert act(tau_t, ball(F2, 2, {-1: 1})) == ball(F2, 2, {})

    def test_involution_on_centered_balls(self):
        inv = Matrix2.involution(F2)
        assert act(inv, ball(F2, 3, {})) == ball(F2, -3, {})

    def test_involution_off_zero(self):
        # center s with 0 not in the ball: radius exponent drops by 2 nu(s)
        inv = Matrix2.involution(F3)
        v = ball(F3, 2, {1: 1})  # s = pi
        image = act(inv, v)
        assert image.r == 0
        assert image.center.to_rational() == \
            expand_at_infinity(RationalFunction(Polynomial.t(F3)), 0)\
            .to_rational()

    def test_identity_fixes(self):
        rng = random.Random(11)
        for _ in range(20):
            v = rand_vertex(F3, rng)
            assert act(Matrix2.identity(F3), v) == v

    def test_singular_rejected(self):
        zero = RationalFunction.zero(F2)
        one = RationalFunction.one(F2)
        with pytest.raises(TreeError):
            act(Matrix2(one, one, zero, zero), BallVertex.base(F2))


class TestNeighbors:
    def test_base_vertex_q2(self):
        nbs = BallVertex.base(F2).neighbors()
        assert nbs[0] == ball(F2, -1, {})
        assert nbs[1] == ball(F2, 1, {})
        assert nbs[2] == ball(F2, 1, {0: 1})

    def test_valency(self):
        rng = random.Random(12)
        for field in (F2, F3, F4):
            for _ in range(10):
                v = rand_vertex(field, rng)
                nbs = v.neighbors()
                assert len(nbs) == field.q + 1
                assert len({u.key() for u in nbs}) == field.q + 1
                assert all(distance(v, u) == 1 for u in nbs)

    def test_parent_truncates(self):
        v = ball(F2, 2, {1: 1})  # B_{1/t}^{|2|}
        assert v.parent() == ball(F2, 1, {})


class TestDistance:
    def test_self(self):
        v = ball(F3, 1, {0: 2})
        assert distance(v, v) == 0

    def test_nested(self):
        for n in range(5):
            assert distance(BallVertex.base(F2), ball(F2, -n, {})) == n

    def test_offset(self):
        assert distance(BallVertex.base(F2), ball(F2, 2, {1: 1})) == 2

    def test_three_way_agreement(self):
        rng = random.Random(13)
        for _ in range(60):
            field = (F2, F3)[rng.randrange(2)]
            v = rand_vertex(field, rng, rmin=-3, rmax=3, span=3)
            w = v
            for _ in range(rng.randint(0, 5)):
                w = rng.choice(w.neighbors())
            d = distance(v, w)
            assert d == distance_invariant_factors(v, w)
            assert d == distance_bfs(v, w, max_depth=6)


class TestGroupLaws:
    def test_isometry_and_composition(self):
        rng = random.Random(14)
        for _ in range(40):
            field = (F2, F3)[rng.randrange(2)]
            g = rand_matrix(field, rng)
            h = rand_matrix(field, rng)
            v = rand_vertex(field, rng)
            w = rand_vertex(field, rng)
            assert distance(act(g, v), act(g, w)) == distance(v, w)
            assert act(g @ h, v) == act(g, act(h, v))

    def test_parity_preserved_for_even_determinant_valuation(self):
        rng = random.Random(15)
        for _ in range(40):
            g = rand_matrix(F3, rng)
            v = rand_vertex(F3, rng)
            if g.det().valuation() % 2 == 0:
                assert act(g, v).parity() == v.parity()
            else:
                assert act(g, v).parity() != v.parity()


class TestEnds:
    def test_involution_swaps_zero_and_infinity(self):
        inv = Matrix2.involution(F2)
        zero_end = RationalEnd.of(RationalFunction.zero(F2))
        assert moebius_end(inv, zero_end).is_infinity()
        assert moebius_end(inv, RationalEnd.infinity()) == zero_end

    def test_translation_on_rational_end(self):
        f = RationalFunction(Polynomial.t(F3))
        tau = Matrix2.translation(f)
        xi = RationalEnd.of(RationalFunction.one(F3))
        assert moebius_end(tau, xi) == RationalEnd.of(
            RationalFunction.one(F3) - f)

    def test_infinity_maps_to_ratio(self):
        rng = random.Random(16)
        for _ in range(20):
            g = rand_matrix(F2, rng)
            out = moebius_end(g, RationalEnd.infinity())
            if g.c.is_zero():
                assert out.is_infinity()
            else:
                assert out == RationalEnd.of(g.a / g.c)


class TestVertexText:
    def test_round_trip(self):
        rng = random.Random(17)
        for field in (F2, F3, F4):
            for _ in range(25):
                v = rand_vertex(field, rng)
                assert BallVertex.from_text(v.to_text(), field) == v

    def test_documented_format(self):
        v = BallVertex.from_text("r=2;a=1*s^-1", F2)
        assert v == ball(F2, 2, {-1: 1})
        assert v.to_text() == "r=2;a=1*s^-1"

    def test_zero_center(self):
        assert BallVertex.base(F3).to_text() == "r=0;a=0"

    def test_bad_text(self):
        with pytest.raises(TreeError):
            BallVertex.from_text("q=2;a=0", F2)
