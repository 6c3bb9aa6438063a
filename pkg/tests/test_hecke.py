import random

import pytest

from btquot.algebra import (FieldSpec, LaurentFragment, Polynomial,
                            RationalFunction)
from btquot.btree import BallVertex, Matrix2, act
from btquot.hecke import (HeckeError, Level, SizeError, is_member,
                          orbit_equivalent, orbit_equivalent_brute_force,
                          parse_level, reduce_vertex, solve_affine,
                          stabilizer, stabilizer_brute_force)

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def ball(field, r, terms):
    return BallVertex(field, r, LaurentFragment(field, terms, r))


def poly(text, field):
    from btquot.algebra import parse_polynomial
    return parse_polynomial(text, field)


def rand_member(field, level, rng, steps=4):
    g = Matrix2.identity(field)
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 0:
            f = Polynomial(field, [rng.randrange(field.q) for _ in range(3)])
            m = Matrix2.translation(RationalFunction(f))
        elif kind == 1:
            lower = level.modulus * Polynomial(
                field, [rng.randrange(field.q) for _ in range(2)])
            m = Matrix2.from_polynomials(Polynomial.one(field),
                                         Polynomial.zero(field), lower,
                                         Polynomial.one(field))
        else:
            m = Matrix2.diagonal(field,
                                 field.element(rng.randrange(1, field.q)),
                                 field.element(rng.randrange(1, field.q)))
        g = m @ g
    return g


class TestLevel:
    def test_parse_forms(self):
        assert str(parse_level("t", F2)) == "t"
        assert str(parse_level("t;t+1", F2)) == "t;t+1"
        lvl = parse_level("t^3", F2)
        assert lvl.primes[0][1] == 3
        assert lvl.modulus == poly("t^3", F2)

    def test_caret_is_multiplicity_not_power(self):
        lvl = parse_level("t^2+t+1", F2)
        assert lvl.primes[0][0] == poly("t^2+t+1", F2)
        assert lvl.primes[0][1] == 1

    def test_zero_level(self):
        lvl = parse_level("0", F2)
        assert lvl.is_zero() and lvl.r == 0 and lvl.degree == 0
        assert lvl.modulus == Polynomial.one(F2)

    def test_rejects_reducible(self):
        with pytest.raises(HeckeError):
            parse_level("t^2+t", F2)

    def test_rejects_repeated(self):
        with pytest.raises(HeckeError):
            parse_level("t;t", F2)

    def test_rejects_non_monic(self):
        with pytest.raises(HeckeError):
            parse_level("2*t", F3)

    def test_degree(self):
        assert parse_level("t^3;t+1", F2).degree == 4


class TestMembership:
    def test_examples(self):
        lvl = parse_level("t", F2)
        m = Matrix2.from_polynomials(Polynomial.one(F2), Polynomial.zero(F2),
                                     Polynomial.t(F2), Polynomial.one(F2))
        assert is_member(m, lvl)
        assert not is_member(Matrix2.involution(F2), lvl)
        assert not is_member(m, parse_level("t^2", F2))

    def test_determinant_must_be_unit_constant(self):
        lvl = parse_level("0", F2)
        t = Polynomial.t(F2)
        g = Matrix2.from_polynomials(t, Polynomial.zero(F2),
                                     Polynomial.zero(F2), Polynomial.one(F2))
        assert not is_member(g, lvl)

    def test_entries_must_be_polynomial(self):
        lvl = parse_level("0", F2)
        g = Matrix2(RationalFunction.t_power(F2, 1),
                    RationalFunction.zero(F2), RationalFunction.zero(F2),
                    RationalFunction.t_power(F2, -1))
        assert not is_member(g, lvl)


class TestReduce:
    def test_already_standard(self):
        red = reduce_vertex(BallVertex.standard(F2, 3))
        assert red.level_n == 3 and red.word == ()

    def test_documented_word(self):
        red = reduce_vertex(ball(F2, 2, {-1: 1}))  # center t, radius pi^2
        assert red.level_n == 2
        assert len(red.word) == 2
        expected = (Matrix2.involution(F2)
                    @ Matrix2.translation(RationalFunction(Polynomial.t(F2))))
        assert red.g == expected

    def test_positive_radius_center_zero(self):
        red = reduce_vertex(ball(F2, 1, {}))
        assert red.level_n == 1 and len(red.word) == 1

    def test_reduction_contract_random(self):
        rng = random.Random(21)
        for _ in range(60):
            field = (F2, F3)[rng.randrange(2)]
            r = rng.randint(-4, 5)
            terms = {e: rng.randrange(field.q) for e in range(r - 4, r)}
            v = ball(field, r, {e: c for e, c in terms.items() if c})
            red = reduce_vertex(v)
            assert red.level_n >= 0
            assert act(red.g, v) == BallVertex.standard(field, red.level_n)
            det = red.g.det()
            assert det.is_polynomial() and det.num.is_constant() and det
            assert red.g.is_polynomial()


class TestSolveAffine:
    def test_unique_solution(self):
        cols = [(F3.element(1), F3.element(0)), (F3.element(0), F3.element(1))]
        part, kern = solve_affine(cols, (F3.element(2), F3.element(1)), F3)
        assert part == (F3.element(2), F3.element(1)) and kern == ()

    def test_inconsistent(self):
        cols = [(F3.element(0), F3.element(0))]
        part, kern = solve_affine(cols, (F3.element(1), F3.element(0)), F3)
        assert part is None and len(kern) == 1

    def test_no_equations(self):
        part, kern = solve_affine([(), ()], (), F3)
        assert part == (F3.zero, F3.zero) and len(kern) == 2


class TestStabilizer:
    def test_orders_on_the_ray_level_t_q2(self):
        lvl = parse_level("t", F2)
        assert stabilizer(BallVertex.standard(F2, 1), lvl).order == 4
        assert stabilizer(ball(F2, 1, {}), lvl).order == 2

    def test_base_vertex_level_t_q3(self):
        # the full stabilizer of the base vertex is the upper triangular
        # constants [[a, b], [0, d]]: order (q-1)^2 * q
        lvl = parse_level("t", F3)
        sd = stabilizer(BallVertex.base(F3), lvl)
        assert sd.order == 12
        mats = sd.materialize()
        assert sorted(m.key() for m in mats) == sorted(
            m.key() for m in stabilizer_brute_force(BallVertex.base(F3), lvl,
                                                    verify_action=True))
        for h in mats:
            assert h.c.is_zero()

    def test_materialize_verifies(self):
        rng = random.Random(22)
        lvl = parse_level("t^2", F3)
        v = act(rand_member(F3, lvl, rng), BallVertex.standard(F3, 2))
        sd = stabilizer(v, lvl)
        mats = sd.materialize()
        assert len(mats) == sd.order
        for h in mats:
            assert is_member(h, lvl)
            assert act(h, v) == v

    def test_materialize_cap(self):
        lvl = parse_level("t", F2)
        sd = stabilizer(BallVertex.standard(F2, 6), lvl)
        with pytest.raises(SizeError):
            sd.materialize(cap=0)

    def test_trivial_generators(self):
        # level 0, base vertex, level D = t^2: only scalars survive at q=2
        lvl = parse_level("t", F2)
        sd = stabilizer(BallVertex.base(F2), lvl)
        assert sd.order == 2  # identity and the unipotent constant
        gens = sd.generators()
        closure = {Matrix2.identity(F2).key()}
        for g in gens:
            closure.add(g.key())
        assert len(gens) >= 1

    def test_trivial_stabilizer_edge_cases(self):
        # at level t^3 over F_2 the vertex B_0^{|1|} is fixed by nothing but
        # the identity: materialize is [id], generators is empty
        lvl = parse_level("t^3", F2)
        sd = stabilizer(ball(F2, 1, {}), lvl)
        assert sd.order == 1
        assert sd.materialize() == [Matrix2.identity(F2)]
        assert sd.generators() == []

    def test_unipotent_basis_generators(self):
        # B_0^{|-2|} at level t over F_2: unipotent space {b: deg b <= 2},
        # three basis generators
        lvl = parse_level("t", F2)
        sd = stabilizer(BallVertex.standard(F2, 2), lvl)
        gens = sd.generators()
        assert len(gens) == 3
        assert sd.unipotent_dim() == 3
        assert all(g.c.is_zero() and g.a == RationalFunction.one(F2)
                   for g in gens)

    def test_generators_generate(self):
        rng = random.Random(23)
        lvl = parse_level("t", F3)
        for n in (0, 1, 2, 3):
            v = act(rand_member(F3, lvl, rng), BallVertex.standard(F3, n))
            sd = stabilizer(v, lvl)
            gens = sd.generators()
            # close under multiplication and compare against materialize
            seen = {Matrix2.identity(F3).key()}
            frontier = [Matrix2.identity(F3)]
            while frontier:
                cur = frontier.pop()
                for g in gens:
                    nxt = cur @ g
                    if nxt.key() not in seen:
                        seen.add(nxt.key())
                        frontier.append(nxt)
            assert seen == {m.key() for m in sd.materialize()}


class TestOrbitEquivalence:
    def test_reflexive_returns_witness(self):
        lvl = parse_level("t", F2)
        v = ball(F2, 1, {})
        h = orbit_equivalent(v, v, lvl)
        assert h is not None and act(h, v) == v and is_member(h, lvl)

    def test_ray_vertices_inequivalent_at_level_t(self):
        lvl = parse_level("t", F2)
        a, b = ball(F2, 1, {}), BallVertex.standard(F2, 1)
        assert orbit_equivalent(a, b, lvl) is None
        assert orbit_equivalent_brute_force(a, b, lvl) is None

    def test_equivalent_at_level_zero(self):
        lvl = parse_level("0", F2)
        a, b = ball(F2, 1, {}), BallVertex.standard(F2, 1)
        h = orbit_equivalent(a, b, lvl)
        assert h is not None and act(h, a) == b and is_member(h, lvl)

    def test_level_zero_needs_nontriangular_witness(self):
        # B_pi^{|2|} ~ B_0^{|0|} at level t over F_2; every witness has the
        # shape of an antidiagonal constant in the ambient frame
        lvl = parse_level("t", F2)
        v = ball(F2, 2, {1: 1})
        w = BallVertex.base(F2)
        h = orbit_equivalent(v, w, lvl)
        assert h is not None and act(h, v) == w and is_member(h, lvl)

    def test_witness_for_translated_vertices(self):
        rng = random.Random(24)
        for lvl_text in ("t", "t^2", "t;t+1"):
            lvl = parse_level(lvl_text, F3)
            for _ in range(15):
                v = ball(F3, rng.randint(-2, 3), {})
                h0 = rand_member(F3, lvl, rng)
                w = act(h0, v)
                h = orbit_equivalent(v, w, lvl)
                assert h is not None
                assert act(h, v) == w and is_member(h, lvl)

    def test_different_levels_never_equivalent(self):
        lvl = parse_level("t", F2)
        assert orbit_equivalent(BallVertex.standard(F2, 1),
                                BallVertex.standard(F2, 2), lvl) is None
