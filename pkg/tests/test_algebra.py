import random

import pytest

from btquot.algebra import (INF, AlgebraError, FieldSpec, LaurentFragment,
                            ParseError, Polynomial, RationalFunction,
                            expand_at_infinity, format_polynomial,
                            format_rational, parse_fragment, parse_polynomial,
                            parse_rational, poly_gcd)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F4 = FieldSpec(2, 2)
F5 = FieldSpec(5)
F8 = FieldSpec(2, 3)
F9 = FieldSpec(3, 2)
ALL_FIELDS = [F2, F3, F4, F5, FieldSpec(7), F8, F9]


def rand_poly(field, rng, max_deg=4):
    return Polynomial(field, [rng.randrange(field.q)
                              for _ in range(rng.randint(0, max_deg) + 1)])


def rand_rational(field, rng, max_deg=4):
    num = rand_poly(field, rng, max_deg)
    while True:
        den = rand_poly(field, rng, max_deg)
        if not den.is_zero():
            return RationalFunction(num, den)


class TestFieldSpec:
    def test_rejects_composite_characteristic(self):
        with pytest.raises(AlgebraError):
            FieldSpec(6)

    def test_rejects_reducible_modulus(self):
        with pytest.raises(AlgebraError):
            FieldSpec(2, 2, modulus=(1, 0, 1))  # g^2+1 = (g+1)^2 over F_2

    def test_builtin_moduli(self):
        assert F4.q == 4 and F8.q == 8 and F9.q == 9

    def test_large_prime_accepted(self):
        F = FieldSpec(101)
        a = F.element(57)
        assert a * a.inverse() == F.one

    def test_packed_encoding(self):
        # over F_4 the packed integer 2 is the generator g
        g = F4.element(2)
        assert g == F4.generator()
        assert g.to_int() == 2


class TestFieldOps:
    def test_char_two(self):
        assert (F2.one + F2.one).is_zero()

    def test_f4_generator_square(self):
        g = F4.generator()
        assert g * g == g + F4.one

    def test_f5_inverse(self):
        assert F5.element(2).inverse() == F5.element(3)

    def test_inversion_of_zero_raises(self):
        with pytest.raises(AlgebraError):
            F3.zero.inverse()

    def test_field_axioms_sampled(self):
        rng = random.Random(1)
        cases = 0
        for field in ALL_FIELDS:
            elements = field.elements()
            for _ in range(30):
                a, b, c = (rng.choice(elements) for _ in range(3))
                assert (a + b) + c == a + (b + c)
                assert a * (b + c) == a * b + a * c
                assert (a * b) * c == a * (b * c)
                assert a + (-a) == field.zero
                if a:
                    assert a * a.inverse() == field.one
                cases += 1
        assert cases >= 200


class TestPolynomial:
    def test_canonical_strip(self):
        p = Polynomial(F2, [1, 1, 0, 0])
        assert p.degree == 1

    def test_divmod_roundtrip(self):
        rng = random.Random(2)
        for field in (F3, F4):
            for _ in range(50):
                a = rand_poly(field, rng)
                b = rand_poly(field, rng)
                if b.is_zero():
                    continue
                q, r = divmod(a, b)
                assert q * b + r == a
                assert r.is_zero() or r.degree < b.degree

    def test_gcd_divides(self):
        rng = random.Random(3)
        for _ in range(50):
            a, b = rand_poly(F3, rng), rand_poly(F3, rng)
            g = poly_gcd(a, b)
            if g.is_zero():
                assert a.is_zero() and b.is_zero()
            else:
                assert (a % g).is_zero() and (b % g).is_zero()

    def test_irreducibility(self):
        assert parse_polynomial("t^2+t+1", F2).is_irreducible()
        assert not parse_polynomial("t^2+1", F2).is_irreducible()
        assert parse_polynomial("t^2+1", F3).is_irreducible()


class TestValuation:
    def test_uniformizer(self):
        t = RationalFunction(Polynomial.t(F2))
        assert t.valuation() == -1

    def test_pi_squared(self):
        assert RationalFunction.t_power(F2, -2).valuation() == 2

    def test_mixed(self):
        f = parse_rational("(t+1)/t^2", F2)
        assert f.valuation() == 1

    def test_zero(self):
        assert RationalFunction.zero(F2).valuation() == INF

    def test_multiplicative_and_ultrametric(self):
        rng = random.Random(4)
        cases = 0
        for field in (F2, F3, F5):
            for _ in range(80):
                f = rand_rational(field, rng)
                g = rand_rational(field, rng)
                assert (f * g).valuation() == f.valuation() + g.valuation() \
                    or (f * g).is_zero()
                s = f + g
                assert s.valuation() >= min(f.valuation(), g.valuation())
                cases += 1
        assert cases >= 200


class TestExpansion:
    def test_exact_polynomial(self):
        frag = expand_at_infinity(RationalFunction(Polynomial.t(F2)), 3)
        assert frag.key() == (3, (-1, 1))

    def test_geometric_series(self):
        t = RationalFunction(Polynomial.t(F2))
        frag = expand_at_infinity(RationalFunction.one(F2) / (t - 1), 4)
        assert dict((e, c.to_int()) for e, c in frag.terms) == {1: 1, 2: 1,
                                                               3: 1}

    def test_zero(self):
        assert expand_at_infinity(RationalFunction.zero(F2), 0).is_zero()

    def test_remainder_valuation_property(self):
        rng = random.Random(5)
        cases = 0
        for field in (F2, F3, F4):
            for _ in range(70):
                f = rand_rational(field, rng)
                cutoff = rng.randint(-6, 6)
                frag = expand_at_infinity(f, cutoff)
                assert all(e < cutoff for e, _ in frag.terms)
                diff = f - frag.to_rational()
                assert diff.valuation() >= cutoff
                cases += 1
        assert cases >= 200

    def test_polynomial_part_is_euclidean_quotient(self):
        rng = random.Random(6)
        for field in (F2, F3):
            for _ in range(60):
                f = rand_rational(field, rng)
                cutoff = rng.randint(1, 5)
                frag = expand_at_infinity(f, cutoff)
                assert frag.polynomial_part() == f.num // f.den


class TestPolynomialPart:
    def test_mixed_exponents(self):
        x = LaurentFragment(F2, {-2: 1, -1: 1, 1: 1}, 2)
        assert x.polynomial_part() == parse_polynomial("t^2+t", F2)

    def test_positive_only(self):
        assert LaurentFragment(F2, {1: 1, 2: 1}, 3).polynomial_part().is_zero()

    def test_constant(self):
        x = LaurentFragment(F5, {0: 3}, 1)
        assert x.polynomial_part() == Polynomial.constant(F5, 3)

    def test_cutoff_enforced(self):
        with pytest.raises(AlgebraError):
            LaurentFragment(F2, {2: 1}, 2)


class TestParsing:
    def test_basic_polynomials(self):
        assert parse_polynomial("t^2+t+1", F2).key() == (1, 1, 1)
        assert parse_polynomial("3*t^4+2", F5).key() == (2, 0, 0, 0, 3)

    def test_rational(self):
        r = parse_rational("(t+1)/t^2", F2)
        assert r.num.key() == (1, 1) and r.den.key() == (0, 0, 1)

    def test_subtraction(self):
        assert parse_polynomial("t-1", F3) == parse_polynomial("t+2", F3)

    def test_coefficient_out_of_range(self):
        with pytest.raises(ParseError):
            parse_polynomial("7*t", F5)

    def test_syntax_error_carries_position(self):
        with pytest.raises(ParseError) as ei:
            parse_polynomial("t^^2", F2)
        assert "position" in str(ei.value)

    def test_whitespace_ignored(self):
        assert parse_polynomial(" t ^ 2 + 1 ", F3) == \
            parse_polynomial("t^2+1", F3)

    def test_print_parse_round_trip(self):
        rng = random.Random(7)
        for field in ALL_FIELDS:
            for _ in range(30):
                p = rand_poly(field, rng)
                assert parse_polynomial(format_polynomial(p), field) == p
                f = rand_rational(field, rng)
                assert parse_rational(format_rational(f), field) == f

    def test_fragment_round_trip(self):
        frag = LaurentFragment(F4, {-2: 3, 1: 2}, 2)
        text = "3*s^-2+2*s^1"
        assert parse_fragment(text, F4, 2) == frag
