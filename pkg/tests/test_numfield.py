import random
from fractions import Fraction

import pytest

from quartic_torsion.errors import DegenerateTowerError, UnsupportedFieldError
from quartic_torsion.exactmath import RatPoly, is_rational_square, resultant
from quartic_torsion.numfield import (
    GaloisType,
    KPoly,
    NumberField,
    biquadratic_field,
    cyclic_criterion,
    definition_degree,
    galois_type,
    parse_field_spec,
    quadratic_field,
    quadratic_subfields,
    rational_field,
    roots_in_field,
    sqrt_in_field,
    tower_field,
)

ZETA5 = NumberField(RatPoly([1, 1, 1, 1, 1]))
SQRT5 = quadratic_field(5)
F_10_5 = NumberField(RatPoly([5, 0, -10, 0, 1]))


class TestElementArithmetic:
    def test_inverse_in_cyclotomic(self):
        theta = ZETA5.gen()
        inv = theta.inverse()
        assert inv == ZETA5.element([-1, -1, -1, -1])
        # oracle: multiply back and reduce to 1
        assert theta * inv == ZETA5.one()

    def test_power_reduction(self):
        # theta^2 * theta^3 = theta^5 = 10 theta^3 - 5 theta  (theta^4 = 10theta^2 - 5)
        th = F_10_5.gen()
        assert th**2 * th**3 == F_10_5.element([0, -5, 0, 10])

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            ZETA5.zero().inverse()

    def test_division_roundtrip(self):
        rng = random.Random(11)
        for _ in range(30):
            x = ZETA5.element([rng.randrange(-5, 6) for _ in range(4)])
            y = ZETA5.element([rng.randrange(-5, 6) for _ in range(4)])
            if y.is_zero():
                continue
            assert (x / y) * y == x

    def test_norm_multiplicative(self):
        rng = random.Random(12)
        for _ in range(20):
            x = F_10_5.element([rng.randrange(-4, 5) for _ in range(4)])
            y = F_10_5.element([rng.randrange(-4, 5) for _ in range(4)])
            assert (x * y).norm() == x.norm() * y.norm()


class TestRootsInField:
    def test_sqrt5_roots(self):
        roots = roots_in_field(RatPoly([-5, 0, 1]), SQRT5)
        th = SQRT5.gen()
        assert roots == {th, -th}

    def test_cyclotomic_splits(self):
        f = RatPoly([1, 1, 1, 1, 1])
        roots = roots_in_field(f, ZETA5)
        th = ZETA5.gen()
        assert roots == {th, th**2, th**3, ZETA5.element([-1, -1, -1, -1])}
        # oracle: every claimed root reduces the polynomial to 0
        for r in roots:
            assert KPoly.from_ratpoly(ZETA5, f)(r).is_zero()

    def test_totally_real_excludes_i(self):
        assert roots_in_field(RatPoly([1, 0, 1]), SQRT5) == set()

    def test_rational_field(self):
        Q = rational_field()
        roots = roots_in_field(RatPoly([-1, 0, 1]), Q)
        assert roots == {Q.element(1), Q.element(-1)}

    def test_kpoly_coefficients(self):
        # x^2 - theta has root theta in QQ[theta]/(theta^4 - 10theta^2 + 5)?
        # theta = sqrt(5 + 2*sqrt(5)) is not a square there generically; but
        # x^2 - theta^2 certainly has roots +-theta.
        th = F_10_5.gen()
        h = KPoly(F_10_5, [-(th * th), F_10_5.zero(), F_10_5.one()])
        assert roots_in_field(h, F_10_5) == {th, -th}


class TestSqrtInField:
    def test_sqrt_of_5(self):
        assert sqrt_in_field(5, SQRT5) == SQRT5.gen()

    def test_no_sqrt_of_minus_one(self):
        assert sqrt_in_field(-1, SQRT5) is None

    def test_sqrt_of_theta_squared(self):
        th = F_10_5.gen()
        assert sqrt_in_field(th * th, F_10_5) == th

    def test_square_roundtrip_and_absence(self):
        rng = random.Random(13)
        for _ in range(15):
            x = SQRT5.element([rng.randrange(-6, 7), rng.randrange(-6, 7)])
            g = sqrt_in_field(x * x, SQRT5)
            assert g is not None and g * g == x * x
            beta = SQRT5.element([rng.randrange(-6, 7), rng.randrange(-6, 7)])
            got = sqrt_in_field(beta, SQRT5)
            if got is None:
                h = KPoly(SQRT5, [-beta, SQRT5.zero(), SQRT5.one()])
                assert roots_in_field(h, SQRT5) == set()
            else:
                assert got * got == beta


class TestGaloisType:
    def test_cyclotomic_is_cyclic(self):
        assert galois_type(ZETA5) is GaloisType.CyclicQuartic

    def test_table_field_is_cyclic(self):
        assert galois_type(F_10_5) is GaloisType.CyclicQuartic

    def test_x4_plus_1_biquadratic(self):
        K = NumberField(RatPoly([1, 0, 0, 0, 1]))
        assert galois_type(K) is GaloisType.Biquadratic
        # discriminant-square oracle
        f = K.defining_poly
        assert is_rational_square(resultant(f, f.derivative()))

    def test_x4_minus_2_not_galois(self):
        K = NumberField(RatPoly([-2, 0, 0, 0, 1]))
        assert galois_type(K) is GaloisType.NonGaloisQuartic

    def test_splitting_consistency(self):
        for K in (ZETA5, F_10_5, NumberField(RatPoly([1, 0, 0, 0, 1])),
                  NumberField(RatPoly([-2, 0, 0, 0, 1]))):
            nroots = len(K.defpoly_roots())
            galois = galois_type(K) in (GaloisType.CyclicQuartic, GaloisType.Biquadratic)
            assert galois == (nroots == 4)


class TestCyclicCriterion:
    def test_direct_instance(self):
        gt, K = cyclic_criterion(5, 5, 2)
        assert gt is GaloisType.CyclicQuartic
        assert K.defining_poly == RatPoly([5, 0, -10, 0, 1])

    def test_b_zero_biquadratic(self):
        gt, K = cyclic_criterion(5, 3, 0)
        assert gt is GaloisType.Biquadratic
        assert galois_type(K) is GaloisType.Biquadratic

    def test_a_zero_pure_quartic(self):
        gt, K = cyclic_criterion(2, 0, 1)
        assert gt is GaloisType.NonGaloisQuartic
        assert galois_type(K) is GaloisType.NonGaloisQuartic

    def test_negative_m_never_cyclic(self):
        rng = random.Random(14)
        for _ in range(25):
            a = Fraction(rng.randrange(-9, 10))
            b = Fraction(rng.randrange(-9, 10))
            try:
                gt, _ = cyclic_criterion(-5, a, b)
            except DegenerateTowerError:
                continue
            assert gt is not GaloisType.CyclicQuartic

    def test_degenerate_tower_rejected(self):
        # alpha = 3 + 2*sqrt(2) = (1 + sqrt(2))^2
        with pytest.raises(DegenerateTowerError):
            cyclic_criterion(2, 3, 2)

    def test_square_m_rejected(self):
        with pytest.raises(DegenerateTowerError):
            cyclic_criterion(4, 1, 1)

    def test_agreement_with_classifier(self):
        rng = random.Random(15)
        checked = 0
        while checked < 40:
            m = rng.choice([-1, 2, 3, 5, -2, -3, 6, 7, 10, -5, 13])
            a = Fraction(rng.randrange(-12, 13))
            b = Fraction(rng.randrange(-12, 13))
            try:
                gt, K = cyclic_criterion(m, a, b)
            except DegenerateTowerError:
                continue
            assert galois_type(K) is gt, (m, a, b, gt, galois_type(K))
            checked += 1


class TestQuadraticSubfields:
    def test_cyclotomic(self):
        assert quadratic_subfields(ZETA5) == {5}
        # cross-check: sqrt(5) really lies in the field
        assert ZETA5.sqrt_of_int(5) is not None

    def test_x4_plus_1(self):
        K = NumberField(RatPoly([1, 0, 0, 0, 1]))
        assert quadratic_subfields(K) == {-1, 2, -2}
        for m in (-1, 2, -2):
            assert K.sqrt_of_int(m) is not None

    def test_table_field(self):
        assert quadratic_subfields(F_10_5) == {5}

    def test_cyclic_subfield_totally_real(self):
        # for every cyclic quartic built from the tower, the subfield is m > 0
        rng = random.Random(16)
        found = 0
        while found < 8:
            m = rng.choice([2, 3, 5, 10, 13])
            a = Fraction(rng.randrange(1, 15))
            b = Fraction(rng.randrange(1, 15))
            try:
                gt, K = cyclic_criterion(m, a, b)
            except DegenerateTowerError:
                continue
            if gt is not GaloisType.CyclicQuartic:
                continue
            subs = quadratic_subfields(K)
            assert len(subs) == 1 and next(iter(subs)) > 0
            found += 1

    def test_biquadratic_has_three(self):
        K = biquadratic_field(2, 3)
        assert quadratic_subfields(K) == {2, 3, 6}

    def test_disc_square_iff_three_subfields(self):
        for K in (ZETA5, F_10_5, biquadratic_field(-7, -15), NumberField(RatPoly([1, 0, 0, 0, 1]))):
            f = K.defining_poly
            disc_sq = is_rational_square(resultant(f, f.derivative()))
            assert disc_sq == (len(quadratic_subfields(K)) == 3)
            assert disc_sq == (galois_type(K) is GaloisType.Biquadratic)


class TestFieldConstruction:
    def test_non_monic_normalization(self):
        # 13x^4 - 26x^2 + 4, scaled monic-integral via y = 13x
        K = NumberField(RatPoly([4, 0, -26, 0, 13]).monic())
        assert K.defining_poly == RatPoly([8788, 0, -338, 0, 1])

    def test_reducible_rejected(self):
        with pytest.raises(UnsupportedFieldError):
            NumberField(RatPoly([-1, 0, 0, 0, 1]))

    def test_parse_specs(self):
        assert parse_field_spec("q").degree == 1
        assert parse_field_spec("5").defining_poly == RatPoly([-5, 0, 1])
        assert parse_field_spec("1,1,1,1") == ZETA5
        assert parse_field_spec("5,0,-10,0") == F_10_5
        assert parse_field_spec("5;5;2") == F_10_5
        K = parse_field_spec("-7,-15")
        assert galois_type(K) is GaloisType.Biquadratic
        assert quadratic_subfields(K) == {-7, -15, 105}

    def test_tower_field_matches(self):
        assert tower_field(5, 5, 2) == F_10_5


class TestDefinitionDegree:
    def test_rational_element(self):
        assert definition_degree([ZETA5.element(7)], ZETA5) == 1

    def test_quadratic_element(self):
        w = ZETA5.sqrt_of_int(5)
        e = w * Fraction(2, 3) + 4
        assert definition_degree([e], ZETA5) == 2

    def test_full_degree_element(self):
        assert definition_degree([ZETA5.gen()], ZETA5) == 4
