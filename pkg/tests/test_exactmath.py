import random
from fractions import Fraction

import pytest

from quartic_torsion.exactmath import (
    RatPoly,
    factor_bounded,
    is_irreducible,
    is_rational_square,
    poly_gcd,
    poly_xgcd,
    rat_from_str,
    rat_to_str,
    rational_roots,
    resultant,
    squarefree_part,
    squarefree_part_rational,
)

X = RatPoly([0, 1])
ONE = RatPoly([1])


def rand_poly(rng, deg, span=9):
    cs = [Fraction(rng.randrange(-span, span + 1)) for _ in range(deg)]
    cs.append(Fraction(rng.randrange(1, span + 1)))
    return RatPoly(cs)


class TestRationalText:
    def test_roundtrip(self):
        for s in ["3", "-3", "5/7", "-12/35", "0"]:
            assert rat_to_str(rat_from_str(s)) == s

    def test_lowest_terms(self):
        assert rat_from_str("4/6") == Fraction(2, 3)


class TestPolyBasics:
    def test_zero_degree_sentinel(self):
        assert RatPoly([]).degree is None
        assert RatPoly([0, 0]).degree is None
        assert RatPoly([5]).degree == 0

    def test_text_roundtrip(self):
        p = RatPoly.from_str("5,0,-10,0,1")
        assert p.degree == 4
        assert p.coeffs[0] == 5 and p.coeffs[2] == -10
        assert RatPoly.from_str(p.to_str()) == p

    def test_divmod_recomposes(self):
        rng = random.Random(1)
        for _ in range(40):
            a = rand_poly(rng, rng.randrange(0, 9))
            b = rand_poly(rng, rng.randrange(0, 5))
            q, r = a.divmod(b)
            assert q * b + r == a
            assert r.is_zero() or r.degree < b.degree


class TestPolyGcd:
    def test_shared_root(self):
        # gcd(x^2-1, x-1) = x-1
        f = RatPoly([-1, 0, 1])
        g = RatPoly([-1, 1])
        assert poly_gcd(f, g) == g

    def test_gcd_with_zero(self):
        f = RatPoly([2, 4])
        assert poly_gcd(f, RatPoly([])) == f.monic()
        assert poly_gcd(RatPoly([]), f) == f.monic()

    def test_divides_both_and_scaling(self):
        rng = random.Random(2)
        for _ in range(30):
            f = rand_poly(rng, rng.randrange(1, 5))
            g = rand_poly(rng, rng.randrange(1, 5))
            h = rand_poly(rng, rng.randrange(1, 4))
            d = poly_gcd(f, g)
            assert d.divides_exactly(f) and d.divides_exactly(g)
            # gcd(f h, g h) = monic(h) * gcd(f, g)
            assert poly_gcd(f * h, g * h) == (h.monic() * d)

    def test_xgcd_identity(self):
        rng = random.Random(3)
        for _ in range(20):
            f = rand_poly(rng, rng.randrange(1, 5))
            g = rand_poly(rng, rng.randrange(1, 5))
            d, u, v = poly_xgcd(f, g)
            assert u * f + v * g == d
            assert d == poly_gcd(f, g)


class TestResultant:
    def test_linear_pair(self):
        # Res(x-2, x-3) = g evaluated at 2 = -1
        assert resultant(RatPoly([-2, 1]), RatPoly([-3, 1])) == -1

    def test_common_roots(self):
        f = RatPoly([-5, 0, 1])
        assert resultant(f, f) == 0

    def test_norm_of_linear_form(self):
        # Res_theta(theta^2 - 5, x - theta) as a function of x is x^2 - 5:
        # check at sample values of x, each a univariate resultant
        f = RatPoly([-5, 0, 1])
        for x0 in range(-3, 4):
            g = RatPoly([x0, -1])  # x0 - theta as polynomial in theta
            assert resultant(f, g) == x0 * x0 - 5

    def test_vanishes_iff_gcd_nonconstant(self):
        rng = random.Random(4)
        for _ in range(40):
            f = rand_poly(rng, rng.randrange(1, 9, 1))
            g = rand_poly(rng, rng.randrange(1, 9, 1))
            r = resultant(f, g)
            d = poly_gcd(f, g)
            assert (r == 0) == (d.degree > 0)

    def test_multiplicativity(self):
        rng = random.Random(5)
        for _ in range(20):
            f = rand_poly(rng, rng.randrange(1, 4))
            g = rand_poly(rng, rng.randrange(1, 4))
            h = rand_poly(rng, rng.randrange(1, 4))
            assert resultant(f, g * h) == resultant(f, g) * resultant(f, h)


class TestSquarefree:
    def test_strips_multiplicity(self):
        f = RatPoly([-1, 1]) ** 2 * RatPoly([2, 1])
        assert squarefree_part(f) == (RatPoly([-1, 1]) * RatPoly([2, 1])).monic()

    def test_already_squarefree(self):
        f = RatPoly([1, 0, 1])
        assert squarefree_part(f) == f

    def test_cube(self):
        f = RatPoly([1, 0, 1]) ** 3
        assert squarefree_part(f) == RatPoly([1, 0, 1])

    def test_divides_and_no_repeats(self):
        rng = random.Random(6)
        for _ in range(20):
            f = rand_poly(rng, rng.randrange(1, 4)) ** rng.randrange(1, 4) * rand_poly(rng, 2)
            s = squarefree_part(f)
            assert s.divides_exactly(f)
            assert poly_gcd(s, s.derivative()).degree == 0


class TestRationalRoots:
    def test_pm_one(self):
        assert rational_roots(RatPoly([-1, 0, 1])) == {1, -1}

    def test_cubic_with_x_factor(self):
        # 3x^4 + 12x = 3x(x^3 + 4); x^3+4 has no rational root
        assert rational_roots(RatPoly([0, 12, 0, 0, 3])) == {0}

    def test_fractional_roots(self):
        # (2x-1)(3x+5)
        f = RatPoly([-1, 2]) * RatPoly([5, 3])
        assert rational_roots(f) == {Fraction(1, 2), Fraction(-5, 3)}

    def test_every_root_verifies(self):
        rng = random.Random(7)
        for _ in range(20):
            f = rand_poly(rng, rng.randrange(1, 7))
            for r in rational_roots(f):
                assert f(r) == 0


class TestFactorBounded:
    def test_x4_minus_1(self):
        facs = factor_bounded(RatPoly([-1, 0, 0, 0, 1]), 4)
        assert facs == {
            RatPoly([-1, 1]): 1,
            RatPoly([1, 1]): 1,
            RatPoly([1, 0, 1]): 1,
        }

    def test_quartic_field_poly_irreducible(self):
        f = RatPoly([5, 0, -10, 0, 1])
        assert factor_bounded(f, 4) == {f: 1}
        assert is_irreducible(f)

    def test_multiplicities(self):
        # x^6 + x^3 = x^3 (x+1)(x^2-x+1)
        facs = factor_bounded(RatPoly([0, 0, 0, 1, 0, 0, 1]), 4)
        assert facs == {
            RatPoly([0, 1]): 3,
            RatPoly([1, 1]): 1,
            RatPoly([1, -1, 1]): 1,
        }

    def test_degree_cap_excludes_big_factors(self):
        big = RatPoly([3, 1, 0, 0, 0, 0, 1])  # irreducible sextic x^6+x+3
        f = RatPoly([1, 0, 1]) * big
        facs = factor_bounded(f, 4)
        assert facs == {RatPoly([1, 0, 1]): 1}

    def test_reassembly(self):
        rng = random.Random(8)
        for _ in range(15):
            f = ONE
            for _ in range(rng.randrange(1, 4)):
                f = f * rand_poly(rng, rng.randrange(1, 4)) ** rng.randrange(1, 3)
            facs = factor_bounded(f, 4)
            prod = ONE
            for g, m in facs.items():
                prod = prod * g**m
            # cofactor of degree > dmax: divide out and confirm exactness
            q, r = f.divmod(prod)
            assert r.is_zero()

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            factor_bounded(RatPoly([]), 4)


class TestSquarefreeIntegers:
    def test_rational_squarefree_part(self):
        assert squarefree_part_rational(Fraction(8)) == 2
        assert squarefree_part_rational(Fraction(-45)) == -5
        assert squarefree_part_rational(Fraction(4, 9)) == 1
        assert squarefree_part_rational(Fraction(80, 1)) == 5

    def test_is_rational_square(self):
        assert is_rational_square(Fraction(4, 9))
        assert not is_rational_square(Fraction(8))
        assert not is_rational_square(Fraction(-4))
