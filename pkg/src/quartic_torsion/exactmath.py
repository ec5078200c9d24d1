"""Exact rational arithmetic and univariate polynomial algebra over QQ.

Rationals are fractions.Fraction (always lowest terms, positive denominator).
RatPoly is a dense immutable polynomial over Fraction, constant term first.
On top of the ring operations this module provides the four nontrivial
primitives everything else consumes: monic gcd, resultant, squarefree part,
rational roots, and factorization restricted to factors of degree <= dmax.

All arithmetic is exact; equality of values is decidable and used freely.
Every value is immutable, so everything here is safe to share between
threads or processes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as int_gcd, isqrt

from sympy import factorint

from . import _intpoly as zp

Rational = Fraction


def rat_from_str(s: str) -> Fraction:
    """Parse "p/q" or "p" (optional leading minus, no whitespace)."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def rat_to_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def squarefree_part_int(n: int) -> int:
    """Squarefree part of a nonzero integer (sign preserved)."""
    if n == 0:
        raise ValueError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def squarefree_part_rational(q: Fraction) -> int:
    """Squarefree integer m with q = m * (rational square)."""
    if q == 0:
        raise ValueError("squarefree part of 0")
    return squarefree_part_int(q.numerator * q.denominator)


class RatPoly:
    """Dense univariate polynomial over QQ, immutable.

    coeffs[i] is the coefficient of x**i; trailing zeros are trimmed, so the
    leading coefficient is nonzero unless the polynomial is zero.  The degree
    of the zero polynomial is the sentinel None, never an integer.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("RatPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_ints(cls, ints) -> "RatPoly":
        return cls([Fraction(i) for i in ints])

    @classmethod
    def x_power(cls, n: int, c=1) -> "RatPoly":
        return cls([0] * n + [c])

    @classmethod
    def from_str(cls, s: str) -> "RatPoly":
        """Parse "c0,c1,...,cn" (constant term first)."""
        return cls([rat_from_str(t) for t in s.split(",")])

    def to_str(self) -> str:
        return ",".join(rat_to_str(c) for c in self.coeffs) if self.coeffs else "0"

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "RatPoly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(rat_to_str(c))
            else:
                cs = "" if c == 1 else ("-" if c == -1 else rat_to_str(c) + "*")
                terms.append(f"{cs}x^{i}" if i > 1 else f"{cs}x")
        return "RatPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        out = list(self.coeffs) + [Fraction(0)] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return RatPoly(out)

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RatPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "RatPoly":
        c = Fraction(c)
        return RatPoly([c * x for x in self.coeffs])

    def __pow__(self, n: int) -> "RatPoly":
        out = RatPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero() or len(self.coeffs) < len(other.coeffs):
            return RatPoly([]), self
        rem = list(self.coeffs)
        b = other.coeffs
        inv = 1 / b[-1]
        q = [Fraction(0)] * (len(rem) - len(b) + 1)
        for k in range(len(q) - 1, -1, -1):
            t = rem[k + len(b) - 1] * inv
            q[k] = t
            if t:
                for j, y in enumerate(b):
                    rem[k + j] -= t * y
        return RatPoly(q), RatPoly(rem[: len(b) - 1])

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(other)[1]

    def divides_exactly(self, other: "RatPoly") -> bool:
        """True iff self divides other."""
        return other.divmod(self)[1].is_zero()

    # -- calculus / evaluation --------------------------------------------

    def derivative(self) -> "RatPoly":
        return RatPoly([i * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def __call__(self, x):
        """Evaluate via Horner.  Works for Fraction and for any ring element
        supporting + and * with Fraction scalars (e.g. field elements)."""
        if not self.coeffs:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        v = None
        for c in reversed(self.coeffs):
            v = c if v is None else v * x + c
        return v

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    # -- integer form ------------------------------------------------------

    def to_int_poly(self) -> tuple[Fraction, list[int]]:
        """Return (c, P) with self = c * P, P primitive in ZZ[x], lc(P) > 0."""
        if self.is_zero():
            return Fraction(0), []
        den = reduce(lambda a, b: a * b // int_gcd(a, b),
                     (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        cont, prim = zp.zz_primitive(ints)
        return Fraction(cont, den), prim

    @classmethod
    def from_int_poly(cls, ints) -> "RatPoly":
        return cls.from_ints(ints)


# ---------------------------------------------------------------------------
# the exactmath operations
# ---------------------------------------------------------------------------


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd over QQ; gcd(f, 0) = monic(f)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    _, fi = f.to_int_poly()
    _, gi = g.to_int_poly()
    return RatPoly.from_ints(zp.zz_gcd(fi, gi)).monic()


def poly_xgcd(f: RatPoly, g: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Extended gcd over QQ: returns (d, u, v), d monic, u*f + v*g = d."""
    r0, r1 = f, g
    s0, s1 = RatPoly([1]), RatPoly([])
    t0, t1 = RatPoly([]), RatPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = 1 / r0.lc
    return r0.scale(c), s0.scale(c), t0.scale(c)


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Res(f, g); zero iff f and g share a root."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant requires nonzero polynomials")
    if f.degree == 0:
        return f.lc ** g.degree
    if g.degree == 0:
        return g.lc ** f.degree
    cf, fi = f.to_int_poly()
    cg, gi = g.to_int_poly()
    r = zp.zz_resultant(fi, gi)
    return cf**g.degree * cg**f.degree * r


def squarefree_part(h: RatPoly) -> RatPoly:
    """Monic product of the distinct irreducible factors of h."""
    if h.is_zero():
        raise ValueError("squarefree part of zero polynomial")
    if h.degree == 0:
        return RatPoly([1])
    d = poly_gcd(h, h.derivative())
    return (h // d).monic()


def squarefree_decomposition(h: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: h = lc * prod g_i^i with g_i monic squarefree coprime.
    Returns the list of (g_i, i) with g_i nonconstant."""
    if h.is_zero():
        raise ValueError("squarefree decomposition of zero polynomial")
    h = h.monic()
    out = []
    if h.degree == 0:
        return out
    d = poly_gcd(h, h.derivative())
    if d.degree == 0:
        return [(h, 1)]
    w = h // d
    y = h.derivative() // d
    z = y - w.derivative()
    i = 1
    while not z.is_zero():
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w // g
        y = z // g
        z = y - w.derivative()
        i += 1
    if w.degree > 0:
        out.append((w, i))
    return out


def factor_bounded(h: RatPoly, dmax: int) -> dict[RatPoly, int]:
    """Monic irreducible factors of h over QQ of degree <= dmax, with exact
    multiplicities.  Factors of degree > dmax are not returned (and their
    irreducibility is never certified)."""
    if h.is_zero():
        raise ValueError("factor_bounded of zero polynomial")
    if dmax < 1 or h.degree == 0:
        return {}
    out: dict[RatPoly, int] = {}
    for g, mult in squarefree_decomposition(h):
        # strip powers of x first so the integer machinery sees h(0) != 0
        k = 0
        while g.coeffs[0] == 0:
            g = RatPoly(g.coeffs[1:])
            k += 1
        if k:
            out[RatPoly([0, 1])] = out.get(RatPoly([0, 1]), 0) + k * mult
        if g.degree and g.degree > 0:
            _, gi = g.to_int_poly()
            fs, _ = zp.zz_factor_squarefree_bounded(gi, dmax)
            for fac in fs:
                key = RatPoly.from_ints(fac).monic()
                out[key] = out.get(key, 0) + mult
    return out


def rational_roots(h: RatPoly) -> set[Fraction]:
    """Exactly the rational roots of a nonzero polynomial, each once."""
    if h.is_zero():
        raise ValueError("rational_roots of zero polynomial")
    roots = set()
    for fac in factor_bounded(h, 1):
        # monic linear factor x - r
        roots.add(-fac.coeffs[0])
    for r in roots:
        assert h(r) == 0
    return roots


def is_irreducible(h: RatPoly) -> bool:
    """Irreducibility over QQ for deg <= 4 (all the engine ever certifies)."""
    if h.is_zero() or h.degree == 0:
        return False
    if h.degree > 4:
        raise ValueError("irreducibility certified only up to degree 4")
    facs = factor_bounded(h, h.degree)
    return facs == {h.monic(): 1}
