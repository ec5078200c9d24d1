"""Number fields QQ[theta]/(f) of degree 1, 2, and 4.

Elements are coefficient vectors in the power basis 1, theta, ..., theta^(d-1).
The defining polynomial is normalized to a monic integral form at construction
(via x -> x/c) and certified irreducible once, so every downstream argument may
assume it.  Root-finding inside the field goes through element norms: the norm
of h(x - s*theta) is a rational polynomial whose factors of degree <= [K:QQ]
pin down the candidate minimal polynomials, and a gcd over K recovers each
root.  This keeps all rational factorization at degree <= 4 * deg(h) even when
deg(h) is large, and at degree <= 16 for the common case of a quartic solve.
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction

from sympy import factorint

from .errors import DegenerateTowerError, UnsupportedFieldError
from .exactmath import (
    RatPoly,
    factor_bounded,
    is_irreducible,
    is_rational_square,
    poly_xgcd,
    rational_roots,
    resultant,
    squarefree_part_rational,
)


class GaloisType(enum.Enum):
    Rational = "Rational"
    Quadratic = "Quadratic"
    CyclicQuartic = "CyclicQuartic"
    Biquadratic = "Biquadratic"
    NonGaloisQuartic = "NonGaloisQuartic"


def _integral_scale(poly: RatPoly) -> int:
    """Smallest c >= 1 such that poly(x/c) * c^deg is integral (poly monic)."""
    d = poly.degree
    c = 1
    need: dict[int, int] = {}
    for i, coeff in enumerate(poly.coeffs[:-1]):
        den = coeff.denominator
        if den == 1:
            continue
        k = d - i
        for p, e in factorint(den).items():
            need[p] = max(need.get(p, 0), -(-e // k))
    for p, e in need.items():
        c *= p**e
    return c


class NumberField:
    """QQ[theta]/(f) with f monic integral irreducible of degree 1, 2, or 4."""

    __slots__ = ("defining_poly", "degree", "_powers", "_lock", "_galois",
                 "_subfields", "_sqrt_cache", "_roots_of_defpoly")

    def __init__(self, poly: RatPoly):
        if poly.is_zero() or poly.degree not in (1, 2, 4):
            raise UnsupportedFieldError(f"defining polynomial must have degree 1, 2 or 4: {poly!r}")
        poly = poly.monic()
        c = _integral_scale(poly)
        if c != 1:
            poly = RatPoly([poly.coeffs[i] * c ** (poly.degree - i)
                            for i in range(poly.degree + 1)])
        if poly.degree > 1 and not is_irreducible(poly):
            raise UnsupportedFieldError(f"defining polynomial is reducible: {poly!r}")
        self.defining_poly = poly
        self.degree = poly.degree
        d = self.degree
        # reduction table: theta^k for k in [d, 2d-2]
        powers = []
        if d > 1:
            red = [-c for c in poly.coeffs[:-1]]
            powers.append(tuple(red))
            for _ in range(d - 2):
                prev = powers[-1]
                nxt = [Fraction(0)] + list(prev[: d - 1])
                top = prev[d - 1]
                if top:
                    for i in range(d):
                        nxt[i] += top * red[i]
                powers.append(tuple(nxt))
        self._powers = tuple(powers)
        self._lock = threading.Lock()
        self._galois = None
        self._subfields = None
        self._sqrt_cache: dict[int, "FieldElement"] = {}
        self._roots_of_defpoly = None

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self):
        return hash(self.defining_poly)

    def __repr__(self):
        return f"NumberField({self.defining_poly.to_str()})"

    # -- elements ------------------------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, (int, Fraction)):
            coeffs = [Fraction(value)] + [Fraction(0)] * (self.degree - 1)
            return FieldElement(self, coeffs)
        coeffs = [Fraction(v) for v in value]
        if len(coeffs) != self.degree:
            raise ValueError(f"need {self.degree} coordinates")
        return FieldElement(self, coeffs)

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def gen(self) -> "FieldElement":
        if self.degree == 1:
            # theta = root of x, i.e. 0
            return self.zero()
        return self.element([0, 1] + [0] * (self.degree - 2))

    # -- cached structure ------------------------------------------------------

    @property
    def galois_type(self) -> GaloisType:
        g = self._galois
        if g is None:
            g = _classify(self)  # outside the lock: recomputation is benign
            with self._lock:
                if self._galois is None:
                    self._galois = g
                g = self._galois
        return g

    def defpoly_roots(self) -> frozenset:
        """Roots of the defining polynomial inside the field itself."""
        with self._lock:
            cached = self._roots_of_defpoly
        if cached is None:
            cached = frozenset(roots_in_field(self.defining_poly, self))
            with self._lock:
                self._roots_of_defpoly = cached
        return cached

    def quadratic_subfields(self) -> frozenset[int]:
        with self._lock:
            cached = self._subfields
        if cached is None:
            cached = frozenset(_quadratic_subfields(self))
            with self._lock:
                self._subfields = cached
        return cached

    def sqrt_of_int(self, m: int) -> "FieldElement | None":
        """A canonical square root of the integer m inside the field, if any."""
        with self._lock:
            if m in self._sqrt_cache:
                return self._sqrt_cache[m]
        val = sqrt_in_field(self.element(m), self)
        with self._lock:
            self._sqrt_cache[m] = val
        return val


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        assert len(self.coeffs) == field.degree

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            return other if other.field == self.field else None
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                red = self.field._powers[k - d]
                for i in range(d):
                    out[i] += c * red[i]
        return FieldElement(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        out = self.field.one()
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        # u * self + v * f = 1 in QQ[x]
        d, u, _ = poly_xgcd(RatPoly(self.coeffs), self.field.defining_poly)
        assert d.degree == 0
        u = u.scale(1 / d.coeffs[0]) if d.coeffs[0] != 1 else u
        red = u % self.field.defining_poly
        cs = list(red.coeffs) + [Fraction(0)] * (self.field.degree - len(red.coeffs))
        return FieldElement(self.field, cs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        return (isinstance(other, FieldElement) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field.defining_poly.coeffs, self.coeffs))

    def __repr__(self):
        return f"FieldElement{self.coeffs}"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def norm(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if self.field.degree == 1:
            return self.coeffs[0]
        return resultant(self.field.defining_poly, RatPoly(self.coeffs))

    def sort_key(self):
        return tuple(self.coeffs)

    def canonical_sign(self) -> "FieldElement":
        """Among {self, -self} the one whose first nonzero coordinate is > 0."""
        for c in self.coeffs:
            if c > 0:
                return self
            if c < 0:
                return -self
        return self


# ---------------------------------------------------------------------------
# polynomials with coefficients in a field
# ---------------------------------------------------------------------------


class KPoly:
    """Dense polynomial over a NumberField, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        cs = [c if isinstance(c, FieldElement) else field.element(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def from_ratpoly(cls, field: NumberField, p: RatPoly) -> "KPoly":
        return cls(field, [field.element(c) for c in p.coeffs])

    def to_ratpoly(self) -> RatPoly:
        if not all(c.is_rational() for c in self.coeffs):
            raise ValueError("polynomial has irrational coefficients")
        return RatPoly([c.coeffs[0] for c in self.coeffs])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (isinstance(other, KPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.defining_poly.coeffs, tuple(self.coeffs)))

    def __repr__(self):
        return f"KPoly(deg={self.degree}, field={self.field.defining_poly.to_str()})"

    def __add__(self, other: "KPoly") -> "KPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return KPoly(self.field, out)

    def __sub__(self, other: "KPoly") -> "KPoly":
        out = list(self.coeffs) + [self.field.zero()] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return KPoly(self.field, out)

    def __neg__(self) -> "KPoly":
        return KPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other) -> "KPoly":
        if not isinstance(other, KPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return KPoly(self.field, [])
        zero = self.field.zero()
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x.is_zero():
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        return KPoly(self.field, out)

    __rmul__ = __mul__

    def scale(self, c) -> "KPoly":
        c = self.field.element(c) if not isinstance(c, FieldElement) else c
        return KPoly(self.field, [c * x for x in self.coeffs])

    def divmod(self, other: "KPoly") -> tuple["KPoly", "KPoly"]:
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero() or len(self.coeffs) < len(other.coeffs):
            return KPoly(self.field, []), self
        rem = list(self.coeffs)
        b = other.coeffs
        inv = b[-1].inverse()
        zero = self.field.zero()
        q = [zero] * (len(rem) - len(b) + 1)
        for k in range(len(q) - 1, -1, -1):
            t = rem[k + len(b) - 1] * inv
            q[k] = t
            if not t.is_zero():
                for j, y in enumerate(b):
                    rem[k + j] = rem[k + j] - t * y
        return KPoly(self.field, q), KPoly(self.field, rem[: len(b) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "KPoly":
        if self.is_zero():
            return self
        return self.scale(self.lc.inverse())

    def derivative(self) -> "KPoly":
        return KPoly(self.field, [i * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def __call__(self, x: FieldElement) -> FieldElement:
        v = self.field.zero()
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def gcd(self, other: "KPoly") -> "KPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "KPoly":
        d = self.gcd(self.derivative())
        if d.degree == 0:
            return self.monic()
        return (self // d).monic()


# ---------------------------------------------------------------------------
# root-finding inside the field
# ---------------------------------------------------------------------------


def _interpolate(points: list[tuple[int, Fraction]]) -> RatPoly:
    """Newton interpolation through distinct integer sample points."""
    xs = [Fraction(x) for x, _ in points]
    coef = [y for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RatPoly([])
    basis = RatPoly([1])
    for i in range(n):
        poly = poly + basis.scale(coef[i])
        basis = basis * RatPoly([-xs[i], 1])
    return poly


def _norm_poly_shifted(h: KPoly, s: int) -> RatPoly:
    """N(x) = Norm_{K/QQ}(h(x - s*theta)) computed by interpolation."""
    K = h.field
    dN = K.degree * h.degree
    theta = K.gen()
    pts = []
    x0 = 0
    while len(pts) < dN + 1:
        arg = K.element(x0) - theta * s
        val = h(arg)
        pts.append((x0, val.norm()))
        x0 = -x0 + (0 if x0 > 0 else 1)
    return _interpolate(pts)


def _shifted_ratpoly(p: RatPoly, s: int, K: NumberField) -> KPoly:
    """p(x + s*theta) as a polynomial over K."""
    theta_s = K.gen() * s
    out = KPoly(K, [])
    basis = KPoly(K, [K.one()])
    lin = KPoly(K, [theta_s, K.one()])
    for c in p.coeffs:
        out = out + basis.scale(c)
        basis = basis * lin
    return out


def _trager_roots(h: KPoly, K: NumberField) -> set[FieldElement]:
    """Roots in K of a squarefree h in K[x]."""
    from .exactmath import poly_gcd

    if h.degree == 0:
        return set()
    for s in (0, 1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11, -11, 13, -13):
        N = _norm_poly_shifted(h, s)
        if N.degree == h.degree * K.degree and poly_gcd(N, N.derivative()).degree == 0:
            break
    else:
        raise RuntimeError("no squarefree norm shift found (unexpected)")
    roots: set[FieldElement] = set()
    for Ni in factor_bounded(N, K.degree):
        if K.degree % Ni.degree != 0:
            continue
        g = h.gcd(_shifted_ratpoly(Ni, s, K))
        if g.degree == 1:
            roots.add(-g.coeffs[0])
    return roots


def roots_in_field(h, K: NumberField) -> set[FieldElement]:
    """Exactly the roots of h lying in K, verified by exact substitution.

    h may be a RatPoly (rational coefficients) or a KPoly over K.  For
    rational h the factorization happens over QQ first, so only factors whose
    degree divides [K:QQ] ever reach the norm machinery.
    """
    if isinstance(h, RatPoly):
        if h.is_zero():
            raise ValueError("roots of zero polynomial")
        if K.degree == 1:
            roots = {K.element(r) for r in rational_roots(h)}
        else:
            roots = set()
            for q in factor_bounded(h, K.degree):
                if q.degree == 1:
                    roots.add(K.element(-q.coeffs[0]))
                elif K.degree % q.degree == 0:
                    roots |= _trager_roots(KPoly.from_ratpoly(K, q), K)
        hK = KPoly.from_ratpoly(K, h)
    else:
        if h.field != K:
            raise ValueError("polynomial over a different field")
        if h.is_zero():
            raise ValueError("roots of zero polynomial")
        if K.degree == 1:
            return {K.element(r) for r in rational_roots(h.to_ratpoly())}
        hK = h
        roots = _trager_roots(h.squarefree(), K)
    for r in roots:
        assert hK(r).is_zero(), "root verification failed"
    return roots


def sqrt_in_field(beta, K: NumberField):
    """Some gamma in K with gamma^2 = beta, or None; deterministic choice
    (first nonzero power-basis coordinate positive)."""
    beta = K.element(beta)
    if beta.is_zero():
        return K.zero()
    if K.degree == 1:
        from .exactmath import rational_sqrt

        r = rational_sqrt(beta.coeffs[0])
        return None if r is None else K.element(r)
    h = KPoly(K, [-beta, K.zero(), K.one()])
    roots = roots_in_field(h, K)
    if not roots:
        return None
    return sorted((r.canonical_sign() for r in roots), key=lambda r: r.sort_key())[0]


# ---------------------------------------------------------------------------
# Galois classification
# ---------------------------------------------------------------------------


def _classify(K: NumberField) -> GaloisType:
    if K.degree == 1:
        return GaloisType.Rational
    if K.degree == 2:
        return GaloisType.Quadratic
    f = K.defining_poly
    nroots = len(K.defpoly_roots())
    if nroots == 4:
        disc = resultant(f, f.derivative())
        return GaloisType.Biquadratic if is_rational_square(disc) else GaloisType.CyclicQuartic
    return GaloisType.NonGaloisQuartic


def galois_type(K: NumberField) -> GaloisType:
    return K.galois_type


def _quadratic_subfields(K: NumberField) -> set[int]:
    if K.degree != 4:
        raise UnsupportedFieldError("quadratic subfields computed for quartic fields only")
    f = K.defining_poly
    p, q, r, s = f.coeffs[3], f.coeffs[2], f.coeffs[1], f.coeffs[0]
    res_cubic = RatPoly([-(p * p * s - 4 * q * s + r * r), p * r - 4 * s, -q, 1])
    ms: set[int] = set()
    for y0 in rational_roots(res_cubic):
        for D in (y0 * y0 - 4 * s, p * p - 4 * q + 4 * y0):
            if D != 0 and not is_rational_square(D):
                ms.add(squarefree_part_rational(D))
    return ms


def quadratic_subfields(K: NumberField) -> frozenset[int]:
    return K.quadratic_subfields()


# ---------------------------------------------------------------------------
# field constructors
# ---------------------------------------------------------------------------


def rational_field() -> NumberField:
    return NumberField(RatPoly([0, 1]))


def quadratic_field(m) -> NumberField:
    m = Fraction(m)
    msf = squarefree_part_rational(m)
    if msf == 1:
        raise UnsupportedFieldError("QQ(sqrt(m)) with m square is just QQ")
    return NumberField(RatPoly([-msf, 0, 1]))


def biquadratic_field(m: int, n: int) -> NumberField:
    """QQ(sqrt(m), sqrt(n)) via the minimal polynomial of sqrt(m) + sqrt(n)."""
    m = squarefree_part_rational(Fraction(m))
    n = squarefree_part_rational(Fraction(n))
    if m == 1 or n == 1 or m == n:
        raise UnsupportedFieldError(f"({m},{n}) does not define a biquadratic field")
    return NumberField(RatPoly([(m - n) ** 2, 0, -2 * (m + n), 0, 1]))


def cyclic_criterion(m, a, b) -> tuple[GaloisType, NumberField]:
    """Classify K = QQ(sqrt(a + b*sqrt(m))) and return it.

    The Galois type is read off the norm t = a^2 - m b^2 of a + b*sqrt(m):
    t/m a nonzero rational square gives a cyclic quartic, t itself a rational
    square gives a biquadratic field, anything else is not Galois.
    """
    m, a, b = Fraction(m), Fraction(a), Fraction(b)
    if m == 0 or is_rational_square(m):
        raise DegenerateTowerError("m must be a nonsquare")
    if squarefree_part_rational(m) != m:
        raise DegenerateTowerError("m must be a squarefree integer")
    F = quadratic_field(m)
    alpha = F.element([a, b])
    if sqrt_in_field(alpha, F) is not None:
        raise DegenerateTowerError("alpha is a square in QQ(sqrt(m)); the tower is not quartic")
    if b == 0:
        n = squarefree_part_rational(a)
        K = biquadratic_field(int(m), n)
        return GaloisType.Biquadratic, K
    K = NumberField(RatPoly([a * a - b * b * m, 0, -2 * a, 0, 1]))
    t = a * a - m * b * b
    assert t != 0
    if is_rational_square(t / m):
        return GaloisType.CyclicQuartic, K
    if is_rational_square(t):
        return GaloisType.Biquadratic, K
    return GaloisType.NonGaloisQuartic, K


def tower_field(m, a, b) -> NumberField:
    return cyclic_criterion(m, a, b)[1]


def parse_field_spec(spec: str) -> NumberField:
    """Parse a field given as one of:
    "q"                 the rationals
    "m"                 QQ(sqrt(m))
    "m;a;b"             QQ(sqrt(a + b*sqrt(m)))
    "m,n"               QQ(sqrt(m), sqrt(n))
    "c0,c1,c2,c3"       monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0
    "c0,...,c4"         quartic with explicit leading coefficient
    """
    from .exactmath import rat_from_str
    from .errors import DataFormatError

    spec = spec.strip()
    if spec.lower() in ("q", "qq", "1"):
        return rational_field()
    if ";" in spec:
        parts = spec.split(";")
        if len(parts) != 3:
            raise DataFormatError(f"tower spec needs m;a;b: {spec!r}")
        return tower_field(*(rat_from_str(t) for t in parts))
    parts = spec.split(",")
    if len(parts) == 1:
        return quadratic_field(rat_from_str(parts[0]))
    if len(parts) == 2:
        return biquadratic_field(int(parts[0]), int(parts[1]))
    if len(parts) == 4:
        cs = [rat_from_str(t) for t in parts]
        return NumberField(RatPoly(cs + [Fraction(1)]))
    if len(parts) == 5:
        return NumberField(RatPoly([rat_from_str(t) for t in parts]))
    raise DataFormatError(f"cannot parse field spec: {spec!r}")


# ---------------------------------------------------------------------------
# subfield membership
# ---------------------------------------------------------------------------


def definition_degree(elements, K: NumberField) -> int:
    """Minimal degree over QQ of a subfield of K containing every element."""
    if all(e.is_rational() for e in elements):
        return 1
    if K.degree == 2:
        return 2
    for m in sorted(K.quadratic_subfields()):
        w = K.sqrt_of_int(m)
        if w is None:
            continue
        if all(_in_quadratic_span(e, w) for e in elements):
            return 2
    return K.degree


def _in_quadratic_span(e: FieldElement, w: FieldElement) -> bool:
    """Is e in QQ + QQ*w?  (Only the theta-coordinates constrain this: the
    rational coordinate is absorbed by the QQ*1 part.)"""
    c1 = None
    for ei, wi in zip(e.coeffs[1:], w.coeffs[1:]):
        if wi == 0:
            if ei != 0:
                return False
        else:
            v = ei / wi
            if c1 is None:
                c1 = v
            elif c1 != v:
                return False
    return True
