"""Elliptic curves over QQ in long Weierstrass form.

Curves carry their b/c-invariants, discriminant and j-invariant from
construction.  Points live on a curve with coordinates in a designated
NumberField; the chord-tangent group law, division polynomials (stored
y-free), multiplication-by-m x-maps, quadratic twists, halving and a
Lutz-Nagell enumeration over QQ are all exact.

Division polynomials use the y-free convention: psi_n is a polynomial in x
alone for odd n, and for even n the stored polynomial is psi_n / psi_2, with
psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 carried separately.  The roots of the
order-n primitive part are precisely the x-coordinates of points of exact
order n.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from sympy import factorint

from .errors import DataFormatError, SingularCurveError
from .exactmath import RatPoly, rat_from_str, rat_to_str, rational_roots, squarefree_part_rational
from .numfield import FieldElement, KPoly, NumberField, rational_field, roots_in_field, sqrt_in_field


class Curve:
    """E: y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over QQ."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "b2", "b4", "b6", "b8",
                 "c4", "c6", "disc", "j", "label", "_psi_cache", "_psi_lock")

    def __init__(self, a_invariants, label: str | None = None):
        a1, a2, a3, a4, a6 = (Fraction(a) for a in a_invariants)
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        assert 4 * self.b8 == self.b2 * self.b6 - self.b4**2
        self.c4 = self.b2**2 - 24 * self.b4
        self.c6 = -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6
        self.disc = (-self.b2**2 * self.b8 - 8 * self.b4**3 - 27 * self.b6**2
                     + 9 * self.b2 * self.b4 * self.b6)
        if self.disc == 0:
            raise SingularCurveError(f"singular curve {list(map(rat_to_str, (a1, a2, a3, a4, a6)))}")
        self.j = self.c4**3 / self.disc
        self.label = label
        self._psi_cache: dict[int, RatPoly] = {}
        self._psi_lock = threading.Lock()

    @property
    def a_invariants(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other):
        return isinstance(other, Curve) and self.a_invariants == other.a_invariants

    def __hash__(self):
        return hash(self.a_invariants)

    def __repr__(self):
        s = ",".join(rat_to_str(a) for a in self.a_invariants)
        return f"Curve([{s}])" + (f" {self.label}" if self.label else "")

    @classmethod
    def from_str(cls, spec: str) -> "Curve":
        parts = [t.strip() for t in spec.split(",")]
        if len(parts) == 6:
            return cls([rat_from_str(t) for t in parts[:5]], label=parts[5])
        if len(parts) != 5:
            raise DataFormatError(f"curve spec needs a1,a2,a3,a4,a6[,label]: {spec!r}")
        return cls([rat_from_str(t) for t in parts])

    def to_str(self) -> str:
        s = ",".join(rat_to_str(a) for a in self.a_invariants)
        return s + (f",{self.label}" if self.label else "")

    # -- x-line polynomials --------------------------------------------------

    def two_division_poly(self) -> RatPoly:
        """psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6; roots are the 2-torsion x's."""
        return RatPoly([self.b6, 2 * self.b4, self.b2, 4])

    def rhs_quadratic_in_y(self, x: FieldElement) -> tuple[FieldElement, FieldElement]:
        """Coefficients (B, C) of y^2 + B y + C = 0 defining y over x."""
        B = x * self.a1 + self.a3
        C = -(x * x * x + x * x * self.a2 + x * self.a4 + self.a6)
        return B, C

    def division_polynomial(self, n: int) -> RatPoly:
        """y-free psi_n: for odd n this is psi_n itself; for even n it is
        psi_n / psi_2 (use two_division_poly for the psi_2^2 part)."""
        if n < 0:
            raise ValueError("n must be >= 0")
        with self._psi_lock:
            return self._psi(n)

    def _psi(self, n: int) -> RatPoly:
        cache = self._psi_cache
        if n in cache:
            return cache[n]
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        if n == 0:
            g = RatPoly([])
        elif n in (1, 2):
            g = RatPoly([1])
        elif n == 3:
            g = RatPoly([b8, 3 * b6, 3 * b4, b2, 3])
        elif n == 4:
            g = RatPoly([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2])
        else:
            T = self.two_division_poly()
            m, rem = divmod(n, 2)
            if rem:
                a, b = self._psi(m + 2) * self._psi(m) ** 3, self._psi(m - 1) * self._psi(m + 1) ** 3
                g = (T * T * a - b) if m % 2 == 0 else (a - T * T * b)
            else:
                g = self._psi(m) * (self._psi(m + 2) * self._psi(m - 1) ** 2
                                    - self._psi(m - 2) * self._psi(m + 1) ** 2)
        cache[n] = g
        return g

    def x_division_poly(self, n: int) -> RatPoly:
        """Polynomial whose roots are x-coordinates of affine points killed by n."""
        g = self.division_polynomial(n)
        return g if n % 2 else g * self.two_division_poly()

    def mult_by_m_xmap(self, m: int) -> tuple[RatPoly, RatPoly]:
        """(phi_m, psi_m^2) with x([m]P) = phi_m(x)/psi_m^2(x)."""
        if m < 1:
            raise ValueError("m must be >= 1")
        if m == 1:
            return RatPoly([0, 1]), RatPoly([1])
        with self._psi_lock:
            T = self.two_division_poly()
            gm, gm1, gp1 = self._psi(m), self._psi(m - 1), self._psi(m + 1)
            x = RatPoly([0, 1])
            if m % 2:
                psi_sq = gm * gm
                phi = x * psi_sq - gp1 * gm1 * T
            else:
                psi_sq = gm * gm * T
                phi = x * psi_sq - gp1 * gm1
        return phi, psi_sq


def invariants_of(E: Curve) -> tuple[Fraction, Fraction]:
    return E.disc, E.j


class Point:
    """Point on E with coordinates in a designated field (None = infinity)."""

    __slots__ = ("curve", "field", "xy")

    def __init__(self, curve: Curve, field: NumberField, xy=None):
        self.curve = curve
        self.field = field
        if xy is not None:
            x, y = xy
            x, y = field.element(x), field.element(y)
            lhs = y * y + x * y * curve.a1 + y * curve.a3
            rhs = x * x * x + x * x * curve.a2 + x * curve.a4 + curve.a6
            if lhs != rhs:
                raise ValueError("point not on curve")
            self.xy = (x, y)
        else:
            self.xy = None

    @classmethod
    def infinity(cls, curve: Curve, field: NumberField) -> "Point":
        return cls(curve, field, None)

    def is_infinity(self) -> bool:
        return self.xy is None

    @property
    def x(self) -> FieldElement:
        return self.xy[0]

    @property
    def y(self) -> FieldElement:
        return self.xy[1]

    def __eq__(self, other):
        return (isinstance(other, Point) and self.curve == other.curve
                and self.field == other.field and self.xy == other.xy)

    def __hash__(self):
        return hash((self.curve.a_invariants, self.field.defining_poly.coeffs, self.xy))

    def __repr__(self):
        if self.is_infinity():
            return "Point(O)"
        return f"Point({self.x.coeffs}, {self.y.coeffs})"

    def sort_key(self):
        if self.is_infinity():
            return (0,)
        return (1, self.x.sort_key(), self.y.sort_key())

    def __neg__(self) -> "Point":
        if self.is_infinity():
            return self
        x, y = self.xy
        return Point(self.curve, self.field, (x, -y - x * self.curve.a1 - self.curve.a3))

    def __add__(self, other: "Point") -> "Point":
        if self.curve != other.curve or self.field != other.field:
            raise ValueError("points on different curves/fields")
        if self.is_infinity():
            return other
        if other.is_infinity():
            return self
        E = self.curve
        x1, y1 = self.xy
        x2, y2 = other.xy
        if x1 == x2:
            if y2 == -y1 - x1 * E.a1 - E.a3:
                return Point.infinity(E, self.field)
            # doubling
            den = y1 + y1 + x1 * E.a1 + E.a3
            num = x1 * x1 * 3 + x1 * (2 * E.a2) + E.a4 - y1 * E.a1
            lam = num / den
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + lam * E.a1 - E.a2 - x1 - x2
        y3 = -(lam + E.a1) * x3 - nu - E.a3
        return Point(E, self.field, (x3, y3))

    def __sub__(self, other: "Point") -> "Point":
        return self + (-other)

    def __rmul__(self, n: int) -> "Point":
        return self.scalar_mul(n)

    def scalar_mul(self, n: int) -> "Point":
        if n < 0:
            return (-self).scalar_mul(-n)
        out = Point.infinity(self.curve, self.field)
        base = self
        while n:
            if n & 1:
                out = out + base
            base = base + base
            n >>= 1
        return out

    def order(self, bound: int = 200) -> int | None:
        """Exact order if <= bound, else None."""
        acc = self
        for k in range(1, bound + 1):
            if acc.is_infinity():
                return k
            acc = acc + self
        return None


def point_add(P: Point, Q: Point) -> Point:
    return P + Q


def curve_points_y(E: Curve, x: FieldElement, K: NumberField) -> list[Point]:
    """All points of E(K) above a given x-coordinate."""
    B, C = E.rhs_quadratic_in_y(x)
    disc = B * B - 4 * C
    g = sqrt_in_field(disc, K)
    if g is None:
        return []
    two_inv = Fraction(1, 2)
    y1 = (-B + g) * two_inv
    if g.is_zero():
        return [Point(E, K, (x, y1))]
    y2 = (-B - g) * two_inv
    return [Point(E, K, (x, y1)), Point(E, K, (x, y2))]


def two_torsion(E: Curve, K: NumberField) -> set[Point]:
    """E(K)[2] including the identity."""
    pts = {Point.infinity(E, K)}
    for x in roots_in_field(E.two_division_poly(), K):
        # y = -(a1 x + a3)/2 for a 2-torsion point
        y = -(x * E.a1 + E.a3) * Fraction(1, 2)
        pts.add(Point(E, K, (x, y)))
    return pts


def m_preimages(E: Curve, P: Point, K: NumberField, m: int) -> set[Point]:
    """All Q in E(K) with [m]Q = P, for affine P, via the degree-m^2 solve
    phi_m(x) = x_P * psi_m^2(x) over K."""
    if P.is_infinity():
        raise ValueError("use the m-torsion kernel for P at infinity")
    phi, psi_sq = E.mult_by_m_xmap(m)
    h = KPoly.from_ratpoly(K, phi) - KPoly.from_ratpoly(K, psi_sq).scale(P.x)
    out = set()
    for x in roots_in_field(h, K):
        for Q in curve_points_y(E, x, K):
            if Q.scalar_mul(m) == P:
                out.add(Q)
    return out


def two_preimages(E: Curve, P: Point, K: NumberField) -> set[Point]:
    """All Q in E(K) with [2]Q = P."""
    if P.is_infinity():
        return two_torsion(E, K)
    return m_preimages(E, P, K, 2)


def knapp_preimages(E: Curve, P: Point, K: NumberField) -> set[Point]:
    """Halving via the square criterion on y^2 = (x-r1)(x-r2)(x-r3).

    Requires the 2-division cubic of E to split over K.  Implemented as an
    independent cross-check of two_preimages: the curve is rescaled to
    Y^2 = X^3 + b2 X^2 + 8 b4 X + 16 b6 with X = 4x, Y = 8y + 4(a1 x + a3),
    whose cubic has the same splitting behaviour.
    """
    if P.is_infinity():
        return two_torsion(E, K)
    cubic = RatPoly([16 * E.b6, 8 * E.b4, E.b2, 1])
    rs = sorted(roots_in_field(cubic, K), key=lambda r: r.sort_key())
    if len(rs) != 3:
        raise ValueError("Knapp halving needs full 2-torsion over K")
    X = P.x * 4
    Y = P.y * 8 + (P.x * E.a1 + E.a3) * 4
    sq = []
    for r in rs:
        s = sqrt_in_field(X - r, K)
        if s is None:
            return set()
        sq.append(s)
    s1, s2, s3 = sq
    out = set()
    for e2 in (1, -1):
        for e1 in (1, -1):
            # the printed x' candidates, signs taken simultaneously
            Xp = s1 * s2 * e1 + s1 * s3 * e2 + s2 * s3 * (e1 * e2) + X
            xq = Xp * Fraction(1, 4)
            for Q in curve_points_y(E, xq, K):
                if Q.scalar_mul(2) == P:
                    out.add(Q)
    return out


def quadratic_twist(E: Curve, d: int) -> Curve:
    """Twist by squarefree d != 0 of the short-normalized model."""
    d = int(d)
    if d == 0:
        raise ValueError("twist by 0")
    if squarefree_part_rational(Fraction(d)) != d:
        raise ValueError("twist parameter must be squarefree")
    A = -27 * E.c4
    B = -54 * E.c6
    return Curve([0, 0, 0, A * d * d, B * d**3])


def short_model(E: Curve) -> Curve:
    """y^2 = x^3 - 27 c4 x - 54 c6, isomorphic to E over QQ."""
    return Curve([0, 0, 0, -27 * E.c4, -54 * E.c6])


# ---------------------------------------------------------------------------
# Lutz-Nagell over QQ
# ---------------------------------------------------------------------------


def _square_divisors(n: int) -> list[int]:
    """All y >= 0 with y^2 | n (n != 0)."""
    ys = [1]
    for p, e in factorint(abs(n)).items():
        half = e // 2
        if half:
            ys = [y * p**k for y in ys for k in range(half + 1)]
    return sorted({0} | set(ys))


def lutz_nagell_torsion(E: Curve):
    """E(QQ)_tors with its points, by Lutz-Nagell on an integral model.

    Returns (structure, points) where structure is the pair (d1, d2) of
    invariant factors and points is the full set of rational torsion points
    on E itself.  Candidate points on Y^2 = X^3 - 27 c4 X - 54 c6 satisfy
    Y = 0 or Y^2 | disc; anything failing to die under multiplication by
    n <= 12 is of infinite order and discarded.
    """
    Q = rational_field()
    A = -27 * E.c4
    B = -54 * E.c6
    # scale to integral short coefficients: x -> u^2 x, y -> u^3 y
    den = (A.denominator * B.denominator)
    u = 1
    while (A * u**4).denominator != 1 or (B * u**6).denominator != 1:
        u *= den
    Ai, Bi = int(A * u**4), int(B * u**6)
    Es = Curve([0, 0, 0, Ai, Bi])
    disc_i = int(Es.disc)
    cubic = RatPoly([Bi, Ai, 0, 1])
    pts_short: set[tuple[Fraction, Fraction]] = set()
    for y in _square_divisors(disc_i):
        for x in rational_roots(cubic - RatPoly([y * y])):
            if x.denominator == 1:
                pts_short.add((x, Fraction(y)))
                pts_short.add((x, Fraction(-y)))
    # keep only points of finite order (order <= 12 by the rational bound)
    torsion: set[Point] = {Point.infinity(E, Q)}
    for x, y in pts_short:
        P = Point(Es, Q, (x, y))
        if P.order(bound=12) is not None:
            # map back: X = 36 u^2 (x_E) + 3 b2 u^2 ... composed scaling
            xe = (x / (u * u) - 3 * E.b2) / 36
            ye = (y / (u**3) - 108 * (E.a1 * xe + E.a3)) / 216
            torsion.add(Point(E, Q, (xe, ye)))
    # group structure from the subgroup the points generate
    return _structure_of_point_set(torsion), torsion


def _structure_of_point_set(points: set[Point]):
    """Invariant factors (d1, d2) of a finite set closed under the group law."""
    n = len(points)
    orders = sorted(P.order(bound=n if n > 0 else 1) for P in points)
    assert all(o is not None for o in orders)
    d2 = max(orders)
    assert n % d2 == 0
    d1 = n // d2
    assert d2 % d1 == 0 or d1 == 1
    if d1 > 1:
        assert d2 % d1 == 0
    return (d1, d2)
