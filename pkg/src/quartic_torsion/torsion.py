"""The torsion engine: E(K)_tors for E/QQ and K of degree 1, 2, or 4 Galois.

The computation is per prime.  For odd p the p-torsion comes from roots of the
division polynomial inside K (with y recovered by a square-root in K), and
p^2-points from preimage lifting: solving phi_p(x) = x_P psi_p^2(x) over K for
each order-p point P.  For p = 2 the 2-torsion comes from the division cubic
and higher 2-power points from iterated halving.  Search depth per prime is
capped by proved bounds per field type; a debug mode runs one extra lifting
step past every cap and insists it finds nothing.

Every run revalidates the structural constraints (full-level restriction,
2-torsion rigidity, the Landau bound, the definition-degree bound for
p = 3 mod 4, isogeny-degree admissibility, excluded subgroup lists, and
quadratic growth-chain consistency).  A violation aborts the computation:
the engine never returns a best guess.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import grouptables as gt
from .errors import InconsistentCountsError, InvariantViolationError, UnsupportedFieldError
from .exactmath import RatPoly, rational_roots, rat_to_str
from .ellcurve import (
    Curve,
    Point,
    curve_points_y,
    lutz_nagell_torsion,
    m_preimages,
    short_model,
    two_preimages,
    two_torsion,
)
from .isogeny import allowed_rational_isogeny_degree, cyclic_layer_degrees
from .numfield import (
    FieldElement,
    GaloisType,
    NumberField,
    definition_degree,
    quadratic_field,
    rational_field,
    roots_in_field,
    sqrt_in_field,
)

CYCLOTOMIC5 = RatPoly([1, 1, 1, 1, 1])


@dataclass(frozen=True, order=True)
class TorsionStructure:
    """Z/d1 + Z/d2 with d1 | d2; (1, 1) is trivial."""

    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1 or self.d2 % self.d1 != 0:
            raise ValueError(f"not a canonical pair: ({self.d1}, {self.d2})")

    @property
    def order(self) -> int:
        return self.d1 * self.d2

    @property
    def exponent(self) -> int:
        return self.d2

    def as_pair(self) -> tuple[int, int]:
        return (self.d1, self.d2)

    def n_torsion_count(self, n: int) -> int:
        return gcd(n, self.d1) * gcd(n, self.d2)

    def has_point_of_order(self, n: int) -> bool:
        return self.d2 % n == 0

    def __str__(self):
        if self.d1 == 1:
            return f"Z/{self.d2}"
        return f"Z/{self.d1}+Z/{self.d2}"


TRIVIAL = TorsionStructure(1, 1)


def structure_from_counts(counts: dict[int, int]) -> TorsionStructure:
    """Unique (d1, d2) with #E[n] = gcd(n,d1) * gcd(n,d2) matching counts."""
    d1, d2 = 1, 1
    primes = set()
    for n in counts:
        for p in (2, 3, 5, 7, 11, 13):
            if n % p == 0:
                primes.add(p)
    for p in sorted(primes):
        v1 = v2 = 0
        k = 1
        while p**k in counts:
            c = counts[p**k]
            prev = counts.get(p ** (k - 1), 1) if k > 1 else 1
            ratio = c // prev if prev else 0
            if prev * ratio != c or ratio not in (1, p, p * p):
                raise InconsistentCountsError(f"counts not realizable at {p}^{k}: {counts}")
            if ratio == p * p:
                v1, v2 = v1 + 1, v2 + 1
            elif ratio == p:
                v2 += 1
            else:
                break
            if v1 > v2:
                raise InconsistentCountsError(f"counts not realizable at {p}: {counts}")
            k += 1
        d1 *= p**v1
        d2 *= p**v2
    for n, c in counts.items():
        if gcd(n, d1) * gcd(n, d2) != c:
            raise InconsistentCountsError(f"counts inconsistent at {n}: {counts}")
    return TorsionStructure(d1, d2)


# ---------------------------------------------------------------------------
# per-prime bounds (search caps)
# ---------------------------------------------------------------------------

_BOUNDS: dict[GaloisType, dict[int, tuple[int, int]]] = {
    GaloisType.CyclicQuartic: {2: (2, 16), 3: (1, 9), 5: (5, 5), 7: (1, 7), 13: (1, 13)},
    GaloisType.Biquadratic: {2: (4, 16), 3: (3, 9), 5: (1, 5), 7: (1, 7), 13: (1, 1)},
    GaloisType.Quadratic: {2: (4, 16), 3: (3, 9), 5: (1, 5), 7: (1, 7), 13: (1, 1)},
    GaloisType.Rational: {2: (2, 8), 3: (1, 9), 5: (1, 5), 7: (1, 7), 13: (1, 1)},
}


def p_primary_bound(p: int, g: GaloisType) -> TorsionStructure:
    """Maximal shape of the p-primary part for the given field type."""
    if g is GaloisType.NonGaloisQuartic:
        raise UnsupportedFieldError("no bounds for non-Galois quartic fields")
    table = _BOUNDS[g]
    if p not in table:
        return TRIVIAL
    return TorsionStructure(*table[p])


def full_level_allowed(g: GaloisType) -> frozenset[int]:
    """Levels n at which full n-torsion can be defined over such a field."""
    return {
        GaloisType.CyclicQuartic: frozenset({1, 2, 5, 10}),
        GaloisType.Biquadratic: frozenset({1, 2, 3, 4, 6}),
        GaloisType.Quadratic: frozenset({1, 2, 3, 4}),
        GaloisType.Rational: frozenset({1, 2}),
    }[g]


# ---------------------------------------------------------------------------
# per-prime computation
# ---------------------------------------------------------------------------


def _order_p_points(E: Curve, K: NumberField, p: int) -> set[Point]:
    """All points of exact order p (p odd prime) in E(K)."""
    pts: set[Point] = set()
    for x in roots_in_field(E.division_polynomial(p), K):
        pts |= set(curve_points_y(E, x, K))
    return pts


def _lift_once(E: Curve, K: NumberField, frontier: set[Point], m: int) -> set[Point]:
    """Preimages under [m] of a +-symmetric set of affine points."""
    out: set[Point] = set()
    done: set[Point] = set()
    for P in sorted(frontier, key=Point.sort_key):
        if P in done:
            continue
        done.add(P)
        done.add(-P)
        pre = m_preimages(E, P, K, m)
        out |= pre
        out |= {-Q for Q in pre}
    return out


def p_primary_part(E: Curve, K: NumberField, p: int, g: GaloisType,
                   debug_extra_lift: bool = False) -> tuple[TorsionStructure, set[Point]]:
    """Exact p-primary subgroup of E(K)_tors (points include the identity)."""
    cap = p_primary_bound(p, g)
    O = Point.infinity(E, K)
    if cap == TRIVIAL:
        return TRIVIAL, {O}
    if p == 2:
        level = two_torsion(E, K)
        pts = set(level)
        counts = {2: len(pts)}
        if len(pts) == 1:
            return TRIVIAL, pts
        frontier = {P for P in pts if not P.is_infinity()}
        k = 2
        while 2**k <= cap.d2:
            new = _lift_once(E, K, frontier, 2)
            if not new:
                break
            pts |= new
            counts[2**k] = len(pts)
            frontier = new
            k += 1
        else:
            if debug_extra_lift and frontier:
                extra = _lift_once(E, K, frontier, 2)
                if extra:
                    raise InvariantViolationError(
                        f"2-power torsion exceeds the proved cap {cap} for {E!r} over {K!r}")
        return structure_from_counts(counts), pts
    # odd p
    base = _order_p_points(E, K, p)
    pts = {O} | base
    counts = {p: len(pts)}
    if not base:
        return TRIVIAL, {O}
    if cap.d2 >= p * p:
        new = _lift_once(E, K, base, p)
        pts |= new
        counts[p * p] = len(pts)
        if debug_extra_lift and new:
            extra = _lift_once(E, K, new, p)
            if extra:
                raise InvariantViolationError(
                    f"{p}-power torsion exceeds the proved cap {cap} for {E!r} over {K!r}")
    elif debug_extra_lift:
        extra = _lift_once(E, K, base, p)
        if extra:
            raise InvariantViolationError(
                f"{p}-power torsion exceeds the proved cap {cap} for {E!r} over {K!r}")
    return structure_from_counts(counts), pts


# ---------------------------------------------------------------------------
# assembly and validation
# ---------------------------------------------------------------------------


@dataclass
class TorsionReport:
    curve: Curve
    field_: NumberField
    galois_type: GaloisType
    structure: tuple[int, int]
    generators: list[Point]
    per_prime: dict[int, tuple[int, int]]
    point_definition_degrees: dict[int, int]
    checks: list[tuple[str, bool]]
    assumptions: tuple[str, ...] = (
        "prime support of torsion over degree <= 4 fields taken as {2,3,5,7,13}",
    )

    @property
    def structure_obj(self) -> TorsionStructure:
        return TorsionStructure(*self.structure)

    def to_json_dict(self) -> dict:
        out = {
            "curve": [rat_to_str(a) for a in self.curve.a_invariants],
            "field": {
                "poly": [int(c) for c in self.field_.defining_poly.coeffs],
                "galois_type": self.galois_type.value,
            },
            "structure": list(self.structure),
            "generators": [
                [[rat_to_str(c) for c in P.x.coeffs], [rat_to_str(c) for c in P.y.coeffs]]
                for P in self.generators
            ],
            "per_prime": {str(p): list(v) for p, v in sorted(self.per_prime.items())},
            "point_definition_degrees": {str(k): v for k, v in sorted(self.point_definition_degrees.items())},
            "checks": [{"name": n, "passed": ok} for n, ok in self.checks],
            "assumptions": list(self.assumptions),
        }
        if self.curve.label:
            out["label"] = self.curve.label
        return out


def _point_order(P: Point, exponent: int) -> int:
    for d in sorted(_divisors(exponent)):
        if P.scalar_mul(d).is_infinity():
            return d
    raise AssertionError("point order does not divide the group exponent")


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _enumerate_group(parts: dict[int, set[Point]], E: Curve, K: NumberField) -> set[Point]:
    pts = {Point.infinity(E, K)}
    for ppts in parts.values():
        pts = {a + b for a in pts for b in ppts}
    return pts


def _choose_generators(points: set[Point], st: TorsionStructure) -> list[Point]:
    if st.order == 1:
        return []
    by_order: dict[int, list[Point]] = {}
    for P in points:
        by_order.setdefault(_point_order(P, st.exponent), []).append(P)
    for lst in by_order.values():
        lst.sort(key=Point.sort_key)
    g2 = by_order[st.d2][0]
    if st.d1 == 1:
        return [g2]
    span2 = {g2.scalar_mul(i) for i in range(st.d2)}
    for g1 in by_order[st.d1]:
        sub = {g1.scalar_mul(jj) + s for jj in range(st.d1) for s in span2}
        if len(sub) == st.order:
            return [g1, g2]
    raise InvariantViolationError("no generating pair found for computed structure")


def torsion_over_field(E: Curve, K: NumberField, debug_extra_lift: bool = False,
                       _validate: bool = True) -> TorsionReport:
    """E(K)_tors with generators, per-prime parts and validated invariants."""
    g = K.galois_type
    if g is GaloisType.NonGaloisQuartic:
        raise UnsupportedFieldError(
            "torsion over non-Galois quartic fields is outside the engine's scope")
    parts: dict[int, tuple[TorsionStructure, set[Point]]] = {}
    for p in gt.TORSION_PRIMES_DEGREE4:
        parts[p] = p_primary_part(E, K, p, g, debug_extra_lift=debug_extra_lift)
    d1 = d2 = 1
    for st, _ in parts.values():
        d1 *= st.d1
        d2 *= st.d2
    st = TorsionStructure(d1, d2)
    nontrivial = {p: pts for p, (stp, pts) in parts.items() if len(pts) > 1}
    points = _enumerate_group(nontrivial, E, K) if nontrivial else {Point.infinity(E, K)}
    if len(points) != st.order:
        raise InvariantViolationError(
            f"assembled group has {len(points)} points, structure says {st.order}")
    generators = _choose_generators(points, st)
    defdeg: dict[int, int] = {}
    orderof: dict[Point, int] = {}
    for P in points:
        if P.is_infinity():
            continue
        n = _point_order(P, st.exponent)
        orderof[P] = n
        d = definition_degree([P.x, P.y], K)
        defdeg[n] = min(defdeg.get(n, K.degree), d)
    checks = []
    if _validate:
        checks = _validate_report(E, K, g, st, parts, orderof, debug_extra_lift)
    report = TorsionReport(
        curve=E,
        field_=K,
        galois_type=g,
        structure=st.as_pair(),
        generators=generators,
        per_prime={p: stp.as_pair() for p, (stp, _) in parts.items() if stp != TRIVIAL},
        point_definition_degrees=defdeg,
        checks=checks,
    )
    return report


def _fail(name: str, msg: str):
    raise InvariantViolationError(f"{name}: {msg}")


def _validate_report(E: Curve, K: NumberField, g: GaloisType, st: TorsionStructure,
                     parts, orderof: dict[Point, int],
                     debug_extra_lift: bool) -> list[tuple[str, bool]]:
    checks: list[tuple[str, bool]] = []

    def record(name, ok, msg=""):
        checks.append((name, ok))
        if not ok:
            _fail(name, msg or f"{E!r} over {K!r}: structure {st}")

    # full-level (Weil) restriction on d1
    record("full_level", st.d1 in full_level_allowed(g))
    # full 5-torsion pins the field and the whole list
    if st.d1 % 5 == 0:
        is_z5 = bool(roots_in_field(CYCLOTOMIC5, K))
        record("full_five_needs_zeta5", is_z5 and st.as_pair() in gt.ZETA5_LIST)
    # 2-torsion rigidity: irreducible division cubic keeps E(K)[2] trivial
    cubic = E.two_division_poly()
    if not rational_roots(cubic):
        record("two_torsion_rigidity", parts[2][0] == TRIVIAL)
    # Landau bound: full p-torsion over degree-4 fields needs p - 1 <= g(4)
    for p in (2, 3, 5, 7, 13):
        if st.d1 % p == 0:
            record("landau_bound", p - 1 <= gt.LANDAU_G[min(K.degree, 4)])
            if g is GaloisType.CyclicQuartic:
                record("full_p_cyclic_quartic", p in (2, 5))
    # definition degree of points of order p = 3 mod 4, p >= 7
    if K.degree == 4:
        for P, n in orderof.items():
            if n in (7, 11, 19, 23):
                record("order_p_defined_in_quadratic",
                       definition_degree([P.x, P.y], K) <= 2,
                       f"order-{n} point defined only over the full quartic")
    # Galois-stable cyclic layers force admissible rational isogenies
    for n in cyclic_layer_degrees(st.d1, st.d2):
        record("cyclic_layer_isogeny", allowed_rational_isogeny_degree(n),
               f"cyclic layer of order {n}")
    t2 = parts[2][0]
    if t2.d1 == 2 and t2.d2 >= 4:
        record("two_power_isogeny", allowed_rational_isogeny_degree(t2.d2 // 2),
               f"2-primary {t2}")
    if g is GaloisType.CyclicQuartic:
        for n in _divisors(st.d2):
            if n > 1 and n % 2 and n % 5:
                record("odd_layer_isogeny_cyclic", allowed_rational_isogeny_degree(n),
                       f"odd order {n} over cyclic quartic")
    # excluded orders and excluded subgroups over quartic fields
    if g is GaloisType.CyclicQuartic:
        for n in (11, 14, 18, 20, 21, 22, 24):
            record("excluded_order", not st.has_point_of_order(n), f"order {n} present")
    if K.degree == 4:
        record("not_bn_excluded", st.as_pair() not in gt.BN_EXCLUDED_QUARTIC)
        table = gt.THM_CYCLIC_QUARTIC if g is GaloisType.CyclicQuartic else gt.THM_BIQUADRATIC
        record("classification_membership", st.as_pair() in table)
    elif g is GaloisType.Quadratic:
        record("classification_membership", st.as_pair() in gt.NAJMAN_QUAD_RAT)
    else:
        record("classification_membership", st.as_pair() in gt.MAZUR)
    # quadratic growth chain
    if K.degree == 4:
        gq = torsion_over_field(E, rational_field(), _validate=False).structure
        for m in sorted(K.quadratic_subfields()):
            F = quadratic_field(m)
            gf = torsion_over_field(E, F, _validate=False).structure
            row = gt.GROWTH_QUADRATIC.get(gq)
            if row is not None:
                record("growth_chain", gf in row,
                       f"E(QQ)={gq} grows to E(QQ(sqrt {m}))={gf}")
    return checks


# ---------------------------------------------------------------------------
# twist decomposition (odd part over a quadratic step)
# ---------------------------------------------------------------------------


def _quadratic_m_and_coords(F: NumberField, alpha: FieldElement) -> tuple[int, Fraction, Fraction]:
    """For quadratic F: squarefree m with F = QQ(sqrt m) and (a, b) with
    alpha = a + b sqrt(m)."""
    from .exactmath import squarefree_part_rational, rational_sqrt

    f = F.defining_poly  # x^2 + p x + q, integral
    p, q = f.coeffs[1], f.coeffs[0]
    disc = p * p - 4 * q
    m = squarefree_part_rational(disc)
    t = rational_sqrt(disc / m)
    assert t is not None and t > 0
    # theta = (-p + t sqrt m)/2
    c0, c1 = alpha.coeffs
    return m, c0 - c1 * p / 2, c1 * t / 2


def count_torsion_in_field(E: Curve, K: NumberField, n: int) -> int:
    """|E(K)[n]| for odd n: x-roots of the division polynomial with y in K."""
    if n == 1:
        return 1
    if n % 2 == 0:
        raise ValueError("odd n only")
    s = short_model(E)
    count = 1
    for x in roots_in_field(s.division_polynomial(n), K):
        rhs = x * x * x + x * s.a4 + s.a6
        if sqrt_in_field(rhs, K) is not None:
            count += 2
    return count


def twist_decomposition_check(E: Curve, F: NumberField, alpha, n: int) -> bool:
    """Verify |E(F(sqrt alpha))[n]| = |E(F)[n]| * |E^alpha(F)[n]| for odd n,
    computing all three sides independently (the twist counted over F)."""
    if n % 2 == 0 or n < 1:
        raise ValueError("n must be odd")
    if F.degree != 2:
        raise UnsupportedFieldError("base field of the quadratic step must be quadratic")
    alpha = F.element(alpha)
    if n == 1:
        return True
    m, a, b = _quadratic_m_and_coords(F, alpha)
    from .numfield import biquadratic_field, cyclic_criterion
    from .exactmath import squarefree_part_rational

    if b == 0:
        K = biquadratic_field(m, squarefree_part_rational(a))
    else:
        _, K = cyclic_criterion(m, a, b)
    s = short_model(E)
    g_n = s.division_polynomial(n)
    lhs = count_torsion_in_field(E, K, n)
    # both right-hand sides share the x-roots over F
    roots_F = roots_in_field(g_n, F)
    count_F = 1
    count_Ftw = 1
    for x in roots_F:
        rhs = x * x * x + x * s.a4 + s.a6
        if sqrt_in_field(rhs, F) is not None:
            count_F += 2
        if sqrt_in_field(rhs * alpha, F) is not None:
            count_Ftw += 2
    return lhs == count_F * count_Ftw
