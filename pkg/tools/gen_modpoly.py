"""Generate the classical modular polynomials Phi_3 and Phi_5 from scratch.

Method: integer q-expansions.  j = E4^3 / Delta with
    E4 = 1 + 240 sum sigma_3(n) q^n,
    Delta = q prod (1 - q^n)^24  (Euler product via the pentagonal theorem).
For prime l the l+1 "roots" of Phi_l(X, j(q)) are j(q^l) and j(zeta^i q^(1/l));
their power sums are rational q-series (the zeta-twisted part extracts every
l-th coefficient of j(t)^m), Newton's identities give the elementary symmetric
functions, and each of those reduces greedily against powers of j(q) to a
polynomial in Y.  Everything is exact integer arithmetic; each series tracks
the exponent range on which it is exact, so truncation can never silently
corrupt a coefficient.

Writes phi3.txt / phi5.txt in the package data directory ("i j c" lines,
i >= j, symmetric completion implied) after verifying symmetry, monic-in-X
normalization, and the Kronecker congruence Phi_l = (X^l - Y)(X - Y^l) mod l.

Run:  python tools/gen_modpoly.py
"""

from fractions import Fraction
from pathlib import Path

NTERMS = 170  # q-precision of the base j-series (exactness decays ~l per Newton step)


class Series:
    """Laurent series exact on [off, exact_hi]; coeffs[i] is at q**(off+i)."""

    def __init__(self, off, coeffs, exact_hi):
        coeffs = list(coeffs[: exact_hi - off + 1])
        while coeffs and coeffs[0] == 0:
            coeffs = coeffs[1:]
            off += 1
        self.off = off
        self.coeffs = coeffs
        self.exact_hi = exact_hi

    def __getitem__(self, n):
        assert n <= self.exact_hi, "read beyond exact range"
        i = n - self.off
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero_through(self, hi):
        assert hi <= self.exact_hi
        return all(self[n] == 0 for n in range(self.off, hi + 1))

    def __add__(self, other):
        lo = min(self.off, other.off)
        hi = min(self.exact_hi, other.exact_hi)
        return Series(lo, [self[n] + other[n] for n in range(lo, hi + 1)], hi)

    def __sub__(self, other):
        lo = min(self.off, other.off)
        hi = min(self.exact_hi, other.exact_hi)
        return Series(lo, [self[n] - other[n] for n in range(lo, hi + 1)], hi)

    def scale(self, c):
        return Series(self.off, [c * x for x in self.coeffs], self.exact_hi)

    def __mul__(self, other):
        lo = self.off + other.off
        hi = min(self.exact_hi + other.off, other.exact_hi + self.off)
        out = [0] * (hi - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            na = self.off + i
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                n = na + other.off + j
                if n > hi:
                    break
                out[n - lo] += a * b
        return Series(lo, out, hi)


def j_series(nterms=NTERMS):
    """j(q) = q^-1 + 744 + 196884 q + ..., exact through q^(nterms-1)."""
    sig3 = [0] * (nterms + 1)
    for d in range(1, nterms + 1):
        d3 = d * d * d
        for n in range(d, nterms + 1, d):
            sig3[n] += d3
    e4 = [1] + [240 * sig3[n] for n in range(1, nterms + 1)]
    euler = [0] * (nterms + 1)
    euler[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > nterms and g2 > nterms:
            break
        sign = -1 if k % 2 else 1
        if g1 <= nterms:
            euler[g1] += sign
        if g2 <= nterms:
            euler[g2] += sign
        k += 1

    def mul_trunc(a, b):
        out = [0] * (nterms + 1)
        for i, x in enumerate(a):
            if x:
                for jj, y in enumerate(b):
                    if i + jj > nterms:
                        break
                    out[i + jj] += x * y
        return out

    eta24 = [1] + [0] * nterms
    base = list(euler)
    e = 24
    while e:
        if e & 1:
            eta24 = mul_trunc(eta24, base)
        base = mul_trunc(base, base)
        e >>= 1
    e4cubed = mul_trunc(mul_trunc(e4, e4), e4)
    inv = [0] * (nterms + 1)
    inv[0] = 1  # eta24 starts with 1
    for n in range(1, nterms + 1):
        acc = 0
        for i in range(1, n + 1):
            acc += eta24[i] * inv[n - i]
        inv[n] = -acc
    jq = mul_trunc(e4cubed, inv)
    return Series(-1, jq, nterms - 1)


def phi_level(l, j):
    """Coefficient dict {(i, k): c} of Phi_l(X, Y), computed exactly."""
    deg = l + 1
    jpow = [None, j]
    for m in range(2, deg + 1):
        jpow.append(jpow[-1] * j)

    def j_of_ql_pow(m):
        src = jpow[m]
        vals = {(src.off + i) * l: c for i, c in enumerate(src.coeffs)}
        lo = src.off * l
        hi = src.exact_hi * l
        return Series(lo, [vals.get(n, 0) for n in range(lo, hi + 1)], hi)

    def extracted(m):
        src = jpow[m]
        vals = {}
        for i, c in enumerate(src.coeffs):
            n = src.off + i
            if n % l == 0:
                vals[n // l] = c
        lo = -(-src.off // l) * 0 + (src.off // l if src.off % l == 0 else src.off // l + 1)
        lo = min(vals) if vals else 0
        hi = src.exact_hi // l
        return Series(lo, [vals.get(n, 0) for n in range(lo, hi + 1)], hi)

    s = [None]
    for m in range(1, deg + 1):
        s.append(j_of_ql_pow(m) + extracted(m).scale(l))

    e = [Series(0, [1], min(x.exact_hi for x in s[1:]))]
    for m in range(1, deg + 1):
        acc = None
        sign = 1
        for i in range(1, m + 1):
            term = (e[m - i] * s[i]).scale(sign)
            acc = term if acc is None else acc + term
            sign = -sign
        ints = []
        for c in acc.coeffs:
            q = Fraction(c, m)
            assert q.denominator == 1, "Newton division not integral"
            ints.append(q.numerator)
        e.append(Series(acc.off, ints, acc.exact_hi))

    coeff: dict[tuple[int, int], int] = {(deg, 0): 1}
    for m in range(1, deg + 1):
        rem = e[m]
        assert rem.exact_hi >= 1, "insufficient series precision"
        poly = {}
        for d in range(deg, 0, -1):
            c = rem[-d]
            if c:
                poly[d] = c
                rem = rem - jpow[d].scale(c)
        c0 = rem[0]
        if c0:
            poly[0] = c0
            rem = rem - Series(0, [c0], rem.exact_hi)
        assert rem.is_zero_through(min(rem.exact_hi, 2)), f"e_{m} reduction has residue"
        for d, c in poly.items():
            if c:
                coeff[(deg - m, d)] = c if m % 2 == 0 else -c
    return {k: v for k, v in coeff.items() if v}


def verify(l, coeff):
    deg = l + 1
    assert coeff.get((deg, 0)) == 1, "not monic in X"
    assert max(i for i, _ in coeff) == deg
    for (i, k), c in coeff.items():
        assert coeff.get((k, i)) == c, f"asymmetric at {(i, k)}"
    expect = {(l + 1, 0): 1, (0, l + 1): 1, (l, l): (-1) % l, (1, 1): (-1) % l}
    seen = {k: c % l for k, c in coeff.items() if c % l}
    assert seen == expect, f"Kronecker congruence fails: {seen}"


def main():
    j = j_series()
    data_dir = Path(__file__).resolve().parent.parent / "src" / "quartic_torsion" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    for l in (3, 5):
        coeff = phi_level(l, j)
        verify(l, coeff)
        lines = ["# classical modular polynomial, level %d" % l,
                 "# lines: i j c  with i >= j; symmetric completion implied"]
        for (i, k), c in sorted(coeff.items(), reverse=True):
            if i >= k:
                lines.append(f"{i} {k} {c}")
        path = data_dir / f"phi{l}.txt"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {path} ({len(lines) - 2} entries)")


if __name__ == "__main__":
    main()
