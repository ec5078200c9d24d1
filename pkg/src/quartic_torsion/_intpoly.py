"""Integer-polynomial internals: GF(p) arithmetic, Hensel lifting, modular gcd,
and bounded-degree Zassenhaus factorization.

Polynomials in this module are plain lists of Python ints, constant term
first, with no trailing zeros (the zero polynomial is the empty list).  The
Fraction-facing wrappers live in exactmath; nothing here ever sees a
denominator.

Factor search is capped by degree: the engine only ever needs irreducible
factors whose roots can lie in a field of degree <= 4, so recombination
enumerates subsets of the modular factors with total degree <= dmax instead
of the full exponential Zassenhaus search.
"""

from __future__ import annotations

import random
from math import gcd, isqrt

from sympy import nextprime

# Primes used for modular steps start just above 10^3 and are taken in
# increasing order, skipping any that divide a leading coefficient or the
# discriminant (detected as loss of squarefreeness mod p).
PRIME_FLOOR = 1000


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def zz_content(a: list[int]) -> int:
    c = 0
    for x in a:
        c = gcd(c, x)
        if c == 1:
            return 1
    return c


def zz_primitive(a: list[int]) -> tuple[int, list[int]]:
    """Return (c, p) with a = c*p, p primitive with positive leading coeff."""
    if not a:
        return 0, []
    c = zz_content(a)
    if a[-1] < 0:
        c = -c
    return c, [x // c for x in a]


def zz_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def zz_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return trim(out)


def zz_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return trim(out)


def zz_divide_exact(a: list[int], b: list[int]) -> list[int] | None:
    """Exact division a / b in ZZ[x]; None if b does not divide a.

    Valid divisibility test when b is primitive: an integral quotient, if it
    exists, is produced by classical long division with every step integral.
    """
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    if len(a) < len(b):
        return None
    rem = list(a)
    lead = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        head = rem[k + len(b) - 1]
        if head % lead != 0:
            return None
        t = head // lead
        q[k] = t
        if t:
            for j, y in enumerate(b):
                rem[k + j] -= t * y
    return q if not any(rem[: len(b) - 1]) else None


def zz_derivative(a: list[int]) -> list[int]:
    return trim([i * a[i] for i in range(1, len(a))])


def zz_eval(a: list[int], x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def zz_max_norm(a: list[int]) -> int:
    return max((abs(x) for x in a), default=0)


def zz_l2_norm_ceil(a: list[int]) -> int:
    s = sum(x * x for x in a)
    r = isqrt(s)
    return r if r * r == s else r + 1


def sym_mod(a: list[int], m: int) -> list[int]:
    half = m // 2
    out = []
    for x in a:
        v = x % m
        if v > half:
            v -= m
        out.append(v)
    return trim(out)


# ---------------------------------------------------------------------------
# GF(p)[x] arithmetic (coefficients in [0, p))
# ---------------------------------------------------------------------------


def gf_from_zz(a: list[int], p: int) -> list[int]:
    return trim([x % p for x in a])


def gf_add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    return trim(out)


def gf_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return trim(out)


def gf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([v % p for v in out])


def gf_scale(a: list[int], c: int, p: int) -> list[int]:
    c %= p
    return trim([x * c % p for x in a])


def gf_monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return gf_scale(a, inv, p)


def gf_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError
    if len(a) < len(b):
        return [], list(a)
    rem = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        t = rem[k + len(b) - 1] * inv % p
        q[k] = t
        if t:
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - t * y) % p
    return trim(q), trim(rem[: len(b) - 1])


def gf_rem(a: list[int], b: list[int], p: int) -> list[int]:
    return gf_divmod(a, b, p)[1]


def gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, gf_rem(a, b, p)
    return gf_monic(a, p)


def gf_xgcd(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Extended gcd: returns (g, s, t) monic with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return gf_scale(r0, inv, p), gf_scale(s0, inv, p), gf_scale(t0, inv, p)


def gf_pow_mod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = gf_rem(base, mod, p)
    while e:
        if e & 1:
            result = gf_rem(gf_mul(result, base, p), mod, p)
        base = gf_rem(gf_mul(base, base, p), mod, p)
        e >>= 1
    return result


def gf_derivative(a: list[int], p: int) -> list[int]:
    return trim([i * a[i] % p for i in range(1, len(a))])


def gf_is_squarefree(a: list[int], p: int) -> bool:
    d = gf_derivative(a, p)
    if not d:
        return len(a) <= 2
    return len(gf_gcd(a, d, p)) == 1


# ---------------------------------------------------------------------------
# Distinct-degree / equal-degree factorization, capped at dmax
# ---------------------------------------------------------------------------


def gf_ddf_bounded(f: list[int], p: int, dmax: int) -> tuple[list[tuple[int, list[int]]], list[int]]:
    """Distinct-degree split of monic squarefree f mod p, up to degree dmax.

    Returns (blocks, rest): blocks is a list of (d, g_d) where g_d is the
    product of all irreducible factors of degree exactly d <= dmax; rest is
    the product of every factor of degree > dmax (trivial poly [1] if none).
    The factors of rest are never computed -- they cannot contribute to a
    rational factor of degree <= dmax and are carried as one Hensel block.
    """
    v = list(f)
    blocks: list[tuple[int, list[int]]] = []
    h = [0, 1]
    d = 0
    while len(v) - 1 >= 1 and d < dmax:
        d += 1
        if len(v) - 1 < 2 * d:
            if len(v) - 1 <= dmax:
                blocks.append((len(v) - 1, v))
                v = [1]
            break
        h = gf_pow_mod(h, p, v, p)
        g = gf_gcd(gf_sub(h, [0, 1], p), v, p)
        if len(g) > 1:
            blocks.append((d, g))
            v = gf_divmod(v, g, p)[0]
            h = gf_rem(h, v, p)
    if not v:
        v = [1]
    return blocks, v


def gf_edf(f: list[int], d: int, p: int) -> list[list[int]]:
    """Cantor-Zassenhaus equal-degree split (p odd).

    f monic, squarefree, all irreducible factors of degree exactly d.
    Deterministically seeded so repeated runs factor identically.
    """
    n = len(f) - 1
    if n == d:
        return [f]
    rng = random.Random((p, d, n, tuple(f)).__hash__())
    e = (p**d - 1) // 2
    while True:
        w = trim([rng.randrange(p) for _ in range(n)])
        if len(w) <= 1:
            continue
        g = gf_gcd(w, f, p)
        if 1 < len(g) < len(f):
            pass
        else:
            g = gf_gcd(gf_sub(gf_pow_mod(w, e, f, p), [1], p), f, p)
            if not (1 < len(g) < len(f)):
                continue
        other = gf_divmod(f, g, p)[0]
        return sorted(gf_edf(g, d, p) + gf_edf(other, d, p))


# ---------------------------------------------------------------------------
# Hensel lifting
# ---------------------------------------------------------------------------


def _zp_norm(a: list[int], m: int) -> list[int]:
    return trim([x % m for x in a])


def _zp_mul(a: list[int], b: list[int], m: int) -> list[int]:
    return _zp_norm(zz_mul(a, b), m)


def _zp_divmod_monic(a: list[int], b: list[int], m: int) -> tuple[list[int], list[int]]:
    # b monic mod m
    if len(a) < len(b):
        return [], list(a)
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        t = rem[k + len(b) - 1] % m
        q[k] = t
        if t:
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - t * y) % m
    return trim(q), trim([x % m for x in rem[: len(b) - 1]])


def hensel_step(m: int, f: list[int], g: list[int], h: list[int],
                s: list[int], t: list[int]):
    """One quadratic Hensel step: f = g*h (mod m), s*g + t*h = 1 (mod m),
    h monic; returns (g1, h1, s1, t1) with the same relations mod m**2."""
    M = m * m
    e = _zp_norm(zz_sub(f, zz_mul(g, h)), M)
    q, r = _zp_divmod_monic(_zp_mul(s, e, M), h, M)
    g1 = _zp_norm(zz_add(zz_add(g, _zp_mul(t, e, M)), _zp_mul(q, g, M)), M)
    h1 = _zp_norm(zz_add(h, r), M)
    b = _zp_norm(zz_sub(zz_add(_zp_mul(s, g1, M), _zp_mul(t, h1, M)), [1]), M)
    c, d = _zp_divmod_monic(_zp_mul(s, b, M), h1, M)
    s1 = _zp_norm(zz_sub(s, d), M)
    t1 = _zp_norm(zz_sub(zz_sub(t, _zp_mul(t, b, M)), _zp_mul(c, g1, M)), M)
    return g1, h1, s1, t1


def _lift_pair(f: list[int], g: list[int], h: list[int], p: int, target: int):
    """Lift f = g*h (mod p), h monic, to modulus >= target.  Returns
    (g_lifted, h_lifted, modulus)."""
    _, s, t = gf_xgcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t = hensel_step(m, f, g, h, s, t)
        m = m * m
    return g, h, m


def hensel_lift_blocks(f: list[int], blocks: list[list[int]], p: int, target: int) -> tuple[list[list[int]], int]:
    """Lift the coprime factorization f = lc(f) * prod(blocks) (mod p), each
    block monic mod p, to a modulus >= target.

    Returns (lifted_blocks, modulus): lifted blocks are monic mod modulus and
    f = lc(f) * prod(lifted) (mod modulus).
    """
    def rec(fpart: list[int], blks: list[list[int]], mod_have: int) -> list[list[int]]:
        # invariant: fpart = lc(fpart) * prod(blks) (mod p), fpart known mod mod_have
        if len(blks) == 1:
            inv = pow(fpart[-1], -1, mod_have)
            return [_zp_norm([x * inv for x in fpart], mod_have)]
        half = len(blks) // 2
        A, B = blks[:half], blks[half:]
        G = [1]
        for b in A:
            G = gf_mul(G, b, p)
        H = [1]
        for b in B:
            H = gf_mul(H, b, p)
        lg = gf_scale(G, fpart[-1] % p, p)
        Gl, Hl, mod = _lift_pair(fpart, lg, H, p, mod_have)
        return rec(Gl, A, mod) + rec(Hl, B, mod)

    mod = p
    while mod < target:
        mod = mod * mod
    lifted = rec(_zp_norm(f, mod), blocks, mod)
    return lifted, mod


# ---------------------------------------------------------------------------
# Bounded-degree Zassenhaus
# ---------------------------------------------------------------------------


def _prime_stream(start: int = PRIME_FLOOR):
    p = start
    while True:
        p = int(nextprime(p))
        yield p


def pick_factor_prime(h: list[int], count: int = 3) -> list[int]:
    """First `count` primes > PRIME_FLOOR keeping h squarefree with unit lc."""
    out = []
    for p in _prime_stream():
        if h[-1] % p == 0:
            continue
        hp = gf_monic(gf_from_zz(h, p), p)
        if len(hp) == len(h) and gf_is_squarefree(hp, p):
            out.append(p)
            if len(out) == count:
                return out
    raise RuntimeError("unreachable")


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def zz_factor_squarefree_bounded(h: list[int], dmax: int) -> tuple[list[list[int]], list[int]]:
    """Factor a primitive squarefree integer polynomial, keeping only the
    irreducible factors of degree <= dmax.

    Returns (factors, cofactor): primitive irreducible factors with positive
    leading coefficient, and the primitive cofactor whose irreducible parts
    all have degree > dmax ([1] if none remain).
    """
    n = len(h) - 1
    if n <= 0:
        return [], [1]
    if n == 1:
        return ([list(h)], [1]) if dmax >= 1 else ([], list(h))

    # Choose among a few good primes the one with the fewest small-degree
    # modular factors: recombination enumerates subsets of those.
    best = None
    for p in pick_factor_prime(h):
        hp = gf_monic(gf_from_zz(h, p), p)
        blocks, rest = gf_ddf_bounded(hp, p, min(dmax, n))
        nsmall = sum((len(g) - 1) // d for d, g in blocks)
        if best is None or nsmall < best[0]:
            best = (nsmall, p, blocks, rest)
        if nsmall == 0:
            break
    nsmall, p, blocks, rest = best
    if nsmall == 0:
        return [], list(h)

    small: list[list[int]] = []
    for d, g in blocks:
        small.extend(gf_edf(g, d, p))
    lift_input = sorted(small) + ([rest] if len(rest) > 1 else [])

    lc = h[-1]
    bound = _binom(min(dmax, n), min(dmax, n) // 2) * zz_l2_norm_ceil(h) + abs(lc)
    lifted_all, modulus = hensel_lift_blocks(h, lift_input, p, 2 * bound + 1)
    lifted = lifted_all[: len(small)]
    order = sorted(range(len(lifted)), key=lambda i: (len(lifted[i]), lifted[i]))
    lifted = [lifted[i] for i in order]

    factors: list[list[int]] = []
    cur = list(h)
    alive = list(range(len(lifted)))

    def try_subsets() -> bool:
        nonlocal cur, alive
        lc_cur = cur[-1]
        from itertools import combinations
        for size in range(1, len(alive) + 1):
            for combo in combinations(alive, size):
                degsum = sum(len(lifted[i]) - 1 for i in combo)
                if degsum > dmax or degsum >= len(cur) - 1:
                    continue
                cand = [lc_cur]
                for i in combo:
                    cand = _zp_mul(cand, lifted[i], modulus)
                cand = sym_mod(cand, modulus)
                if not cand or len(cand) - 1 != degsum:
                    continue
                if cur[0] != 0 and cand[0] != 0 and (lc_cur * cur[0]) % cand[0] != 0:
                    continue
                _, cand_pp = zz_primitive(cand)
                q = zz_divide_exact(cur, cand_pp)
                if q is not None:
                    factors.append(cand_pp)
                    cur = zz_primitive(q)[1]
                    alive = [i for i in alive if i not in combo]
                    return True
        return False

    while alive and len(cur) - 1 > 0:
        if not try_subsets():
            break
    if 1 <= len(cur) - 1 <= dmax:
        # every proper factor of degree <= dmax has been removed, so the
        # remaining cofactor of small degree is itself irreducible
        factors.append(cur)
        cur = [1]
    return sorted(factors), cur


# ---------------------------------------------------------------------------
# Modular gcd over ZZ[x]
# ---------------------------------------------------------------------------


def _crt_combine(a: list[int], m: int, b: list[int], p: int) -> list[int]:
    # coefficientwise CRT; inputs normalized mod their moduli
    inv = pow(m % p, -1, p)
    out = []
    la, lb = len(a), len(b)
    for i in range(max(la, lb)):
        x = a[i] if i < la else 0
        y = b[i] if i < lb else 0
        t = (y - x) * inv % p
        out.append(x + m * t)
    return trim(out)


def zz_gcd(f: list[int], g: list[int], max_primes: int = 64) -> list[int]:
    """Gcd in ZZ[x] by small-prime interpolation with verification by exact
    division; falls back to a primitive PRS if the prime budget runs out."""
    if not f:
        return zz_primitive(g)[1]
    if not g:
        return zz_primitive(f)[1]
    cf, pf = zz_primitive(f)
    cg, pg = zz_primitive(g)
    c = gcd(cf, cg)
    if len(pf) == 1 or len(pg) == 1:
        return [c]
    gamma = gcd(pf[-1], pg[-1])
    acc, m, deg_min = None, 1, None
    used = 0
    for p in _prime_stream():
        if used >= max_primes:
            break
        if pf[-1] % p == 0 or pg[-1] % p == 0:
            continue
        used += 1
        gp = gf_gcd(gf_from_zz(pf, p), gf_from_zz(pg, p), p)
        d = len(gp) - 1
        if d == 0:
            return [c]
        if deg_min is None or d < deg_min:
            deg_min, acc, m = d, gf_scale(gp, gamma, p), p
        elif d == deg_min:
            acc = _crt_combine(acc, m, gf_scale(gp, gamma, p), p)
            m *= p
        else:
            continue
        cand = zz_primitive(sym_mod(acc, m))[1]
        if zz_divide_exact(pf, cand) is not None and zz_divide_exact(pg, cand) is not None:
            return zz_mul([c], cand)
    return zz_mul([c], _gcd_prs(pf, pg))


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder rem(lc(b)^(deg a - deg b + 1) * a, b)."""
    d = len(a) - len(b)
    if d < 0:
        return list(a)
    lead = b[-1]
    rem = [x * lead ** (d + 1) for x in a]
    for k in range(d, -1, -1):
        head = rem[k + len(b) - 1]
        t, r = divmod(head, lead)
        assert r == 0
        if t:
            for j, y in enumerate(b):
                rem[k + j] -= t * y
    return trim(rem[: len(b) - 1])


def _gcd_prs(a: list[int], b: list[int]) -> list[int]:
    """Primitive-PRS fallback gcd for primitive inputs."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (zz_primitive(r)[1] if r else [])
    return zz_primitive(a)[1]


def zz_resultant(f: list[int], g: list[int]) -> int:
    """Resultant via the subresultant PRS (Cohen, Alg. 3.3.7)."""
    if not f or not g:
        raise ValueError("resultant of zero polynomial")
    A, B = list(f), list(g)
    s = 1
    if len(A) < len(B):
        if ((len(A) - 1) * (len(B) - 1)) % 2 == 1:
            s = -s
        A, B = B, A
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    gg, hh = 1, 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _prem(A, B)
        A = B
        divisor = gg * hh**delta
        B = [x // divisor for x in R]
        gg = A[-1]
        if delta >= 1:
            hh = gg**delta // hh ** (delta - 1)
        if not B:
            return 0
        if len(B) == 1:
            dA = len(A) - 1
            return s * (B[0] ** dA // hh ** (dA - 1))
