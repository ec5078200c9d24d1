"""The classification lists as plain data.

Groups are pairs (d1, d2) with d1 | d2 meaning Z/d1 + Z/d2; (1, 1) is the
trivial group.  Each table is hard-coded to match its published list line by
line; nothing here is derived from another table, so a transcription error
fails loudly against the unit tests instead of propagating.
"""

from __future__ import annotations


def _cyclic(ns):
    return frozenset((1, n) for n in ns)


def _family(d, ns):
    return frozenset((d, d * n) for n in ns)


# torsion of elliptic curves over QQ: 15 groups
MAZUR = _cyclic(list(range(1, 11)) + [12]) | _family(2, range(1, 5))

# curves defined over a quadratic field
KKM_QUAD = (_cyclic(n for n in range(1, 19) if n != 17)
            | _family(2, range(1, 7)) | _family(3, (1, 2)) | _family(4, (1,)))

# rational curves over a quadratic field
NAJMAN_QUAD_RAT = (_cyclic(list(range(1, 11)) + [12, 15, 16])
                   | _family(2, range(1, 7)) | _family(3, (1, 2)) | _family(4, (1,)))

# rational curves over a cubic field
NAJMAN_CUBIC_RAT = (_cyclic(list(range(1, 11)) + [12, 13, 14, 18, 21])
                    | _family(2, (1, 2, 3, 4, 7)))

# rational curves over a quartic Galois field
THM_GALOIS_QUARTIC = (_cyclic(n for n in range(1, 17) if n not in (11, 14))
                      | _family(2, (1, 2, 3, 4, 5, 6, 8))
                      | _family(3, (1, 2)) | _family(4, (1, 2))
                      | frozenset({(5, 5), (6, 6)}))

# rational curves over a cyclic quartic field
THM_CYCLIC_QUARTIC = (_cyclic([*range(1, 11), 12, 13, 15, 16])
                      | _family(2, (1, 2, 3, 4, 5, 6, 8))
                      | frozenset({(5, 5)}))

# rational curves over a biquadratic field
THM_BIQUADRATIC = (_cyclic([*range(1, 11), 12, 15, 16])
                   | _family(2, (1, 2, 3, 4, 5, 6, 8))
                   | _family(3, (1, 2)) | _family(4, (1, 2))
                   | frozenset({(6, 6)}))

# rational curves over the maximal elementary 2-abelian extension: 20 groups
FUJITA_L = (_family(2, (1, 2, 3, 4, 5, 6, 8))
            | _family(4, (1, 2, 3, 4))
            | frozenset({(6, 6), (8, 8)})
            | frozenset({(1, 1), (1, 3), (3, 3), (1, 5), (1, 7), (1, 9), (1, 15)}))

# groups that never embed in E(K) for K quartic (any E over K)
BN_EXCLUDED_QUARTIC = frozenset({
    (3, 12), (3, 18), (3, 27), (3, 33), (3, 39),
    (4, 12), (4, 16), (4, 28), (4, 44), (4, 52), (4, 68),
    (8, 8),
})

# all torsion over the fifth cyclotomic field (any E over that field)
ZETA5_LIST = MAZUR | frozenset({(1, 15), (1, 16), (5, 5)})

# CM curves over any quartic field
CM_QUARTIC = (_cyclic([*range(1, 9), 10, 12, 13, 21])
              | _family(2, range(1, 6)) | _family(3, (1, 2)) | _family(4, (1,)))

# how rational torsion can grow in one quadratic step: the printed table
# (indexed by E(QQ); absent keys, e.g. C9, are outside the table's scope)
GROWTH_QUADRATIC: dict[tuple[int, int], frozenset[tuple[int, int]]] = {
    (1, 1): _cyclic((1, 3, 5, 7, 9)),
    (1, 2): _cyclic((2, 4, 6, 8, 10, 12, 16)) | frozenset({(2, 2), (2, 6), (2, 10)}),
    (1, 3): _cyclic((3, 15)) | frozenset({(3, 3)}),
    (1, 4): _cyclic((4, 8, 12)) | frozenset({(2, 4), (2, 8), (2, 12), (4, 4)}),
    (1, 5): _cyclic((5, 15)),
    (1, 6): _cyclic((6, 12)) | frozenset({(2, 6), (3, 6)}),
    (1, 7): _cyclic((7,)),
    (1, 8): _cyclic((8, 16)) | frozenset({(2, 8)}),
    (1, 10): _cyclic((10,)) | frozenset({(2, 10)}),
    (1, 12): _cyclic((12,)) | frozenset({(2, 12)}),
    (2, 2): frozenset({(2, 2), (2, 4), (2, 6), (2, 8), (2, 12)}),
    (2, 4): frozenset({(2, 4), (2, 8), (4, 4)}),
    (2, 6): frozenset({(2, 6), (2, 12)}),
    (2, 8): frozenset({(2, 8)}),
}

# Landau function g(n): the largest order of an element of S_n
LANDAU_G = {1: 1, 2: 2, 3: 3, 4: 4, 5: 6, 6: 6, 7: 12, 8: 15}

# primes that can divide rational-curve torsion over fields of degree <= 4
TORSION_PRIMES_DEGREE4 = (2, 3, 5, 7, 13)
