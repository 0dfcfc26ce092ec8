"""Independent brute-force oracles.

Nothing here calls the canonical search or the operator builders.  Graphs
are bitsets over pairs listed as ``(u, v)`` in the order produced by
``itertools.combinations(range(n), 2)`` re-sorted colexicographically, and
isomorphism classes come from explicit orbits under all ``n!`` relabelings.
"""

from functools import lru_cache
from itertools import combinations, permutations
from math import comb


@lru_cache(maxsize=None)
def pairs(n):
    return sorted(combinations(range(n), 2), key=lambda p: (p[1], p[0]))


@lru_cache(maxsize=None)
def slot_maps(n):
    index = {p: s for s, p in enumerate(pairs(n))}
    maps = []
    for perm in permutations(range(n)):
        maps.append([index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs(n)])
    return maps


def relabel(bits, smap):
    out = 0
    for s, t in enumerate(smap):
        if bits >> s & 1:
            out |= 1 << t
    return out


def brute_min_code(n, bits):
    return min(relabel(bits, smap) for smap in slot_maps(n))


@lru_cache(maxsize=None)
def orbit_table(n):
    """``table[bits]`` = smallest member of the orbit of ``bits``."""
    N = len(pairs(n))
    table = [-1] * (1 << N)
    for bits in range(1 << N):
        if table[bits] < 0:
            for smap in slot_maps(n):
                table[relabel(bits, smap)] = bits
    return table


def classes(n, m):
    """Sorted orbit minima of all ``m``-edge labeled graphs."""
    table = orbit_table(n)
    return sorted({table[b] for b in range(len(table)) if b.bit_count() == m})


def labeled(n, m):
    N = len(pairs(n))
    return [b for b in range(1 << N) if b.bit_count() == m]


def naive_d(n, m, k):
    """Dense ``d_k`` in orbit-minimum order: count labeled subgraphs ``H`` of each rep."""
    table = orbit_table(n)
    rows, cols = classes(n, m - k), classes(n, m)
    where = {c: i for i, c in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, g in enumerate(cols):
        for h in labeled(n, m - k):
            if h & ~g == 0:
                M[where[table[h]]][j] += 1
    return M


def naive_D(n, m, i):
    """``D_i``: each labeled ``H`` with ``|E(G) - E(H)| = i`` is one disjoint move."""
    table = orbit_table(n)
    cols = classes(n, m)
    where = {c: r for r, c in enumerate(cols)}
    M = [[0] * len(cols) for _ in cols]
    for j, g in enumerate(cols):
        for h in labeled(n, m):
            if (g & ~h).bit_count() == i:
                M[where[table[h]]][j] += 1
    return M


def naive_Delta(n, m, i):
    """``Delta_i``: moves ``(A, B)`` landing on ``H`` need ``A ⊇ E(G) - E(H)``."""
    table = orbit_table(n)
    cols = classes(n, m)
    where = {c: r for r, c in enumerate(cols)}
    M = [[0] * len(cols) for _ in cols]
    for j, g in enumerate(cols):
        for h in labeled(n, m):
            t = (g & ~h).bit_count()
            if t <= i:
                M[where[table[h]]][j] += comb(m - t, i - t)
    return M
