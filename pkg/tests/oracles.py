"""Brute-force reference computations, written against the raw definitions.

Nothing here calls into the constructions under test.  Inputs are read as
plain tables (``P.mul``, ``P.neg``, ``P.nullset``, ``m.map``) and every
answer comes from direct enumeration.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def units(P):
    return list(range(1, P.size))


def residue_null_triples(p):
    """Sorted residue triples summing to zero mod p."""
    return {t for t in itertools.product(range(p), repeat=3) if sum(t) % p == 0 and t == tuple(sorted(t))}


def is_pasture(P):
    """Direct check of every pasture axiom, with permutations tested explicitly."""
    n, mul, neg = P.size, P.mul, P.neg

    def null(a, b, c):
        return any(tuple(sorted(q)) in P.nullset for q in itertools.permutations((a, b, c)))

    U = units(P)
    if any(mul[1][x] != x for x in range(n)):
        return False
    if any(mul[a][b] == 0 or mul[a][b] != mul[b][a] for a in U for b in U):
        return False
    if any(mul[mul[a][b]][c] != mul[a][mul[b][c]] for a in U for b in U for c in U):
        return False
    if any(all(mul[a][b] != 1 for b in U) for a in U):
        return False
    if neg[0] != 0 or any(neg[neg[x]] != x for x in range(n)) or any(neg[u] == 0 for u in U):
        return False
    for a, b, c in itertools.product(range(n), repeat=3):
        if null(a, b, c) and not all(null(mul[d][a], mul[d][b], mul[d][c]) for d in U):
            return False
    for a, b in itertools.product(range(n), repeat=2):
        if null(a, b, 0) != (a == neg[b]):
            return False
    return True


def is_morphism(P, Q, m):
    if m[0] != 0 or m[1] != 1:
        return False
    if any(m[P.neg[x]] != Q.neg[m[x]] for x in range(P.size)):
        return False
    if any(m[P.mul[x][y]] != Q.mul[m[x]][m[y]] for x in range(P.size) for y in range(P.size)):
        return False
    return all(tuple(sorted((m[a], m[b], m[c]))) in Q.nullset for a, b, c in P.nullset)


def all_homs(P, Q):
    """Every map array ``P -> Q`` that is a morphism, by exhaustive search."""
    out = []
    for tail in itertools.product(range(Q.size), repeat=P.size - 2):
        m = (0, 1, *tail)
        if is_morphism(P, Q, m):
            out.append(m)
    return sorted(out)


def fibered_product_size(f1, f2):
    pairs = {(a, b) for a in units(f1.source) for b in units(f2.source) if f1.map[a] == f2.map[b]}
    return 1 + len(pairs)


def product_size(factors):
    size = 1
    for P in factors:
        size *= P.size - 1
    return 1 + size


def equalizer_size(f, g):
    return len({x for x in range(f.source.size) if f.map[x] == g.map[x]})


def coequalizer_size(f, g):
    """Union-find over the units of the target, merging ``y`` with ``y f(z) g(z)^-1``."""
    T = f.target
    inv = {u: next(v for v in units(T) if T.mul[u][v] == 1) for u in units(T)}
    parent = {u: u for u in units(T)}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for z in units(f.source):
        h = T.mul[f.map[z]][inv[g.map[z]]]
        for y in units(T):
            parent[find(y)] = find(T.mul[y][h])
    return 1 + len({find(u) for u in units(T)})


def fibered_coproduct_size(f1, f2):
    """Burnside count of orbits of ``x.(a, b) = (f1(x)^-1 a, f2(x) b)``."""
    P, P1, P2 = f1.source, f1.target, f2.target
    inv1 = {u: next(v for v in units(P1) if P1.mul[u][v] == 1) for u in units(P1)}
    pairs = list(itertools.product(units(P1), units(P2)))
    fixed = 0
    for x in units(P):
        s, t = inv1[f1.map[x]], f2.map[x]
        fixed += sum(1 for a, b in pairs if (P1.mul[s][a], P2.mul[t][b]) == (a, b))
    return 1 + int(Fraction(fixed, len(units(P))))


def coproduct_size(summands):
    """Burnside count of unit tuples modulo flipping signs at an even number of slots."""
    k = len(summands)
    tuples = list(itertools.product(*(units(P) for P in summands)))
    group = [S for r in range(0, k + 1, 2) for S in itertools.combinations(range(k), r)]
    fixed = 0
    for S in group:
        for t in tuples:
            if all(summands[i].neg[t[i]] == t[i] for i in S):
                fixed += 1
    return 1 + int(Fraction(fixed, len(group)))
