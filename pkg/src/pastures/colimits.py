"""Coequalizers, fibered coproducts and finite coproducts.

All three are quotients of a set of unit keys (indices, pairs or tuples) by
a group action.  Classes are represented by their lexicographically least
member and every table is computed on representatives.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .core import (
    ONE,
    ZERO,
    CapacityError,
    MismatchError,
    Pasture,
    f1pm,
    sort3,
    zero_triples,
)
from .limits import DEFAULT_CONSTRUCTION_LIMIT
from .morphism import Morphism

Key = Hashable


@dataclass
class UnitPartition:
    """Orbits of a set of unit keys.

    ``class_of[key]`` is the class id, counted from 1 so that it doubles as
    the element index in the quotient pasture.  ``reps[c - 1]`` is the least
    member of class ``c``.
    """

    elements: list
    class_of: dict
    reps: list
    members: list

    @classmethod
    def from_moves(cls, elements: Iterable[Key], moves: Sequence[Callable[[Key], Key]]) -> "UnitPartition":
        elements = list(elements)
        seen: dict = {}
        orbits = []
        for e in elements:
            if e in seen:
                continue
            orbit = [e]
            seen[e] = True
            frontier = [e]
            while frontier:
                nxt = []
                for x in frontier:
                    for mv in moves:
                        y = mv(x)
                        if y not in seen:
                            seen[y] = True
                            orbit.append(y)
                            nxt.append(y)
                frontier = nxt
            orbits.append(sorted(orbit))
        orbits.sort(key=lambda o: o[0])
        class_of = {}
        for c, orbit in enumerate(orbits, start=1):
            for x in orbit:
                class_of[x] = c
        return cls(elements, class_of, [o[0] for o in orbits], orbits)

    def __len__(self) -> int:
        return len(self.reps)

    def incompatible(self, op: Callable[[Key, Key], Key]) -> list[tuple[Key, Key]]:
        """Pairs of keys where ``op`` disagrees with the value on representatives."""
        bad = []
        for x in self.elements:
            for y in self.elements:
                rx, ry = self.reps[self.class_of[x] - 1], self.reps[self.class_of[y] - 1]
                if self.class_of[op(x, y)] != self.class_of[op(rx, ry)]:
                    bad.append((x, y))
        return bad


def _quotient(
    part: UnitPartition,
    mul: Callable[[Key, Key], Key],
    neg: Callable[[Key], Key],
    triples: Iterable[tuple[int, int, int]],
    name: str,
    label: Callable[[Key], str],
) -> Pasture:
    n = len(part) + 1
    cls = part.class_of
    reps = part.reps
    table = [[0] * n for _ in range(n)]
    for i, a in enumerate(reps, start=1):
        for j, b in enumerate(reps, start=1):
            table[i][j] = cls[mul(a, b)]
    negs = [0] + [cls[neg(a)] for a in reps]
    null = zero_triples(negs)
    null.update(sort3(*t) for t in triples)
    return Pasture(
        mul=tuple(map(tuple, table)),
        neg=tuple(negs),
        nullset=frozenset(null),
        name=name,
        labels=("0", *("[" + label(r) + "]" for r in reps)),
        provenance=(None, *reps),
    )


def coset_partition(f: Morphism, g: Morphism) -> tuple[UnitPartition, frozenset[int]]:
    """Cosets of ``H = {f(z) g(z)^-1}`` in the units of the common target."""
    P2 = f.target
    H = frozenset(P2.mul[f.map[z]][P2.inverse[g.map[z]]] for z in f.source.units)
    moves = [lambda x, h=h: P2.mul[x][h] for h in sorted(H)]
    return UnitPartition.from_moves(P2.units, moves), H


def coequalizer(f: Morphism, g: Morphism) -> tuple[Pasture, Morphism]:
    """``{0} + P2^x / H`` with the image nullset, and the quotient map."""
    if f.source != g.source or f.target != g.target:
        raise MismatchError(f"{f.name} and {g.name} are not parallel")
    P2 = f.target
    part, _ = coset_partition(f, g)
    cls = {ZERO: ZERO, **part.class_of}
    triples = ((cls[a], cls[b], cls[c]) for a, b, c in P2.nullset)
    Q = _quotient(
        part,
        mul=lambda a, b: P2.mul[a][b],
        neg=lambda a: P2.neg[a],
        triples=triples,
        name=f"Coeq({f.name},{g.name})",
        label=P2.label,
    )
    q = Morphism(P2, Q, tuple(cls[x] for x in P2.elements), name="q")
    return Q, q


def pushout_partition(f1: Morphism, f2: Morphism) -> UnitPartition:
    """Orbits of ``P^x`` on ``P1^x x P2^x`` under ``x.(a, b) = (f1(x)^-1 a, f2(x) b)``."""
    P, P1, P2 = f1.source, f1.target, f2.target
    moves = []
    for x in P.generators:
        s, t = P1.inverse[f1.map[x]], f2.map[x]
        moves.append(lambda ab, s=s, t=t: (P1.mul[s][ab[0]], P2.mul[t][ab[1]]))
    pairs = itertools.product(P1.units, P2.units)
    return UnitPartition.from_moves(pairs, moves)


def fibered_coproduct(
    f1: Morphism, f2: Morphism, max_size: int = DEFAULT_CONSTRUCTION_LIMIT
) -> tuple[Pasture, Morphism, Morphism]:
    """``P1 (x)_P P2`` with its two insertions."""
    if f1.source != f2.source:
        raise MismatchError(f"{f1.name} and {f2.name} have different sources")
    P1, P2 = f1.target, f2.target
    npairs = (P1.size - 1) * (P2.size - 1)
    if npairs + 1 > max_size:
        raise CapacityError(f"{npairs} unit pairs exceed bound {max_size}")
    part = pushout_partition(f1, f2)
    cls = part.class_of

    def pair_class(a: int, b: int) -> int:
        return ZERO if a == ZERO or b == ZERO else cls[(a, b)]

    def triples():
        # both rule families, over every representative of every class
        for y in P2.elements:
            for a, b, c in P1.nullset:
                yield pair_class(a, y), pair_class(b, y), pair_class(c, y)
        for x in P1.elements:
            for a, b, c in P2.nullset:
                yield pair_class(x, a), pair_class(x, b), pair_class(x, c)

    apex = _quotient(
        part,
        mul=lambda u, v: (P1.mul[u[0]][v[0]], P2.mul[u[1]][v[1]]),
        neg=lambda u: (P1.neg[u[0]], u[1]),
        triples=triples(),
        name=f"{P1.name}(x)_{f1.source.name}{P2.name}",
        label=lambda r: f"{P1.label(r[0])},{P2.label(r[1])}",
    )
    i1 = Morphism(P1, apex, tuple(pair_class(x, ONE) for x in P1.elements), name="i1")
    i2 = Morphism(P2, apex, tuple(pair_class(ONE, y) for y in P2.elements), name="i2")
    return apex, i1, i2


def flip_partition(summands: Sequence[Pasture]) -> UnitPartition:
    """Unit tuples modulo simultaneous sign flips at two distinct slots."""
    k = len(summands)
    moves = []
    for i, j in itertools.combinations(range(k), 2):
        def mv(t, i=i, j=j):
            t = list(t)
            t[i] = summands[i].neg[t[i]]
            t[j] = summands[j].neg[t[j]]
            return tuple(t)
        moves.append(mv)
    tuples = itertools.product(*(P.units for P in summands))
    return UnitPartition.from_moves(tuples, moves)


def coproduct(
    summands: Sequence[Pasture], max_size: int = DEFAULT_CONSTRUCTION_LIMIT
) -> tuple[Pasture, list[Morphism]]:
    """The coproduct of a non-empty list of pastures, with its insertions."""
    summands = list(summands)
    if not summands:
        raise ValueError("the coproduct of an empty list is not supported")
    ntuples = math.prod(P.size - 1 for P in summands)
    if ntuples + 1 > max_size:
        raise CapacityError(f"{ntuples} unit tuples exceed bound {max_size}")
    k = len(summands)
    part = flip_partition(summands)
    cls = part.class_of

    def triples():
        for j, Pj in enumerate(summands):
            others = [P.units if i != j else (None,) for i, P in enumerate(summands)]
            for a, b, c in Pj.unit_triples:
                for w in itertools.product(*others):
                    w = list(w)
                    row = []
                    for x in (a, b, c):
                        w[j] = x
                        row.append(cls[tuple(w)])
                    yield tuple(row)

    def insert(j: int, x: int) -> int:
        if x == ZERO:
            return ZERO
        t = [ONE] * k
        t[j] = x
        return cls[tuple(t)]

    apex = _quotient(
        part,
        mul=lambda u, v: tuple(summands[i].mul[u[i]][v[i]] for i in range(k)),
        neg=lambda u: (summands[0].neg[u[0]], *u[1:]),
        triples=triples(),
        name="(x)".join(P.name for P in summands) if k > 1 else f"Coprod({summands[0].name})",
        label=lambda r: ",".join(summands[i].label(r[i]) for i in range(k)),
    )
    legs = [
        Morphism(P, apex, tuple(insert(j, x) for x in P.elements), name=f"i{j + 1}")
        for j, P in enumerate(summands)
    ]
    return apex, legs


def copair(apex: Pasture, legs: Sequence[Morphism], name: str = "u") -> Morphism:
    """The map ``[(x_i)] -> prod leg_i(x_i)`` out of a coproduct or fibered coproduct.

    ``apex`` must come from :func:`coproduct` or :func:`fibered_coproduct`
    over the legs' sources, in order.  Well-definedness is not checked here;
    validate the result when the legs are not known to form a cocone.
    """
    target = legs[0].target
    m = [ZERO] * apex.size
    for c in apex.units:
        rep = apex.provenance[c]
        v = ONE
        for leg, x in zip(legs, rep):
            v = target.mul[v][leg.map[x]]
        m[c] = v
    return Morphism(apex, target, tuple(m), name=name)


def initial_map(target: Pasture, initial: Optional[Pasture] = None) -> Morphism:
    """The unique morphism ``F1pm -> target``."""
    src = initial if initial is not None else f1pm()
    return Morphism(src, target, (ZERO, ONE, target.neg[ONE]), name="!")
