"""Equalizers, fibered products and finite products."""

from __future__ import annotations

import itertools
import math
from typing import Optional, Sequence

from .core import (
    ONE,
    ZERO,
    CapacityError,
    MismatchError,
    Pasture,
    sort3,
    zero_triples,
)
from .morphism import Morphism

DEFAULT_CONSTRUCTION_LIMIT = 128


def _tuple_label(factors: Sequence[Pasture], t: tuple[int, ...]) -> str:
    return "(" + ",".join(P.label(x) for P, x in zip(factors, t)) + ")"


def _coordinate_pasture(
    factors: Sequence[Pasture], tuples: Sequence[tuple[int, ...]], name: str
) -> Pasture:
    """Pasture on ``{0} + tuples`` with every operation taken coordinatewise.

    ``tuples`` must hold unit tuples, closed under coordinatewise products and
    negatives, with the all-ones tuple first.  An all-unit triple is null iff
    it is null in every coordinate.
    """
    index = {t: i for i, t in enumerate(tuples, start=1)}
    n = len(tuples) + 1
    k = len(factors)
    mul = [[0] * n for _ in range(n)]
    for ia, a in enumerate(tuples, start=1):
        row = mul[ia]
        for ib, b in enumerate(tuples, start=1):
            row[ib] = index[tuple(factors[c].mul[a[c]][b[c]] for c in range(k))]
    neg = [0] + [index[tuple(factors[c].neg[a[c]] for c in range(k))] for a in tuples]

    null = zero_triples(neg)
    nulls = [P.nullset for P in factors]
    for i in range(1, n):
        a = tuples[i - 1]
        for j in range(i, n):
            b = tuples[j - 1]
            for l in range(j, n):
                c = tuples[l - 1]
                if all(sort3(a[q], b[q], c[q]) in nulls[q] for q in range(k)):
                    null.add((i, j, l))
    return Pasture(
        mul=tuple(map(tuple, mul)),
        neg=tuple(neg),
        nullset=frozenset(null),
        name=name,
        labels=("0", *(_tuple_label(factors, t) for t in tuples)),
        provenance=(None, *tuples),
    )


def _projection(prod: Pasture, factor: Pasture, j: int, name: str) -> Morphism:
    m = [0] + [t[j] for t in prod.provenance[1:]]
    return Morphism(prod, factor, tuple(m), name=name)


def product(
    factors: Sequence[Pasture], max_size: int = DEFAULT_CONSTRUCTION_LIMIT
) -> tuple[Pasture, list[Morphism]]:
    """The product pasture ``{0} + prod P_i^x`` with its projections.

    The empty product is the two-element pasture with full nullset (the
    Krasner hyperfield, which is terminal).
    """
    factors = list(factors)
    size = 1 + math.prod(P.size - 1 for P in factors)
    if size > max_size:
        raise CapacityError(f"product would have {size} elements, bound is {max_size}")
    tuples = list(itertools.product(*(P.units for P in factors)))
    name = "*".join(P.name for P in factors) if factors else "Prod()"
    prod = _coordinate_pasture(factors, tuples, name)
    legs = [_projection(prod, P, j, f"pi{j + 1}") for j, P in enumerate(factors)]
    return prod, legs


def fibered_product(
    f1: Morphism, f2: Morphism, max_size: int = DEFAULT_CONSTRUCTION_LIMIT
) -> tuple[Pasture, Morphism, Morphism]:
    """``P1 x_P P2``: zero plus the unit pairs ``(a, b)`` with ``f1(a) = f2(b)``."""
    if f1.target != f2.target:
        raise MismatchError(f"{f1.name} and {f2.name} have different targets")
    P1, P2 = f1.source, f2.source
    pairs = [(a, b) for a in P1.units for b in P2.units if f1.map[a] == f2.map[b]]
    if len(pairs) + 1 > max_size:
        raise CapacityError(f"fibered product would have {len(pairs) + 1} elements")
    apex = _coordinate_pasture([P1, P2], pairs, f"{P1.name}*_{f1.target.name}*{P2.name}")
    return apex, _projection(apex, P1, 0, "pi1"), _projection(apex, P2, 1, "pi2")


def equalizer(f: Morphism, g: Morphism) -> tuple[Pasture, Morphism]:
    """The subpasture ``{x : f(x) = g(x)}`` of the common source, with its inclusion."""
    if f.source != g.source or f.target != g.target:
        raise MismatchError(f"{f.name} and {g.name} are not parallel")
    P1 = f.source
    keep = [x for x in P1.elements if f.map[x] == g.map[x]]
    index = {x: i for i, x in enumerate(keep)}
    mul = tuple(tuple(index[P1.mul[x][y]] for y in keep) for x in keep)
    neg = tuple(index[P1.neg[x]] for x in keep)
    # reindexing is monotone, so sorted triples stay sorted
    null = frozenset(
        (index[a], index[b], index[c])
        for a, b, c in P1.nullset
        if a in index and b in index and c in index
    )
    Q = Pasture(
        mul=mul,
        neg=neg,
        nullset=null,
        name=f"Eq({f.name},{g.name})",
        labels=tuple(P1.label(x) for x in keep),
        provenance=tuple(keep),
    )
    return Q, Morphism(Q, P1, tuple(keep), name="q")


def lift_into(apex: Pasture, legs: Sequence[Morphism], name: str = "u") -> Morphism:
    """The map ``x -> (leg_1(x), ..., leg_k(x))`` into a product or fibered product.

    ``apex`` must come from :func:`product` or :func:`fibered_product` over the
    legs' targets, in order.
    """
    if not legs:
        raise ValueError("need at least one leg; use the unique map into the terminal pasture")
    source = legs[0].source
    index = {t: i for i, t in enumerate(apex.provenance) if t is not None}
    m = [ZERO] * source.size
    for x in source.units:
        t = tuple(leg.map[x] for leg in legs)
        if t not in index:
            raise MismatchError(f"{t} is not an element of {apex.name}")
        m[x] = index[t]
    return Morphism(source, apex, tuple(m), name=name)


def terminal_map(source: Pasture, terminal: Pasture) -> Morphism:
    """The map sending every unit to 1, valid whenever the target is terminal."""
    return Morphism(source, terminal, (ZERO,) + (ONE,) * (source.size - 1), name="!")
