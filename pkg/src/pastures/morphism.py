"""Morphisms of pastures, hom-set enumeration and isomorphism search."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .core import (
    ONE,
    ZERO,
    CapacityError,
    MismatchError,
    Pasture,
    StructureError,
    ValidationReport,
    sort3,
)

DEFAULT_MAX_SIZE = 16


@dataclass(frozen=True)
class Morphism:
    source: Pasture
    target: Pasture
    map: tuple[int, ...]
    name: str = field(default="f", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.source.size:
            raise StructureError(
                f"map has {len(self.map)} entries but source has {self.source.size} elements"
            )
        for x, y in enumerate(self.map):
            if not (isinstance(y, int) and 0 <= y < self.target.size):
                raise StructureError(f"image of {x} is {y!r}, out of range for target")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self) -> str:
        return f"Morphism({self.name!r}: {self.source.name} -> {self.target.name}, {self.map})"


def validate_morphism(m: Morphism) -> ValidationReport:
    rep = ValidationReport()
    P, Q, f = m.source, m.target, m.map
    if f[0] != ZERO:
        rep.add("zero", (0,), f"f(0) = {f[0]}")
    if f[1] != ONE:
        rep.add("one", (1,), f"f(1) = {f[1]}")
    for u in P.units:
        if f[u] == ZERO:
            rep.add("units", (u,), "unit sent to zero")
    for x in P.units:
        for y in P.units:
            if f[P.mul[x][y]] != Q.mul[f[x]][f[y]]:
                rep.add("multiplicative", (x, y))
    for x in P.elements:
        if f[P.neg[x]] != Q.neg[f[x]]:
            rep.add("involution", (x,), f"f(-x) = {f[P.neg[x]]}, -f(x) = {Q.neg[f[x]]}")
    for t in sorted(P.nullset):
        img = sort3(f[t[0]], f[t[1]], f[t[2]])
        if img not in Q.nullset:
            rep.add("nullset", t, f"image {img} not null")
    return rep


def identity(P: Pasture) -> Morphism:
    return Morphism(P, P, tuple(P.elements), name=f"id_{P.name}")


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f``: apply f first."""
    if f.target is not g.source and f.target != g.source:
        raise MismatchError(
            f"cannot compose {g.name} o {f.name}: {f.target.name} is not {g.source.name}"
        )
    return Morphism(f.source, g.target, tuple(g.map[y] for y in f.map), name=f"{g.name}.{f.name}")


def _preserves_structure(P: Pasture, Q: Pasture, f: Sequence[int]) -> bool:
    neg_p, neg_q = P.neg, Q.neg
    for x in P.elements:
        if f[neg_p[x]] != neg_q[f[x]]:
            return False
    NQ = Q.nullset
    for a, b, c in P.nullset:
        if sort3(f[a], f[b], f[c]) not in NQ:
            return False
    mp, mq = P.mul, Q.mul
    for x in P.units:
        for y in P.units:
            if f[mp[x][y]] != mq[f[x]][f[y]]:
                return False
    return True


def _stages(P: Pasture) -> list[tuple[int, int, int, list[tuple[int, int, int]]]]:
    """Per generator g: (g, m, g^m, [(element, s, k)]) where element = s * g^k, s in the prior span."""
    stages = []
    span = [ONE]
    seen = {ONE}
    for g in P.generators:
        m, r = 1, g
        while r not in seen:
            r = P.mul[r][g]
            m += 1
        new = []
        for s in span:
            gk = ONE
            for k in range(1, m):
                gk = P.mul[gk][g]
                new.append((P.mul[s][gk], s, k))
        stages.append((g, m, r, new))
        for e, _, _ in new:
            seen.add(e)
        span = span + [e for e, _, _ in new]
    return stages


def _unit_maps(P: Pasture, Q: Pasture, injective: bool = False) -> Iterator[list[int]]:
    """Unit-group homomorphisms P^x -> Q^x as full maps with 0 -> 0.

    Partial maps that already break negation or a null triple are cut early.
    """
    stages = _stages(P)
    img = [0] * P.size
    img[ONE] = ONE
    neg1_p = P.neg[ONE]
    neg1_q = Q.neg[ONE]
    q_units = list(Q.units)
    top = max((m for _, m, _, _ in stages), default=1)
    pw = {}
    for h in q_units:
        row = [ONE]
        for _ in range(top):
            row.append(Q.mul[row[-1]][h])
        pw[h] = row
    # per stage: h grouped by h^m, so only images with the forced m-th power are tried
    roots = []
    for _, m, _, _ in stages:
        by_power: dict[int, list[int]] = {}
        for h in q_units:
            by_power.setdefault(pw[h][m], []).append(h)
        roots.append(by_power)

    used = {ONE}

    # null triples and negation pairs become checkable once their last element is assigned
    stage_of = {ZERO: -1, ONE: -1}
    for i, (_, _, _, new) in enumerate(stages):
        for e, _, _ in new:
            stage_of[e] = i
    triples = [[] for _ in stages]
    for t in P.nullset:
        last = max(stage_of[x] for x in t)
        if last >= 0:
            triples[last].append(t)
    negs = [[] for _ in stages]
    for x in P.units:
        last = max(stage_of[x], stage_of[P.neg[x]])
        if last >= 0:
            negs[last].append(x)
    NQ, neg_p, neg_q = Q.nullset, P.neg, Q.neg

    def rec(i: int) -> Iterator[list[int]]:
        if i == len(stages):
            yield list(img)
            return
        _, m, gm, new = stages[i]
        for h in roots[i].get(img[gm], ()):
            row = pw[h]
            ok = True
            added = []
            for e, s, k in new:
                v = Q.mul[img[s]][row[k]]
                if injective and v in used:
                    ok = False
                    break
                img[e] = v
                if injective:
                    used.add(v)
                    added.append(v)
                if e == neg1_p and v != neg1_q:
                    ok = False
                    break
            if ok:
                ok = all(img[neg_p[x]] == neg_q[img[x]] for x in negs[i]) and all(
                    sort3(img[a], img[b], img[c]) in NQ for a, b, c in triples[i]
                )
            if ok:
                yield from rec(i + 1)
            for v in added:
                used.discard(v)

    yield from rec(0)


def _check_bound(P: Pasture, max_size: Optional[int]) -> None:
    bound = DEFAULT_MAX_SIZE if max_size is None else max_size
    if P.size > bound:
        raise CapacityError(
            f"hom enumeration from {P.name} ({P.size} elements) exceeds bound {bound}"
        )


def enumerate_homs(P: Pasture, Q: Pasture, max_size: Optional[int] = None) -> list[Morphism]:
    """All morphisms ``P -> Q``, sorted lexicographically by map array.

    Unit-group homomorphisms are built by assigning images to the greedy
    generators of ``P^x``; candidates are then filtered on the involution and
    the nullset.
    """
    _check_bound(P, max_size)
    maps = [tuple(f) for f in _unit_maps(P, Q) if _preserves_structure(P, Q, f)]
    maps.sort()
    return [Morphism(P, Q, f, name=f"{P.name}->{Q.name}.{i}") for i, f in enumerate(maps)]


def is_isomorphic(
    P: Pasture, Q: Pasture, max_size: Optional[int] = None
) -> Optional[tuple[Morphism, Morphism]]:
    """A mutually inverse pair ``(P -> Q, Q -> P)``, or None.

    The forward map must send the nullset of P exactly onto that of Q.
    Among all isomorphisms the lexicographically first map is returned.
    """
    _check_bound(P, max_size)
    if P.size != Q.size or len(P.nullset) != len(Q.nullset):
        return None
    found = []
    NQ = Q.nullset
    for f in _unit_maps(P, Q, injective=True):
        if not _preserves_structure(P, Q, f):
            continue
        image = {sort3(f[a], f[b], f[c]) for a, b, c in P.nullset}
        if image == NQ:
            found.append(tuple(f))
    if not found:
        return None
    f = min(found)
    g = [0] * Q.size
    for x, y in enumerate(f):
        g[y] = x
    fwd = Morphism(P, Q, f, name=f"iso_{P.name}_{Q.name}")
    back = Morphism(Q, P, tuple(g), name=f"iso_{Q.name}_{P.name}")
    return fwd, back
