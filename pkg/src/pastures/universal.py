"""Finite diagrams, generic limits and colimits, and a universal-property checker.

A diagram is a finite graph of pastures and morphisms; commutation is only
required along the listed arrows.  Limits are assembled as the equalizer of
two maps between products, colimits as the coequalizer of two maps between
coproducts.  The checker enumerates every (co)cone from a list of probe
pastures and counts mediating morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .colimits import coequalizer, copair, coproduct, fibered_coproduct, initial_map
from .core import MismatchError, Pasture, PastureError, standard_family
from .limits import (
    DEFAULT_CONSTRUCTION_LIMIT,
    equalizer,
    fibered_product,
    lift_into,
    product,
    terminal_map,
)
from .morphism import Morphism, compose, enumerate_homs, validate_morphism

Arrow = tuple[int, int, Morphism]


class AssemblyError(PastureError):
    """An internally built comparison map failed to be a morphism."""


class NonCommutingError(MismatchError):
    def __init__(self, arrow: int, message: str):
        super().__init__(message)
        self.arrow = arrow


@dataclass
class Diagram:
    objects: list[Pasture]
    arrows: list[Arrow] = field(default_factory=list)
    name: str = "D"

    def __post_init__(self) -> None:
        self.objects = list(self.objects)
        self.arrows = [tuple(a) for a in self.arrows]
        n = len(self.objects)
        for k, (s, t, m) in enumerate(self.arrows):
            if not (0 <= s < n and 0 <= t < n):
                raise MismatchError(f"arrow {k} refers to object {s} or {t}, have {n}")
            if m.source != self.objects[s] or m.target != self.objects[t]:
                raise MismatchError(
                    f"arrow {k} ({m.name}) does not run from object {s} to object {t}"
                )


@dataclass
class Cone:
    """Apex with one leg ``apex -> object`` per diagram object."""

    apex: Pasture
    legs: list[Morphism]


@dataclass
class Cocone:
    """Apex with one leg ``object -> apex`` per diagram object."""

    apex: Pasture
    legs: list[Morphism]


@dataclass
class ProbeRecord:
    probe: Pasture
    legs: tuple[Morphism, ...]
    count: int
    mediator: Optional[Morphism] = None

    def __str__(self) -> str:
        maps = " ".join(str(list(l.map)) for l in self.legs)
        return f"probe {self.probe.name} legs {maps}: {self.count} mediating"


@dataclass
class VerificationResult:
    records: list[ProbeRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.count == 1 for r in self.records)

    @property
    def failures(self) -> list[ProbeRecord]:
        return [r for r in self.records if r.count != 1]

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        probes = {id(r.probe) for r in self.records}
        head = "passed" if self.passed else "failed"
        lines = [f"{head}: {len(self.records)} probe (co)cones over {len(probes)} probes"]
        lines.extend(f"  FAIL {r}" for r in self.failures)
        return "\n".join(lines)


# diagram shapes


def discrete(objects: Sequence[Pasture]) -> Diagram:
    return Diagram(list(objects), [], name="discrete")


def parallel_pair(f: Morphism, g: Morphism) -> Diagram:
    return Diagram([f.source, f.target], [(0, 1, f), (0, 1, g)], name="parallel")


def pullback_diagram(f1: Morphism, f2: Morphism) -> Diagram:
    """Objects ``P1, P2, P`` with ``f1: P1 -> P`` and ``f2: P2 -> P``."""
    return Diagram([f1.source, f2.source, f1.target], [(0, 2, f1), (1, 2, f2)], name="pullback")


def pushout_diagram(f1: Morphism, f2: Morphism) -> Diagram:
    """Objects ``P, P1, P2`` with ``f1: P -> P1`` and ``f2: P -> P2``."""
    return Diagram([f1.source, f1.target, f2.target], [(0, 1, f1), (0, 2, f2)], name="pushout")


# the direct constructions, packaged as (co)cones over their diagrams


def equalizer_cone(f: Morphism, g: Morphism) -> tuple[Diagram, Cone]:
    Q, q = equalizer(f, g)
    return parallel_pair(f, g), Cone(Q, [q, compose(f, q)])


def fibered_product_cone(f1: Morphism, f2: Morphism, **kw) -> tuple[Diagram, Cone]:
    apex, p1, p2 = fibered_product(f1, f2, **kw)
    return pullback_diagram(f1, f2), Cone(apex, [p1, p2, compose(f1, p1)])


def product_cone(factors: Sequence[Pasture], **kw) -> tuple[Diagram, Cone]:
    apex, legs = product(factors, **kw)
    return discrete(factors), Cone(apex, legs)


def coequalizer_cocone(f: Morphism, g: Morphism) -> tuple[Diagram, Cocone]:
    Q, q = coequalizer(f, g)
    return parallel_pair(f, g), Cocone(Q, [compose(q, f), q])


def fibered_coproduct_cocone(f1: Morphism, f2: Morphism, **kw) -> tuple[Diagram, Cocone]:
    apex, i1, i2 = fibered_coproduct(f1, f2, **kw)
    return pushout_diagram(f1, f2), Cocone(apex, [compose(i1, f1), i1, i2])


def coproduct_cocone(summands: Sequence[Pasture], **kw) -> tuple[Diagram, Cocone]:
    apex, legs = coproduct(summands, **kw)
    return discrete(summands), Cocone(apex, legs)


# generic assembly


def _checked(m: Morphism, what: str) -> Morphism:
    rep = validate_morphism(m)
    if not rep.valid:
        raise AssemblyError(f"{what} is not a morphism: {rep}")
    return m


def limit(D: Diagram, max_size: int = DEFAULT_CONSTRUCTION_LIMIT) -> tuple[Pasture, Cone]:
    """Equalizer of ``prod objects ==> prod arrow-targets``.

    Per arrow ``m: s -> t`` one map is ``m o pi_s`` and the other ``pi_t``.
    """
    A, pis = product(D.objects, max_size=max_size)
    if D.arrows:
        B, _ = product([D.objects[t] for _, t, _ in D.arrows], max_size=max_size)
        phi = lift_into(B, [compose(m, pis[s]) for s, _, m in D.arrows], name="apply")
        psi = lift_into(B, [pis[t] for _, t, _ in D.arrows], name="project")
    else:
        B, _ = product([])
        phi = psi = terminal_map(A, B)
    _checked(phi, "apply")
    _checked(psi, "project")
    Q, q = equalizer(phi, psi)
    Q = Q.replace(name=f"lim_{D.name}")
    q = Morphism(Q, A, q.map, name="q")
    legs = [compose(pi, q) for pi in pis]
    legs = [Morphism(Q, l.target, l.map, name=f"leg{i}") for i, l in enumerate(legs)]
    return Q, Cone(Q, legs)


def colimit(D: Diagram, max_size: int = DEFAULT_CONSTRUCTION_LIMIT) -> tuple[Pasture, Cocone]:
    """Coequalizer of ``coprod arrow-sources ==> coprod objects``.

    Per arrow ``m: s -> t`` one map is ``i_t o m`` and the other ``i_s``.
    With no arrows the source is F1pm, the initial pasture.
    """
    if not D.objects:
        raise ValueError("colimit of an empty diagram is not supported")
    C, ins = coproduct(D.objects, max_size=max_size)
    if D.arrows:
        A, _ = coproduct([D.objects[s] for s, _, _ in D.arrows], max_size=max_size)
        phi = copair(A, [compose(ins[t], m) for _, t, m in D.arrows], name="apply")
        psi = copair(A, [ins[s] for s, _, _ in D.arrows], name="include")
    else:
        phi = psi = initial_map(C)
    _checked(phi, "apply")
    _checked(psi, "include")
    Q, q = coequalizer(phi, psi)
    Q = Q.replace(name=f"colim_{D.name}")
    q = Morphism(C, Q, q.map, name="q")
    legs = [compose(q, i) for i in ins]
    legs = [Morphism(l.source, Q, l.map, name=f"leg{i}") for i, l in enumerate(legs)]
    return Q, Cocone(Q, legs)


# verification


def cone_violations(D: Diagram, C: Cone) -> list[int]:
    """Indices of arrows ``m: s -> t`` with ``m o leg_s != leg_t``."""
    return [
        k
        for k, (s, t, m) in enumerate(D.arrows)
        if tuple(m.map[v] for v in C.legs[s].map) != C.legs[t].map
    ]


def cocone_violations(D: Diagram, C: Cocone) -> list[int]:
    """Indices of arrows ``m: s -> t`` with ``leg_t o m != leg_s``."""
    return [
        k
        for k, (s, t, m) in enumerate(D.arrows)
        if tuple(C.legs[t].map[v] for v in m.map) != C.legs[s].map
    ]


def _legs_ok(D: Diagram, C, dual: bool) -> None:
    if len(C.legs) != len(D.objects):
        raise MismatchError(f"{len(C.legs)} legs for {len(D.objects)} objects")
    bad = cocone_violations(D, C) if dual else cone_violations(D, C)
    if bad:
        k = bad[0]
        raise NonCommutingError(k, f"{'cocone' if dual else 'cone'} does not commute over arrow {k}")


def _assignments(D: Diagram, homs: list[list[Morphism]], dual: bool) -> Iterator[tuple[Morphism, ...]]:
    """Leg tuples, one per object, commuting with every arrow."""
    n = len(D.objects)
    checks: list[list[Arrow]] = [[] for _ in range(n)]
    for s, t, m in D.arrows:
        checks[max(s, t)].append((s, t, m))
    chosen: list[Morphism] = []

    def commutes(s: int, t: int, m: Morphism) -> bool:
        if dual:
            return tuple(chosen[t].map[v] for v in m.map) == chosen[s].map
        return tuple(m.map[v] for v in chosen[s].map) == chosen[t].map

    def rec(i: int) -> Iterator[tuple[Morphism, ...]]:
        if i == n:
            yield tuple(chosen)
            return
        for h in homs[i]:
            chosen.append(h)
            if all(commutes(s, t, m) for s, t, m in checks[i]):
                yield from rec(i + 1)
            chosen.pop()

    yield from rec(0)


def _index(mediators: list[Morphism], key) -> dict[tuple, list[Morphism]]:
    """Group candidate mediating maps by the leg maps their composites produce."""
    out: dict[tuple, list[Morphism]] = {}
    for u in mediators:
        out.setdefault(key(u), []).append(u)
    return out


def default_probes(D: Diagram) -> list[Pasture]:
    """The six standard pastures followed by the diagram's own objects (deduplicated)."""
    out: list[Pasture] = []
    for P in [*standard_family(), *D.objects]:
        if P not in out:
            out.append(P)
    return out


def check_limit_cone(
    D: Diagram, C: Cone, probes: Optional[Sequence[Pasture]] = None, max_size: Optional[int] = None
) -> VerificationResult:
    """For every cone from every probe, count the ``u: probe -> apex`` factoring it."""
    _legs_ok(D, C, dual=False)
    probes = default_probes(D) if probes is None else probes
    result = VerificationResult()
    for Qp in probes:
        homs = [enumerate_homs(Qp, X, max_size) for X in D.objects]
        cones = list(_assignments(D, homs, dual=False))
        if not cones:
            continue
        by_legs = _index(
            enumerate_homs(Qp, C.apex, max_size),
            lambda u: tuple(tuple(leg.map[v] for v in u.map) for leg in C.legs),
        )
        for cone in cones:
            hits = by_legs.get(tuple(pl.map for pl in cone), [])
            result.records.append(
                ProbeRecord(Qp, cone, len(hits), hits[0] if len(hits) == 1 else None)
            )
    return result


def check_colimit_cocone(
    D: Diagram, C: Cocone, probes: Optional[Sequence[Pasture]] = None, max_size: Optional[int] = None
) -> VerificationResult:
    """For every cocone into every probe, count the ``u: apex -> probe`` factoring it."""
    _legs_ok(D, C, dual=True)
    probes = default_probes(D) if probes is None else probes
    result = VerificationResult()
    for Qp in probes:
        homs = [enumerate_homs(X, Qp, max_size) for X in D.objects]
        cocones = list(_assignments(D, homs, dual=True))
        if not cocones:
            continue
        by_legs = _index(
            enumerate_homs(C.apex, Qp, max_size),
            lambda u: tuple(tuple(u.map[v] for v in leg.map) for leg in C.legs),
        )
        for cocone in cocones:
            hits = by_legs.get(tuple(pl.map for pl in cocone), [])
            result.records.append(
                ProbeRecord(Qp, cocone, len(hits), hits[0] if len(hits) == 1 else None)
            )
    return result
