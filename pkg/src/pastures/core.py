"""Finite pastures: the data type, its axiom checker and the standard examples.

Elements are dense indices ``0..n-1``; index 0 is zero and index 1 is the
multiplicative identity.  The nullset is stored as a set of sorted triples, so
invariance under permutations holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Any, Iterable, Optional, Sequence

ZERO = 0
ONE = 1

Triple = tuple[int, int, int]


class PastureError(Exception):
    """Base class for errors raised by this package."""


class StructureError(PastureError, ValueError):
    """Tables are not total, or an index is out of range.

    This is distinct from an axiom violation: a structurally broken object
    cannot even be checked.
    """


class CapacityError(PastureError):
    """A size or enumeration bound would be exceeded."""


class MismatchError(PastureError, ValueError):
    """Morphism endpoints do not line up for the requested operation."""


def sort3(a: int, b: int, c: int) -> Triple:
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
        if a > b:
            a, b = b, a
    return (a, b, c)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    message: str = ""

    def __str__(self) -> str:
        w = " ".join(map(str, self.witness))
        return f"{self.axiom} [{w}] {self.message}".rstrip()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def add(self, axiom: str, witness: Iterable[int], message: str = "") -> None:
        self.violations.append(Violation(axiom, tuple(witness), message))

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        lines = [f"invalid ({len(self.violations)} violations)"]
        lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)


@dataclass(frozen=True, eq=True)
class Pasture:
    """A finite pasture given by tables.

    ``mul`` is the full ``n x n`` multiplication table (row and column 0 are
    zero); ``neg`` is the involution; ``nullset`` holds sorted triples.
    ``name``, ``labels`` and ``provenance`` are diagnostic only and take no
    part in equality.
    """

    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    nullset: frozenset[Triple]
    name: str = field(default="P", compare=False)
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)
    provenance: Optional[tuple[Any, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.mul)
        if n < 2:
            raise StructureError(f"a pasture needs at least 2 elements, got {n}")
        for i, row in enumerate(self.mul):
            if len(row) != n:
                raise StructureError(f"multiplication row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if not (isinstance(v, int) and 0 <= v < n):
                    raise StructureError(f"product {i}*{j} = {v!r} out of range")
        for x in range(n):
            if self.mul[0][x] != 0 or self.mul[x][0] != 0:
                raise StructureError(f"zero is not absorbing at {x}")
        if len(self.neg) != n:
            raise StructureError(f"involution has {len(self.neg)} entries, expected {n}")
        for x, v in enumerate(self.neg):
            if not (isinstance(v, int) and 0 <= v < n):
                raise StructureError(f"neg({x}) = {v!r} out of range")
        for t in self.nullset:
            if len(t) != 3 or not all(isinstance(v, int) and 0 <= v < n for v in t):
                raise StructureError(f"null triple {t!r} out of range")
            if tuple(sorted(t)) != tuple(t):
                raise StructureError(f"null triple {t!r} is not sorted")
        if self.labels is not None and len(self.labels) != n:
            raise StructureError(f"{len(self.labels)} labels for {n} elements")

    @classmethod
    def from_tables(
        cls,
        unit_mul: Sequence[Sequence[int]],
        neg: Sequence[int],
        nullset: Iterable[Sequence[int]],
        name: str = "P",
        labels: Optional[Sequence[str]] = None,
        provenance: Optional[Sequence[Any]] = None,
    ) -> "Pasture":
        """Build from a unit table: ``unit_mul[i-1][j-1]`` is the product of units ``i, j``."""
        n = len(unit_mul) + 1
        mul = [[0] * n]
        for i, row in enumerate(unit_mul, start=1):
            if len(row) != n - 1:
                raise StructureError(f"unit row {i} has {len(row)} entries, expected {n - 1}")
            mul.append([0, *row])
        return cls(
            mul=tuple(tuple(r) for r in mul),
            neg=tuple(neg),
            nullset=frozenset(sort3(*t) for t in nullset),
            name=name,
            labels=tuple(labels) if labels is not None else None,
            provenance=tuple(provenance) if provenance is not None else None,
        )

    def replace(self, **changes: Any) -> "Pasture":
        kw = dict(
            mul=self.mul, neg=self.neg, nullset=self.nullset,
            name=self.name, labels=self.labels, provenance=self.provenance,
        )
        kw.update(changes)
        return Pasture(**kw)

    @property
    def size(self) -> int:
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def units(self) -> range:
        return range(1, self.size)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def is_null(self, a: int, b: int, c: int) -> bool:
        return sort3(a, b, c) in self.nullset

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        """``inverse[u]`` for units; 0 where no inverse exists."""
        inv = [0] * self.size
        for u in self.units:
            for v in self.units:
                if self.mul[u][v] == ONE:
                    inv[u] = v
                    break
        return tuple(inv)

    @cached_property
    def unit_triples(self) -> frozenset[Triple]:
        """Null triples with no zero entry."""
        return frozenset(t for t in self.nullset if t[0] != ZERO)

    def power(self, x: int, k: int) -> int:
        r = ONE
        for _ in range(k):
            r = self.mul[r][x]
        return r

    def order(self, u: int) -> int:
        """Multiplicative order of a unit."""
        k, r = 1, u
        while r != ONE:
            r = self.mul[r][u]
            k += 1
            if k > self.size:
                raise PastureError(f"element {u} has no finite order; unit group is broken")
        return k

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set of the unit group: smallest unit not yet generated."""
        gens: list[int] = []
        span = {ONE}
        for u in self.units:
            if u in span:
                continue
            gens.append(u)
            span = _closure(self, span, u)
        return tuple(gens)

    def __repr__(self) -> str:
        return f"Pasture({self.name!r}, size={self.size}, |N|={len(self.nullset)})"


def _closure(P: Pasture, span: set[int], g: int) -> set[int]:
    out = set(span)
    frontier = list(span)
    while frontier:
        nxt = []
        for s in frontier:
            t = P.mul[s][g]
            if t not in out:
                out.add(t)
                nxt.append(t)
        frontier = nxt
    return out


def zero_triples(neg: Sequence[int]) -> set[Triple]:
    """The triples forced by the zero law: ``(0,0,0)`` and ``(0, x, -x)`` for units x."""
    out = {(0, 0, 0)}
    for x in range(1, len(neg)):
        out.add(sort3(0, x, neg[x]))
    return out


def validate_pasture(P: Pasture) -> ValidationReport:
    """Check the group, involution and nullset axioms, collecting every violation."""
    rep = ValidationReport()
    n = P.size
    mul, neg = P.mul, P.neg
    units = P.units

    for x in P.elements:
        if mul[1][x] != x or mul[x][1] != x:
            rep.add("identity", (x,), "1 is not neutral")
    for a in units:
        for b in units:
            if mul[a][b] == ZERO:
                rep.add("unit-closure", (a, b), "product of units is zero")
            if b > a and mul[a][b] != mul[b][a]:
                rep.add("commutativity", (a, b))
    for a in units:
        for b in units:
            ab = mul[a][b]
            for c in units:
                if mul[ab][c] != mul[a][mul[b][c]]:
                    rep.add("associativity", (a, b, c))
    for u in units:
        if P.inverse[u] == ZERO:
            rep.add("inverse", (u,), "unit has no inverse")

    if neg[0] != 0:
        rep.add("neg-zero", (0,), f"-0 = {neg[0]}")
    for x in P.elements:
        if neg[neg[x]] != x:
            rep.add("neg-involution", (x,), f"--{x} = {neg[neg[x]]}")
    for u in units:
        if neg[u] == ZERO:
            rep.add("neg-units", (u,), "-u is zero")

    N = P.nullset
    for t in sorted(N):
        for d in units:
            img = sort3(mul[d][t[0]], mul[d][t[1]], mul[d][t[2]])
            if img not in N:
                rep.add("null-multiplication", (*t, d), f"missing {img}")

    if (0, 0, 0) not in N:
        rep.add("null-zero", (0, 0, 0), "0+0+0=0 is required")
    for u in units:
        if (0, 0, u) in N:
            rep.add("null-zero", (0, 0, u), "0+0+u=0 with u a unit")
    for a in units:
        for b in units:
            if b < a:
                continue
            present = (0, a, b) in N
            if present and neg[b] != a:
                rep.add("null-zero", (a, b), "a+b+0=0 but a != -b")
            elif not present and neg[b] == a:
                rep.add("null-zero", (a, b), "a = -b but a+b+0=0 is missing")
    return rep


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def from_prime_field(p: int, bound: int = 13) -> Pasture:
    """The field F_p as a pasture: ``a+b+c=0`` iff it holds mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > bound:
        raise CapacityError(f"p = {p} exceeds bound {bound}")
    unit_mul = [[(i * j) % p for j in range(1, p)] for i in range(1, p)]
    neg = [(-x) % p for x in range(p)]
    null = [t for t in combinations_with_replacement(range(p), 3) if sum(t) % p == 0]
    return Pasture.from_tables(unit_mul, neg, null, name=f"F{p}")


def krasner() -> Pasture:
    return Pasture.from_tables(
        [[1]], [0, 1], [(0, 0, 0), (0, 1, 1), (1, 1, 1)], name="K", labels=("0", "1"),
    )


def sign_hyperfield() -> Pasture:
    # index 2 is -1
    return Pasture.from_tables(
        [[1, 2], [2, 1]],
        [0, 2, 1],
        [(0, 0, 0), (0, 1, 2), (1, 1, 2), (1, 2, 2)],
        name="S",
        labels=("0", "1", "-1"),
    )


def f1pm() -> Pasture:
    return Pasture.from_tables(
        [[1, 2], [2, 1]], [0, 2, 1], [(0, 0, 0), (0, 1, 2)], name="F1pm", labels=("0", "1", "-1"),
    )


def standard_family() -> list[Pasture]:
    """F1±, K, S, F2, F3, F5 in that order."""
    return [f1pm(), krasner(), sign_hyperfield(), from_prime_field(2), from_prime_field(3), from_prime_field(5)]


def builtin(name: str) -> Pasture:
    """Look up a standard pasture by name (``F1pm``, ``K``, ``S`` or ``F<p>``)."""
    table = {"F1pm": f1pm, "K": krasner, "S": sign_hyperfield}
    if name in table:
        return table[name]()
    if name.startswith("F") and name[1:].isdigit():
        return from_prime_field(int(name[1:]))
    raise KeyError(name)
