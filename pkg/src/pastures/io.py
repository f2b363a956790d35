"""Line-based text documents for pastures, morphisms and diagrams.

A file holds any number of documents, each opened by a header line::

    pasture <name> <n>          morphism <name> <src> <dst>     diagram <name>
    names <t0> ... <tn-1>       map <i> <j>                     object <pasture>
    mul <i> <j> <k>                                             arrow <s> <t> <morphism>
    neg <i> <j>
    null <i> <j> <k>

``#`` starts a comment.  Element tokens are digit strings (indices) or
names from the pasture's ``names`` line.  Parsing only checks structure; axioms are checked
separately by :func:`pastures.core.validate_pasture`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .core import Pasture, PastureError, StructureError, builtin, sort3
from .morphism import Morphism
from .universal import Diagram

HEADERS = ("pasture", "morphism", "diagram")
BODY = {
    "pasture": {"names", "mul", "neg", "null"},
    "morphism": {"map"},
    "diagram": {"object", "arrow"},
}


class ParseError(PastureError, ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None, source: str = "<text>"):
        self.lineno = lineno
        self.source = source
        where = f"{source}:{lineno}: " if lineno is not None else f"{source}: "
        super().__init__(where + message)


@dataclass
class RawDocument:
    kind: str
    header: list[str]
    lineno: int
    source: str
    lines: list[tuple[int, list[str]]] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.header[0]

    def error(self, message: str, lineno: Optional[int] = None) -> ParseError:
        return ParseError(message, self.lineno if lineno is None else lineno, self.source)


def split_documents(text: str, source: str = "<text>") -> list[RawDocument]:
    docs: list[RawDocument] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        word, args = tokens[0], tokens[1:]
        if word in HEADERS:
            arity = {"pasture": 2, "morphism": 3, "diagram": 1}[word]
            if len(args) != arity:
                raise ParseError(f"'{word}' header takes {arity} arguments", lineno, source)
            docs.append(RawDocument(word, args, lineno, source))
        elif not docs:
            raise ParseError(f"'{word}' before any document header", lineno, source)
        elif word not in BODY[docs[-1].kind]:
            raise ParseError(f"unknown keyword '{word}' in {docs[-1].kind} document", lineno, source)
        else:
            docs[-1].lines.append((lineno, tokens))
    return docs


def _element(doc: RawDocument, lineno: int, token: str, n: int, names: dict[str, int]) -> int:
    if not token.isdigit():
        if token not in names:
            raise doc.error(f"unknown element '{token}'", lineno)
        return names[token]
    x = int(token)
    if not 0 <= x < n:
        raise doc.error(f"element {x} out of range for {n} elements", lineno)
    return x


def _names(labels: Optional[tuple[str, ...]]) -> dict[str, int]:
    return {} if labels is None else {t: i for i, t in enumerate(labels)}


def _build_pasture(doc: RawDocument) -> Pasture:
    name, count = doc.header
    try:
        n = int(count)
    except ValueError:
        raise doc.error(f"element count '{count}' is not an integer") from None
    if n < 2:
        raise doc.error("a pasture needs at least 2 elements")
    labels: Optional[tuple[str, ...]] = None
    for lineno, tokens in doc.lines:
        if tokens[0] == "names":
            if labels is not None:
                raise doc.error("duplicate names line", lineno)
            if len(tokens) - 1 != n:
                raise doc.error(f"names line has {len(tokens) - 1} entries, expected {n}", lineno)
            labels = tuple(tokens[1:])
            if len(set(labels)) != n:
                raise doc.error("names are not distinct", lineno)
    names = _names(labels)

    mul: dict[tuple[int, int], int] = {}
    neg: dict[int, int] = {}
    null: set[tuple[int, int, int]] = set()
    for lineno, tokens in doc.lines:
        word, args = tokens[0], tokens[1:]
        if word == "names":
            continue
        arity = {"mul": 3, "neg": 2, "null": 3}[word]
        if len(args) != arity:
            raise doc.error(f"'{word}' takes {arity} arguments", lineno)
        xs = [_element(doc, lineno, a, n, names) for a in args]
        if word == "mul":
            i, j, k = xs
            if i == 0 or j == 0:
                raise doc.error("mul lines are for units only", lineno)
            key = (min(i, j), max(i, j))
            if key in mul:
                raise doc.error(f"duplicate mul entry for {key[0]} {key[1]}", lineno)
            mul[key] = k
        elif word == "neg":
            i, j = xs
            if i in neg:
                raise doc.error(f"duplicate neg entry for {i}", lineno)
            neg[i] = j
        else:
            t = sort3(*xs)
            if t in null:
                raise doc.error(f"duplicate null triple {t}", lineno)
            null.add(t)

    missing = [(i, j) for i in range(1, n) for j in range(i, n) if (i, j) not in mul]
    if missing:
        raise doc.error(f"missing mul entries, first {missing[0][0]} {missing[0][1]}")
    missing_neg = [i for i in range(n) if i not in neg]
    if missing_neg:
        raise doc.error(f"missing neg entry for {missing_neg[0]}")
    table = [[0] * n for _ in range(n)]
    for (i, j), k in mul.items():
        table[i][j] = table[j][i] = k
    try:
        return Pasture(
            mul=tuple(map(tuple, table)),
            neg=tuple(neg[i] for i in range(n)),
            nullset=frozenset(null),
            name=name,
            labels=labels,
        )
    except StructureError as e:
        raise doc.error(str(e)) from None


def _build_morphism(doc: RawDocument, P: Pasture, Q: Pasture) -> Morphism:
    name = doc.header[0]
    src_names, dst_names = _names(P.labels), _names(Q.labels)
    image: dict[int, int] = {}
    for lineno, tokens in doc.lines:
        if len(tokens) != 3:
            raise doc.error("'map' takes 2 arguments", lineno)
        x = _element(doc, lineno, tokens[1], P.size, src_names)
        y = _element(doc, lineno, tokens[2], Q.size, dst_names)
        if x in image:
            raise doc.error(f"duplicate map entry for {x}", lineno)
        image[x] = y
    missing = [x for x in P.elements if x not in image]
    if missing:
        raise doc.error(f"map is missing element {missing[0]}")
    return Morphism(P, Q, tuple(image[x] for x in P.elements), name=name)


class Library:
    """Named pastures, morphisms and diagrams, loaded from any number of texts.

    Names resolve across everything loaded, falling back to the built-in
    standard pastures (``F1pm``, ``K``, ``S``, ``F<p>``).
    """

    def __init__(self) -> None:
        self.pastures: dict[str, Pasture] = {}
        self.morphisms: dict[str, Morphism] = {}
        self.diagrams: dict[str, Diagram] = {}
        self._pending: list[RawDocument] = []

    def add_text(self, text: str, source: str = "<text>") -> list[RawDocument]:
        docs = split_documents(text, source)
        for d in docs:
            if d.kind == "pasture":
                if d.name in self.pastures:
                    raise d.error(f"pasture '{d.name}' defined twice")
                self.pastures[d.name] = _build_pasture(d)
            else:
                self._pending.append(d)
        return docs

    def add_file(self, path: Union[str, os.PathLike]) -> list[RawDocument]:
        with open(path, encoding="utf-8") as fh:
            return self.add_text(fh.read(), source=str(path))

    def add(self, obj: Union[Pasture, Morphism, Diagram]) -> None:
        if isinstance(obj, Pasture):
            self.pastures[obj.name] = obj
        elif isinstance(obj, Morphism):
            self.morphisms[obj.name] = obj
        else:
            self.diagrams[obj.name] = obj

    def resolve(self) -> None:
        """Build pending morphisms, then diagrams.  Call after all texts are added."""
        pending, self._pending = self._pending, []
        for d in [d for d in pending if d.kind == "morphism"]:
            if d.name in self.morphisms:
                raise d.error(f"morphism '{d.name}' defined twice")
            _, src, dst = d.header
            self.morphisms[d.name] = _build_morphism(d, self._pasture(d, src), self._pasture(d, dst))
        for d in [d for d in pending if d.kind == "diagram"]:
            if d.name in self.diagrams:
                raise d.error(f"diagram '{d.name}' defined twice")
            self.diagrams[d.name] = self._build_diagram(d)

    def pasture(self, name: str) -> Pasture:
        if name in self.pastures:
            return self.pastures[name]
        try:
            return builtin(name)
        except (KeyError, ValueError):
            raise KeyError(f"unknown pasture '{name}'") from None

    def _pasture(self, doc: RawDocument, name: str) -> Pasture:
        try:
            return self.pasture(name)
        except KeyError as e:
            raise doc.error(e.args[0]) from None

    def _build_diagram(self, doc: RawDocument) -> Diagram:
        objects: list[Pasture] = []
        arrows = []
        for lineno, tokens in doc.lines:
            if tokens[0] == "object":
                if len(tokens) != 2:
                    raise doc.error("'object' takes 1 argument", lineno)
                objects.append(self._pasture(doc, tokens[1]))
            else:
                if len(tokens) != 4:
                    raise doc.error("'arrow' takes 3 arguments", lineno)
                try:
                    s, t = int(tokens[1]), int(tokens[2])
                except ValueError:
                    raise doc.error("arrow endpoints must be object indices", lineno) from None
                if tokens[3] not in self.morphisms:
                    raise doc.error(f"unknown morphism '{tokens[3]}'", lineno)
                arrows.append((s, t, self.morphisms[tokens[3]]))
        try:
            return Diagram(objects, arrows, name=doc.name)
        except PastureError as e:
            raise doc.error(str(e)) from None


def _single(text: str, kind: str, lib: Optional[Library] = None):
    lib = lib if lib is not None else Library()
    docs = lib.add_text(text)
    lib.resolve()
    wanted = [d for d in docs if d.kind == kind]
    if len(wanted) != 1:
        raise ParseError(f"expected exactly one {kind} document, found {len(wanted)}")
    table = {"pasture": lib.pastures, "morphism": lib.morphisms, "diagram": lib.diagrams}[kind]
    return table[wanted[0].name]


def parse_pasture(text: str) -> Pasture:
    return _single(text, "pasture")


def parse_morphism(text: str, lib: Optional[Library] = None) -> Morphism:
    """Parse one morphism; its endpoints resolve in ``lib``, the text itself, or the built-ins."""
    return _single(text, "morphism", lib)


def parse_diagram(text: str, lib: Optional[Library] = None) -> Diagram:
    return _single(text, "diagram", lib)


def parse_all(text: str, lib: Optional[Library] = None) -> list[Union[Pasture, Morphism, Diagram]]:
    """Every document in ``text``, built and returned in document order."""
    lib = lib if lib is not None else Library()
    docs = lib.add_text(text)
    lib.resolve()
    table = {"pasture": lib.pastures, "morphism": lib.morphisms, "diagram": lib.diagrams}
    return [table[d.kind][d.name] for d in docs]


def _token(name: str) -> str:
    """``name`` made safe for a single token: no whitespace, no comment marker."""
    out = "".join("_" if c.isspace() or c == "#" else c for c in name)
    return out or "_"


def serialize_pasture(P: Pasture) -> str:
    lines = [f"pasture {_token(P.name)} {P.size}"]
    if P.labels is not None:
        lines.append("names " + " ".join(map(_token, P.labels)))
    for i in P.units:
        for j in range(i, P.size):
            lines.append(f"mul {i} {j} {P.mul[i][j]}")
    lines.extend(f"neg {x} {P.neg[x]}" for x in P.elements)
    lines.extend(f"null {a} {b} {c}" for a, b, c in sorted(P.nullset))
    return "\n".join(lines) + "\n"


def serialize_morphism(m: Morphism) -> str:
    lines = [f"morphism {_token(m.name)} {_token(m.source.name)} {_token(m.target.name)}"]
    lines.extend(f"map {x} {y}" for x, y in enumerate(m.map))
    return "\n".join(lines) + "\n"


def serialize_diagram(D: Diagram) -> str:
    lines = [f"diagram {_token(D.name)}"]
    lines.extend(f"object {_token(P.name)}" for P in D.objects)
    lines.extend(f"arrow {s} {t} {_token(m.name)}" for s, t, m in D.arrows)
    return "\n".join(lines) + "\n"


def serialize(obj: Union[Pasture, Morphism, Diagram]) -> str:
    if isinstance(obj, Pasture):
        return serialize_pasture(obj)
    if isinstance(obj, Morphism):
        return serialize_morphism(obj)
    return serialize_diagram(obj)


def serialize_all(objs: Iterable[Union[Pasture, Morphism, Diagram]]) -> str:
    return "\n".join(serialize(o) for o in objs)


def canonical(text: str) -> str:
    """Normalize ``text`` line by line, without building any pasture.

    Comments and blank lines go, whitespace collapses, names become indices,
    ``mul`` keys and ``null`` triples are sorted, and body lines are ordered
    the way the serializer emits them.  Documents keep their order.
    """
    docs = split_documents(text)
    labels: dict[str, dict[str, int]] = {}
    for d in docs:
        if d.kind == "pasture":
            names = [t for _, t in d.lines if t[0] == "names"]
            labels[d.name] = {x: i for i, x in enumerate(names[0][1:])} if names else {}

    def names_of(pasture: str) -> dict[str, int]:
        if pasture in labels:
            return labels[pasture]
        try:
            return _names(builtin(pasture).labels)
        except (KeyError, ValueError):
            return {}

    def index(token: str, names: dict[str, int]) -> int:
        return int(token) if token.isdigit() else names[token]

    out = []
    for d in docs:
        lines = [" ".join([d.kind, *d.header])]
        if d.kind == "pasture":
            nm = labels[d.name]
            body = {"names": [], "mul": [], "neg": [], "null": []}
            for _, t in d.lines:
                if t[0] == "names":
                    body["names"].append(tuple(t[1:]))
                    continue
                xs = [index(a, nm) for a in t[1:]]
                if t[0] == "mul":
                    xs = [min(xs[:2]), max(xs[:2]), xs[2]]
                elif t[0] == "null":
                    xs = sorted(xs)
                body[t[0]].append(tuple(xs))
            lines += ["names " + " ".join(x) for x in body["names"]]
            for word in ("mul", "neg", "null"):
                lines += [f"{word} " + " ".join(map(str, x)) for x in sorted(set(body[word]))]
        elif d.kind == "morphism":
            src, dst = names_of(d.header[1]), names_of(d.header[2])
            pairs = sorted({(index(t[1], src), index(t[2], dst)) for _, t in d.lines})
            lines += [f"map {x} {y}" for x, y in pairs]
        else:
            lines += [" ".join(t) for _, t in d.lines if t[0] == "object"]
            lines += [" ".join(t) for _, t in d.lines if t[0] == "arrow"]
        out.append("\n".join(lines) + "\n")
    return "\n".join(out)
