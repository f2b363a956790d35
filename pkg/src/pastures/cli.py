"""Command-line interface: ``pastures <subcommand> ...``.

Exit status is 0 on success (valid, isomorphic, passed), 1 when a check
fails, and 2 on usage, input or capacity errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import io
from .colimits import coequalizer, coproduct, fibered_coproduct
from .core import CapacityError, Pasture, PastureError, validate_pasture
from .limits import equalizer, fibered_product, product
from .morphism import DEFAULT_MAX_SIZE, Morphism, enumerate_homs, is_isomorphic, validate_morphism
from .universal import (
    Cocone,
    Cone,
    Diagram,
    check_colimit_cocone,
    check_limit_cone,
    colimit,
    default_probes,
    limit,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Context:
    """Loads every file named on the command line into one library, then resolves references."""

    def __init__(self, args: argparse.Namespace):
        self.lib = io.Library()
        self.docs: dict[str, list[io.RawDocument]] = {}
        self.max_size = args.max_size
        paths = list(getattr(args, "lib", None) or [])
        for attr in ("files", "left", "right", "base", "f", "g", "diagram", "apex", "legs", "probes"):
            v = getattr(args, attr, None)
            if v is None:
                continue
            paths.extend(v if isinstance(v, list) else [v])
        for p in paths:
            if os.path.isfile(p) and p not in self.docs:
                self.docs[p] = self.lib.add_file(p)
        self.lib.resolve()

    def _pick(self, ref: str, kind: str):
        table = {"pasture": self.lib.pastures, "morphism": self.lib.morphisms, "diagram": self.lib.diagrams}[kind]
        if ref in self.docs:
            names = [d.name for d in self.docs[ref] if d.kind == kind]
            if not names:
                raise UsageError(f"{ref} holds no {kind} document")
            return table[names[0]]
        if kind == "pasture":
            try:
                return self.lib.pasture(ref)
            except KeyError:
                pass
        elif ref in table:
            return table[ref]
        raise UsageError(f"cannot find {kind} '{ref}' (not a file or a known name)")

    def pasture(self, ref: str) -> Pasture:
        return self._pick(ref, "pasture")

    def morphism(self, ref: str) -> Morphism:
        return self._pick(ref, "morphism")

    def diagram(self, ref: str) -> Diagram:
        return self._pick(ref, "diagram")

    def all_of(self, ref: str) -> list:
        """Every document in file ``ref`` in order, or the single pasture it names."""
        if ref not in self.docs:
            return [self.pasture(ref)]
        tables = {"pasture": self.lib.pastures, "morphism": self.lib.morphisms, "diagram": self.lib.diagrams}
        return [tables[d.kind][d.name] for d in self.docs[ref]]


def _emit(args: argparse.Namespace, objs: Sequence, summary: Sequence[str]) -> None:
    text = io.serialize_all(objs)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for line in summary:
        print(f"# {line}")


def _revalidate(apex: Pasture, legs: Sequence[Morphism]) -> int:
    bad = False
    rep = validate_pasture(apex)
    if not rep.valid:
        print(f"error: constructed {apex.name} is not a pasture:\n{rep}", file=sys.stderr)
        bad = True
    for leg in legs:
        r = validate_morphism(leg)
        if not r.valid:
            print(f"error: leg {leg.name} is not a morphism:\n{r}", file=sys.stderr)
            bad = True
    return EXIT_FAILED if bad else EXIT_OK


def _construction(args, apex: Pasture, legs: Sequence[Morphism], what: str) -> int:
    status = _revalidate(apex, legs)
    if status != EXIT_OK:
        return status
    _emit(args, [apex, *legs], [f"{what}: {apex.size} elements, {len(apex.nullset)} null triples, valid"])
    return EXIT_OK


def cmd_validate(args, ctx: Context) -> int:
    status = EXIT_OK
    for ref in args.files:
        for obj in ctx.all_of(ref):
            if isinstance(obj, Pasture):
                rep = validate_pasture(obj)
            elif isinstance(obj, Morphism):
                rep = validate_morphism(obj)
            else:
                continue
            print(f"{type(obj).__name__.lower()} {obj.name}: {rep}")
            if not rep.valid:
                status = EXIT_FAILED
    return status


def cmd_show(args, ctx: Context) -> int:
    objs = [o for ref in args.files for o in ctx.all_of(ref)]
    summary = []
    for o in objs:
        if isinstance(o, Pasture):
            summary.append(f"{o.name}: {o.size} elements, {len(o.nullset)} null triples, generators {list(o.generators)}")
    _emit(args, objs, summary)
    return EXIT_OK


def cmd_hom(args, ctx: Context) -> int:
    P, Q = ctx.pasture(args.files[0]), ctx.pasture(args.files[1])
    homs = enumerate_homs(P, Q, ctx.max_size)
    _emit(args, homs, [f"{len(homs)} morphisms {P.name} -> {Q.name}"])
    return EXIT_OK


def cmd_iso(args, ctx: Context) -> int:
    P, Q = ctx.pasture(args.files[0]), ctx.pasture(args.files[1])
    pair = is_isomorphic(P, Q, ctx.max_size)
    if pair is None:
        print(f"# not isomorphic: {P.name} {Q.name}")
        return EXIT_FAILED
    _emit(args, list(pair), [f"isomorphic: {P.name} {Q.name}"])
    return EXIT_OK


def cmd_equalizer(args, ctx: Context) -> int:
    Q, q = equalizer(ctx.morphism(args.f), ctx.morphism(args.g))
    return _construction(args, Q, [q], "equalizer")


def cmd_coequalizer(args, ctx: Context) -> int:
    Q, q = coequalizer(ctx.morphism(args.f), ctx.morphism(args.g))
    return _construction(args, Q, [q], "coequalizer")


def cmd_pullback(args, ctx: Context) -> int:
    f1, f2 = ctx.morphism(args.left), ctx.morphism(args.right)
    if args.base is not None and f1.target != ctx.pasture(args.base):
        raise UsageError(f"{f1.name} does not land in {args.base}")
    apex, p1, p2 = fibered_product(f1, f2)
    return _construction(args, apex, [p1, p2], "fibered product")


def cmd_pushout(args, ctx: Context) -> int:
    f1, f2 = ctx.morphism(args.left), ctx.morphism(args.right)
    if args.base is not None and f1.source != ctx.pasture(args.base):
        raise UsageError(f"{f1.name} does not start at {args.base}")
    apex, i1, i2 = fibered_coproduct(f1, f2)
    return _construction(args, apex, [i1, i2], "fibered coproduct")


def cmd_product(args, ctx: Context) -> int:
    apex, legs = product([ctx.pasture(r) for r in args.files])
    return _construction(args, apex, legs, "product")


def cmd_coproduct(args, ctx: Context) -> int:
    if not args.files:
        raise UsageError("coproduct needs at least one pasture")
    apex, legs = coproduct([ctx.pasture(r) for r in args.files])
    return _construction(args, apex, legs, "coproduct")


def cmd_limit(args, ctx: Context) -> int:
    apex, cone = limit(ctx.diagram(args.diagram))
    return _construction(args, apex, cone.legs, "limit")


def cmd_colimit(args, ctx: Context) -> int:
    apex, cocone = colimit(ctx.diagram(args.diagram))
    return _construction(args, apex, cocone.legs, "colimit")


def cmd_check(args, ctx: Context) -> int:
    D = ctx.diagram(args.diagram)
    apex, reference = (limit if args.side == "limit" else colimit)(D)
    legs = reference.legs
    if args.apex is not None:
        apex = ctx.pasture(args.apex)
        legs = [ctx.morphism(r) for r in args.legs or []]
        if _revalidate(apex, legs) != EXIT_OK:
            return EXIT_FAILED
    # the computed apex is always a probe: with only the small standard
    # pastures, a supplied apex missing null triples can go unnoticed
    probes = default_probes(D) + [reference.apex] + [ctx.pasture(r) for r in args.probes or []]
    if args.side == "limit":
        result = check_limit_cone(D, Cone(apex, legs), probes, ctx.max_size)
    else:
        result = check_colimit_cocone(D, Cocone(apex, legs), probes, ctx.max_size)
    print(result.summary())
    return EXIT_OK if result.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    env = os.environ.get("PASTURES_MAX_SIZE")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-size", type=int, default=int(env) if env else DEFAULT_MAX_SIZE,
                        help="hom enumeration bound in elements (default 16, or $PASTURES_MAX_SIZE)")
    common.add_argument("--out", help="write documents to this file instead of stdout")
    common.add_argument("--lib", action="append", default=[], help="extra document file (repeatable)")

    p = argparse.ArgumentParser(prog="pastures", description="Limits and colimits of finite pastures.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check pasture and morphism axioms").add_argument("files", nargs="+")
    add("show", cmd_show, "print documents in canonical form").add_argument("files", nargs="+")
    add("hom", cmd_hom, "enumerate morphisms P -> Q").add_argument("files", nargs=2, metavar="P")
    add("iso", cmd_iso, "test whether P and Q are isomorphic").add_argument("files", nargs=2, metavar="P")
    for name, func in (("equalizer", cmd_equalizer), ("coequalizer", cmd_coequalizer)):
        sp = add(name, func, f"{name} of a parallel pair")
        sp.add_argument("--f", required=True)
        sp.add_argument("--g", required=True)
    for name, func in (("pullback", cmd_pullback), ("pushout", cmd_pushout)):
        sp = add(name, func, f"{name} of two morphisms")
        sp.add_argument("--base")
        sp.add_argument("--left", required=True)
        sp.add_argument("--right", required=True)
    add("product", cmd_product, "product of pastures").add_argument("files", nargs="*")
    add("coproduct", cmd_coproduct, "coproduct of pastures").add_argument("files", nargs="+")
    add("limit", cmd_limit, "limit of a diagram").add_argument("diagram")
    add("colimit", cmd_colimit, "colimit of a diagram").add_argument("diagram")
    sp = add("check-universal", cmd_check, "verify a (co)limit against probe pastures")
    sp.add_argument("diagram")
    sp.add_argument("--side", choices=("limit", "colimit"), default="limit")
    sp.add_argument("--apex", help="check this apex instead of the computed one")
    sp.add_argument("--legs", nargs="*", help="legs of the supplied apex, one per object")
    sp.add_argument("--probes", nargs="*", help="extra probe pastures")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        ctx = Context(args)
        return args.func(args, ctx)
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
    except (UsageError, PastureError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
