"""The eight acceptance criteria, each reporting one PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from battery import VERIFY_BOUND, cospans, instances, of_kind, parallel_pairs, spans  # noqa: E402
from pastures import (  # noqa: E402
    Cone,
    Morphism,
    check_colimit_cocone,
    check_limit_cone,
    coequalizer,
    colimit,
    compose,
    coproduct,
    enumerate_homs,
    fibered_coproduct,
    fibered_product,
    identity,
    is_isomorphic,
    krasner,
    limit,
    product,
    standard_family,
    validate_morphism,
    validate_pasture,
)
from pastures.core import CapacityError, sort3  # noqa: E402
from pastures.io import canonical, parse_all, serialize_all  # noqa: E402
from pastures.universal import default_probes, parallel_pair, pullback_diagram, pushout_diagram  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
REPORT: list[str] = []


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    REPORT.append(line)
    print(line)


def _iso_witness(P, Q) -> bool:
    pair = is_isomorphic(P, Q, max_size=VERIFY_BOUND)
    if pair is None:
        return False
    fwd, back = pair
    return (
        compose(back, fwd).map == identity(P).map
        and compose(fwd, back).map == identity(Q).map
        and {sort3(*(fwd.map[x] for x in t)) for t in P.nullset} == Q.nullset
    )


def _verify(inst, probes):
    chk = check_limit_cone if inst.side == "limit" else check_colimit_cocone
    return chk(inst.diagram, inst.cone, probes, VERIFY_BOUND)


def test_criterion_1_axioms():
    t = time.perf_counter()
    objects = list(standard_family()) + [i.cone.apex for i in instances()]
    bad = [P.name for P in objects if validate_pasture(P).violations]
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    record(1, "axiom suite", ok, f"{len(objects)} pastures, {len(bad)} invalid, {dt:.1f}s")
    assert ok, bad[:5]


def test_criterion_2_legs():
    legs = bad_legs = 0
    bad_eqs = []
    for inst in instances():
        for leg in inst.cone.legs:
            legs += 1
            bad_legs += not validate_morphism(leg).valid
        if any(lhs != rhs for lhs, rhs in inst.equations()):
            bad_eqs.append(f"{inst.kind} {inst.label}")
    ok = bad_legs == 0 and not bad_eqs
    record(2, "leg morphisms and commuting equations", ok,
           f"{legs} legs, {bad_legs} invalid, {len(bad_eqs)} non-commuting")
    assert ok, bad_eqs[:5]


def test_criterion_3_universal():
    t = time.perf_counter()
    cones = 0
    failed = []
    for inst in instances():
        result = _verify(inst, default_probes(inst.diagram) + [inst.cone.apex])
        cones += len(result.records)
        if not result.passed:
            failed.append(f"{inst.kind} {inst.label}: {result.summary()}")
    dt = time.perf_counter() - t
    ok = not failed and dt < 300
    record(3, "universal properties", ok,
           f"{len(instances())} instances, {cones} probe (co)cones, {len(failed)} failing, {dt:.1f}s")
    assert ok, failed[:3]


def test_criterion_4_assembly():
    checked = 0
    bad = []
    for f1, f2 in cospans():
        apex, _, _ = fibered_product(f1, f2)
        if apex.size > 64:
            continue
        checked += 1
        if not _iso_witness(limit(pullback_diagram(f1, f2))[0], apex):
            bad.append(("pullback", f1.name, f2.name))
    for f1, f2 in spans():
        try:
            apex, _, _ = fibered_coproduct(f1, f2)
        except CapacityError:
            continue
        if apex.size > 64:
            continue
        checked += 1
        if not _iso_witness(colimit(pushout_diagram(f1, f2))[0], apex):
            bad.append(("pushout", f1.name, f2.name))
    for f, g in parallel_pairs():
        checked += 1
        if not _iso_witness(colimit(parallel_pair(f, g))[0], coequalizer(f, g)[0]):
            bad.append(("parallel", f.name, g.name))
    record(4, "assembly cross-check", not bad, f"{checked} diagrams, {len(bad)} without an isomorphism")
    assert not bad, bad[:5]


def test_criterion_5_cardinalities():
    oracle = {
        "fibered_product": lambda i: oracles.fibered_product_size(*i.inputs),
        "product": lambda i: oracles.product_size(i.inputs),
        "equalizer": lambda i: oracles.equalizer_size(*i.inputs),
        "coequalizer": lambda i: oracles.coequalizer_size(*i.inputs),
        "fibered_coproduct": lambda i: oracles.fibered_coproduct_size(*i.inputs),
    }
    checked = 0
    bad = []
    for kind, size in oracle.items():
        for inst in of_kind(kind):
            checked += 1
            if inst.cone.apex.size != size(inst):
                bad.append(f"{kind} {inst.label}")
    record(5, "cardinality oracles", not bad, f"{checked} constructions, {len(bad)} mismatched")
    assert not bad, bad[:5]


def test_criterion_6_pins():
    std = standard_family()
    F1, K, S, F2 = std[0], std[1], std[2], std[3]

    def unique(P, Q):
        (m,) = enumerate_homs(P, Q)
        return m

    _, (p1, p2) = product([S, S])
    k = unique(F1, K)
    T, _ = product([])
    pins = {
        "Coeq(pi1,pi2) on SxS = K": _iso_witness(coequalizer(p1, p2)[0], krasner()),
        "K (x)_F1pm K = K": _iso_witness(fibered_coproduct(k, k)[0], krasner()),
        "coproduct(F2,F2) = F2": _iso_witness(coproduct([F2, F2])[0], F2),
        "coproduct(K,K) = K": _iso_witness(coproduct([K, K])[0], krasner()),
        "product() = K": _iso_witness(T, krasner()),
        "product() is terminal": all(len(enumerate_homs(P, T)) == 1 for P in std),
    }
    for P in std:
        apex, _, _ = fibered_coproduct(identity(F1), unique(F1, P))
        pins[f"F1pm (x)_F1pm {P.name} = {P.name}"] = _iso_witness(apex, P)
    bad = [name for name, ok in pins.items() if not ok]
    record(6, "derived instance pins", not bad, f"{len(pins)} pins, {len(bad)} failing")
    assert not bad, bad


def test_criterion_7_mutation():
    t = time.perf_counter()
    mutants = 0
    missed = []
    unreported = []
    for inst in of_kind("fibered_product"):
        A = inst.cone.apex
        probes = default_probes(inst.diagram) + [A]
        for triple in sorted(A.unit_triples):
            mutants += 1
            M = A.replace(nullset=A.nullset - {triple})
            legs = [Morphism(M, leg.target, leg.map, leg.name) for leg in inst.cone.legs]
            result = check_limit_cone(inst.diagram, Cone(M, legs), probes, VERIFY_BOUND)
            if result.passed:
                missed.append(f"{inst.label} minus {triple}")
                continue
            summary = result.summary()
            if not all(f"probe {name}" in summary for name in {r.probe.name for r in result.failures}):
                unreported.append(f"{inst.label} minus {triple}")
    dt = time.perf_counter() - t
    ok = mutants > 0 and not missed and not unreported
    record(7, "mutation sensitivity", ok,
           f"{mutants} mutants, {len(missed)} undetected, {len(unreported)} unreported, {dt:.1f}s")
    assert ok, (missed[:5], unreported[:5])


def test_criterion_8_round_trip():
    files = sorted(p for p in FIXTURES.iterdir() if p.is_file())
    bad = []
    for path in files:
        text = path.read_text()
        if serialize_all(parse_all(text)) != canonical(text):
            bad.append(path.name)
    ok = bool(files) and not bad
    record(8, "fixture round trip", ok, f"{len(files)} files, {len(bad)} differing")
    assert ok, bad


if __name__ == "__main__":
    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                status = 1
    sys.exit(status)
