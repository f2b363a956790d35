"""Coequalizers, fibered coproducts and coproducts."""

from pastures import (
    coequalizer,
    coproduct,
    enumerate_homs,
    fibered_coproduct,
    identity,
    is_isomorphic,
    krasner,
    product,
    standard_family,
)

F1, K, S, F2, F3, F5 = standard_family()

_, (p1, p2) = product([S, S])
Q, q = coequalizer(p1, p2)
print(f"forcing the two projections S x S -> S to agree collapses S to {Q.size} elements;",
      "that is K:", is_isomorphic(Q, krasner()) is not None)

(to_s,) = enumerate_homs(F1, S)
T, i1, i2 = fibered_coproduct(to_s, to_s)
print(f"S (x)_F1pm S has units {T.labels[1:]}; i1 = {i1.map}, i2 = {i2.map}")

T, _, _ = fibered_coproduct(identity(F1), enumerate_homs(F1, F5)[0])
print("pushing out along the identity of F1pm gives F5 back:", is_isomorphic(T, F5) is not None)

for summands in ([F2, F2], [K, K], [S, S], [S, F3]):
    C, legs = coproduct(summands)
    names = " + ".join(P.name for P in summands)
    print(f"{names}: {C.size} elements, {len(C.nullset)} null triples")
