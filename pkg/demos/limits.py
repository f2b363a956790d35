"""Equalizers, fibered products and products."""

from pastures import enumerate_homs, equalizer, fibered_product, is_isomorphic, product, standard_family

F1, K, S, F2, F3, F5 = standard_family()
(s_to_k,) = enumerate_homs(S, K)
(f3_to_k,) = enumerate_homs(F3, K)

SS, (p1, p2) = product([S, S])
print(f"S x S has {SS.size} elements: {', '.join(SS.labels)}")

Q, q = equalizer(p1, p2)
print(f"the projections agree on {Q.labels}, a copy of S: {is_isomorphic(Q, S) is not None}")

P, pi1, pi2 = fibered_product(s_to_k, f3_to_k)
print(f"S x_K F3: {P.size} elements, {len(P.unit_triples)} all-unit null triples")
print("  over K it is just the product:", is_isomorphic(P, product([S, F3])[0]) is not None)

P, _, _ = fibered_product(enumerate_homs(F2, K)[0], f3_to_k)
print(f"F2 x_K F3: elements {P.labels}, all-unit null triples {sorted(P.unit_triples)}")
