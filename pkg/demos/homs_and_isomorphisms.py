"""Hom-sets between standard pastures, and isomorphism witnesses."""

from pastures import enumerate_homs, is_isomorphic, product, standard_family

std = standard_family()
width = max(len(P.name) for P in std) + 2
print(" " * width + "".join(Q.name.rjust(width) for Q in std))
for P in std:
    print(P.name.ljust(width) + "".join(str(len(enumerate_homs(P, Q))).rjust(width) for Q in std))

# everything maps uniquely to K; F1pm maps uniquely to everything
F1, K, S = std[:3]
print()
print("unary product of S is S again:", is_isomorphic(product([S])[0], S) is not None)
fwd, back = is_isomorphic(product([])[0], K)
print("empty product -> K:", fwd.map, " inverse:", back.map)
print("S and F1pm have the same carrier but:", is_isomorphic(S, F1))
