"""Certifying a construction by brute force, and watching a damaged one fail."""

from pastures import Cone, Morphism, check_limit_cone, enumerate_homs, limit, standard_family
from pastures.universal import default_probes, fibered_product_cone, pullback_diagram

F1, K, S, F2, F3, F5 = standard_family()
(s_to_k,) = enumerate_homs(S, K)

D, C = fibered_product_cone(s_to_k, s_to_k)
probes = default_probes(D) + [C.apex]
print("S x_K S:", check_limit_cone(D, C, probes).summary())

# drop one relation from the apex; its own identity no longer factors through
t = sorted(C.apex.unit_triples)[0]
damaged = C.apex.replace(nullset=C.apex.nullset - {t}, name="damaged")
legs = [Morphism(damaged, leg.target, leg.map, leg.name) for leg in C.legs]
print(f"without {t}:", check_limit_cone(D, Cone(damaged, legs), probes).summary())

# the generic assembly gives the same object
apex, cone = limit(pullback_diagram(s_to_k, s_to_k))
print(f"generic limit: {apex.size} elements,", check_limit_cone(D, cone, probes).summary())
