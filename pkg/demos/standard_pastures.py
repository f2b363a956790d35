"""The six standard pastures, their tables, and what the validator says about a broken one."""

from pastures import Pasture, standard_family, validate_pasture
from pastures.io import serialize

for P in standard_family():
    print(f"{P.name}: {P.size} elements, {len(P.nullset)} null triples, -1 = {P.label(P.neg[1])}")

# S spelled out in the text format
S = standard_family()[2]
print()
print(serialize(S))

# Krasner's carrier without 1 + 1 + 0 = 0; since -1 = 1, the zero law demands it
broken = Pasture.from_tables([[1]], [0, 1], [(0, 0, 0), (1, 1, 1)], name="Kbad")
print(validate_pasture(broken))
