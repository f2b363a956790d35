"""Reading and writing the line-based document format."""

from pastures import validate_pasture
from pastures.io import canonical, parse_all, serialize_all

text = """
# a pullback square written by hand
morphism s_to_k S K
map 0 0
map 1 1
map -1 1      # names from the built-in S

diagram square
object S
object S
object K
arrow 0 2 s_to_k
arrow 1 2 s_to_k
"""

objs = parse_all(text)
print(serialize_all(objs))
print("canonical form matches:", canonical(text) == serialize_all(objs))

bad = parse_all("pasture Kbad 2\nmul 1 1 1\nneg 0 0\nneg 1 1\nnull 0 1 1\nnull 1 1 1\n")[0]
print(validate_pasture(bad))
