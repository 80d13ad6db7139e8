"""Walk through Stone duality on a three-atom algebra.

Run with ``python3 demos/stone_duality_tour.py``.
"""

from maw import boolalg, stoned
from maw.boolalg import BoolHom, FinBool

B = FinBool(["a", "b", "c"])
print("algebra:", B)
print("elements:", len(list(B.elements())))

S = stoned.stone(B)
print("Stone space points (one per atom):", S.points)
print("clopens recover the algebra:", stoned.clopen(S) == B)

# A homomorphism into a two-atom algebra, given by its dual point map.
C = FinBool(["x", "y"])
h = BoolHom(B, C, {"x": "a", "y": "c"})
print("h({a, b}) =", sorted(h(frozenset({"a", "b"}))))
print("h is mono:", boolalg.is_mono(h), " h is epi:", boolalg.is_epi(h))

f = stoned.stone_map(h)
print("dual point map Stone(C) -> Stone(B):", dict(f.mapping))
print("round trip on the map:", stoned.clopen_map(f) == h)
