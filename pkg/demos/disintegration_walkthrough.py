"""Disintegrate a factor map, take conditional expectations, and join two extensions.

Run with ``python3 demos/disintegration_walkthrough.py``.
"""

from fractions import Fraction as F

from maw import disint, funcalg
from maw.proba import ProbAlgebra, ProbMorphism

X = ProbAlgebra("abc", {"a": F(1, 6), "b": F(1, 3), "c": F(1, 2)})
Y = ProbAlgebra(["y1", "y2"], {"y1": F(1, 2), "y2": F(1, 2)})
pi = ProbMorphism(X, Y, {"a": "y1", "b": "y1", "c": "y2"})

k = disint.disintegrate(pi)
for y in Y.atoms:
    print(f"fiber over {y}:", {a: str(m) for a, m in k.fiber(y).items()})
print("identity holds on all indicator pairs:", not disint.disint_identity_violations(k))

A = funcalg.linfty(X)
f = A.element([1, 4, 7])
e = funcalg.cond_exp(pi, f)
print("E(f | Y) =", [str(z.re) for z in e])
print("L1 norm of f:", funcalg.lp_norm(A, f, 1))

P, P1, P2 = disint.rel_product(pi, pi)
print("relative product atoms:", P.atoms)
print("masses:", [str(m) for m in P.masses])
