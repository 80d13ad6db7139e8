"""Query cylinder events of a Markov chain and catch an inconsistent family.

Run with ``python3 demos/markov_cylinders.py``.
"""

from fractions import Fraction as F

from maw import kolmo
from maw.boolalg import FinBool
from maw.errors import InconsistentFamily

chain = kolmo.markov_family(
    {"0": 1, "1": 0},
    {"0": {"0": F(1, 2), "1": F(1, 2)}, "1": {"0": 1, "1": 0}},
)
mu = kolmo.extend(chain)
print("P(X1=0, X2=1, X3=0) =", mu.query([1, 2, 3], [("0", "1", "0")]))
print("same event read over {1, 2, 3, 7}:", mu.query([1, 2, 3], [("0", "1", "0")], [1, 2, 3, 7]))
print("P(X10=1) =", mu.query([10], [("1",)]))
print("consistent up to |F'| = 4:", kolmo.check_consistency(chain, kolmo.subset_pairs(range(1, 7), 4)).ok)

two = FinBool(["0", "1"])
bad = kolmo.extend(kolmo.explicit_family(
    {1: two, 2: two},
    {(1,): {("0",): F(1, 2), ("1",): F(1, 2)}, (1, 2): {("0", "0"): F(1, 3), ("1", "1"): F(2, 3)}},
))
print("P(X1=0) from the bad family:", bad.query([1], [("0",)]))
try:
    bad.query([1, 2], [("0", "0")])
except InconsistentFamily as exc:
    print("caught:", exc)
