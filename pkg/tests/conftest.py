from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from maw import proba
from maw.boolalg import FinBool

# Acceptance results, filled by test_acceptance.py and printed at the end of the run.
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}")


atom_names = st.text(alphabet="abcdefgh0123456789_", min_size=1, max_size=4)


@st.composite
def finbools(draw, max_atoms=4):
    return FinBool(draw(st.lists(atom_names, max_size=max_atoms, unique=True)))


@st.composite
def masses(draw, n, allow_zero=False):
    lo = 0 if allow_zero else 1
    w = draw(st.lists(st.integers(lo, 9), min_size=n, max_size=n))
    if sum(w) == 0:
        w[0] = 1
    return [Fraction(x, sum(w)) for x in w]


@st.composite
def prob_algebras(draw, max_atoms=4, min_atoms=1):
    atoms = draw(st.lists(atom_names, min_size=min_atoms, max_size=max_atoms, unique=True))
    return proba.ProbAlgebra(atoms, dict(zip(atoms, draw(masses(len(atoms))))))


@st.composite
def measured_algebras(draw, max_atoms=4):
    atoms = draw(st.lists(atom_names, min_size=1, max_size=max_atoms, unique=True))
    return proba.MeasuredBool(atoms, dict(zip(atoms, draw(masses(len(atoms), allow_zero=True)))))


@st.composite
def prob_morphisms(draw, max_atoms=5):
    """A random surjection with masses split inside each fiber."""
    Y = draw(prob_algebras(max_atoms=3))
    extra = draw(st.integers(0, max(0, max_atoms - len(Y))))
    owners = list(Y.atoms) + [draw(st.sampled_from(Y.atoms)) for _ in range(extra)]
    names = draw(st.permutations([f"x{i}" for i in range(len(owners))]))
    measure, pmap = {}, {}
    for b in Y.atoms:
        mine = [n for n, o in zip(names, owners) if o == b]
        for n, m in zip(mine, draw(masses(len(mine)))):
            measure[n] = m * Y.measure[b]
            pmap[n] = b
    return proba.ProbMorphism(proba.ProbAlgebra(measure.keys(), measure), Y, pmap)
