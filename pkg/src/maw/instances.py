"""Concrete finite category instances and monoidal structures for the law checker."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import boolalg, funcalg, proba, stoned
from ._names import UNIT_ATOM, join_ids
from .boolalg import BoolHom, FinBool
from .errors import NotADeleteMorphism
from .lawcheck import FiniteCategoryInstance, MonoidalStructure
from .proba import MeasuredBool, ProbAlgebra, ProbMorphism


def canonical_algebras(max_atoms: int, include_degenerate: bool = True) -> list[FinBool]:
    """One algebra per atom count (every finite Boolean algebra is one of these up to relabelling)."""
    start = 0 if include_degenerate else 1
    return [FinBool(chr(ord("a") + i) for i in range(n)) for n in range(start, max_atoms + 1)]


def bool_category(objects) -> FiniteCategoryInstance:
    homs = lru_cache(maxsize=None)(lambda x, y: list(boolalg.all_homs(x, y)))
    return FiniteCategoryInstance("Bool", list(objects), homs, boolalg.compose, boolalg.identity)


def stone_category(objects) -> FiniteCategoryInstance:
    homs = lru_cache(maxsize=None)(lambda x, y: list(stoned.all_point_maps(x, y)))
    return FiniteCategoryInstance("Stone", list(objects), homs, stoned.point_compose, stoned.point_identity)


def delete_category(objects) -> FiniteCategoryInstance:
    def homs(x, y):
        out = []
        for images in itertools.product(y.points, repeat=len(x.points)):
            try:
                out.append(stoned.DeleteMap(x, y, dict(zip(x.points, images))))
            except NotADeleteMorphism:
                pass
        return out

    def comp(g, f):
        return stoned.DeleteMap(f.source, g.target, stoned.point_compose(g.point_map, f.point_map).mapping)

    return FiniteCategoryInstance(
        "AbsDelete", list(objects), lru_cache(maxsize=None)(homs), comp,
        lambda x: stoned.DeleteMap(x, x, {p: p for p in x.points}),
    )


def prob_category(objects, name: str = "ProbAlg") -> FiniteCategoryInstance:
    homs = lru_cache(maxsize=None)(lambda x, y: list(proba.all_morphisms(x, y)))
    return FiniteCategoryInstance(name, list(objects), homs, proba.compose, proba.identity)


def vn_category(objects) -> FiniteCategoryInstance:
    """Function algebras with Koopman operators (a morphism ``L(Y) -> L(X)`` per ``X -> Y``)."""

    def homs(A, B):
        return [funcalg.koopman(T) for T in proba.all_morphisms(B.base, A.base)]

    def ident(A):
        return funcalg.koopman(proba.identity(A.base))

    return FiniteCategoryInstance("vN", list(objects), lru_cache(maxsize=None)(homs), funcalg.koopman_compose, ident)


def sample_prob_algebras(max_atoms: int) -> list[ProbAlgebra]:
    """Small probability algebras with repeated and distinct masses, so hom-sets are non-trivial."""
    out = [proba.point_algebra("p")]
    shapes = {
        2: [(1, 1), (1, 2)],
        3: [(1, 1, 1), (1, 1, 2)],
        4: [(1, 1, 1, 1), (1, 1, 2, 2)],
    }
    for n in range(2, max_atoms + 1):
        for weights in shapes.get(n, [(1,) * n]):
            total = sum(weights)
            atoms = [f"{'abcdefgh'[i]}{n}" for i in range(n)]
            out.append(ProbAlgebra(atoms, {a: Fraction(w, total) for a, w in zip(atoms, weights)}))
    return out


def sample_measured(max_atoms: int) -> list[MeasuredBool]:
    """Measured algebras with and without null atoms."""
    out = [proba.inc(X) for X in sample_prob_algebras(max_atoms - 1)]
    for X in sample_prob_algebras(max_atoms - 1):
        measure = dict(X.measure)
        measure["z"] = Fraction(0)
        out.append(MeasuredBool(measure.keys(), measure))
    return out


# Monoidal structures.  Associators and friends are built from atom tuples,
# never by parsing names.

def _triples(*objs):
    return itertools.product(*(o.atoms for o in objs))


def prob_tensor_structure() -> MonoidalStructure:
    def T(a, b):
        return proba.tensor([a, b])[0]

    unit = proba.point_algebra(UNIT_ATOM)

    def assoc(a, b, c):
        m = {join_ids([join_ids([x, y]), z]): join_ids([x, join_ids([y, z])]) for x, y, z in _triples(a, b, c)}
        return ProbMorphism(T(T(a, b), c), T(a, T(b, c)), m)

    def lunit(a):
        return ProbMorphism(T(unit, a), a, {join_ids([UNIT_ATOM, x]): x for x in a.atoms})

    def runit(a):
        return ProbMorphism(T(a, unit), a, {join_ids([x, UNIT_ATOM]): x for x in a.atoms})

    def braid(a, b):
        return ProbMorphism(T(a, b), T(b, a), {join_ids([x, y]): join_ids([y, x]) for x, y in _triples(a, b)})

    def marginals(a, b):
        return tuple(proba.tensor([a, b])[1])

    return MonoidalStructure(
        T, lambda f, g: proba.tensor_map([f, g]), unit, assoc, lunit, runit, braid, marginals, "semicartesian"
    )


def bool_coproduct_structure() -> MonoidalStructure:
    """Coproduct of Boolean algebras; morphisms are given by their dual point maps."""

    def T(a, b):
        return boolalg.coproduct([a, b])[0]

    unit = FinBool([UNIT_ATOM])

    def assoc(a, b, c):
        d = {join_ids([x, join_ids([y, z])]): join_ids([join_ids([x, y]), z]) for x, y, z in _triples(a, b, c)}
        return BoolHom(T(T(a, b), c), T(a, T(b, c)), d)

    def lunit(a):
        return BoolHom(T(unit, a), a, {x: join_ids([UNIT_ATOM, x]) for x in a.atoms})

    def runit(a):
        return BoolHom(T(a, unit), a, {x: join_ids([x, UNIT_ATOM]) for x in a.atoms})

    def braid(a, b):
        return BoolHom(T(a, b), T(b, a), {join_ids([y, x]): join_ids([x, y]) for x, y in _triples(a, b)})

    def injections(a, b):
        return tuple(boolalg.coproduct([a, b])[1])

    return MonoidalStructure(
        T, lambda f, g: boolalg.tensor_hom([f, g]), unit, assoc, lunit, runit, braid, injections, "cosemicartesian"
    )


# Random instances.  All take a ``random.Random`` so runs are reproducible.

def random_masses(rng, n: int, max_weight: int = 6) -> list[Fraction]:
    weights = [rng.randint(1, max_weight) for _ in range(n)]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def random_prob_algebra(rng, n: int, prefix: str = "a") -> ProbAlgebra:
    atoms = [f"{prefix}{i}" for i in range(n)]
    return ProbAlgebra(atoms, dict(zip(atoms, random_masses(rng, n))))


def random_extension(rng, Y: ProbAlgebra, n: int, prefix: str = "x") -> ProbMorphism:
    """A random ``X -> Y`` with ``n >= len(Y)`` source atoms, fibers split at random."""
    if n < len(Y):
        raise ValueError("a surjection needs at least as many source atoms as target atoms")
    sizes = [1] * len(Y)
    for _ in range(n - len(Y)):
        sizes[rng.randrange(len(Y))] += 1
    names = [f"{prefix}{i}" for i in range(n)]
    rng.shuffle(names)
    measure, point_map = {}, {}
    start = 0
    for b, k in zip(Y.atoms, sizes):
        chunk, start = names[start:start + k], start + k
        for name, part in zip(chunk, random_masses(rng, k)):
            measure[name] = part * Y.measure[b]
            point_map[name] = b
    return ProbMorphism(ProbAlgebra(measure.keys(), measure), Y, point_map)


def random_morphism(rng, max_atoms: int) -> ProbMorphism:
    n = rng.randint(1, max_atoms)
    Y = random_prob_algebra(rng, rng.randint(1, n), "y")
    return random_extension(rng, Y, n)


def random_automorphism(rng, X: ProbAlgebra) -> ProbMorphism:
    """A random mass-preserving permutation of the atoms of ``X``."""
    by_mass: dict = {}
    for a in X.atoms:
        by_mass.setdefault(X.measure[a], []).append(a)
    point_map = {}
    for group in by_mass.values():
        image = list(group)
        rng.shuffle(image)
        point_map.update(zip(group, image))
    return ProbMorphism(X, X, point_map)


def random_action(rng, max_atoms: int, max_generators: int = 3) -> tuple[ProbAlgebra, list[ProbMorphism]]:
    """A random algebra with repeated masses and a few random automorphisms."""
    n = rng.randint(1, max_atoms)
    levels = random_masses(rng, rng.randint(1, n))
    raw = [rng.choice(levels) for _ in range(n)]
    total = sum(raw)
    atoms = [f"a{i}" for i in range(n)]
    X = ProbAlgebra(atoms, {a: m / total for a, m in zip(atoms, raw)})
    return X, [random_automorphism(rng, X) for _ in range(rng.randint(1, max_generators))]
