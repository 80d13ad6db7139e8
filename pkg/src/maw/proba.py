"""Probability algebras and measure-preserving maps with exact rational masses.

A morphism ``X -> Y`` of probability algebras is a sigma-homomorphism
``algebra(Y) -> algebra(X)`` preserving measure; we store its Stone dual, the
point map ``atoms(X) -> atoms(Y)``, and check the pushforward identity
``mu_Y(b) = sum of mu_X(a) over a -> b`` exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import boolalg
from ._names import join_ids
from .boolalg import BoolHom, BoolIdeal, FinBool
from .errors import (
    CompositionMismatch,
    NotAnAutomorphism,
    NotAProbability,
    NotMeasurePreserving,
)


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


class _Measured:
    algebra: FinBool
    masses: tuple

    @property
    def atoms(self) -> tuple:
        return self.algebra.atoms

    @cached_property
    def measure(self) -> Mapping[str, Fraction]:
        return MappingProxyType(dict(zip(self.algebra.atoms, self.masses)))

    def mu(self, element: Iterable[str]) -> Fraction:
        m = self.measure
        return sum((m[a] for a in self.algebra.element(element)), Fraction(0))

    def __len__(self) -> int:
        return len(self.algebra.atoms)


def _masses(algebra: FinBool, measure: Mapping[str, object]) -> tuple:
    if set(measure) != set(algebra.atoms):
        raise NotAProbability("measure must be given on exactly the atoms")
    masses = tuple(as_fraction(measure[a]) for a in algebra.atoms)
    if any(m < 0 for m in masses):
        raise NotAProbability("negative mass")
    if sum(masses) != 1:
        raise NotAProbability(f"masses sum to {sum(masses)}, not 1")
    return masses


@dataclass(frozen=True, init=False)
class MeasuredBool(_Measured):
    """A finite Boolean algebra with a probability measure that may vanish on atoms."""

    algebra: FinBool
    masses: tuple

    def __init__(self, algebra: FinBool | Iterable[str], measure: Mapping[str, object]):
        if not isinstance(algebra, FinBool):
            algebra = FinBool(algebra)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "masses", _masses(algebra, measure))

    @property
    def null_atoms(self) -> frozenset:
        return frozenset(a for a, m in zip(self.atoms, self.masses) if m == 0)


@dataclass(frozen=True, init=False)
class ProbAlgebra(_Measured):
    """A finite probability algebra: every atom has strictly positive mass."""

    algebra: FinBool
    masses: tuple

    def __init__(self, algebra: FinBool | Iterable[str], measure: Mapping[str, object]):
        if not isinstance(algebra, FinBool):
            algebra = FinBool(algebra)
        masses = _masses(algebra, measure)
        if any(m == 0 for m in masses):
            raise NotAProbability("probability algebras need strictly positive atom masses")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "masses", masses)

    def __repr__(self) -> str:
        return f"ProbAlgebra({ {a: str(m) for a, m in self.measure.items()} })"


def uniform(n: int, prefix: str = "a") -> ProbAlgebra:
    atoms = [f"{prefix}{i}" for i in range(n)]
    return ProbAlgebra(atoms, {a: Fraction(1, n) for a in atoms})


def point_algebra(name: str = "*") -> ProbAlgebra:
    return ProbAlgebra([name], {name: 1})


@dataclass(frozen=True, init=False)
class ProbMorphism:
    """A measure-preserving map, stored as its point map on atoms.

    The endpoints are ProbAlgebras, or MeasuredBools for the larger category
    of measured algebras with null atoms.
    """

    source: _Measured
    target: _Measured
    images: tuple

    def __init__(self, source: _Measured, target: _Measured, point_map: Mapping[str, str]):
        if set(point_map) != set(source.atoms):
            raise NotMeasurePreserving("point map must be defined exactly on the source atoms")
        tgt = set(target.atoms)
        for a in source.atoms:
            if point_map[a] not in tgt:
                raise NotMeasurePreserving(f"atom {a!r} is sent to non-atom {point_map[a]!r}")
        pushed = dict.fromkeys(target.atoms, Fraction(0))
        for a, m in zip(source.atoms, source.masses):
            pushed[point_map[a]] += m
        for b, m in zip(target.atoms, target.masses):
            if pushed[b] != m:
                raise NotMeasurePreserving(
                    f"pushforward mass at {b!r} is {pushed[b]}, target mass is {m}",
                    atom=b, expected=m, actual=pushed[b],
                )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", tuple(point_map[a] for a in source.atoms))

    @cached_property
    def point_map(self) -> Mapping[str, str]:
        return MappingProxyType(dict(zip(self.source.atoms, self.images)))

    def __call__(self, a: str) -> str:
        return self.point_map[a]

    def sigma_hom(self) -> BoolHom:
        """The underlying sigma-homomorphism ``algebra(target) -> algebra(source)``."""
        return BoolHom(self.target.algebra, self.source.algebra, self.point_map)

    def fiber(self, b: str) -> list[str]:
        return [a for a, x in zip(self.source.atoms, self.images) if x == b]

    def __repr__(self) -> str:
        return f"ProbMorphism({dict(self.point_map)!r})"


def make_morphism(X: _Measured, Y: _Measured, point_map: Mapping[str, str]) -> ProbMorphism:
    return ProbMorphism(X, Y, point_map)


def identity(X: _Measured) -> ProbMorphism:
    return ProbMorphism(X, X, {a: a for a in X.atoms})


def compose(later: ProbMorphism, earlier: ProbMorphism) -> ProbMorphism:
    if earlier.target != later.source:
        raise CompositionMismatch("morphisms are not composable")
    m = later.point_map
    return ProbMorphism(earlier.source, later.target, {a: m[b] for a, b in earlier.point_map.items()})


def is_bijective(T: ProbMorphism) -> bool:
    return len(set(T.images)) == len(T.target.atoms) == len(T.source.atoms)


def inverse(T: ProbMorphism) -> ProbMorphism:
    if not is_bijective(T):
        raise NotAnAutomorphism(f"{T!r} is not bijective")
    return ProbMorphism(T.target, T.source, {b: a for a, b in T.point_map.items()})


def all_morphisms(X: _Measured, Y: _Measured):
    """Every measure-preserving point map ``X -> Y``, by exhaustive filtering."""
    for images in itertools.product(Y.atoms, repeat=len(X.atoms)):
        try:
            yield ProbMorphism(X, Y, dict(zip(X.atoms, images)))
        except NotMeasurePreserving:
            continue


def isomorphism(X: _Measured, Y: _Measured) -> ProbMorphism | None:
    """A measure-preserving bijection ``X -> Y`` if one exists (match atoms by mass)."""
    if sorted(X.masses) != sorted(Y.masses):
        return None
    xs = sorted(X.atoms, key=lambda a: X.measure[a])
    ys = sorted(Y.atoms, key=lambda b: Y.measure[b])
    return ProbMorphism(X, Y, dict(zip(xs, ys)))


def inc(X: ProbAlgebra) -> MeasuredBool:
    """Forget strict positivity."""
    return MeasuredBool(X.algebra, X.measure)


def inc_map(T: ProbMorphism) -> ProbMorphism:
    return ProbMorphism(inc(T.source), inc(T.target), T.point_map)


def mes(M: MeasuredBool) -> tuple[ProbAlgebra, BoolHom]:
    """Quotient by the null ideal.

    Returns the probability algebra and the quotient map
    ``algebra(M) -> algebra(mes(M))``; its Stone dual is the inclusion of
    the surviving atoms, i.e. the natural monomorphism ``inc(mes(M)) -> M``.
    """
    Q, q = boolalg.quotient(M.algebra, BoolIdeal(M.algebra, M.null_atoms))
    assert not Q.degenerate, "a probability measure has a non-null atom"
    return ProbAlgebra(Q, {a: M.measure[a] for a in Q.atoms}), q


def mes_map(T: ProbMorphism) -> ProbMorphism:
    """Mes on morphisms: restrict to non-null atoms (they land on non-null atoms)."""
    X, _ = mes(T.source)
    Y, _ = mes(T.target)
    return ProbMorphism(X, Y, {a: T(a) for a in X.atoms})


def mes_inclusion(M: MeasuredBool) -> ProbMorphism:
    """The natural monomorphism ``inc(mes(M)) -> M`` as a point map."""
    X, _ = mes(M)
    return ProbMorphism(inc(X), M, {a: a for a in X.atoms})


def tensor(factors: Sequence[ProbAlgebra]) -> tuple[ProbAlgebra, list[ProbMorphism]]:
    """Independent product; atoms ``a1|a2|...`` carry product masses."""
    factors = list(factors)
    if not factors:
        raise ValueError("tensor needs at least one factor")
    tuples = list(itertools.product(*(f.atoms for f in factors)))
    names = [join_ids(t, "|") for t in tuples]
    masses = {}
    for n, t in zip(names, tuples):
        m = Fraction(1)
        for f, x in zip(factors, t):
            m *= f.measure[x]
        masses[n] = m
    P = ProbAlgebra(names, masses)
    marginals = [
        ProbMorphism(P, f, {n: t[i] for n, t in zip(names, tuples)}) for i, f in enumerate(factors)
    ]
    return P, marginals


def tensor_map(maps: Sequence[ProbMorphism]) -> ProbMorphism:
    src, _ = tensor([m.source for m in maps])
    tgt, _ = tensor([m.target for m in maps])
    pm = {}
    for t in itertools.product(*(m.source.atoms for m in maps)):
        pm[join_ids(t, "|")] = join_ids([m(x) for m, x in zip(maps, t)], "|")
    return ProbMorphism(src, tgt, pm)


def orbits(atoms: Sequence[str], generators: Sequence[ProbMorphism]) -> list[frozenset]:
    """Orbit partition of ``atoms`` under the group generated by bijections."""
    parent = {a: a for a in atoms}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in generators:
        for a, b in g.point_map.items():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks: dict[str, set] = {}
    for a in atoms:
        blocks.setdefault(find(a), set()).add(a)
    return [frozenset(b) for b in blocks.values()]


def _check_automorphisms(X: ProbAlgebra, generators: Sequence[ProbMorphism]):
    for g in generators:
        if g.source != X or g.target != X:
            raise NotAnAutomorphism("generator is not a map X -> X")
        if not is_bijective(g):
            raise NotAnAutomorphism(f"generator {g!r} is not bijective")


def invariant_factor(X: ProbAlgebra, generators: Sequence[ProbMorphism]) -> tuple[ProbAlgebra, ProbMorphism]:
    """The factor onto the algebra of sets fixed by every generator.

    Invariant sets are exactly unions of orbits, so each orbit becomes an atom
    (named by joining its members with ``+``) carrying the orbit's mass.
    """
    _check_automorphisms(X, generators)
    name = {}
    masses = {}
    for orbit in orbits(X.atoms, generators):
        n = join_ids(sorted(orbit), "+")
        masses[n] = sum((X.measure[a] for a in orbit), Fraction(0))
        for a in orbit:
            name[a] = n
    inv = ProbAlgebra(masses.keys(), masses)
    return inv, ProbMorphism(X, inv, name)
