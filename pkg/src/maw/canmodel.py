"""The canonical (Stone) model of a finite probability algebra.

A concrete model of ``X`` is a finite space with the full powerset
sigma-algebra and a probability measure, together with a bijection between
its positive-mass points and the atoms of ``X`` that matches masses.  The
canonical model is the spectrum of L-infinity(X), i.e. the atoms themselves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import boolalg, funcalg, proba
from ._names import check_atom_id
from .boolalg import FinBool
from .errors import NotAHomomorphism, NotAModel, NotAnAutomorphism, NotMeasurePreserving
from .proba import MeasuredBool, ProbAlgebra, ProbMorphism, as_fraction

# Exhaustive checks over models and hom-sets stop at these sizes.
MAX_MODEL_ATOMS = 4
MAX_NULL_POINTS = 2
MAX_PROBE_POINTS = 3


@dataclass(frozen=True, init=False)
class ConcreteModel:
    points: tuple
    masses: tuple
    inclusion: tuple  # (point, atom) pairs for the positive-mass points
    modeled: ProbAlgebra

    def __init__(self, measure: Mapping[str, object], inclusion: Mapping[str, str], modeled: ProbAlgebra):
        points = tuple(sorted(measure))
        for p in points:
            check_atom_id(p)
        masses = tuple(as_fraction(measure[p]) for p in points)
        positive = {p for p, m in zip(points, masses) if m > 0}
        if any(m < 0 for m in masses) or sum(masses) != 1:
            raise NotAModel("model measure is not a probability measure")
        if set(inclusion) != positive:
            raise NotAModel("inclusion must be defined exactly on the positive-mass points")
        if sorted(inclusion.values()) != sorted(modeled.atoms):
            raise NotAModel("inclusion is not a bijection onto the atoms of the modeled algebra")
        m = dict(zip(points, masses))
        for p, a in inclusion.items():
            if m[p] != modeled.measure[a]:
                raise NotAModel(f"point {p!r} has mass {m[p]}, atom {a!r} has {modeled.measure[a]}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "inclusion", tuple(sorted(inclusion.items())))
        object.__setattr__(self, "modeled", modeled)

    @cached_property
    def measure(self) -> Mapping[str, Fraction]:
        return MappingProxyType(dict(zip(self.points, self.masses)))

    @cached_property
    def inclusion_map(self) -> Mapping[str, str]:
        return MappingProxyType(dict(self.inclusion))

    @property
    def null_points(self) -> tuple:
        return tuple(p for p, m in zip(self.points, self.masses) if m == 0)

    def measured(self) -> MeasuredBool:
        """The measured powerset algebra of the model."""
        return MeasuredBool(FinBool(self.points), self.measure)

    def prob_algebra(self) -> ProbAlgebra:
        X, _ = proba.mes(self.measured())
        return X

    def iso_to_modeled(self) -> ProbMorphism:
        """The isomorphism ``prob_algebra() -> modeled`` carried by the inclusion."""
        return ProbMorphism(self.prob_algebra(), self.modeled, self.inclusion_map)


def stone_model(X: ProbAlgebra) -> ConcreteModel:
    """Spectrum of L-infinity(X): one point per minimal projection, i.e. per atom."""
    A = funcalg.linfty(X)
    points = {}
    for p in A.projections():
        support = A.support(p)
        if len(support) == 1:
            (a,) = support
            points[a] = A.trace(p).re
    return ConcreteModel(points, {a: a for a in points}, X)


def natural_iso(X: ProbAlgebra) -> ProbMorphism:
    """The natural isomorphism ``X -> Stone(X)_ProbAlg`` as an atom bijection."""
    S = stone_model(X)
    return ProbMorphism(X, S.prob_algebra(), {a: p for p, a in S.inclusion})


def model_morphism(T: ProbMorphism) -> ProbMorphism:
    """``Stone(T)``, a measure-preserving map between the canonical models."""
    SX, SY = stone_model(T.source), stone_model(T.target)
    return ProbMorphism(SX.measured(), SY.measured(), T.point_map)


def is_surjective(T: ProbMorphism) -> bool:
    return set(T.images) == set(T.target.atoms)


def strong_lusin(W: ConcreteModel) -> bool:
    """Every bounded function agrees a.e. with exactly one continuous function.

    On a finite discrete space this is the absence of null points.
    """
    return not W.null_points


def strong_lusin_literal(W: ConcreteModel) -> bool:
    """Brute-force version: distinct 0/1 functions always differ on a positive-mass point."""
    m = W.measure
    for f in itertools.product((0, 1), repeat=len(W.points)):
        for g in itertools.product((0, 1), repeat=len(W.points)):
            if f != g and all(x == y or m[p] == 0 for p, x, y in zip(W.points, f, g)):
                return False
    return True


def model_maps(W: ConcreteModel, V: ConcreteModel) -> list[dict]:
    """All measure-preserving point maps ``W -> V`` commuting with the inclusions."""
    if W.modeled != V.modeled:
        raise NotAModel("models of different algebras")
    inv_v = {a: p for p, a in V.inclusion}
    Wm, Vm = W.measured(), V.measured()
    out = []
    for images in itertools.product(V.points, repeat=len(W.points)):
        candidate = dict(zip(W.points, images))
        try:
            ProbMorphism(Wm, Vm, candidate)
        except NotMeasurePreserving:
            continue
        if all(candidate[p] == inv_v[a] for p, a in W.inclusion):
            out.append(candidate)
    return out


def initial_factorization(X: ProbAlgebra, W: ConcreteModel) -> dict[str, str]:
    """The unique map ``Stone(X) -> W`` compatible with the inclusions."""
    if W.modeled != X:
        raise NotAModel("W does not model X")
    inv_w = {a: p for p, a in W.inclusion}
    return {a: inv_w[a] for a in X.atoms}


def models_with_nulls(X: ProbAlgebra, max_null: int = MAX_NULL_POINTS) -> list[ConcreteModel]:
    """``Stone(X)`` with 0..max_null null points adjoined (the enumerated Model(X))."""
    out = []
    for k in range(max_null + 1):
        measure = dict(X.measure)
        for i in range(k):
            measure[f"null{i}"] = Fraction(0)
        out.append(ConcreteModel(measure, {a: a for a in X.atoms}, X))
    return out


def is_initial(W: ConcreteModel, models: Sequence[ConcreteModel]) -> bool:
    return all(len(model_maps(W, V)) == 1 for V in models)


def represent(X: ProbAlgebra, K: Iterable[str], sigma_hom: Mapping[str, Iterable[str]]) -> dict[str, str]:
    """Continuous map ``Stone(X) -> K`` representing an abstract measurable map ``X -> K``.

    ``sigma_hom`` sends each point of ``K`` to the element of ``X``'s algebra
    it pulls back to; the images must partition the unit.
    """
    phi = boolalg.validate_hom(FinBool(K), X.algebra, sigma_hom)
    return dict(phi.dual_map)


def represent_bijection_counts(X: ProbAlgebra, K: Iterable[str]) -> tuple[int, int]:
    """``(|Hom_AbsMes(X -> K)|, |Hom_CH(Stone(X) -> K)|)`` by enumeration."""
    K = FinBool(K)
    abstract = 0
    for images in itertools.product(list(X.algebra.elements()), repeat=len(K)):
        try:
            boolalg.validate_hom(K, X.algebra, dict(zip(K.atoms, images)))
        except NotAHomomorphism:
            continue
        abstract += 1
    continuous = sum(1 for _ in itertools.product(K.atoms, repeat=len(X.atoms)))
    return abstract, continuous


def model_action(X: ProbAlgebra, generators: Sequence[ProbMorphism]) -> list[ProbMorphism]:
    """Transport an action by automorphisms to homeomorphisms of ``Stone(X)``."""
    out = []
    for g in generators:
        if g.source != X or g.target != X or not proba.is_bijective(g):
            raise NotAnAutomorphism(f"{g!r} is not an automorphism of X")
        out.append(model_morphism(g))
    return out
