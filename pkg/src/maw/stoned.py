"""Stone duality, the Loomis-Sikorski functor and null-ideal spaces, at finite scale.

A finite Stone space is discrete: every function between two of them is
continuous and every subset is clopen, so a space is just its point list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import boolalg
from ._names import check_atom_id, join_ids
from .boolalg import BoolHom, BoolIdeal, FinBool
from .errors import CompositionMismatch, NotADeleteMorphism


@dataclass(frozen=True, init=False)
class StoneSpace:
    points: tuple

    def __init__(self, points: Iterable[str]):
        points = tuple(points)
        for p in points:
            check_atom_id(p)
        if len(set(points)) != len(points):
            raise ValueError(f"duplicate points in {points!r}")
        object.__setattr__(self, "points", tuple(sorted(points)))

    def __len__(self) -> int:
        return len(self.points)

    def meager_sets(self) -> list[frozenset]:
        # Baire category theorem: a non-empty open set is never meager, and
        # in a finite discrete space every set is open.
        return [frozenset()]


@dataclass(frozen=True, init=False)
class PointMap:
    """A (continuous) map between finite Stone spaces."""

    source: StoneSpace
    target: StoneSpace
    images: tuple

    def __init__(self, source: StoneSpace, target: StoneSpace, mapping: Mapping[str, str]):
        if set(mapping) != set(source.points):
            raise ValueError("point map must be defined exactly on the source points")
        tgt = set(target.points)
        bad = [p for p in source.points if mapping[p] not in tgt]
        if bad:
            raise ValueError(f"points {bad!r} are sent outside the target")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", tuple(mapping[p] for p in source.points))

    @cached_property
    def mapping(self) -> Mapping[str, str]:
        return MappingProxyType(dict(zip(self.source.points, self.images)))

    def __call__(self, p: str) -> str:
        return self.mapping[p]


def point_identity(S: StoneSpace) -> PointMap:
    return PointMap(S, S, {p: p for p in S.points})


def point_compose(later: PointMap, earlier: PointMap) -> PointMap:
    if earlier.target != later.source:
        raise CompositionMismatch("point maps are not composable")
    m = later.mapping
    return PointMap(earlier.source, later.target, {p: m[q] for p, q in earlier.mapping.items()})


def all_point_maps(S: StoneSpace, T: StoneSpace):
    for images in itertools.product(T.points, repeat=len(S.points)):
        yield PointMap(S, T, dict(zip(S.points, images)))


def stone(B: FinBool) -> StoneSpace:
    """The space of ultrafilters of ``B``; each is principal at one atom."""
    return StoneSpace(B.atoms)


def stone_map(phi: BoolHom) -> PointMap:
    """``Stone(phi): Stone(target) -> Stone(source)``, precomposition with ``phi``."""
    return PointMap(stone(phi.target), stone(phi.source), phi.dual_map)


def clopen(S: StoneSpace) -> FinBool:
    return FinBool(S.points)


def clopen_map(f: PointMap) -> BoolHom:
    """Pullback of clopen sets along ``f``: ``Clopen(target) -> Clopen(source)``."""
    return BoolHom(clopen(f.target), clopen(f.source), f.mapping)


def unit(B: FinBool) -> BoolHom:
    """Component ``B -> Clopen(Stone(B))`` of the duality, E -> {ultrafilters containing E}."""
    return BoolHom(B, clopen(stone(B)), {a: a for a in B.atoms})


def counit(S: StoneSpace) -> PointMap:
    """Component ``S -> Stone(Clopen(S))``, p -> principal ultrafilter at {p}."""
    return PointMap(S, stone(clopen(S)), {p: p for p in S.points})


@dataclass(frozen=True, init=False)
class DeleteSpace:
    """A finite space with a null ideal, generated by the null points."""

    space: StoneSpace
    null: frozenset

    def __init__(self, points: Iterable[str] | StoneSpace, null: Iterable[str] = ()):
        space = points if isinstance(points, StoneSpace) else StoneSpace(points)
        null = frozenset(null)
        if not null <= set(space.points):
            raise ValueError(f"null points {sorted(null - set(space.points))!r} are not points")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "null", null)

    @property
    def points(self) -> tuple:
        return self.space.points

    def __repr__(self) -> str:
        return f"DeleteSpace(points={list(self.points)!r}, null={sorted(self.null)!r})"

    def is_null(self, subset: Iterable[str]) -> bool:
        return frozenset(subset) <= self.null

    def null_ideal(self) -> BoolIdeal:
        return BoolIdeal(clopen(self.space), self.null)


@dataclass(frozen=True, init=False)
class DeleteMap:
    """A point map under which null sets pull back to null sets (checked eagerly)."""

    source: DeleteSpace
    target: DeleteSpace
    point_map: PointMap

    def __init__(self, source: DeleteSpace, target: DeleteSpace, mapping: Mapping[str, str]):
        pm = PointMap(source.space, target.space, mapping)
        bad = sorted(p for p in source.points if pm(p) in target.null and p not in source.null)
        if bad:
            raise NotADeleteMorphism(f"the preimage of the target null ideal contains non-null points {bad!r}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "point_map", pm)

    @property
    def mapping(self) -> dict:
        return self.point_map.mapping


def loomis(B: FinBool) -> DeleteSpace:
    """Baire-meager ideal on the Stone space of ``B``; trivial at finite scale."""
    S = stone(B)
    return DeleteSpace(S, (p for m in S.meager_sets() for p in m))


def loomis_map(phi: BoolHom) -> DeleteMap:
    return DeleteMap(loomis(phi.target), loomis(phi.source), phi.dual_map)


def delete_quotient(D: DeleteSpace) -> tuple[FinBool, BoolHom]:
    """The deletion functor on objects: ``Clopen(D) / nulls`` and the quotient map."""
    return boolalg.quotient(clopen(D.space), D.null_ideal())


def delete_quotient_map(T: DeleteMap) -> BoolHom:
    """The deletion functor on morphisms, descending ``T``'s pullback to the quotients."""
    src, _ = delete_quotient(T.source)
    tgt, _ = delete_quotient(T.target)
    m = T.mapping
    return BoolHom(tgt, src, {p: m[p] for p in src.atoms})


def delete_product(factors: Sequence[DeleteSpace]) -> tuple[DeleteSpace, list[DeleteMap]]:
    """Product space; a point is null iff one of its coordinates is null."""
    factors = list(factors)
    if any(len(f.points) == 0 for f in factors):
        raise ValueError("delete_product factors must be non-empty")
    tuples = list(itertools.product(*(f.points for f in factors)))
    names = [join_ids(t, "|") for t in tuples]
    null = [n for n, t in zip(names, tuples) if any(x in f.null for x, f in zip(t, factors))]
    P = DeleteSpace(names, null)
    projections = [
        DeleteMap(P, f, {n: t[i] for n, t in zip(names, tuples)}) for i, f in enumerate(factors)
    ]
    return P, projections


def absmes_product(factors: Sequence[FinBool]) -> tuple[FinBool, list[BoolHom]]:
    """Product of abstract measurable spaces, built as deletion of the Loomis-Sikorski product.

    The projections are returned as their sigma-homomorphisms
    ``factor -> product``.
    """
    factors = list(factors)
    if any(f.degenerate for f in factors):
        raise ValueError("absmes_product factors must be non-degenerate")
    P, projections = delete_product([loomis(f) for f in factors])
    Q, q = delete_quotient(P)
    homs = []
    for f, pr in zip(factors, projections):
        homs.append(boolalg.compose(q, clopen_map(pr.point_map)))
    return Q, homs
