"""Finite Boolean algebras in canonical atom form.

A finite Boolean algebra is the powerset of its atoms, so an algebra is stored
as its sorted tuple of atom identifiers and an element is a ``frozenset`` of
atoms.  A Boolean homomorphism ``B -> C`` is stored through its Stone dual,
the point map ``atoms(C) -> atoms(B)``; the element map is recovered as the
preimage ``E -> {c : dual(c) in E}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import AbstractSet, Hashable, Iterable, Iterator, Mapping, Sequence

from ._names import check_atom_id, join_ids
from .errors import CompositionMismatch, InvalidGenerator, NotAHomomorphism


@dataclass(frozen=True, init=False)
class FinBool:
    """A finite Boolean algebra, identified with the powerset of ``atoms``."""

    atoms: tuple

    def __init__(self, atoms: Iterable[str]):
        atoms = tuple(atoms)
        for a in atoms:
            check_atom_id(a)
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"duplicate atoms in {atoms!r}")
        object.__setattr__(self, "atoms", tuple(sorted(atoms)))

    def __len__(self) -> int:
        return len(self.atoms)

    def __repr__(self) -> str:
        return f"FinBool({list(self.atoms)!r})"

    @property
    def degenerate(self) -> bool:
        """The 0-atom algebra, in which 0 = 1."""
        return not self.atoms

    @property
    def zero(self) -> frozenset:
        return frozenset()

    @property
    def one(self) -> frozenset:
        return frozenset(self.atoms)

    def element(self, atoms: Iterable[str]) -> frozenset:
        e = frozenset(atoms)
        extra = e - set(self.atoms)
        if extra:
            raise ValueError(f"{sorted(extra)!r} are not atoms of {self!r}")
        return e

    def meet(self, *elements: AbstractSet[str]) -> frozenset:
        out = self.one
        for e in elements:
            out &= e
        return frozenset(out)

    def join(self, *elements: AbstractSet[str]) -> frozenset:
        out = frozenset()
        for e in elements:
            out |= e
        return frozenset(out)

    def complement(self, element: AbstractSet[str]) -> frozenset:
        return self.one - element

    def leq(self, e: AbstractSet[str], f: AbstractSet[str]) -> bool:
        return e <= f

    def elements(self) -> Iterator[frozenset]:
        """All ``2**len(self)`` elements, in a fixed order."""
        for r in range(len(self.atoms) + 1):
            for combo in itertools.combinations(self.atoms, r):
                yield frozenset(combo)


@dataclass(frozen=True, init=False)
class BoolHom:
    """A Boolean (= sigma-) homomorphism ``source -> target``.

    ``images[i]`` is the source atom whose image contains ``target.atoms[i]``.
    """

    source: FinBool
    target: FinBool
    images: tuple

    def __init__(self, source: FinBool, target: FinBool, dual_map: Mapping[str, str]):
        missing = set(target.atoms) - set(dual_map)
        if missing:
            raise NotAHomomorphism(f"dual map undefined on target atoms {sorted(missing)!r}")
        extra = set(dual_map) - set(target.atoms)
        if extra:
            raise NotAHomomorphism(f"dual map defined on non-atoms {sorted(extra)!r}")
        src = set(source.atoms)
        for c in target.atoms:
            if dual_map[c] not in src:
                raise NotAHomomorphism(f"dual map sends {c!r} to non-atom {dual_map[c]!r}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", tuple(dual_map[c] for c in target.atoms))

    @cached_property
    def dual_map(self) -> Mapping[str, str]:
        return MappingProxyType(dict(zip(self.target.atoms, self.images)))

    def __call__(self, element: AbstractSet[str]) -> frozenset:
        return frozenset(c for c, a in zip(self.target.atoms, self.images) if a in element)

    def __repr__(self) -> str:
        return f"BoolHom({list(self.source.atoms)} -> {list(self.target.atoms)}, {self.dual_map!r})"


@dataclass(frozen=True)
class BoolIdeal:
    """The ideal of all elements below ``join(null_atoms)``."""

    parent: FinBool
    null_atoms: frozenset

    def __post_init__(self):
        object.__setattr__(self, "null_atoms", self.parent.element(self.null_atoms))

    def __repr__(self) -> str:
        return f"BoolIdeal({self.parent!r}, null_atoms={sorted(self.null_atoms)!r})"

    def __contains__(self, element: AbstractSet[str]) -> bool:
        return element <= self.null_atoms

    def members(self) -> Iterator[frozenset]:
        return (e for e in self.parent.elements() if e in self)


def _point_key(p: Hashable):
    return (type(p).__name__, p) if isinstance(p, (int, float, str)) else (type(p).__name__, repr(p))


def from_generators(universe: Iterable, generators: Sequence[Iterable]) -> tuple[FinBool, dict]:
    """Atoms of the algebra of subsets of ``universe`` generated by ``generators``.

    Each atom is named by its member points joined with ``+``.  Returns the
    algebra and the map sending every point to the atom containing it.
    """
    points = sorted(set(universe), key=_point_key)
    gens = [frozenset(g) for g in generators]
    for i, g in enumerate(gens):
        outside = g - set(points)
        if outside:
            raise InvalidGenerator(f"generator {i} contains points outside the universe: {sorted(outside, key=_point_key)!r}")
    blocks: dict[tuple, list] = {}
    for p in points:
        blocks.setdefault(tuple(p in g for g in gens), []).append(p)
    block_map = {}
    names = []
    for members in blocks.values():
        name = check_atom_id(join_ids([str(p) for p in members], "+"))
        names.append(name)
        for p in members:
            block_map[p] = name
    return FinBool(names), block_map


def identity(B: FinBool) -> BoolHom:
    return BoolHom(B, B, {a: a for a in B.atoms})


def validate_hom(source: FinBool, target: FinBool, element_map: Mapping[str, Iterable[str]]) -> BoolHom:
    """Extend an assignment ``source atom -> target element`` to a homomorphism.

    The images of the atoms must partition the unit of ``target``.
    """
    if set(element_map) != set(source.atoms):
        raise NotAHomomorphism("element map must assign an image to every source atom, and only to atoms")
    dual = {}
    for a in source.atoms:
        for c in target.element(element_map[a]):
            if c in dual:
                raise NotAHomomorphism(f"images of atoms {dual[c]!r} and {a!r} overlap at {c!r}")
            dual[c] = a
    uncovered = set(target.atoms) - set(dual)
    if uncovered:
        raise NotAHomomorphism(f"images fail to cover the unit; missing {sorted(uncovered)!r}")
    return BoolHom(source, target, dual)


def compose(later: BoolHom, earlier: BoolHom) -> BoolHom:
    """``later o earlier``."""
    if earlier.target != later.source:
        raise CompositionMismatch(f"cannot compose: {earlier.target!r} is not {later.source!r}")
    d = earlier.dual_map
    return BoolHom(earlier.source, later.target, {c: d[a] for c, a in later.dual_map.items()})


def is_mono(phi: BoolHom) -> bool:
    return set(phi.images) == set(phi.source.atoms)


def is_epi(phi: BoolHom) -> bool:
    return len(set(phi.images)) == len(phi.images)


def is_iso(phi: BoolHom) -> bool:
    return is_mono(phi) and is_epi(phi)


def inverse(phi: BoolHom) -> BoolHom:
    if not is_iso(phi):
        raise NotAHomomorphism(f"{phi!r} is not bijective")
    return BoolHom(phi.target, phi.source, {a: c for c, a in phi.dual_map.items()})


def all_homs(source: FinBool, target: FinBool) -> Iterator[BoolHom]:
    """Every homomorphism ``source -> target``; there are ``|source|**|target|``."""
    for images in itertools.product(source.atoms, repeat=len(target.atoms)):
        yield BoolHom(source, target, dict(zip(target.atoms, images)))


def isomorphism(B: FinBool, C: FinBool) -> BoolHom | None:
    """Some isomorphism ``B -> C`` (atom relabelling), or None."""
    if len(B) != len(C):
        return None
    return BoolHom(B, C, dict(zip(C.atoms, B.atoms)))


def coproduct(factors: Sequence[FinBool]) -> tuple[FinBool, list[BoolHom]]:
    """Coproduct (= tensor product) of finite Boolean algebras.

    Atoms are tuples of factor atoms, named ``a1|a2|...``.  A degenerate
    factor makes the whole coproduct degenerate.
    """
    factors = list(factors)
    if any(f.degenerate for f in factors):
        D = FinBool(())
        return D, [BoolHom(f, D, {}) for f in factors]
    tuples = list(itertools.product(*(f.atoms for f in factors)))
    names = [join_ids(t, "|") for t in tuples]
    C = FinBool(names)
    injections = [
        BoolHom(f, C, {n: t[i] for n, t in zip(names, tuples)}) for i, f in enumerate(factors)
    ]
    return C, injections


def tensor_hom(homs: Sequence[BoolHom]) -> BoolHom:
    """``f1 (x) f2 (x) ...`` between coproducts, acting coordinatewise on dual points."""
    src, _ = coproduct([h.source for h in homs])
    tgt, _ = coproduct([h.target for h in homs])
    duals = [h.dual_map for h in homs]
    dual = {}
    for t in itertools.product(*(h.target.atoms for h in homs)):
        dual[join_ids(t, "|")] = join_ids([d[x] for d, x in zip(duals, t)], "|")
    return BoolHom(src, tgt, dual)


def quotient(B: FinBool, ideal: BoolIdeal) -> tuple[FinBool, BoolHom]:
    """``B / ideal`` together with the (surjective) quotient map."""
    if ideal.parent != B:
        raise ValueError("ideal belongs to a different algebra")
    Q = FinBool(a for a in B.atoms if a not in ideal.null_atoms)
    return Q, BoolHom(B, Q, {a: a for a in Q.atoms})
