"""Brute-force checking of categorical laws on finite instances.

A :class:`FiniteCategoryInstance` is a finite list of objects with a hom-set
enumerator, composition and identities.  Morphisms are compared structurally
and must expose ``source`` and ``target``.  Every checker returns a
:class:`LawReport` listing the witnesses of each violation.

Hom-set sizes grow exponentially: between finite Boolean algebras with ``m``
and ``n`` atoms there are ``m**n`` homs, so a composable-pair sweep over
objects of size ``<= k`` costs about ``(#objects)**3 * k**(2k)`` compositions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence


@dataclass
class FiniteCategoryInstance:
    name: str
    objects: list
    hom: Callable[[Any, Any], list]
    compose: Callable[[Any, Any], Any]  # compose(g, f) = g o f
    identity: Callable[[Any], Any]

    def opposite(self) -> "FiniteCategoryInstance":
        return FiniteCategoryInstance(
            f"{self.name}^op",
            self.objects,
            lambda x, y: self.hom(y, x),
            lambda g, f: self.compose(f, g),
            self.identity,
        )

    def composable_pairs(self):
        for x, y, z in itertools.product(self.objects, repeat=3):
            for f in self.hom(x, y):
                for g in self.hom(y, z):
                    yield f, g


@dataclass
class LawReport:
    law: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, ok: bool, witness) -> None:
        self.checked += 1
        if not ok:
            self.violations.append(witness)

    def as_dict(self) -> dict:
        return {
            "law": self.law,
            "checked": self.checked,
            "violations": [stable_repr(v) for v in self.violations],
            "passed": self.passed,
        }


def stable_repr(v) -> str:
    """``repr`` with sets sorted, so reports do not depend on hash seeds."""
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(sorted(stable_repr(x) for x in v)) + "}"
    if isinstance(v, tuple):
        inner = ", ".join(stable_repr(x) for x in v)
        return f"({inner},)" if len(v) == 1 else f"({inner})"
    if isinstance(v, list):
        return "[" + ", ".join(stable_repr(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{stable_repr(k)}: {stable_repr(x)}" for k, x in v.items()) + "}"
    return repr(v)


def check_category_laws(C: FiniteCategoryInstance) -> LawReport:
    """Identity and associativity of the enumerated instance itself."""
    report = LawReport(f"{C.name}: category laws")
    for x, y in itertools.product(C.objects, repeat=2):
        for f in C.hom(x, y):
            report.record(C.compose(C.identity(y), f) == f, ("left identity", f))
            report.record(C.compose(f, C.identity(x)) == f, ("right identity", f))
    for w, x, y, z in itertools.product(C.objects, repeat=4):
        for f in C.hom(w, x):
            for g in C.hom(x, y):
                gf = C.compose(g, f)
                for h in C.hom(y, z):
                    report.record(C.compose(h, gf) == C.compose(C.compose(h, g), f), ("associativity", f, g, h))
    return report


def check_functor_laws(
    name: str,
    obj_map: Callable,
    mor_map: Callable,
    source: FiniteCategoryInstance,
    target: FiniteCategoryInstance,
    contravariant: bool = False,
) -> LawReport:
    """``F(id) = id`` and ``F(g o f) = F(g) o F(f)`` (reversed when contravariant)."""
    report = LawReport(f"{name}: functor laws")
    for x in source.objects:
        report.record(mor_map(source.identity(x)) == target.identity(obj_map(x)), ("identity", x))
    for f, g in source.composable_pairs():
        lhs = mor_map(source.compose(g, f))
        rhs = target.compose(mor_map(f), mor_map(g)) if contravariant else target.compose(mor_map(g), mor_map(f))
        report.record(lhs == rhs, ("composition", f, g))
    return report


def check_naturality(
    name: str,
    component: Callable,
    F_mor: Callable,
    G_mor: Callable,
    source: FiniteCategoryInstance,
    target: FiniteCategoryInstance,
    contravariant: bool = False,
) -> LawReport:
    """``G(f) o eta_X = eta_Y o F(f)`` for every ``f: X -> Y``.

    For a pair of contravariant functors the square reads
    ``G(f) o eta_Y = eta_X o F(f)``.
    """
    report = LawReport(f"{name}: naturality")
    for x, y in itertools.product(source.objects, repeat=2):
        for f in source.hom(x, y):
            a, b = (y, x) if contravariant else (x, y)
            lhs = target.compose(G_mor(f), component(a))
            rhs = target.compose(component(b), F_mor(f))
            report.record(lhs == rhs, (f,))
    return report


def check_universal_product(
    name: str,
    candidate,
    projections: Sequence,
    factors: Sequence,
    probes: Sequence,
    instance: FiniteCategoryInstance,
) -> LawReport:
    """Each cone ``(f_i: Y -> X_i)`` factors through exactly one ``phi: Y -> candidate``.

    Pass ``instance.opposite()`` and the injections to check a coproduct.
    """
    report = LawReport(f"{name}: universal product")
    for Y in probes:
        maps = instance.hom(Y, candidate)
        legs = {}
        for phi in maps:
            legs.setdefault(tuple(instance.compose(p, phi) for p in projections), []).append(phi)
        for cone in itertools.product(*(instance.hom(Y, X) for X in factors)):
            found = legs.get(tuple(cone), [])
            report.record(len(found) == 1, ("existence" if not found else "uniqueness", Y, cone, len(found)))
    return report


def check_mono_epi(f, probes: Sequence, instance: FiniteCategoryInstance, source=None, target=None) -> tuple[bool, bool]:
    """Brute-force (mono, epi) of ``f`` against the probe objects.

    Mono: ``f o g = f o g'`` forces ``g = g'`` for all ``g, g': Z -> source``.
    Epi:  ``g o f = g' o f`` forces ``g = g'`` for all ``g, g': target -> Z``.
    """
    source = f.source if source is None else source
    target = f.target if target is None else target
    mono = epi = True
    for Z in probes:
        if mono:
            gs = instance.hom(Z, source)
            mono = len({instance.compose(f, g) for g in gs}) == len(set(gs))
        if epi:
            gs = instance.hom(target, Z)
            epi = len({instance.compose(g, f) for g in gs}) == len(set(gs))
    return mono, epi


@dataclass
class MonoidalStructure:
    """Components of a symmetric monoidal structure on an instance.

    ``marginals(a, b)`` returns the two structure maps relating ``a (x) b``
    to its factors: projections ``a (x) b -> a, b`` when ``kind`` is
    ``"semicartesian"``, injections ``a, b -> a (x) b`` when
    ``"cosemicartesian"``.
    """

    tensor: Callable
    tensor_mor: Callable
    unit: Any
    associator: Callable
    left_unitor: Callable
    right_unitor: Callable
    braiding: Callable
    marginals: Callable | None = None
    kind: str = "semicartesian"


def check_monoidal_coherence(
    name: str, M: MonoidalStructure, instance: FiniteCategoryInstance, objects: Sequence | None = None
) -> list[LawReport]:
    C = instance
    objs = list(C.objects if objects is None else objects)
    T, Tm = M.tensor, M.tensor_mor
    idn = C.identity
    comp = C.compose

    pentagon = LawReport(f"{name}: pentagon")
    for a, b, c, d in itertools.product(objs, repeat=4):
        lhs = comp(M.associator(a, b, T(c, d)), M.associator(T(a, b), c, d))
        rhs = comp(
            Tm(idn(a), M.associator(b, c, d)),
            comp(M.associator(a, T(b, c), d), Tm(M.associator(a, b, c), idn(d))),
        )
        pentagon.record(lhs == rhs, (a, b, c, d))

    triangle = LawReport(f"{name}: triangle")
    for a, b in itertools.product(objs, repeat=2):
        lhs = comp(Tm(idn(a), M.left_unitor(b)), M.associator(a, M.unit, b))
        triangle.record(lhs == Tm(M.right_unitor(a), idn(b)), (a, b))

    hexagon = LawReport(f"{name}: hexagon")
    for a, b, c in itertools.product(objs, repeat=3):
        lhs = comp(M.associator(b, c, a), comp(M.braiding(a, T(b, c)), M.associator(a, b, c)))
        rhs = comp(Tm(idn(b), M.braiding(a, c)), comp(M.associator(b, a, c), Tm(M.braiding(a, b), idn(c))))
        hexagon.record(lhs == rhs, (a, b, c))

    symmetry = LawReport(f"{name}: braiding squares to identity")
    for a, b in itertools.product(objs, repeat=2):
        symmetry.record(comp(M.braiding(b, a), M.braiding(a, b)) == idn(T(a, b)), (a, b))

    reports = [pentagon, triangle, hexagon, symmetry]
    if M.marginals is not None:
        nat = LawReport(f"{name}: {M.kind} marginal naturality")
        for a, a2, b, b2 in itertools.product(objs, repeat=4):
            m_src = M.marginals(a, b)
            m_tgt = M.marginals(a2, b2)
            for f in C.hom(a, a2):
                for g in C.hom(b, b2):
                    fg = Tm(f, g)
                    for i, h in enumerate((f, g)):
                        if M.kind == "semicartesian":
                            ok = comp(m_tgt[i], fg) == comp(h, m_src[i])
                        else:
                            ok = comp(fg, m_src[i]) == comp(m_tgt[i], h)
                        nat.record(ok, (i, f, g))
        reports.append(nat)
    return reports
