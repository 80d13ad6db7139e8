"""Canonical disintegration, relative products and ergodic components."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import boolalg, funcalg, proba
from ._names import join_ids
from .errors import TargetMismatch
from .proba import ProbAlgebra, ProbMorphism, as_fraction


@dataclass(frozen=True, init=False)
class Kernel:
    """One probability vector on the atoms of X per atom of Y.

    ``fibers[j][i]`` is the mass of ``X.atoms[i]`` under the measure at
    ``Y.atoms[j]``.  Continuity in ``y`` is vacuous on a finite discrete Y.
    """

    base: ProbMorphism
    fibers: tuple

    def __init__(self, base: ProbMorphism, fibers: Mapping[str, Mapping[str, object]]):
        X, Y = base.source, base.target
        if set(fibers) != set(Y.atoms):
            raise ValueError("kernel needs one fiber measure per target atom")
        rows = []
        for b in Y.atoms:
            row = fibers[b]
            if set(row) - set(X.atoms):
                raise ValueError(f"fiber {b!r} mentions non-atoms")
            rows.append(tuple(as_fraction(row.get(a, 0)) for a in X.atoms))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "fibers", tuple(rows))

    def fiber(self, b: str) -> dict[str, Fraction]:
        j = self.base.target.atoms.index(b)
        return dict(zip(self.base.source.atoms, self.fibers[j]))

    def as_dict(self) -> dict[str, dict[str, Fraction]]:
        return {b: self.fiber(b) for b in self.base.target.atoms}

    def support_ok(self) -> bool:
        pm = self.base.point_map
        return all(
            m == 0 or pm[a] == b
            for b, row in zip(self.base.target.atoms, self.fibers)
            for a, m in zip(self.base.source.atoms, row)
        )

    def normalized(self) -> bool:
        return all(sum(row) == 1 for row in self.fibers)

    def mixture(self) -> tuple:
        """``sum_y mu_Y(y) * fiber(y)`` as a vector over the atoms of X."""
        X, Y = self.base.source, self.base.target
        return tuple(
            sum((my * row[i] for my, row in zip(Y.masses, self.fibers)), Fraction(0))
            for i in range(len(X.atoms))
        )

    def mixture_ok(self) -> bool:
        return self.mixture() == self.base.source.masses


def disintegrate(pi: ProbMorphism) -> Kernel:
    """``mu_y(a) = mu_X(a) / mu_Y(y)`` on the fiber over ``y``, zero elsewhere."""
    X, Y = pi.source, pi.target
    fibers = {b: {} for b in Y.atoms}
    for a, m in zip(X.atoms, X.masses):
        b = pi(a)
        fibers[b][a] = m / Y.measure[b]
    return Kernel(pi, fibers)


def disint_identity_violations(kernel: Kernel) -> list[tuple[str, str, Fraction, Fraction]]:
    """Indicator pairs ``(f, g) = (1_a, 1_y)`` at which the disintegration identity fails.

    The identity ``int f (g o pi) dmu_X = int_Y (int f dmu_y) g dmu_Y`` is
    evaluated with both sides as explicit integrals.
    """
    pi = kernel.base
    X, Y = pi.source, pi.target
    AX, AY = funcalg.FuncAlg(X), funcalg.FuncAlg(Y)
    K = funcalg.koopman(pi)
    gs = [(b, AY.indicator([b])) for b in Y.atoms]
    pulled = [K(g) for _, g in gs]
    out = []
    for a in X.atoms:
        f = AX.indicator([a])
        inner = tuple(
            sum((m * x for m, x in zip(row, f)), funcalg.ZERO) for row in kernel.fibers
        )
        for (b, g), Kg in zip(gs, pulled):
            lhs = AX.trace(AX.mul(f, Kg))
            rhs = AY.trace(AY.mul(inner, g))
            if lhs != rhs:
                out.append((a, b, lhs.re, rhs.re))
    return out


def verify_uniqueness(pi: ProbMorphism, candidate: Kernel) -> bool:
    """Whether ``candidate`` satisfies the disintegration identity on every indicator pair.

    The indicator pairs determine every fiber entry, so a satisfying kernel
    must coincide with :func:`disintegrate`; this is asserted.
    """
    if candidate.base != pi:
        raise ValueError("candidate kernel is over a different morphism")
    ok = not disint_identity_violations(candidate)
    if ok:
        assert candidate == disintegrate(pi)
    return ok


def rel_product(pi1: ProbMorphism, pi2: ProbMorphism) -> tuple[ProbAlgebra, ProbMorphism, ProbMorphism]:
    """Relatively independent product ``X1 (x)_Y X2``; atoms are named ``a1&a2``."""
    if pi1.target != pi2.target:
        raise TargetMismatch("relative product needs morphisms into the same algebra")
    Y = pi1.target
    k1, k2 = disintegrate(pi1), disintegrate(pi2)
    raw = {}
    proj1, proj2 = {}, {}
    for b, my in zip(Y.atoms, Y.masses):
        f1, f2 = k1.fiber(b), k2.fiber(b)
        for a1 in pi1.fiber(b):
            for a2 in pi2.fiber(b):
                n = join_ids([a1, a2], "&")
                raw[n] = f1[a1] * f2[a2] * my
                proj1[n], proj2[n] = a1, a2
    X1X2, _ = proba.mes(proba.MeasuredBool(raw.keys(), raw))
    keep = set(X1X2.atoms)
    P1 = ProbMorphism(X1X2, pi1.source, {n: a for n, a in proj1.items() if n in keep})
    P2 = ProbMorphism(X1X2, pi2.source, {n: a for n, a in proj2.items() if n in keep})
    return X1X2, P1, P2


def generated_by_coordinates(P: ProbAlgebra, P1: ProbMorphism, P2: ProbMorphism) -> bool:
    """Whether the pullbacks of the two coordinate algebras generate all of ``P``."""
    gens = [frozenset(P1.fiber(a)) for a in P1.target.atoms]
    gens += [frozenset(P2.fiber(a)) for a in P2.target.atoms]
    algebra, _ = boolalg.from_generators(P.atoms, gens)
    return len(algebra) == len(P)


@dataclass(frozen=True)
class ErgodicDecomposition:
    invariant: ProbAlgebra
    factor: ProbMorphism
    kernel: Kernel
    ergodic: tuple  # one flag per atom of ``invariant``


def is_ergodic(fiber: Mapping[str, Fraction], orbit_list: Sequence[frozenset]) -> bool:
    """Every invariant set (union of orbits) has fiber measure 0 or 1.

    Invariant sets are unions of orbits, so this holds iff at most one orbit
    carries positive fiber mass.
    """
    charged = [o for o in orbit_list if sum((fiber[a] for a in o), Fraction(0)) > 0]
    return len(charged) <= 1


def ergodic_components(X: ProbAlgebra, generators: Sequence[ProbMorphism]) -> ErgodicDecomposition:
    inv, pi = proba.invariant_factor(X, generators)
    kernel = disintegrate(pi)
    orb = proba.orbits(X.atoms, generators)
    flags = tuple(is_ergodic(kernel.fiber(b), orb) for b in inv.atoms)
    return ErgodicDecomposition(inv, pi, kernel, flags)
