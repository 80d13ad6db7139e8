"""The function algebra L-infinity of a finite probability algebra.

Functions are tuples of exact Gaussian rationals indexed by the atoms of the
base algebra (in canonical order).  Quantities that would need a square root
are reported squared: ``|z|**2`` instead of ``|z|``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import proba
from .proba import ProbAlgebra, ProbMorphism, as_fraction
from .errors import NotAHomomorphism, NotAState, RealValuedRequired, UnsupportedExponent


@dataclass(frozen=True)
class Gauss:
    """An exact Gaussian rational ``re + i*im``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def of(cls, x) -> "Gauss":
        if isinstance(x, Gauss):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact; build Gauss(re, im) from rationals")
        return cls(as_fraction(x))

    def __add__(self, other):
        o = Gauss.of(other)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Gauss.of(other))

    def __rsub__(self, other):
        return Gauss.of(other) - self

    def __mul__(self, other):
        o = Gauss.of(other)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Gauss.of(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("Gauss division by zero")
        q = self * o.conj()
        return Gauss(q.re / n, q.im / n)

    def conj(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, Gauss):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})" if self.im else f"Gauss({self.re})"


ZERO = Gauss()
ONE = Gauss(Fraction(1))


@dataclass(frozen=True)
class FuncAlg:
    """L-infinity of ``base``: pointwise operations, trace weighted by the atom masses."""

    base: ProbAlgebra

    @property
    def atoms(self) -> tuple:
        return self.base.atoms

    @property
    def dim(self) -> int:
        return len(self.base.atoms)

    def element(self, values: Mapping[str, object] | Sequence) -> tuple:
        if isinstance(values, Mapping):
            if set(values) != set(self.atoms):
                raise ValueError("function values must be given on exactly the atoms")
            values = [values[a] for a in self.atoms]
        values = tuple(Gauss.of(v) for v in values)
        if len(values) != self.dim:
            raise ValueError(f"expected {self.dim} values, got {len(values)}")
        return values

    def one(self) -> tuple:
        return (ONE,) * self.dim

    def zero(self) -> tuple:
        return (ZERO,) * self.dim

    def indicator(self, element: Iterable[str]) -> tuple:
        e = self.base.algebra.element(element)
        return tuple(ONE if a in e else ZERO for a in self.atoms)

    def add(self, f, g) -> tuple:
        return tuple(x + y for x, y in zip(f, g))

    def mul(self, f, g) -> tuple:
        return tuple(x * y for x, y in zip(f, g))

    def scale(self, c, f) -> tuple:
        c = Gauss.of(c)
        return tuple(c * x for x in f)

    def star(self, f) -> tuple:
        return tuple(x.conj() for x in f)

    def trace(self, f) -> Gauss:
        return sum((x * m for x, m in zip(f, self.base.masses)), ZERO)

    def is_projection(self, f) -> bool:
        return f == self.star(f) == self.mul(f, f)

    def projections(self) -> list[tuple]:
        """All projections, found by solving ``f = f* = f**2`` coordinatewise.

        Each coordinate ``z`` must satisfy ``z**2 = z`` with ``z`` real, so it
        is 0 or 1.
        """
        return [tuple(c) for c in itertools.product((ZERO, ONE), repeat=self.dim)]

    def sup_norm2(self, f) -> Fraction:
        """``||f||_inf ** 2``."""
        return max((x.abs2() for x in f), default=Fraction(0))

    def support(self, p) -> frozenset:
        return frozenset(a for a, x in zip(self.atoms, p) if x == ONE)


def linfty(X: ProbAlgebra) -> FuncAlg:
    return FuncAlg(X)


@dataclass(frozen=True)
class Koopman:
    """``g -> g o T``, a unital trace-preserving *-homomorphism L(Y) -> L(X)."""

    morphism: ProbMorphism

    @property
    def source(self) -> FuncAlg:
        return FuncAlg(self.morphism.target)

    @property
    def target(self) -> FuncAlg:
        return FuncAlg(self.morphism.source)

    def __call__(self, g) -> tuple:
        Y = self.morphism.target
        gv = dict(zip(Y.atoms, g))
        return tuple(gv[self.morphism(a)] for a in self.morphism.source.atoms)


def koopman(T: ProbMorphism) -> Koopman:
    return Koopman(T)


def koopman_compose(later: Koopman, earlier: Koopman) -> Koopman:
    """``later o earlier`` as operators; equals ``koopman(T o S)`` for earlier = S, later = T."""
    return Koopman(proba.compose(earlier.morphism, later.morphism))


def idem(A: FuncAlg) -> ProbAlgebra:
    """The probability algebra of projections of ``A``.

    Minimal non-zero projections are the atom indicators; each becomes an atom
    of mass ``trace(p)``.
    """
    minimal = [p for p in A.projections() if sum(1 for x in p if x == ONE) == 1]
    measure = {}
    for p in minimal:
        (a,) = A.support(p)
        t = A.trace(p)
        assert t.is_real
        measure[a] = t.re
    return ProbAlgebra(measure.keys(), measure)


def idem_map(K: Koopman) -> ProbMorphism:
    """Idem on morphisms: recover the point map from the images of minimal projections.

    Atom ``a`` of the source space goes to the unique ``b`` with
    ``K(1_b)(a) = 1``.
    """
    X = idem(K.target)
    Y = idem(K.source)
    B = FuncAlg(Y)
    pm = {}
    for b in Y.atoms:
        image = K(B.indicator([b]))
        if not K.target.is_projection(image):
            raise NotAHomomorphism("operator does not send projections to projections")
        for a in K.target.support(image):
            if a in pm:
                raise NotAHomomorphism("images of minimal projections overlap")
            pm[a] = b
    return ProbMorphism(X, Y, pm)


def integrate(A: FuncAlg, f) -> Gauss:
    return A.trace(A.element(f))


def cond_exp(pi: ProbMorphism, f) -> tuple:
    """Conditional expectation onto the factor ``pi: X -> Y``, as a function on Y.

    ``E(f|Y)(b)`` is the mass-weighted average of ``f`` over the fiber of ``b``.
    """
    X, Y = pi.source, pi.target
    f = FuncAlg(X).element(f)
    sums = dict.fromkeys(Y.atoms, ZERO)
    for a, x, m in zip(X.atoms, f, X.masses):
        sums[pi(a)] += x * m
    return tuple(sums[b] / Y.measure[b] for b in Y.atoms)


def lp_norm(A: FuncAlg, f, p) -> Fraction:
    """Abstract L^p norms for ``p`` in ``{1, 2, inf}``.

    * ``p=1``: ``||f||_1`` for real ``f``, via the level-set integral
      ``sum (r_i - r_{i-1}) * mu(|f| > r_{i-1})``, cross-checked against
      ``sum |f(a)| mu(a)``;
    * ``p=2``: ``||f||_2 ** 2 = trace(f f*)``;
    * ``p=inf``: ``max |f|`` for real ``f``, ``max |f| ** 2`` otherwise.
    """
    f = A.element(f)
    if p in (1, "1"):
        if not all(x.is_real for x in f):
            raise RealValuedRequired("the L1 norm is computed for real-valued functions only")
        level = level_set_l1(A, f)
        direct = sum((abs(x.re) * m for x, m in zip(f, A.base.masses)), Fraction(0))
        assert level == direct, (level, direct)
        return level
    if p in (2, "2"):
        return A.trace(A.mul(f, A.star(f))).re
    if p in ("inf", "oo", float("inf")):
        if all(x.is_real for x in f):
            return max((abs(x.re) for x in f), default=Fraction(0))
        return A.sup_norm2(f)
    raise UnsupportedExponent(f"p must be 1, 2 or inf, got {p!r}")


def level_set_l1(A: FuncAlg, f) -> Fraction:
    """``integral_0^inf mu(|f| > r) dr`` for real ``f``; the integrand is a step function."""
    absf = [abs(x.re) for x in f]
    total = Fraction(0)
    prev = Fraction(0)
    for r in sorted(set(absf)):
        above = [a for a, v in zip(A.atoms, absf) if v > prev]
        total += (r - prev) * A.base.mu(above)
        prev = r
    return total


@dataclass(frozen=True, init=False)
class FiniteState:
    """A state on the continuous functions of a finite space, given on point indicators."""

    points: tuple
    values: tuple

    def __init__(self, values: Mapping[str, object]):
        points = tuple(sorted(values))
        vals = tuple(as_fraction(values[p]) for p in points)
        if any(v < 0 for v in vals):
            raise NotAState("a state is non-negative")
        if sum(vals) != 1:
            raise NotAState(f"a state takes the value 1 on the constant 1, got {sum(vals)}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", vals)

    def __call__(self, f: Mapping[str, object]) -> Fraction:
        """Evaluate on a function by linearity over the point indicators."""
        return sum((as_fraction(f[p]) * v for p, v in zip(self.points, self.values)), Fraction(0))


def riesz_finite(points: Iterable[str], state: FiniteState) -> dict[str, Fraction]:
    """The unique probability measure representing ``state`` on a finite discrete space."""
    points = tuple(sorted(points))
    if points != state.points:
        raise NotAState("state is not defined on exactly the given points")
    mu = {p: state({q: int(q == p) for q in points}) for p in points}
    for p in points:
        indicator = {q: int(q == p) for q in points}
        assert state(indicator) == sum(indicator[q] * mu[q] for q in points)
    return mu
