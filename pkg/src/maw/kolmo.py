"""Kolmogorov extension as a lazy cylinder-measure engine.

A :class:`ConsistentFamily` supplies, for each finite index set ``F``, a
probability measure on the product of the factor algebras over ``F``.  The
extension is never materialised; :class:`CylinderMeasure` answers queries
about cylinder events by evaluating finite marginals, auditing consistency of
every marginal it touches against its one-smaller sub-marginals.

Index sets are sorted tuples; product atoms are tuples of factor atoms in
index order.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from ._names import join_ids
from .boolalg import FinBool
from .errors import InconsistentFamily, NotStochastic, UnknownIndex
from .proba import MeasuredBool, ProbAlgebra, as_fraction

Marginal = dict  # tuple of factor atoms -> Fraction


def _key(F: Iterable) -> tuple:
    return tuple(sorted(set(F)))


@dataclass(frozen=True)
class ConsistentFamily:
    """Factors and finite-dimensional marginals indexed by a finite list or by 1, 2, 3, ...

    ``factor(i)`` is the measurable space (a :class:`FinBool`) at index ``i``;
    ``marginal(F)`` maps each product atom over ``F`` to its mass and may
    omit zero-mass atoms.
    """

    factor: Callable[[int], FinBool]
    marginal: Callable[[tuple], Marginal]
    universe: tuple | None = None  # None: the natural numbers 1, 2, 3, ...

    def check_index(self, i) -> None:
        if self.universe is None:
            if not (isinstance(i, int) and i >= 1):
                raise UnknownIndex(f"index {i!r} is not a natural number >= 1")
        elif i not in self.universe:
            raise UnknownIndex(f"index {i!r} is not in the universe {list(self.universe)!r}")

    def product_atoms(self, F: tuple) -> list[tuple]:
        return list(itertools.product(*(self.factor(i).atoms for i in F)))


def project(family: ConsistentFamily, mu: Marginal, Fp: tuple, F: tuple) -> Marginal:
    """Pushforward of a marginal over ``Fp`` to ``F`` (a subset) along the coordinate projection."""
    pos = [Fp.index(i) for i in F]
    out = {t: Fraction(0) for t in family.product_atoms(F)}
    for t, m in mu.items():
        out[tuple(t[p] for p in pos)] += m
    return out


def _full(family: ConsistentFamily, F: tuple) -> Marginal:
    mu = family.marginal(F)
    out = {t: Fraction(0) for t in family.product_atoms(F)}
    for t, m in mu.items():
        t = tuple(t)
        if t not in out:
            raise InconsistentFamily(f"marginal over {list(F)} charges non-atom {t!r}", pair=(F, F))
        out[t] = as_fraction(m)
    return out


@dataclass
class ConsistencyReport:
    pairs_checked: int = 0
    violations: list = field(default_factory=list)  # (F, F', atom, expected, actual)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_consistency(family: ConsistentFamily, pairs: Iterable[tuple[Iterable, Iterable]]) -> ConsistencyReport:
    report = ConsistencyReport()
    for F, Fp in pairs:
        F, Fp = _key(F), _key(Fp)
        if not set(F) <= set(Fp):
            raise ValueError(f"{list(F)} is not a subset of {list(Fp)}")
        for i in Fp:
            family.check_index(i)
        pushed = project(family, _full(family, Fp), Fp, F)
        direct = _full(family, F)
        report.pairs_checked += 1
        for t in family.product_atoms(F):
            if pushed[t] != direct[t]:
                report.violations.append((F, Fp, t, direct[t], pushed[t]))
    return report


def subset_pairs(indices: Sequence, max_size: int) -> list[tuple[tuple, tuple]]:
    """Every pair ``F <= F'`` of subsets of ``indices`` with ``|F'| <= max_size``."""
    pairs = []
    for k in range(max_size + 1):
        for Fp in itertools.combinations(sorted(indices), k):
            for j in range(k + 1):
                for F in itertools.combinations(Fp, j):
                    pairs.append((F, Fp))
    return pairs


class CylinderMeasure:
    """The extension measure, queried through cylinder events.

    The marginal cache is shared between threads; a racing fill computes the
    same value, so last write wins.
    """

    def __init__(self, family: ConsistentFamily):
        self.family = family
        self._cache: dict[tuple, Marginal] = {}
        self._audited: set = set()
        self._lock = threading.Lock()

    def marginal(self, F: Iterable) -> Marginal:
        F = _key(F)
        for i in F:
            self.family.check_index(i)
        self._audit(F)
        return self._cache[F]

    def _get(self, F: tuple) -> Marginal:
        mu = self._cache.get(F)
        if mu is None:
            mu = _full(self.family, F)
            if sum(mu.values()) != 1:
                raise InconsistentFamily(f"marginal over {list(F)} has total mass {sum(mu.values())}", pair=(F, F))
            with self._lock:
                self._cache[F] = mu
        return mu

    def _audit(self, F: tuple) -> None:
        """Check ``F`` against each one-smaller subset, recursively, once per ``F``."""
        if F in self._audited:
            return
        mu = self._get(F)
        for i in F:
            sub = tuple(x for x in F if x != i)
            if sub:
                self._audit(sub)
                pushed = project(self.family, mu, F, sub)
                expected = self._get(sub)
                for t, m in expected.items():
                    if pushed[t] != m:
                        raise InconsistentFamily(
                            f"projecting the marginal over {list(F)} to {list(sub)} gives {pushed[t]} "
                            f"at {t!r}, but the marginal over {list(sub)} gives {m}",
                            pair=(sub, F),
                        )
        with self._lock:
            self._audited.add(F)

    def query(self, F: Iterable, event: Iterable[Sequence[str]], over: Iterable | None = None) -> Fraction:
        """Mass of the cylinder ``{x : (x_i)_{i in F} in event}``.

        ``event`` lists tuples of factor atoms in the order of ``sorted(F)``.
        With ``over`` (a superset of ``F``) the cylinder is re-expressed over
        that larger index set before evaluation; the result is the same.
        """
        F = _key(F)
        for i in F:
            self.family.check_index(i)
        event = {tuple(t) for t in event}
        atoms = set(self.family.product_atoms(F))
        stray = event - atoms
        if stray:
            raise ValueError(f"event contains non-atoms {sorted(stray)!r}")
        G = F if over is None else _key(over)
        if not set(F) <= set(G):
            raise ValueError("the representing index set must contain F")
        mu = self.marginal(G)
        pos = [G.index(i) for i in F]
        return sum((m for t, m in mu.items() if tuple(t[p] for p in pos) in event), Fraction(0))


def extend(family: ConsistentFamily) -> CylinderMeasure:
    return CylinderMeasure(family)


def iid_family(factor: ProbAlgebra, universe: Sequence[int] | None = None) -> ConsistentFamily:
    def marginal(F: tuple) -> Marginal:
        out = {}
        for t in itertools.product(factor.atoms, repeat=len(F)):
            m = Fraction(1)
            for x in t:
                m *= factor.measure[x]
            out[t] = m
        return out

    return ConsistentFamily(lambda i: factor.algebra, marginal, None if universe is None else tuple(universe))


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum((A[i][l] * B[l][j] for l in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def markov_family(
    initial: Mapping[str, object],
    transition: Mapping[str, Mapping[str, object]],
    universe: Sequence[int] | None = None,
) -> ConsistentFamily:
    """Marginals of the chain with ``P(X_1 = s) = initial[s]`` and ``P(X_{n+1}=t | X_n=s) = transition[s][t]``.

    Indices start at 1.  Zero transition probabilities are allowed.
    """
    states = tuple(sorted(initial))
    algebra = FinBool(states)
    init = [as_fraction(initial[s]) for s in states]
    if any(v < 0 for v in init) or sum(init) != 1:
        raise NotStochastic("initial distribution must be non-negative and sum to 1")
    if set(transition) != set(states):
        raise NotStochastic("transition matrix needs exactly one row per state")
    P = []
    for s in states:
        row = transition[s]
        if set(row) - set(states):
            raise NotStochastic(f"row {s!r} mentions unknown states")
        r = [as_fraction(row.get(t, 0)) for t in states]
        if any(v < 0 for v in r) or sum(r) != 1:
            raise NotStochastic(f"row {s!r} is not a probability vector")
        P.append(r)
    n = len(states)
    powers = {0: [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]}

    def power(k: int):
        if k not in powers:
            powers[k] = _matmul(power(k - 1), P)
        return powers[k]

    def marginal(F: tuple) -> Marginal:
        if not F:
            return {(): Fraction(1)}
        dist = _matmul([init], power(F[0] - 1))[0]
        out = {}
        for t in itertools.product(range(n), repeat=len(F)):
            m = dist[t[0]]
            for (i, j), (x, y) in zip(zip(F, F[1:]), zip(t, t[1:])):
                if m == 0:
                    break
                m *= power(j - i)[x][y]
            out[tuple(states[x] for x in t)] = m
        return out

    return ConsistentFamily(lambda i: algebra, marginal, None if universe is None else tuple(universe))


def explicit_family(
    factors: Mapping[int, FinBool], marginals: Mapping[Iterable[int], Mapping[tuple, object]]
) -> ConsistentFamily:
    """A family over a finite universe given by listing its marginals.

    Marginals not listed are derived by projecting from the full index set;
    consistency of the listed ones is not assumed.
    """
    universe = tuple(sorted(factors))
    table = {_key(F): {tuple(t): as_fraction(m) for t, m in mu.items()} for F, mu in marginals.items()}
    def marginal(F: tuple) -> Marginal:
        if F in table:
            return table[F]
        if not F:
            return {(): Fraction(1)}
        if universe not in table:
            raise InconsistentFamily(f"no marginal given over {list(F)} or over the full universe")
        return project(fam, table[universe], universe, F)

    fam = ConsistentFamily(lambda i: factors[i], marginal, universe)
    return fam


def as_measured(family: ConsistentFamily, F: Iterable) -> MeasuredBool:
    """The marginal over ``F`` as a measured algebra with ``|``-joined atom names."""
    F = _key(F)
    mu = _full(family, F)
    return MeasuredBool([join_ids(t, "|") for t in mu], {join_ids(t, "|"): m for t, m in mu.items()})
