import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from maw import boolalg, instances, proba
from maw.errors import NotAnAutomorphism, NotAProbability, NotMeasurePreserving
from maw.proba import MeasuredBool, ProbAlgebra, ProbMorphism

from conftest import measured_algebras, prob_morphisms
from oracles import invariant_sets, orbit_partition

F = Fraction


def test_probability_algebra_validation():
    ProbAlgebra(["a", "b"], {"a": F(1, 3), "b": F(2, 3)})
    with pytest.raises(NotAProbability):
        ProbAlgebra(["a", "b"], {"a": F(1, 2), "b": F(0)})
    with pytest.raises(NotAProbability):
        ProbAlgebra(["a"], {"a": F(1, 2)})
    with pytest.raises(TypeError):
        ProbAlgebra(["a", "b"], {"a": 0.5, "b": 0.5})
    assert MeasuredBool(["a", "b"], {"a": 1, "b": 0}).null_atoms == {"b"}


def test_make_morphism_examples():
    u4, u2 = proba.uniform(4), proba.uniform(2, "y")
    proba.make_morphism(u4, u2, {"a0": "y0", "a1": "y0", "a2": "y1", "a3": "y1"})
    X = ProbAlgebra(["a", "b"], {"a": F(1, 3), "b": F(2, 3)})
    Y = ProbAlgebra(["c", "d"], {"c": F(1, 2), "d": F(1, 2)})
    with pytest.raises(NotMeasurePreserving) as exc:
        proba.make_morphism(X, Y, {"a": "c", "b": "d"})
    assert exc.value.expected in (F(1, 2),) and exc.value.actual in (F(1, 3), F(2, 3))


@given(prob_morphisms())
def test_every_morphism_has_injective_sigma_hom(T):
    assert boolalg.is_mono(T.sigma_hom())
    assert set(T.images) == set(T.target.atoms)


def test_mes_drops_nulls():
    M = MeasuredBool(["a", "b", "c"], {"a": F(1, 2), "b": F(1, 2), "c": 0})
    X, q = proba.mes(M)
    assert X == ProbAlgebra(["a", "b"], {"a": F(1, 2), "b": F(1, 2)})
    kernel = {E for E in M.algebra.elements() if q(E) == frozenset()}
    assert kernel == {frozenset(), frozenset("c")}
    assert proba.mes_inclusion(M).point_map == {"a": "a", "b": "b"}


@given(measured_algebras())
def test_mes_inc_round_trip(M):
    X, _ = proba.mes(M)
    assert proba.mes(proba.inc(X))[0] == X
    assert all(X.measure[a] > 0 for a in X.atoms)


def test_tensor_examples():
    u2 = proba.uniform(2)
    P, _ = proba.tensor([u2, proba.uniform(2, "b")])
    assert set(P.masses) == {F(1, 4)} and len(P) == 4
    X = ProbAlgebra(["a", "b"], {"a": F(1, 3), "b": F(2, 3)})
    Y = ProbAlgebra(["c", "d"], {"c": F(1, 4), "d": F(3, 4)})
    P, (m1, m2) = proba.tensor([X, Y])
    # each product mass checked against the multiplication table, and the total is 1
    assert dict(P.measure) == {"a|c": F(1, 12), "a|d": F(1, 4), "b|c": F(1, 6), "b|d": F(1, 2)}
    assert sum(P.masses) == 1
    assert m1.target == X and m2.target == Y
    Q, _ = proba.tensor([X, proba.point_algebra()])
    assert proba.isomorphism(Q, X) is not None


def test_composition_and_inverse():
    X = proba.uniform(2)
    swap = ProbMorphism(X, X, {"a0": "a1", "a1": "a0"})
    assert proba.compose(swap, swap) == proba.identity(X)
    assert proba.inverse(swap) == swap


def test_all_morphisms_count_by_brute_force():
    for X, Y in itertools.product(instances.sample_prob_algebras(3), repeat=2):
        brute = 0
        for images in itertools.product(Y.atoms, repeat=len(X)):
            push = {b: F(0) for b in Y.atoms}
            for a, b in zip(X.atoms, images):
                push[b] += X.measure[a]
            brute += push == dict(Y.measure)
        assert len(list(proba.all_morphisms(X, Y))) == brute


def test_invariant_factor_examples():
    u2 = proba.uniform(2)
    inv, pi = proba.invariant_factor(u2, [ProbMorphism(u2, u2, {"a0": "a1", "a1": "a0"})])
    assert len(inv) == 1
    u4 = ProbAlgebra("abcd", {x: F(1, 4) for x in "abcd"})
    g = ProbMorphism(u4, u4, {"a": "b", "b": "a", "c": "d", "d": "c"})
    inv, pi = proba.invariant_factor(u4, [g])
    assert inv.atoms == ("a+b", "c+d") and inv.masses == (F(1, 2), F(1, 2))
    assert proba.compose(pi, g) == pi
    inv, pi = proba.invariant_factor(u4, [proba.identity(u4)])
    assert inv == u4 and pi == proba.identity(u4)


def test_invariant_factor_rejects_non_bijections():
    u2 = proba.uniform(2)
    with pytest.raises(NotAnAutomorphism):
        proba.invariant_factor(u2, [ProbMorphism(u2, proba.point_algebra(), {"a0": "*", "a1": "*"})])


def test_invariant_subalgebra_is_orbit_unions():
    import random

    rng = random.Random(7)
    for _ in range(50):
        X, gens = instances.random_action(rng, 6)
        inv, pi = proba.invariant_factor(X, gens)
        perms = [dict(g.point_map) for g in gens]
        expected_orbits = orbit_partition(X.atoms, perms)
        assert {frozenset(pi.fiber(b)) for b in inv.atoms} == expected_orbits
        unions = {frozenset().union(*(pi.fiber(b) for b in E)) for E in inv.algebra.elements()}
        assert unions == invariant_sets(X.atoms, perms)
        for g in gens:
            assert proba.compose(pi, g) == pi


def test_orbit_names_stay_valid_for_compound_atoms():
    X = ProbAlgebra(["a&b", "c|d"], {"a&b": F(1, 2), "c|d": F(1, 2)})
    g = ProbMorphism(X, X, {"a&b": "c|d", "c|d": "a&b"})
    inv, _ = proba.invariant_factor(X, [g])
    assert inv.atoms == ("(a&b)+(c|d)",)


@settings(max_examples=50)
@given(prob_morphisms(max_atoms=4), prob_morphisms(max_atoms=4))
def test_tensor_map_is_functorial_on_identity(S, T):
    ST = proba.tensor_map([S, T])
    assert ST.source == proba.tensor([S.source, T.source])[0]
    ident = proba.tensor_map([proba.identity(S.source), proba.identity(T.source)])
    assert ident == proba.identity(ST.source)
