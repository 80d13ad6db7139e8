import itertools
import random
from fractions import Fraction

import pytest

from maw import canmodel, instances, proba
from maw.canmodel import ConcreteModel
from maw.errors import NotAHomomorphism, NotAModel, NotAnAutomorphism
from maw.proba import ProbAlgebra, ProbMorphism

F = Fraction


def test_stone_model_examples():
    X = ProbAlgebra(["a", "b"], {"a": F(1, 4), "b": F(3, 4)})
    W = canmodel.stone_model(X)
    assert W.points == ("a", "b") and W.masses == (F(1, 4), F(3, 4))
    assert canmodel.strong_lusin(W) and W.prob_algebra() == X
    for Y in instances.sample_prob_algebras(4):
        assert canmodel.stone_model(Y).prob_algebra() == Y


def test_model_validation():
    X = proba.uniform(2)
    with pytest.raises(NotAModel):
        ConcreteModel({"p": F(1, 2), "q": F(1, 2)}, {"p": "a0"}, X)
    with pytest.raises(NotAModel):
        ConcreteModel({"p": F(1, 3), "q": F(2, 3)}, {"p": "a0", "q": "a1"}, X)
    with pytest.raises(NotAModel):
        ConcreteModel({"p": 1, "q": 1}, {"p": "a0", "q": "a1"}, X)


def test_model_morphism_is_surjective_and_functorial():
    objs = instances.sample_prob_algebras(3)
    for X, Y in itertools.product(objs, repeat=2):
        for T in proba.all_morphisms(X, Y):
            S = canmodel.model_morphism(T)
            assert canmodel.is_surjective(S) and S.point_map == T.point_map
    X = objs[-1]
    assert canmodel.model_morphism(proba.identity(X)) == proba.identity(canmodel.stone_model(X).measured())


def test_strong_lusin_and_initiality():
    for X in instances.sample_prob_algebras(3):
        models = canmodel.models_with_nulls(X, 2)
        for W in models:
            lusin = canmodel.strong_lusin(W)
            assert lusin == canmodel.strong_lusin_literal(W) == (not W.null_points)
            assert lusin == canmodel.is_initial(W, models)
            # exhaustive uniqueness of the factorisation out of Stone(X)
            maps = canmodel.model_maps(canmodel.stone_model(X), W)
            assert maps == [canmodel.initial_factorization(X, W)]


def test_initial_factorization_examples():
    X = proba.uniform(2)
    assert canmodel.initial_factorization(X, canmodel.stone_model(X)) == {"a0": "a0", "a1": "a1"}
    W = canmodel.models_with_nulls(X, 1)[1]
    image = set(canmodel.initial_factorization(X, W).values())
    assert image == {"a0", "a1"} and "null0" not in image
    with pytest.raises(NotAModel):
        canmodel.initial_factorization(proba.uniform(3), W)


def test_represent_examples():
    X = ProbAlgebra("ab", {"a": F(1, 4), "b": F(3, 4)})
    assert canmodel.represent(X, ["k"], {"k": ["a", "b"]}) == {"a": "k", "b": "k"}
    assert canmodel.represent(X, ["a", "b"], {"a": ["a"], "b": ["b"]}) == {"a": "a", "b": "b"}
    with pytest.raises(NotAHomomorphism):
        canmodel.represent(X, ["k", "l"], {"k": ["a"], "l": ["a"]})


def test_represent_bijection_counts():
    for X in instances.sample_prob_algebras(3):
        for k in range(1, 4):
            a, c = canmodel.represent_bijection_counts(X, [f"k{i}" for i in range(k)])
            assert a == c == k ** len(X)


def test_model_action_conjugation():
    rng = random.Random(11)
    for _ in range(100):
        X, gens = instances.random_action(rng, 5)
        iso = canmodel.natural_iso(X)
        for g, h in zip(gens, canmodel.model_action(X, gens)):
            assert proba.is_bijective(h)
            lhs = proba.compose(proba.mes_map(h), iso)
            rhs = proba.compose(iso, g)
            assert lhs == rhs
    u2 = proba.uniform(2)
    swap = ProbMorphism(u2, u2, {"a0": "a1", "a1": "a0"})
    assert canmodel.model_action(u2, [swap])[0].point_map == {"a0": "a1", "a1": "a0"}
    with pytest.raises(NotAnAutomorphism):
        canmodel.model_action(u2, [ProbMorphism(u2, proba.point_algebra(), {"a0": "*", "a1": "*"})])
