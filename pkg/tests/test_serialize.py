from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maw import disint, funcalg, serialize
from maw.boolalg import BoolHom, FinBool
from maw.canmodel import ConcreteModel
from maw.funcalg import FiniteState, Gauss
from maw.serialize import ParseError
from maw.stoned import DeleteSpace, StoneSpace

from conftest import atom_names, finbools, masses, measured_algebras, prob_algebras, prob_morphisms

rationals = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 12))


@st.composite
def boolhoms(draw):
    source = draw(finbools(max_atoms=3).filter(len))
    target = draw(finbools(max_atoms=4))
    return BoolHom(source, target, {b: draw(st.sampled_from(source.atoms)) for b in target.atoms})


@st.composite
def delete_spaces(draw):
    pts = draw(st.lists(atom_names, max_size=4, unique=True))
    return DeleteSpace(pts, [p for p in pts if draw(st.booleans())])


@st.composite
def states(draw):
    pts = draw(st.lists(atom_names, min_size=1, max_size=4, unique=True))
    return FiniteState(dict(zip(pts, draw(masses(len(pts), allow_zero=True)))))


@st.composite
def models(draw):
    X = draw(prob_algebras(max_atoms=3))
    nulls = draw(st.integers(0, 2))
    measure = {f"p{i}": m for i, m in enumerate(X.masses)}
    measure.update({f"n{i}": Fraction(0) for i in range(nulls)})
    return ConcreteModel(measure, {f"p{i}": a for i, a in enumerate(X.atoms)}, X)


scalars = st.builds(Gauss, rationals, rationals)

values = st.one_of(
    st.tuples(st.just("finbool"), finbools()),
    st.tuples(st.just("boolhom"), boolhoms()),
    st.tuples(st.just("stone"), st.builds(StoneSpace, st.lists(atom_names, max_size=4, unique=True))),
    st.tuples(st.just("delete"), delete_spaces()),
    st.tuples(st.just("prob"), prob_algebras()),
    st.tuples(st.just("measured"), measured_algebras()),
    st.tuples(st.just("morphism"), prob_morphisms()),
    st.tuples(st.just("state"), states()),
    st.tuples(st.just("model"), models()),
    st.tuples(st.just("scalar"), scalars),
)


@settings(max_examples=1000, deadline=None)
@given(values)
def test_round_trip(kv):
    kind, v = kv
    text = serialize.serialize(kind, v)
    assert serialize.parse(kind, text) == v
    assert serialize.serialize(kind, serialize.parse(kind, text)) == text


@settings(max_examples=200, deadline=None)
@given(prob_morphisms(max_atoms=6), st.lists(scalars, min_size=6, max_size=6))
def test_element_and_kernel_round_trip(pi, zs):
    A = funcalg.linfty(pi.source)
    f = A.element(zs[: len(A.atoms)])
    text = serialize.dumps(serialize.dump_element(A, f))
    assert serialize.load_element(A, serialize.loads(text)) == f
    k = disint.disintegrate(pi)
    text = serialize.dumps(serialize.dump_kernel(k))
    assert serialize.load_kernel(pi, serialize.loads(text)).as_dict() == k.as_dict()


def test_canonical_form():
    X = serialize.parse("prob", '{"measure": {"b": "3/4", "a": "1/4"}, "atoms": ["b", "a"]}')
    assert serialize.serialize("prob", X) == '{"atoms":["a","b"],"measure":{"a":"1/4","b":"3/4"}}'
    assert serialize.dumps({"x": "é"}) == '{"x":"é"}'


def test_rationals():
    assert serialize.load_rational("-6/4") == Fraction(-3, 2)
    assert serialize.load_rational(7) == 7
    assert serialize.load_scalar({"re": "1/2", "im": -1}) == Gauss(Fraction(1, 2), -1)
    for bad in ("1/0", "1.5", "x", True, None, "1/-2"):
        with pytest.raises(ParseError):
            serialize.load_rational(bad)


def test_floats_are_rejected_with_position():
    with pytest.raises(ParseError) as exc:
        serialize.loads('{"atoms": ["a"],\n "measure": {"a": 1.0}}', "in.json")
    assert exc.value.where == "in.json:2:19"
    with pytest.raises(ParseError) as exc:
        serialize.loads('[1e3]')
    assert exc.value.where == "<input>:1:2"


def test_structural_errors_name_the_path():
    cases = [
        ("finbool", '{"atoms": ["a", "a"]}', "$"),
        ("finbool", '{"atoms": ["a"], "x": 1}', "$"),
        ("prob", '{"atoms": ["a"]}', "$"),
        ("prob", '{"atoms": ["a"], "measure": {"a": "1/0"}}', "$.measure.a"),
        ("prob", '{"atoms": ["a", "b"], "measure": {"a": 1}}', "$.measure"),
        ("boolhom", '{"source": {"atoms": []}, "target": {"atoms": [1]}, "dual_map": {}}', "$.target.atoms[0]"),
        ("scalar", '{"re": 1}', "$"),
    ]
    for kind, text, where in cases:
        with pytest.raises(ParseError) as exc:
            serialize.parse(kind, text)
        assert exc.value.where == where, (kind, text, exc.value)
    with pytest.raises(ParseError) as exc:
        serialize.loads('{"a": }', "f.json")
    assert exc.value.where == "f.json:1:7"


def test_domain_errors_pass_through():
    from maw.errors import NotAProbability

    with pytest.raises(NotAProbability):
        serialize.parse("prob", '{"atoms": ["a"], "measure": {"a": "1/2"}}')
