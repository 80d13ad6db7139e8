"""The shared JSON text format.

Rationals are strings ``"p/q"`` in lowest terms (``"3"`` for integers);
JSON integers are accepted on input, floats never.  Output is canonical:
sorted keys, compact separators, one trailing newline added by the caller.

Every ``load_*`` takes a decoded JSON value and a ``path`` used in
diagnostics; structural problems raise :class:`ParseError`.  Domain
constructors still raise their own errors (``NotAProbability`` etc.).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Mapping

from .boolalg import BoolHom, FinBool
from .canmodel import ConcreteModel
from .disint import Kernel
from .funcalg import FiniteState, FuncAlg, Gauss
from .proba import MeasuredBool, ProbAlgebra, ProbMorphism
from .stoned import DeleteSpace, StoneSpace

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class ParseError(Exception):
    """Malformed input; ``where`` is a file position or a JSON path."""

    def __init__(self, message: str, where: str = "$"):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.detail = message


def dumps(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    except ParseError as exc:
        raise ParseError(exc.detail, f"{source}:{_first_float(text)}") from None


_TOKEN = re.compile(r'"(?:\\.|[^"\\])*"|-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?')


def _first_float(text: str) -> str:
    """``line:col`` of the first non-integer number literal."""
    for m in _TOKEN.finditer(text):
        tok = m.group()
        if not tok.startswith('"') and any(c in tok for c in ".eE"):
            line = text.count("\n", 0, m.start()) + 1
            col = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
            return f"{line}:{col}"
    return "?"


def _reject_float(s: str):
    raise ParseError(f"floating-point literal {s} is not allowed; write rationals as \"p/q\"")


# Scalars.

def dump_rational(x: Fraction) -> str:
    return str(Fraction(x))


def load_rational(v, path: str = "$") -> Fraction:
    if isinstance(v, bool):
        raise ParseError("expected a rational, got a boolean", path)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str) and _RATIONAL.fullmatch(v):
        num, _, den = v.partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator in {v!r}", path)
        return Fraction(int(num), int(den) if den else 1)
    raise ParseError(f"expected a rational string \"p/q\", got {v!r}", path)


def dump_scalar(z: Gauss):
    if z.is_real:
        return dump_rational(z.re)
    return {"re": dump_rational(z.re), "im": dump_rational(z.im)}


def load_scalar(v, path: str = "$") -> Gauss:
    if isinstance(v, dict):
        obj = fields(v, path, {"re", "im"})
        return Gauss(load_rational(obj["re"], path + ".re"), load_rational(obj["im"], path + ".im"))
    return Gauss(load_rational(v, path))


# Structural helpers.

def fields(v, path: str, required: set, optional: set = frozenset()) -> dict:
    if not isinstance(v, dict):
        raise ParseError(f"expected an object, got {type(v).__name__}", path)
    missing = required - set(v)
    if missing:
        raise ParseError(f"missing field(s) {sorted(missing)}", path)
    extra = set(v) - required - set(optional)
    if extra:
        raise ParseError(f"unexpected field(s) {sorted(extra)}", path)
    return v


def strings(v, path: str) -> list[str]:
    if not isinstance(v, list):
        raise ParseError("expected a list of strings", path)
    for i, x in enumerate(v):
        if not isinstance(x, str):
            raise ParseError(f"expected a string, got {x!r}", f"{path}[{i}]")
    return v


def str_map(v, path: str) -> dict[str, str]:
    if not isinstance(v, dict):
        raise ParseError("expected an object of strings", path)
    for k, x in v.items():
        if not isinstance(x, str):
            raise ParseError(f"expected a string, got {x!r}", f"{path}.{k}")
    return v


def rational_map(v, path: str) -> dict[str, Fraction]:
    if not isinstance(v, dict):
        raise ParseError("expected an object of rationals", path)
    return {k: load_rational(x, f"{path}.{k}") for k, x in v.items()}


def _build(path: str, ctor, *args):
    """Run a constructor, turning its plain ValueErrors into parse errors at ``path``."""
    try:
        return ctor(*args)
    except ValueError as exc:
        raise ParseError(str(exc), path) from None


# Boolean algebras and spaces.

def dump_finbool(B: FinBool) -> dict:
    return {"atoms": list(B.atoms)}


def load_finbool(v, path: str = "$") -> FinBool:
    obj = fields(v, path, {"atoms"})
    return _build(path, FinBool, strings(obj["atoms"], path + ".atoms"))


def dump_boolhom(h: BoolHom) -> dict:
    return {"source": dump_finbool(h.source), "target": dump_finbool(h.target), "dual_map": dict(h.dual_map)}


def load_boolhom(v, path: str = "$") -> BoolHom:
    obj = fields(v, path, {"source", "target", "dual_map"})
    return _build(
        path, BoolHom,
        load_finbool(obj["source"], path + ".source"),
        load_finbool(obj["target"], path + ".target"),
        str_map(obj["dual_map"], path + ".dual_map"),
    )


def dump_stone(S: StoneSpace) -> dict:
    return {"points": list(S.points)}


def load_stone(v, path: str = "$") -> StoneSpace:
    obj = fields(v, path, {"points"})
    return _build(path, StoneSpace, strings(obj["points"], path + ".points"))


def dump_delete(D: DeleteSpace) -> dict:
    return {"points": list(D.points), "null": sorted(D.null)}


def load_delete(v, path: str = "$") -> DeleteSpace:
    obj = fields(v, path, {"points", "null"})
    return _build(
        path, DeleteSpace, strings(obj["points"], path + ".points"), strings(obj["null"], path + ".null")
    )


# Measures.

def dump_measure(m: Mapping[str, Fraction]) -> dict:
    return {a: dump_rational(x) for a, x in m.items()}


def dump_prob(X: MeasuredBool | ProbAlgebra) -> dict:
    return {"atoms": list(X.atoms), "measure": dump_measure(X.measure)}


def _load_measured(cls, v, path: str):
    obj = fields(v, path, {"atoms", "measure"})
    atoms = strings(obj["atoms"], path + ".atoms")
    measure = rational_map(obj["measure"], path + ".measure")
    if set(measure) != set(atoms):
        raise ParseError("measure must be given on exactly the atoms", path + ".measure")
    return _build(path, cls, atoms, measure)


def load_prob(v, path: str = "$") -> ProbAlgebra:
    return _load_measured(ProbAlgebra, v, path)


def load_measured(v, path: str = "$") -> MeasuredBool:
    return _load_measured(MeasuredBool, v, path)


def dump_morphism(T: ProbMorphism) -> dict:
    return {"source": dump_prob(T.source), "target": dump_prob(T.target), "map": dict(T.point_map)}


def load_morphism(v, path: str = "$", measured: bool = False) -> ProbMorphism:
    obj = fields(v, path, {"source", "target", "map"})
    load = load_measured if measured else load_prob
    return _build(
        path, ProbMorphism,
        load(obj["source"], path + ".source"),
        load(obj["target"], path + ".target"),
        str_map(obj["map"], path + ".map"),
    )


# Functions, kernels, states, models.

def dump_element(A: FuncAlg, f) -> dict:
    return {
        "re": {a: dump_rational(z.re) for a, z in zip(A.atoms, f)},
        "im": {a: dump_rational(z.im) for a, z in zip(A.atoms, f)},
    }


def load_element(A: FuncAlg, v, path: str = "$") -> tuple:
    """``im`` may be omitted for real functions."""
    obj = fields(v, path, {"re"}, {"im"})
    re_ = rational_map(obj["re"], path + ".re")
    im_ = rational_map(obj.get("im", {}), path + ".im")
    if set(re_) != set(A.atoms):
        raise ParseError("re must be given on exactly the atoms", path + ".re")
    if set(im_) - set(A.atoms):
        raise ParseError(f"im mentions non-atoms {sorted(set(im_) - set(A.atoms))}", path + ".im")
    return tuple(Gauss(re_[a], im_.get(a, Fraction(0))) for a in A.atoms)


def dump_kernel(k: Kernel) -> dict:
    return {b: dump_measure(k.fiber(b)) for b in k.base.target.atoms}


def load_kernel(base: ProbMorphism, v, path: str = "$") -> Kernel:
    if not isinstance(v, dict):
        raise ParseError("expected an object of fiber measures", path)
    fibers = {b: rational_map(row, f"{path}.{b}") for b, row in v.items()}
    return _build(path, Kernel, base, fibers)


def dump_state(s: FiniteState) -> dict:
    return {"values": {p: dump_rational(x) for p, x in zip(s.points, s.values)}}


def load_state(v, path: str = "$") -> FiniteState:
    obj = fields(v, path, {"values"})
    return FiniteState(rational_map(obj["values"], path + ".values"))


def dump_model(W: ConcreteModel) -> dict:
    return {
        "points": list(W.points),
        "measure": dump_measure(W.measure),
        "inclusion": dict(W.inclusion),
        "modeled": dump_prob(W.modeled),
    }


def load_model(v, path: str = "$") -> ConcreteModel:
    obj = fields(v, path, {"points", "measure", "inclusion", "modeled"})
    points = strings(obj["points"], path + ".points")
    measure = rational_map(obj["measure"], path + ".measure")
    if set(measure) != set(points):
        raise ParseError("measure must be given on exactly the points", path + ".measure")
    return _build(
        path, ConcreteModel, measure, str_map(obj["inclusion"], path + ".inclusion"),
        load_prob(obj["modeled"], path + ".modeled"),
    )


def load_generators(X: ProbAlgebra, v, path: str = "$") -> list[ProbMorphism]:
    """Generators are given as point maps ``{"a": "b", ...}`` on the atoms of ``X``."""
    if not isinstance(v, list):
        raise ParseError("expected a list of point maps", path)
    return [
        _build(f"{path}[{i}]", ProbMorphism, X, X, str_map(g, f"{path}[{i}]")) for i, g in enumerate(v)
    ]


# Registry used by the generic round trip: kind -> (dump, load).
CODECS = {
    "finbool": (dump_finbool, load_finbool),
    "boolhom": (dump_boolhom, load_boolhom),
    "stone": (dump_stone, load_stone),
    "delete": (dump_delete, load_delete),
    "prob": (dump_prob, load_prob),
    "measured": (dump_prob, load_measured),
    "morphism": (dump_morphism, load_morphism),
    "state": (dump_state, load_state),
    "model": (dump_model, load_model),
    "scalar": (dump_scalar, load_scalar),
}


def serialize(kind: str, value) -> str:
    return dumps(CODECS[kind][0](value))


def parse(kind: str, text: str, source: str = "<input>"):
    return CODECS[kind][1](loads(text, source))


__all__ = [
    "ParseError", "dumps", "loads", "serialize", "parse", "CODECS",
    "dump_rational", "load_rational", "dump_scalar", "load_scalar",
    "dump_finbool", "load_finbool", "dump_boolhom", "load_boolhom",
    "dump_stone", "load_stone", "dump_delete", "load_delete",
    "dump_measure", "dump_prob", "load_prob", "load_measured", "dump_morphism", "load_morphism",
    "dump_element", "load_element", "dump_kernel", "load_kernel",
    "dump_state", "load_state", "dump_model", "load_model", "load_generators",
]
