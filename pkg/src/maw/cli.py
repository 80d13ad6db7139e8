"""Command-line entry point.

Every subcommand reads JSON in the shared text format and writes one
canonical JSON value (or, for ``kolmo``, one rational) to stdout or
``--out``.  Exit status: 0 on success, 1 on a domain error (its name goes to
stderr), 2 on malformed arguments or input.  ``check`` exits 1 with
``LawViolation`` when any law fails, after writing the full report.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import canmodel, disint, funcalg, kolmo, proba, stoned, suites
from . import serialize as S
from .errors import MawError
from .serialize import ParseError

SUBCOMMANDS = (
    "spectrum", "mes", "tensor", "model", "model-action", "represent", "disintegrate", "relprod",
    "condexp", "integrate", "lpnorm", "riesz", "kolmo", "invariant", "ergodic", "check",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, "argv")


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None
    return S.loads(text, path)


def _section(doc: dict, key: str, path: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}", path)
    return doc[key]


# Subcommand handlers.  Each takes parsed args and returns a JSON-ready value
# (or a plain string, printed as is).

def cmd_spectrum(args):
    return S.dump_stone(stoned.stone(S.load_finbool(_read(args.input), args.input)))


def cmd_mes(args):
    X, q = proba.mes(S.load_measured(_read(args.input), args.input))
    return {"algebra": S.dump_prob(X), "quotient": S.dump_boolhom(q)}


def cmd_tensor(args):
    factors = [S.load_prob(_read(p), p) for p in args.inputs]
    X, marginals = proba.tensor(factors)
    return {"algebra": S.dump_prob(X), "marginals": [S.dump_morphism(m) for m in marginals]}


def cmd_model(args):
    return S.dump_model(canmodel.stone_model(S.load_prob(_read(args.input), args.input)))


def _action_input(path):
    doc = _read(path)
    X = S.load_prob(_section(doc, "algebra", path), path + ":$.algebra")
    gens = S.load_generators(X, _section(doc, "generators", path), path + ":$.generators")
    return X, gens


def cmd_model_action(args):
    X, gens = _action_input(args.input)
    return {
        "model": S.dump_model(canmodel.stone_model(X)),
        "action": [dict(g.point_map) for g in canmodel.model_action(X, gens)],
    }


def cmd_represent(args):
    doc = _read(args.input)
    where = args.input + ":$"
    X = S.load_prob(_section(doc, "algebra", args.input), where + ".algebra")
    K = S.strings(_section(doc, "K", args.input), where + ".K")
    sigma = _section(doc, "sigma_hom", args.input)
    if not isinstance(sigma, dict):
        raise ParseError("expected an object of atom lists", where + ".sigma_hom")
    sigma = {k: S.strings(v, f"{where}.sigma_hom.{k}") for k, v in sigma.items()}
    return canmodel.represent(X, K, sigma)


def cmd_disintegrate(args):
    return S.dump_kernel(disint.disintegrate(S.load_morphism(_read(args.input), args.input)))


def cmd_relprod(args):
    p1 = S.load_morphism(_read(args.first), args.first)
    p2 = S.load_morphism(_read(args.second), args.second)
    P, P1, P2 = disint.rel_product(p1, p2)
    return {"algebra": S.dump_prob(P), "projections": [S.dump_morphism(P1), S.dump_morphism(P2)]}


def _function_input(path):
    doc = _read(path)
    X = S.load_prob(_section(doc, "algebra", path), path + ":$.algebra")
    A = funcalg.linfty(X)
    return A, S.load_element(A, _section(doc, "f", path), path + ":$.f")


def cmd_condexp(args):
    doc = _read(args.input)
    pi = S.load_morphism(_section(doc, "morphism", args.input), args.input + ":$.morphism")
    f = S.load_element(funcalg.linfty(pi.source), _section(doc, "f", args.input), args.input + ":$.f")
    return S.dump_element(funcalg.linfty(pi.target), funcalg.cond_exp(pi, f))


def cmd_integrate(args):
    A, f = _function_input(args.input)
    return S.dump_scalar(funcalg.integrate(A, f))


def cmd_lpnorm(args):
    A, f = _function_input(args.input)
    p = "inf" if args.p == "inf" else int(args.p)
    return S.dump_rational(funcalg.lp_norm(A, f, p))


def cmd_riesz(args):
    doc = _read(args.input)
    where = args.input + ":$"
    points = S.strings(_section(doc, "points", args.input), where + ".points")
    state = funcalg.FiniteState(S.rational_map(_section(doc, "state", args.input), where + ".state"))
    return S.dump_measure(funcalg.riesz_finite(points, state))


def load_family(doc, path: str) -> kolmo.ConsistentFamily:
    """Family files: ``{"constructor": "iid" | "markov" | "explicit", ...}``.

    * iid: ``factor`` (a probability algebra), optional ``universe``;
    * markov: ``initial`` and ``transition`` (rationals), optional ``universe``;
    * explicit: ``factors`` (index -> algebra) and ``marginals``, a list of
      ``{"F": [...], "masses": [[[atom, ...], "p/q"], ...]}``.
    """
    where = path + ":$"
    kind = _section(doc, "constructor", path)
    universe = doc.get("universe")
    if universe is not None:
        if not isinstance(universe, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in universe):
            raise ParseError("expected a list of integers", where + ".universe")
    if kind == "iid":
        S.fields(doc, where, {"constructor", "factor"}, {"universe"})
        return kolmo.iid_family(S.load_prob(doc["factor"], where + ".factor"), universe)
    if kind == "markov":
        S.fields(doc, where, {"constructor", "initial", "transition"}, {"universe"})
        initial = S.rational_map(doc["initial"], where + ".initial")
        trans = doc["transition"]
        if not isinstance(trans, dict):
            raise ParseError("expected an object of rows", where + ".transition")
        rows = {s: S.rational_map(r, f"{where}.transition.{s}") for s, r in trans.items()}
        return kolmo.markov_family(initial, rows, universe)
    if kind == "explicit":
        S.fields(doc, where, {"constructor", "factors", "marginals"})
        raw = doc["factors"]
        if not isinstance(raw, dict):
            raise ParseError("expected an object index -> algebra", where + ".factors")
        factors = {}
        for k, v in raw.items():
            if not k.isdigit():
                raise ParseError(f"index {k!r} is not a natural number", where + ".factors")
            factors[int(k)] = S.load_finbool(v, f"{where}.factors.{k}")
        marginals = {}
        if not isinstance(doc["marginals"], list):
            raise ParseError("expected a list", where + ".marginals")
        for n, entry in enumerate(doc["marginals"]):
            at = f"{where}.marginals[{n}]"
            S.fields(entry, at, {"F", "masses"})
            mu = {}
            for m, pair in enumerate(entry["masses"]):
                if not (isinstance(pair, list) and len(pair) == 2):
                    raise ParseError("expected [[atom, ...], mass]", f"{at}.masses[{m}]")
                mu[tuple(S.strings(pair[0], f"{at}.masses[{m}][0]"))] = S.load_rational(pair[1], f"{at}.masses[{m}][1]")
            marginals[tuple(entry["F"])] = mu
        return kolmo.explicit_family(factors, marginals)
    raise ParseError(f"unknown constructor {kind!r} (expected iid, markov or explicit)", where + ".constructor")


def cmd_kolmo(args):
    family = load_family(_read(args.family), args.family)
    cyl = S.loads(args.cylinder, "--cylinder")
    S.fields(cyl, "--cylinder:$", {"F", "E"}, {"over"})
    F = cyl["F"]
    if not isinstance(F, list) or not all(isinstance(i, int) for i in F):
        raise ParseError("expected a list of indices", "--cylinder:$.F")
    if not isinstance(cyl["E"], list):
        raise ParseError("expected a list of atom tuples", "--cylinder:$.E")
    event = [tuple(S.strings(t, f"--cylinder:$.E[{i}]")) for i, t in enumerate(cyl["E"])]
    if len(F) != len(set(F)) or list(F) != sorted(F):
        raise ParseError("indices must be strictly increasing", "--cylinder:$.F")
    try:
        value = kolmo.extend(family).query(F, event, cyl.get("over"))
    except ValueError as exc:
        raise ParseError(str(exc), "--cylinder") from None
    return S.dump_rational(value)


def cmd_invariant(args):
    X, gens = _action_input(args.input)
    inv, pi = proba.invariant_factor(X, gens)
    return {"algebra": S.dump_prob(inv), "factor": S.dump_morphism(pi)}


def cmd_ergodic(args):
    X, gens = _action_input(args.input)
    d = disint.ergodic_components(X, gens)
    return {
        "invariant": S.dump_prob(d.invariant),
        "kernel": S.dump_kernel(d.kernel),
        "ergodic": dict(zip(d.invariant.atoms, d.ergodic)),
    }


def cmd_check(args):
    reports = suites.run_suites(args.suite, args.max_atoms, jobs=args.jobs, seed=args.seed)
    if os.environ.get("MAW_COLOR", "1") != "0":
        width = max(len(r.law) for r in reports)
        lines = [f"{'law':<{width}}  {'checked':>8}  violations"]
        lines += [f"{r.law:<{width}}  {r.checked:>8}  {len(r.violations)}" for r in reports]
        total = sum(len(r.violations) for r in reports)
        lines.append(f"{len(reports)} laws, {total} violations")
        args.summary = "\n".join(lines) + "\n"
    bad = sum(len(r.violations) for r in reports)
    if bad:
        args.failure = f"LawViolation: {bad} violation(s) in {sum(not r.passed for r in reports)} law(s)\n"
    return [r.as_dict() for r in reports]


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in SUBCOMMANDS}


def _shared_flags(parser, defaults: bool) -> None:
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--out", default=d(None), help="write the result here instead of stdout")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for check")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized suites")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maw", description="Exact finite-scale measure-algebra workbench.")
    _shared_flags(parser, defaults=True)
    # Subcommands accept the same flags; values given there override the global ones.
    shared = _Parser(add_help=False)
    _shared_flags(shared, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add_parser = sub.add_parser
    sub.add_parser = lambda name, **kw: add_parser(name, parents=[shared], **kw)

    def one(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="JSON file, or - for stdin")
        return p

    one("spectrum", "Stone points of a Boolean algebra")
    one("mes", "drop null atoms of a measured algebra")
    sub.add_parser("tensor", help="tensor product of probability algebras").add_argument("inputs", nargs="+")
    one("model", "canonical model of a probability algebra")
    one("model-action", "action of automorphisms on the canonical model")
    one("represent", "continuous representative of a map into a finite space")
    one("disintegrate", "canonical disintegration of a morphism")
    p = sub.add_parser("relprod", help="relative product of two morphisms")
    p.add_argument("first")
    p.add_argument("second")
    one("condexp", "conditional expectation along a morphism")
    one("integrate", "integral of a function")
    one("lpnorm", "abstract L^p norm").add_argument("--p", choices=["1", "2", "inf"], required=True)
    one("riesz", "measure representing a state on a finite space")
    p = sub.add_parser("kolmo", help="cylinder query on a Kolmogorov extension")
    p.add_argument("--family", required=True)
    p.add_argument("--cylinder", required=True)
    one("invariant", "invariant factor of an action")
    one("ergodic", "ergodic components of an action")
    p = sub.add_parser("check", help="run law suites")
    p.add_argument("--suite", choices=[*suites.SUITES, "all"], default="all")
    p.add_argument("--max-atoms", type=int, default=4)
    return parser


def run(argv: list[str]) -> tuple[int, str, str]:
    """Run a command and return ``(status, stdout text, stderr text)``."""
    try:
        if argv and not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS:
            raise ParseError(f"unknown subcommand {argv[0]!r} (choose from {', '.join(SUBCOMMANDS)})", "argv[0]")
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise ParseError("--jobs must be at least 1", "argv")
        result = HANDLERS[args.command](args)
    except ParseError as exc:
        return 2, "", f"maw: parse error: {exc}\n"
    except MawError as exc:
        return 1, "", f"{exc.name}: {exc}\n"
    text = (result if isinstance(result, str) else S.dumps(result)) + "\n"
    err = getattr(args, "summary", "") + getattr(args, "failure", "")
    status = 1 if hasattr(args, "failure") else 0
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return status, "", err
    return status, text, err


def main(argv: list[str] | None = None) -> int:
    status, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
