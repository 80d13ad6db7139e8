"""Named law suites run by ``maw check``.

Each suite takes a size cap and a seed and returns a list of
:class:`LawReport`.  Object sizes are capped at ``max_atoms``; hom-set sweeps
and probes additionally at :data:`PROBE_ATOMS`.  Only the disintegration
suite has a randomized part (:data:`RANDOM_CASES` morphisms and actions on up
to ``3 * max_atoms`` atoms); the rest is exhaustive.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor

from . import boolalg, canmodel, disint, funcalg, instances, lawcheck, proba, stoned
from .lawcheck import LawReport

PROBE_ATOMS = 3
RANDOM_CASES = 50


def _equal_report(law: str, pairs) -> LawReport:
    report = LawReport(law)
    for lhs, rhs, witness in pairs:
        report.record(lhs == rhs, witness)
    return report


def stone_duality(max_atoms: int = 4, seed: int = 0) -> list[LawReport]:
    objects = instances.canonical_algebras(max_atoms)
    small = instances.canonical_algebras(min(max_atoms, PROBE_ATOMS))
    B = instances.bool_category(small)
    S = instances.stone_category([stoned.stone(b) for b in small])
    D = instances.delete_category([stoned.loomis(b) for b in small])
    homs = [f for x, y in itertools.product(small, repeat=2) for f in B.hom(x, y)]
    reports = [
        lawcheck.check_category_laws(B),
        _equal_report("Clopen o Stone = id on objects", ((stoned.clopen(stoned.stone(b)), b, b) for b in objects)),
        _equal_report(
            "Stone o Clopen = id on objects",
            ((stoned.stone(stoned.clopen(s)), s, s) for s in (stoned.stone(b) for b in objects)),
        ),
        _equal_report("Clopen o Stone = id on morphisms", ((stoned.clopen_map(stoned.stone_map(f)), f, f) for f in homs)),
        lawcheck.check_functor_laws("Stone", stoned.stone, stoned.stone_map, B, S, contravariant=True),
        lawcheck.check_functor_laws("Clopen", stoned.clopen, stoned.clopen_map, S, B, contravariant=True),
        lawcheck.check_naturality(
            "unit id => Clopen o Stone", stoned.unit, lambda f: f,
            lambda f: stoned.clopen_map(stoned.stone_map(f)), B, B,
        ),
        lawcheck.check_naturality(
            "counit id => Stone o Clopen", stoned.counit, lambda f: f,
            lambda f: stoned.stone_map(stoned.clopen_map(f)), S, S,
        ),
        lawcheck.check_functor_laws("Loomis", stoned.loomis, stoned.loomis_map, B, D, contravariant=True),
        _equal_report(
            "deletion o Loomis = id on objects",
            ((stoned.delete_quotient(stoned.loomis(b))[0], b, b) for b in objects),
        ),
        _equal_report(
            "deletion o Loomis = id on morphisms",
            ((stoned.delete_quotient_map(stoned.loomis_map(f)), f, f) for f in homs),
        ),
        hom_count_report(small),
        mono_epi_report(small),
    ]
    reports += coproduct_reports(min(max_atoms, PROBE_ATOMS))
    return reports


def hom_count_report(objects) -> LawReport:
    """``|Hom(B -> C)|`` counted through element maps equals ``|B| ** |C|``."""
    report = LawReport("hom count = |atoms(B)|^|atoms(C)|")
    for B, C in itertools.product(objects, repeat=2):
        if B.degenerate and not C.degenerate:
            expected = 0
        else:
            expected = len(B) ** len(C)
        count = 0
        for images in itertools.product(list(C.elements()), repeat=len(B)):
            try:
                boolalg.validate_hom(B, C, dict(zip(B.atoms, images)))
                count += 1
            except boolalg.NotAHomomorphism:
                pass
        report.record(count == expected, (B, C, count, expected))
    return report


def mono_epi_report(objects) -> LawReport:
    """Structural mono/epi against element-map injectivity/surjectivity and brute force."""
    B = instances.bool_category(objects)
    report = LawReport("Bool mono/epi = injective/surjective = brute force")
    for x, y in itertools.product(objects, repeat=2):
        for f in B.hom(x, y):
            images = [f(e) for e in x.elements()]
            injective = len(set(images)) == len(images)
            surjective = set(images) == set(y.elements())
            brute = lawcheck.check_mono_epi(f, objects, B)
            report.record(
                (boolalg.is_mono(f), boolalg.is_epi(f)) == (injective, surjective) == brute,
                (f, boolalg.is_mono(f), boolalg.is_epi(f), injective, surjective, brute),
            )
    return report


def coproduct_reports(max_atoms: int) -> list[LawReport]:
    factors_list = [
        list(p) for p in itertools.product(instances.canonical_algebras(max_atoms, False), repeat=2)
    ]
    probes = instances.canonical_algebras(PROBE_ATOMS)
    B = instances.bool_category(probes)
    uni = LawReport("Bool coproduct universal property")
    same = LawReport("AbsMes product = Bool coproduct")
    for factors in factors_list:
        C, inj = boolalg.coproduct(factors)
        r = lawcheck.check_universal_product("coproduct", C, inj, factors, probes, B.opposite())
        uni.checked += r.checked
        uni.violations += r.violations
        P, proj = stoned.absmes_product(factors)
        same.record((P, proj) == (C, inj), factors)
    return [uni, same]


def prob_duality(max_atoms: int = 4, seed: int = 0) -> list[LawReport]:
    objects = instances.sample_prob_algebras(max_atoms)
    small = instances.sample_prob_algebras(min(max_atoms, PROBE_ATOMS))
    P = instances.prob_category(small)
    V = instances.vn_category([funcalg.linfty(x) for x in small])
    M = instances.prob_category(instances.sample_measured(min(max_atoms, PROBE_ATOMS)), "AbsProb")
    all_maps = [f for x, y in itertools.product(objects, repeat=2) for f in proba.all_morphisms(x, y)]
    mes_image = instances.prob_category([proba.mes(m)[0] for m in M.objects])
    small_maps = [f for x, y in itertools.product(small, repeat=2) for f in P.hom(x, y)]
    reports = [
        lawcheck.check_category_laws(P),
        _equal_report("Mes o Inc = id on objects", ((proba.mes(proba.inc(x))[0], x, x) for x in objects)),
        _equal_report("Mes o Inc = id on morphisms", ((proba.mes_map(proba.inc_map(f)), f, f) for f in all_maps)),
        lawcheck.check_functor_laws("Mes", lambda m: proba.mes(m)[0], proba.mes_map, M, mes_image),
        lawcheck.check_naturality(
            "Inc o Mes => id", proba.mes_inclusion, lambda f: proba.inc_map(proba.mes_map(f)), lambda f: f, M, M,
        ),
        lawcheck.check_functor_laws("Linfty", funcalg.linfty, funcalg.koopman, P, V, contravariant=True),
        _equal_report("Idem o Linfty = id on objects", ((funcalg.idem(funcalg.linfty(x)), x, x) for x in objects)),
        _equal_report(
            "Linfty o Idem = id on objects",
            ((funcalg.linfty(funcalg.idem(a)), a, a) for a in (funcalg.linfty(x) for x in objects)),
        ),
        _equal_report("Idem o Linfty = id on morphisms", ((funcalg.idem_map(funcalg.koopman(f)), f, f) for f in all_maps)),
        _equal_report(
            "projection count = 2^atoms",
            ((len(funcalg.linfty(x).projections()), 2 ** len(x), x) for x in objects),
        ),
        _equal_report(
            "Koopman preserves trace",
            (
                (funcalg.FuncAlg(f.source).trace(funcalg.koopman(f)(g)), funcalg.FuncAlg(f.target).trace(g), f)
                for f in all_maps
                for g in (funcalg.FuncAlg(f.target).indicator([b]) for b in f.target.atoms)
            ),
        ),
        _equal_report(
            "every ProbAlg morphism is epi (brute force)",
            ((lawcheck.check_mono_epi(f, small, P)[1], True, f) for f in small_maps),
        ),
    ]
    reports += canonical_model_reports(objects, small)
    return reports


def canonical_model_reports(objects, small) -> list[LawReport]:
    P = instances.prob_category(small)
    Stone = instances.prob_category([canmodel.stone_model(x).measured() for x in small], "CHProb")
    all_maps = [f for x, y in itertools.product(objects, repeat=2) for f in proba.all_morphisms(x, y)]
    reports = [
        _equal_report("Stone(X)_ProbAlg = X", ((canmodel.stone_model(x).prob_algebra(), x, x) for x in objects)),
        lawcheck.check_naturality(
            "X => Stone(X)_ProbAlg", canmodel.natural_iso, lambda f: f,
            lambda f: proba.mes_map(canmodel.model_morphism(f)), P,
            instances.prob_category([canmodel.stone_model(x).prob_algebra() for x in small] + small),
        ),
        lawcheck.check_functor_laws(
            "Stone (canonical model)", lambda x: canmodel.stone_model(x).measured(), canmodel.model_morphism, P, Stone
        ),
        _equal_report("Stone(T) is surjective", ((canmodel.is_surjective(canmodel.model_morphism(f)), True, f) for f in all_maps)),
        _equal_report("stone_model has the strong Lusin property", ((canmodel.strong_lusin(canmodel.stone_model(x)), True, x) for x in objects)),
    ]
    lusin = LawReport("strong Lusin <=> initial in Model(X)")
    for x in objects:
        models = canmodel.models_with_nulls(x)
        for W in models:
            lusin.record(
                canmodel.strong_lusin(W) == canmodel.strong_lusin_literal(W) == canmodel.is_initial(W, models),
                (x, W.null_points),
            )
    reports.append(lusin)
    full = LawReport("Stone is full and faithful")
    for x, y in itertools.product(small, repeat=2):
        images = {canmodel.model_morphism(f) for f in proba.all_morphisms(x, y)}
        concrete = set(proba.all_morphisms(canmodel.stone_model(x).measured(), canmodel.stone_model(y).measured()))
        full.record(images == concrete and len(images) == len(list(proba.all_morphisms(x, y))), (x, y))
    reports.append(full)
    counts = LawReport("Hom_AbsMes(X -> K) = Hom_CH(Stone(X) -> K)")
    for x in small:
        for k in range(1, PROBE_ATOMS + 1):
            abstract, continuous = canmodel.represent_bijection_counts(x, [f"k{i}" for i in range(k)])
            counts.record(abstract == continuous == k ** len(x), (x, k, abstract, continuous))
    reports.append(counts)
    return reports


def disint_suite(max_atoms: int = 4, seed: int = 0) -> list[LawReport]:
    objects = instances.sample_prob_algebras(max_atoms)
    maps = [f for x, y in itertools.product(objects, repeat=2) for f in proba.all_morphisms(x, y)]
    rng = random.Random(seed)
    maps += [instances.random_morphism(rng, 3 * max_atoms) for _ in range(RANDOM_CASES)]
    kernel = LawReport("kernel support, normalisation and mixture")
    ident = LawReport("disintegration identity on indicators")
    unique = LawReport("disintegration is unique")
    fgm = LawReport("conditional expectation is the orthogonal projection")
    for pi in maps:
        k = disint.disintegrate(pi)
        kernel.record(k.support_ok() and k.normalized() and k.mixture_ok(), pi)
        ident.record(not disint.disint_identity_violations(k), pi)
        unique.record(disint.verify_uniqueness(pi, k), pi)
        fgm.record(not fgm_violations(pi), pi)
    rel = LawReport("relative product identity, commuting square and generation")
    for p1, p2 in itertools.product(maps, repeat=2):
        if p1.target == p2.target and len(p1.source) * len(p2.source) <= 9:
            rel.record(not rel_product_violations(p1, p2), (p1, p2))
    erg = LawReport("fiber measures over the invariant factor are ergodic")
    for x in objects:
        autos = [g for g in proba.all_morphisms(x, x) if proba.is_bijective(g)]
        for g in autos:
            erg.record(all(disint.ergodic_components(x, [g]).ergodic), (x, g))
    for _ in range(RANDOM_CASES):
        x, gens = instances.random_action(rng, 3 * max_atoms)
        erg.record(all(disint.ergodic_components(x, gens).ergodic), (x, gens))
    return [kernel, ident, unique, fgm, rel, erg]


def fgm_violations(pi) -> list:
    """Indicator pairs where ``int f (g o pi) != int_Y E(f|Y) g``."""
    X, Y = pi.source, pi.target
    AX, AY = funcalg.FuncAlg(X), funcalg.FuncAlg(Y)
    K = funcalg.koopman(pi)
    out = []
    for a in X.atoms:
        f = AX.indicator([a])
        e = funcalg.cond_exp(pi, f)
        for b in Y.atoms:
            g = AY.indicator([b])
            if AX.trace(AX.mul(f, K(g))) != AY.trace(AY.mul(e, g)):
                out.append((a, b, e))
    return out


def rel_product_violations(p1, p2) -> list:
    P, P1, P2 = disint.rel_product(p1, p2)
    Y = p1.target
    AP, AY = funcalg.FuncAlg(P), funcalg.FuncAlg(Y)
    A1, A2 = funcalg.FuncAlg(p1.source), funcalg.FuncAlg(p2.source)
    out = []
    if proba.compose(p1, P1) != proba.compose(p2, P2):
        out.append("square does not commute")
    for a1 in p1.source.atoms:
        f1 = A1.indicator([a1])
        e1 = funcalg.cond_exp(p1, f1)
        for a2 in p2.source.atoms:
            f2 = A2.indicator([a2])
            lhs = AP.trace(AP.mul(funcalg.koopman(P1)(f1), funcalg.koopman(P2)(f2)))
            rhs = AY.trace(AY.mul(e1, funcalg.cond_exp(p2, f2)))
            if lhs != rhs:
                out.append((a1, a2, lhs, rhs))
    if not disint.generated_by_coordinates(P, P1, P2):
        out.append("coordinates do not generate")
    return out


def monoidal(max_atoms: int = 2, seed: int = 0) -> list[LawReport]:
    n = min(max_atoms, 2)
    P = instances.prob_category(instances.sample_prob_algebras(n))
    B = instances.bool_category(instances.canonical_algebras(n))
    return lawcheck.check_monoidal_coherence("ProbAlg tensor", instances.prob_tensor_structure(), P) + \
        lawcheck.check_monoidal_coherence("Bool coproduct", instances.bool_coproduct_structure(), B)


SUITES = {
    "stone-duality": stone_duality,
    "prob-duality": prob_duality,
    "disint": disint_suite,
    "monoidal": monoidal,
}


def run_suites(name: str, max_atoms: int, jobs: int = 1, seed: int = 0) -> list[LawReport]:
    """Run one suite or ``"all"``; with ``jobs > 1`` suites run in worker processes.

    Results are merged in suite order, so output does not depend on ``jobs``.
    """
    names = list(SUITES) if name == "all" else [name]
    if name != "all" and name not in SUITES:
        raise KeyError(name)
    n = len(names)
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, names, [max_atoms] * n, [seed] * n))
    else:
        results = [_run_one(s, max_atoms, seed) for s in names]
    return [r for rs in results for r in rs]


def _run_one(name: str, max_atoms: int, seed: int) -> list[LawReport]:
    return SUITES[name](max_atoms, seed=seed)
