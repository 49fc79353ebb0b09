"""Verification suites: each checks one identity exhaustively at desk scale.

A suite expands into independent cases (usually one per order n).  Cases are
plain ``(function, args)`` pairs so a caller may run them in worker processes.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import permutations
from typing import Callable

from . import arch, factor, gauss, meander, perm, sequences
from .perm import Permutation, all_permutations, identity, inverse

__all__ = ["Case", "CaseResult", "Suite", "SUITES", "build_cases", "run_case"]

RANDOM_SAMPLES = 1000


@dataclass(frozen=True)
class CaseResult:
    suite: str
    label: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Case:
    suite: str
    label: str
    func: Callable[..., tuple[bool, str]]
    args: tuple


def run_case(case: Case) -> CaseResult:
    try:
        passed, detail = case.func(*case.args)
    except Exception as exc:  # a crash is a failed case, not a crashed run
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CaseResult(case.suite, case.label, passed, detail)


def _random_perm(n: int, rng: random.Random) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


# -- individual checks ------------------------------------------------------


def check_planar_catalan(n: int) -> tuple[bool, str]:
    items = [p.images for p in arch.enumerate_planar(n)]
    distinct = len(set(items)) == len(items)
    all_planar = all(arch.is_planar_images(p) for p in items)
    ok = distinct and all_planar and len(items) == sequences.catalan(n)
    detail = f"|Pl_{n}| = {len(items)}, C_{n} = {sequences.catalan(n)}"
    if n <= 8:
        filtered = sum(1 for p in permutations(range(1, n + 1)) if arch.is_planar_images(p))
        ok = ok and filtered == len(items)
        detail += f", filter over S_{n} = {filtered}"
    return ok, detail


def check_sum_cn2(n: int) -> tuple[bool, str]:
    total = sum(gauss.expectation_leading_single(s) for s in all_permutations(n))
    target = sequences.catalan(n) ** 2
    return total == target, f"sum = {total}, C_{n}^2 = {target}"


def check_census_closed_forms(n: int) -> tuple[bool, str]:
    census = meander.count_by_components(n)
    top, second, third = sequences.meandric_top_counts(n)
    ok = sum(census.values()) == sequences.catalan(n) ** 2
    ok = ok and census.get(n, 0) == top
    if n >= 2:
        ok = ok and census.get(n - 1, 0) == second
    if third is not None:
        ok = ok and census.get(n - 2, 0) == third
    return ok, f"census {census}; closed forms {(top, second, third)}"


def check_delta_closed_forms(n: int) -> tuple[bool, str]:
    values = [gauss.expectation_leading_single(perm.shift(n, k)) for k in range(n)]
    expected = [factor.closed_delta(n, k) for k in range(n)]
    return values == expected, f"brute {values}; closed {expected}"


def check_factorization(n: int, samples: int = 0, seed: int = 0) -> tuple[bool, str]:
    cache = factor.SifCache()
    if samples:
        rng = random.Random(seed)
        sigmas = [_random_perm(n, rng) for _ in range(samples)]
    else:
        sigmas = list(all_permutations(n))
    bad = []
    for s in sigmas:
        brute = gauss.expectation_leading_single(s)
        if factor.evaluate(s, cache) != brute:
            bad.append(s)
            continue
        blocks, p = factor.theorem1_witness(s)
        if p > 1:
            product = sequences.catalan(p) * math.prod(
                gauss.expectation_leading_single(b) for b in blocks.blocks
            )
            if product != brute:
                bad.append(s)
    kind = f"{samples} random" if samples else "all"
    return not bad, f"{kind} sigma in S_{n}: {len(bad)} mismatches"


def check_vanishing_examples() -> tuple[bool, str]:
    vanishing = perm.parse("(1 6 3 9 7 4 8 2 5)", 9)
    nonvanishing = perm.parse("(1 5 2 8 6 4 7 3)", 8)
    v0 = gauss.expectation_leading_single(vanishing)
    v1 = gauss.expectation_leading_single(nonvanishing)
    f0 = factor.evaluate(vanishing)
    f1 = factor.evaluate(nonvanishing)
    ok = v0 == f0 == 0 and v1 == f1 and v1 > 0
    return ok, f"<P_(1 6 3 9 7 4 8 2 5)> = {v0}, <P_(1 5 2 8 6 4 7 3)> = {v1}"


def check_genus_planarity(n: int) -> tuple[bool, str]:
    ident = identity(n)
    planar = set(arch.planar_images(n))
    bad = 0
    for sigma in all_permutations(n):
        s_inv = inverse(sigma).images
        for pi_images in permutations(range(1, n + 1)):
            pi = Permutation(pi_images)
            g12, g34 = gauss.genera(ident, sigma, pi)
            lower = tuple(s_inv[x - 1] for x in pi_images)
            if (g12 == 0) != (pi_images in planar) or (g34 == 0) != (lower in planar):
                bad += 1
    return bad == 0, f"{math.factorial(n) ** 2} pairs (sigma, pi): {bad} mismatches"


def check_face_trace(n: int) -> tuple[bool, str]:
    perms = list(all_permutations(n))
    bad = 0
    for pi in perms:
        for sw in perms:
            for sb in perms:
                if gauss.face_counts(sw, sb, pi) != gauss.traced_face_counts(sw, sb, pi):
                    bad += 1
    return bad == 0, f"{len(perms) ** 3} triples: {bad} mismatches"


def check_rho_square(n: int) -> tuple[bool, str]:
    bad = 0
    systems = 0
    whites = list(all_permutations(n))
    for s in meander.enumerate_systems(n):
        systems += 1
        roads = meander.components_trace(s)
        mp = meander.meandric_permutation(s)
        if perm.cycle_count(mp.rho) != roads or not mp.satisfies_square_condition():
            bad += 1
            continue
        if meander.components_formula(s) != roads:
            bad += 1
            continue
        for sw in whites:
            pi, sb = meander.reconstruct(s, sw)
            if not meander.check_rho_square(s, sw, sb, pi):
                bad += 1
            elif sw == whites[0] and perm.cycle_count(sb) != roads:
                bad += 1
    return bad == 0, f"{systems} systems x {len(whites)} white labels: {bad} failures"


def check_sif_irreducible(n: int) -> tuple[bool, str]:
    ident = identity(n)
    bad = 0
    irreducible = 0
    for s in meander.enumerate_systems(n):
        _, sigma = meander.reconstruct(s, ident)
        reducible = meander.is_two_reducible(s)
        irreducible += not reducible
        if reducible == perm.is_sif(sigma):
            bad += 1
    return bad == 0, f"{irreducible} 2-irreducible systems of order {n}: {bad} mismatches"


def check_motzkin(n: int) -> tuple[bool, str]:
    systems = list(meander.systems_of(perm.shift(n, -1)))
    paths = [meander.meander_to_motzkin(s) for s in systems]
    ok = all(meander.motzkin_to_meander(p) == s for p, s in zip(paths, systems))
    all_paths = list(meander.enumerate_motzkin(n))
    ok = ok and all(meander.meander_to_motzkin(meander.motzkin_to_meander(p)) == p for p in all_paths)
    ok = ok and len(set(paths)) == len(systems) == len(all_paths) == sequences.motzkin(n)
    return ok, f"|M_shift(-1)| = {len(systems)}, Mot({n}) = {sequences.motzkin(n)}"


def check_full_expansion(n: int, samples: int = 100, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    ident = identity(n)
    pairs = [(ident, ident)] + [(_random_perm(n, rng), _random_perm(n, rng)) for _ in range(samples)]
    bad = 0
    for sw, sb in pairs:
        exp = gauss.full_expansion(sw, sb)
        if exp.total != math.factorial(n) or exp.leading != gauss.expectation_leading(sw, sb):
            bad += 1
        elif any(k % 2 for k in exp.coeffs):
            bad += 1
    if n == 3:
        bad += gauss.full_expansion(ident, ident).coeffs != {0: 5, 4: 1}
    return bad == 0, f"{len(pairs)} label pairs: {bad} failures"


# -- suite registry ---------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    default_max_n: int
    build: Callable[[int], list[Case]]


def _per_n(name: str, func: Callable[..., tuple[bool, str]], min_n: int = 1):
    def build(max_n: int) -> list[Case]:
        return [Case(name, f"n={n}", func, (n,)) for n in range(min_n, max_n + 1)]

    return build


def _factorization_cases(max_n: int) -> list[Case]:
    cases = [Case("theorem1", f"n={n}", check_factorization, (n,)) for n in range(1, min(max_n, 6) + 1)]
    for n in range(7, max_n + 1):
        cases.append(
            Case("theorem1", f"n={n} sampled", check_factorization, (n, RANDOM_SAMPLES, n))
        )
    return cases


def _vanishing_cases(max_n: int) -> list[Case]:
    return [Case("vanishing-examples", "n=9 and n=8 examples", check_vanishing_examples, ())]


def _full_expansion_cases(max_n: int) -> list[Case]:
    return [
        Case("full-expansion", f"n={n}", check_full_expansion, (n, 100, n))
        for n in range(1, max_n + 1)
    ]


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("planar-catalan", "planar permutations are counted by Catalan numbers", 10,
              _per_n("planar-catalan", check_planar_catalan)),
        Suite("sum-cn2", "leading values summed over S_n give C_n^2", 6,
              _per_n("sum-cn2", check_sum_cn2)),
        Suite("census-closed-forms", "component census matches the top closed forms", 7,
              _per_n("census-closed-forms", check_census_closed_forms)),
        Suite("delta-closed-forms", "shift labels give Catalan, Motzkin, and n", 9,
              _per_n("delta-closed-forms", check_delta_closed_forms)),
        Suite("theorem1", "block factorization and SIF recursion match enumeration", 9,
              _factorization_cases),
        Suite("vanishing-examples", "vanishing and non-vanishing SIF examples", 9, _vanishing_cases),
        Suite("genus-planarity", "zero genus exactly for planar configurations", 6,
              _per_n("genus-planarity", check_genus_planarity)),
        Suite("face-trace-vs-formula", "cycle-count face formulas match graph tracing", 5,
              _per_n("face-trace-vs-formula", check_face_trace)),
        Suite("rho-square", "road permutation squares and component counts", 5,
              _per_n("rho-square", check_rho_square)),
        Suite("theorem2-sif-irreducible", "SIF labels give exactly the 2-irreducible systems", 6,
              _per_n("theorem2-sif-irreducible", check_sif_irreducible)),
        Suite("motzkin-bijection", "shift(-1) meanders correspond to Motzkin paths", 8,
              _per_n("motzkin-bijection", check_motzkin)),
        Suite("full-expansion", "1/N coefficients sum to n! and lead with the meander count", 7,
              _full_expansion_cases),
    ]
}


def build_cases(name: str, max_n: int | None = None) -> list[Case]:
    suite = SUITES[name]
    return suite.build(suite.default_max_n if max_n is None else max_n)
