"""Property suites and golden replays behind ``orbicoh verify``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import linalg as la
from .groupcoh import bar_cohomology_dims, cohomology_functors, group_cohomology_dims, inflation_map
from .groups import FiniteGroup, builtin_group, family_closure, family_from_members, make_family
from .homalg import check_resolution_json, ext_dims, induced_ext_map, resolve
from .modules import (
    GammaModule,
    GroupRep,
    constant_module,
    direct_sum,
    fixed_point_module,
    free_module,
    gset_rep,
    hom_dim,
    interval_module,
    kernel_module,
    rep_module,
    restrict_to_family,
    tensor_module,
    two_family_limit,
)
from .orbit import OrbitCategory, check_category, one_object_category, skeleton
from .relcoh import (
    fsplit_check,
    gset_for_family,
    interval_inclusion,
    klein_sequence,
    periodicity_report,
    random_surjection,
    relative_cohomology_dims,
    rg_side_pipeline,
    xsplit_check,
)
from .spectral import e2_page, essential_dims

DEFAULT_SEED = 0x5EED


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


# random instances ----------------------------------------------------------------------------


def random_rep(G: FiniteGroup, p: int, rng: np.random.Generator) -> GroupRep:
    subs = list(G.subgroups)
    picks = [subs[int(rng.integers(len(subs)))] for _ in range(int(rng.integers(1, 3)))]
    return gset_rep(G, picks, p)


def downward_closure(C: OrbitCategory, objs) -> list[int]:
    objs = set(objs)
    return sorted(h for h in range(C.n_objects) if any(C.mor[(h, k)] for k in objs))


def random_module(C: OrbitCategory, p: int, rng: np.random.Generator) -> GammaModule:
    """A direct sum of one or two random pieces of assorted kinds."""
    pieces = []
    for _ in range(int(rng.integers(1, 3))):
        kind = int(rng.integers(5))
        k = int(rng.integers(C.n_objects))
        if kind == 0:
            pieces.append(free_module(C, k, p))
        elif kind == 1:
            pieces.append(interval_module(C, downward_closure(C, [k]), p))
        elif kind == 2:
            pieces.append(fixed_point_module(C, random_rep(C.group, p, rng)))
        elif kind == 3:
            pieces.append(constant_module(C, p))
        else:
            M = interval_module(C, downward_closure(C, [k]), p)
            pieces.append(kernel_module(resolve(M, 0).augmentation)[0])
    return direct_sum(pieces)


# suites ---------------------------------------------------------------------------------------


CATEGORY_CASES = [
    ("klein4", "cyclic"),
    ("klein4", "all"),
    ("cyclic:4", "all"),
    ("symmetric:3", "all"),
    ("dihedral:4", "all"),
    ("quaternion8", "cyclic"),
]


def suite_categories(seed: int) -> SuiteResult:
    for g, f in CATEGORY_CASES:
        G = builtin_group(g)
        rep = check_category(OrbitCategory(G, make_family(G, f)))
        if not rep.ok:
            return SuiteResult("orbit categories", False, f"{g}/{f}: {rep.failure}")
    return SuiteResult("orbit categories", True, f"{len(CATEGORY_CASES)} categories")


def suite_functoriality(seed: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    count = 0
    for g, f in CATEGORY_CASES[:4]:
        G = builtin_group(g)
        C = OrbitCategory(G, make_family(G, f))
        for p in (2, 3):
            mods = [constant_module(C, p)]
            mods += [free_module(C, k, p) for k in range(C.n_objects)]
            mods += [interval_module(C, downward_closure(C, [k]), p) for k in range(C.n_objects)]
            mods += [fixed_point_module(C, GroupRep.regular(G, p)), fixed_point_module(C, random_rep(G, p, rng))]
            mods.append(tensor_module(mods[1], mods[-1]))
            res = resolve(constant_module(C, p), 3)
            mods += res.terms + res.kernels
            mods += [fn.values for fn in cohomology_functors(C, GroupRep.trivial(G, p), 2)]
            V = OrbitCategory(G, family_from_members(G, [G.trivial]))
            mods.append(two_family_limit(rep_module(one_object_category(G), GroupRep.regular(G, p)), C))
            mods.append(restrict_to_family(mods[1], V))
            for M in mods:
                M.check()
                count += 1
    return SuiteResult("functoriality", True, f"{count} modules, all composable pairs")


def suite_yoneda(seed: int, n: int = 100) -> SuiteResult:
    rng = np.random.default_rng(seed)
    cases = [("klein4", "cyclic", 2), ("symmetric:3", "all", 3), ("cyclic:4", "all", 2), ("symmetric:3", "cyclic", 2)]
    cats = {}
    for i in range(n):
        g, f, p = cases[i % len(cases)]
        if (g, f) not in cats:
            G = builtin_group(g)
            cats[(g, f)] = OrbitCategory(G, make_family(G, f))
        C = cats[(g, f)]
        K = int(rng.integers(C.n_objects))
        M = random_module(C, p, rng)
        if hom_dim(free_module(C, K, p), M) != M.dims[K]:
            return SuiteResult("Yoneda", False, f"case {i}: {g}/{f}, object {K}")
    return SuiteResult("Yoneda", True, f"{n} random (K, M) pairs")


def suite_adjointness(seed: int, n: int = 50) -> SuiteResult:
    rng = np.random.default_rng(seed)
    cases = [("klein4", "cyclic", 2), ("symmetric:3", "cyclic", 3), ("cyclic:4", "list:S1", 2)]
    done = 0
    for i in range(n):
        g, f, p = cases[i % len(cases)]
        G = builtin_group(g)
        CF = OrbitCategory(G, make_family(G, f))
        C1 = one_object_category(G)
        CA = OrbitCategory(G, make_family(G, "all"))
        # {1} in F
        X = random_module(CF, p, rng)
        N = rep_module(C1, random_rep(G, p, rng))
        if hom_dim(X, two_family_limit(N, CF)) != hom_dim(restrict_to_family(X, C1), N):
            return SuiteResult("adjointness", False, f"case {i}: {{1}} in {f} on {g}")
        # F in all
        X = random_module(CA, p, rng)
        N = random_module(CF, p, rng)
        if hom_dim(X, two_family_limit(N, CA)) != hom_dim(restrict_to_family(X, CF), N):
            return SuiteResult("adjointness", False, f"case {i}: {f} in all on {g}")
        done += 2
    return SuiteResult("adjointness", True, f"{done} instances, both inclusions")


def suite_split(seed: int, n: int = 200) -> SuiteResult:
    """F-split iff X-split on random quotients of permutation modules."""
    rng = np.random.default_rng(seed)
    cases = [("klein4", "cyclic", 2), ("symmetric:3", "cyclic", 3)]
    stats = {True: 0, False: 0}
    for g, f, p in cases:
        G = builtin_group(g)
        F = make_family(G, f)
        X = gset_for_family(G, F)
        for i in range(n):
            B, Cr, pi = random_surjection(G, p, rng, max_dim=6 if G.order <= 4 else 4)
            fs = fsplit_check(B, Cr, pi, F).overall
            xs = xsplit_check(B, Cr, pi, X).split
            if fs != xs:
                return SuiteResult("F-split <=> X-split", False, f"{g} GF({p}) case {i}: F {fs}, X {xs}")
            stats[fs] += 1
    return SuiteResult(
        "F-split <=> X-split", True, f"{n} per field over GF(2), GF(3); {stats[True]} split, {stats[False]} not"
    )


GOLDEN_EXT = [
    # group, family, p, module, coefficient module, expected dims through degree 3
    ("klein4", "cyclic", 2, "constant", "constant", (1, 0, 1, 3)),
    ("klein4", "cyclic", 2, "R0", "constant", (1, 2, 3, 4)),
    ("klein4", "cyclic", 2, "RH1", "constant", (1, 1, 1, 1)),
    ("symmetric:3", "cyclic", 3, "constant", "constant", (1, 0, 0, 0)),
    ("cyclic:4", "list:S1", 2, "constant", "constant", (1, 1, 1, 1)),
]


def _named_module(C: OrbitCategory, name: str, p: int) -> GammaModule:
    t = C.trivial_object
    if name == "constant":
        return constant_module(C, p)
    if name == "R0":
        return interval_module(C, [t], p)
    if name == "RH1":
        return interval_module(C, [t, 1], p)
    raise KeyError(name)


def suite_resolution_independence(seed: int, n: int = 3) -> SuiteResult:
    """Full-basis hulls grow geometrically; groups of order > 4 stop at degree 2."""
    for g, f, p, m, c, expected in GOLDEN_EXT:
        G = builtin_group(g)
        n = 3 if G.order <= 4 else 2
        C = OrbitCategory(G, make_family(G, f))
        M, N = _named_module(C, m, p), _named_module(C, c, p)
        mini = ext_dims(M, N, n)
        full = ext_dims(M, N, n, full=True)
        if mini != full or mini != expected[: n + 1]:
            return SuiteResult("resolution independence", False, f"{g}/{f} {m}: minimized {mini}, full basis {full}")
    G = builtin_group("klein4")
    T = GroupRep.trivial(G, 2)
    if group_cohomology_dims(G, G.whole, T, n, full=True) != group_cohomology_dims(G, G.whole, T, n):
        return SuiteResult("resolution independence", False, "group cohomology of klein4")
    return SuiteResult("resolution independence", True, f"{len(GOLDEN_EXT) + 1} golden values, degrees 0..2 or 0..3")


def suite_skeleton(seed: int, n: int = 6) -> SuiteResult:
    G = builtin_group("symmetric:3")
    for p in (2, 3):
        for coeff in (GroupRep.trivial(G, p), GroupRep.regular(G, p), gset_rep(G, [G.subgroups[1]], p)):
            vals = []
            for C in (OrbitCategory(G, make_family(G, "cyclic")), skeleton(G, make_family(G, "cyclic"))):
                vals.append(ext_dims(constant_module(C, p), fixed_point_module(C, coeff), n))
            if vals[0] != vals[1]:
                return SuiteResult("skeleton independence", False, f"GF({p}) dim {coeff.dim}: {vals}")
    return SuiteResult("skeleton independence", True, f"symmetric:3 cyclic, degrees 0..{n}")


PAGE_CASES = [("klein4", "cyclic", 2, 4, 4), ("klein4", "all", 2, 3, 3), ("symmetric:3", "cyclic", 3, 3, 3)]


def suite_subquotient(seed: int) -> SuiteResult:
    for g, f, p, P, Q in PAGE_CASES:
        G = builtin_group(g)
        page = e2_page(G, make_family(G, f), GroupRep.trivial(G, p), P, Q)
        if not page.subquotient_ok():
            return SuiteResult("subquotient bound", False, f"{g}/{f}")
    return SuiteResult("subquotient bound", True, f"{len(PAGE_CASES)} pages")


def suite_golden_resolution(seed: int) -> SuiteResult:
    data = load_golden("klein4_cyclic_constant_gf2.json")
    G = builtin_group("klein4")
    C = OrbitCategory(G, make_family(G, "cyclic"))
    res = check_resolution_json(data, constant_module(C, 2))
    fresh = resolve(constant_module(C, 2), res.length)
    same = fresh.decls() == res.decls() and fresh.dims() == res.dims()
    return SuiteResult("golden resolution", same, f"degrees 0..{res.length} replayed and re-verified")


def load_golden(name: str) -> dict:
    return json.loads((resources.files("orbicoh") / "golden" / name).read_text())


# recorded reference values ----------------------------------------------------------------------------------


def reference_values() -> dict:
    """Recompute every value recorded in golden/reference_values.json."""
    G = builtin_group("klein4")
    F = make_family(G, "cyclic")
    C = OrbitCategory(G, F)
    T = GroupRep.trivial(G, 2)
    ks = klein_sequence(C, 2)
    rel = relative_cohomology_dims(G, F, T, 8)
    page = e2_page(G, F, T, 6, 6)
    sub = C.objects[1]
    Q, _ = G.quotient(sub)
    return {
        "relcoh_klein4_cyclic": list(rel),
        "rg_side_klein4_cyclic": list(rg_side_pipeline(G, F, T, 8)),
        "periodicity_klein4_cyclic": periodicity_report(rel, 2).line(),
        "ext_R0_Rbar": list(ext_dims(ks.R0, ks.Rbar, 8)),
        "ext_RH_Rbar": [list(ext_dims(R, ks.Rbar, 8)) for R in ks.RH],
        "gamma_ranks": [la.rank(m, 2) for m in induced_ext_map(ks.gamma, ks.Rbar, 6)][1:],
        "inflation_ranks": [la.rank(m, 2) for m in inflation_map(G, sub, GroupRep.trivial(Q, 2), 6)],
        "include_R0_RH1_ranks": [la.rank(m, 2) for m in induced_ext_map(interval_inclusion(ks.R0, ks.RH[0]), ks.Rbar, 6)],
        "groupcoh_C2": list(group_cohomology_dims(G, sub, T, 6)),
        "groupcoh_klein4": list(group_cohomology_dims(G, G.whole, T, 6)),
        "bar_groupcoh_klein4": list(bar_cohomology_dims(G, T, 3)),
        "e2_rows_q_ge_1": [page.row(q) for q in range(1, 7)],
        "e2_row_q0": page.row(0),
        "horizontal_edge_ranks": page.horizontal_ranks(),
        "relative_essential": list(page.relative_essential()),
        "essential_klein4": list(essential_dims(G, T, 3)),
    }


def suite_reference(seed: int) -> SuiteResult:
    expected = load_golden("reference_values.json")["values"]
    actual = reference_values()
    bad = [k for k in expected if actual.get(k) != expected[k]]
    return SuiteResult("recorded values", not bad, "mismatch: " + ", ".join(bad) if bad else f"{len(expected)} values")


SUITES = [
    suite_categories,
    suite_functoriality,
    suite_yoneda,
    suite_adjointness,
    suite_split,
    suite_resolution_independence,
    suite_skeleton,
    suite_subquotient,
    suite_golden_resolution,
]


def run_suites(seed: int = DEFAULT_SEED, paper: bool = False) -> list[SuiteResult]:
    out = []
    for suite in SUITES + ([suite_reference] if paper else []):
        try:
            out.append(suite(seed))
        except Exception as exc:  # a suite that raises is a failed suite
            out.append(SuiteResult(suite.__name__.removeprefix("suite_"), False, f"{type(exc).__name__}: {exc}"))
    return out
