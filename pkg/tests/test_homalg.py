from __future__ import annotations

import numpy as np
import pytest

from orbicoh import linalg as la
from orbicoh.errors import DegreeBoundExceeded
from orbicoh.groups import builtin_group, make_family
from orbicoh.homalg import (
    check_resolution_json,
    ext_dims,
    free_hull,
    hom_complex,
    induced_ext_map,
    lift_chain_map,
    resolution_to_json,
    resolve,
)
from orbicoh.modules import (
    GammaHom,
    GammaModule,
    constant_module,
    free_module,
    hom_dim,
    hom_space,
    interval_module,
    kernel_module,
)
from orbicoh.orbit import OrbitCategory, skeleton
from orbicoh.relcoh import interval_inclusion, klein_sequence
from orbicoh.verify import load_golden, random_module


def test_hull_examples(kcat):
    P, epi = free_hull(constant_module(kcat, 2))
    assert P.decl == [(1, 1), (2, 1), (3, 1)] and P.dims == [6, 2, 2, 2]
    assert epi.is_surjective()
    F = free_module(kcat, 2, 2)
    P, epi = free_hull(F)
    assert P.decl == [(2, 1)]
    assert all(la.rank(c, 2) == c.shape[0] == c.shape[1] for c in epi.comp if c.size)
    P, _ = free_hull(interval_module(kcat, [0], 2))
    assert P.decl == [(0, 1)] and P.dims == [4, 0, 0, 0]


def test_no_two_summand_hull_of_constant(kcat):
    # Hom(P_k, R-bar) is one-dimensional, so P_a + P_b hits R-bar(h) only
    # when some summand receives a morphism from h
    for a in range(4):
        for b in range(a, 4):
            assert not all(kcat.mor[(h, a)] or kcat.mor[(h, b)] for h in range(4))


def test_resolve_examples(kcat):
    res = resolve(constant_module(kcat, 2), 1)
    res.check()
    assert res.dims()[0] == [6, 2, 2, 2]
    K, _ = kernel_module(res.augmentation)
    assert K.dims == [5, 1, 1, 1]
    assert res.terms[1].dims == free_hull(K)[0].dims
    z = resolve(GammaModule.zero(kcat, 2), 3)
    assert all(all(d == 0 for d in t.dims) for t in z.terms)
    f = resolve(free_module(kcat, 1, 2), 3)
    assert f.decls()[0] == [(1, 1)] and all(not d for d in f.decls()[1:])


def test_resolution_exactness_random(kcat):
    rng = np.random.default_rng(5)
    for _ in range(5):
        M = random_module(kcat, 3, rng)
        resolve(M, 3).check()


def test_degree_cap(kcat):
    with pytest.raises(DegreeBoundExceeded):
        resolve(constant_module(kcat, 2), 99)


def test_hom_complex_examples(kcat):
    Rbar = constant_module(kcat, 2)
    res = resolve(Rbar, 2)
    cc = hom_complex(res, Rbar, 1)
    assert cc.dims[0] == 3
    assert not any(hom_complex(res, GammaModule.zero(kcat, 2), 1).dims)
    M = random_module(kcat, 2, np.random.default_rng(1))
    cc = hom_complex(res, M, 1)
    for q in range(2):
        assert cc.dims[q] == sum(M.dims[k] * m for k, m in res.terms[q].decl)


def test_ext_examples(kcat):
    Rbar = constant_module(kcat, 2)
    assert ext_dims(Rbar, Rbar, 6) == (1, 0, 1, 3, 5, 7, 9)
    assert ext_dims(interval_module(kcat, [0], 2), Rbar, 4) == (1, 2, 3, 4, 5)
    assert ext_dims(interval_module(kcat, [0, 1], 2), Rbar, 4) == (1, 1, 1, 1, 1)


def test_ext_degree0_is_hom(kcat):
    rng = np.random.default_rng(2)
    for _ in range(5):
        M, N = random_module(kcat, 2, rng), random_module(kcat, 2, rng)
        assert ext_dims(M, N, 0)[0] == hom_dim(M, N)


def test_full_hull_agrees(kcat):
    Rbar = constant_module(kcat, 2)
    assert ext_dims(Rbar, Rbar, 3, full=True) == ext_dims(Rbar, Rbar, 3)


def test_skeleton_independence(s3):
    F = make_family(s3, "cyclic")
    for C in (OrbitCategory(s3, F), skeleton(s3, F)):
        assert ext_dims(constant_module(C, 3), constant_module(C, 3), 4) == (1, 0, 0, 0, 0)


def test_lift_identity_and_zero(kcat):
    Rbar = constant_module(kcat, 2)
    res = resolve(Rbar, 3)
    chain = lift_chain_map(GammaHom.identity(Rbar), res, res, 3)
    for f, t in zip(chain, res.terms):
        assert all(np.array_equal(c, la.eye(d)) for c, d in zip(f.comp, t.dims))
    chain = lift_chain_map(GammaHom.zero(Rbar, Rbar), res, res, 3)
    assert all(f.is_zero() for f in chain)


def test_induced_examples(kcat):
    ks = klein_sequence(kcat, 2)
    ident = induced_ext_map(GammaHom.identity(ks.Rbar), ks.Rbar, 4)
    assert all(np.array_equal(m, la.eye(m.shape[0])) for m in ident)
    gamma = induced_ext_map(ks.gamma, ks.Rbar, 6)
    assert [la.rank(m, 2) for m in gamma[1:]] == [3] * 6
    phi = interval_inclusion(ks.R0, ks.Rbar)
    assert [la.rank(m, 2) for m in induced_ext_map(phi, ks.Rbar, 8)] == [1] + [0] * 8


def test_induced_functoriality(kcat):
    ks = klein_sequence(kcat, 2)
    a = interval_inclusion(ks.R0, ks.RH[0])
    b = interval_inclusion(ks.RH[0], ks.Rbar)
    ra, rb, rc = (resolve(M, 5) for M in (ks.R0, ks.RH[0], ks.Rbar))
    a_star = induced_ext_map(a, ks.Rbar, 4, ra, rb)
    b_star = induced_ext_map(b, ks.Rbar, 4, rb, rc)
    ba_star = induced_ext_map(b.after(a), ks.Rbar, 4, ra, rc)
    for x, y, z in zip(a_star, b_star, ba_star):
        assert np.array_equal(z, la.mul(x, y, 2))


def test_induced_functoriality_random(kcat):
    rng = np.random.default_rng(9)
    p = 3
    checked = 0
    while checked < 3:
        M1, M2, M3 = (random_module(kcat, p, rng) for _ in range(3))
        h12, h23 = hom_space(M1, M2), hom_space(M2, M3)
        if not h12 or not h23:
            continue
        a, b = _combo(h12, rng, p), _combo(h23, rng, p)
        N = random_module(kcat, p, rng)
        r1, r2, r3 = resolve(M1, 4), resolve(M2, 4), resolve(M3, 4)
        lhs = induced_ext_map(b.after(a), N, 3, r1, r3)
        rhs = [la.mul(x, y, p) for x, y in zip(induced_ext_map(a, N, 3, r1, r2), induced_ext_map(b, N, 3, r2, r3))]
        assert all(np.array_equal(x, y) for x, y in zip(lhs, rhs))
        checked += 1


def _combo(basis, rng, p):
    coeffs = rng.integers(0, p, size=len(basis))
    comp = [sum(int(c) * h.comp[i] for c, h in zip(coeffs, basis)) % p for i in range(len(basis[0].comp))]
    return GammaHom(basis[0].source, basis[0].target, comp, check=True)


def test_golden_replay(kcat):
    data = load_golden("klein4_cyclic_constant_gf2.json")
    res = check_resolution_json(data, constant_module(kcat, 2))
    assert res.dims()[:2] == [[6, 2, 2, 2], [14, 2, 2, 2]]
    fresh = resolution_to_json(resolve(constant_module(kcat, 2), len(data["degrees"]) - 1))
    assert fresh["degrees"] == data["degrees"]
