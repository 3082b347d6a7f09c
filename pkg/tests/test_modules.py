from __future__ import annotations

import numpy as np
import pytest

from orbicoh import linalg as la
from orbicoh.errors import CategoryMismatch, NotDownwardClosed, NotSubfamily, NotSuperfamily
from orbicoh.groups import builtin_group, make_family
from orbicoh.modules import (
    FreeModule,
    GammaHom,
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
    limit_dim,
    perm_rep,
    restrict_to_family,
    tensor_module,
    two_family_limit,
)
from orbicoh.orbit import OrbitCategory
from orbicoh.verify import random_module


def test_free_dims(kcat):
    assert free_module(kcat, 1, 2).dims == [2, 2, 0, 0]
    P1 = free_module(kcat, 0, 2)
    assert P1.dims == [4, 0, 0, 0]
    for a in P1.act + free_module(kcat, 2, 3).act:
        if a.size:
            assert (a.sum(axis=0) == 1).all() and (a.sum(axis=1) == 1).all()


def test_interval_examples(kcat):
    assert constant_module(kcat, 2).dims == [1, 1, 1, 1]
    assert interval_module(kcat, [0], 2).dims == [1, 0, 0, 0]
    R1 = interval_module(kcat, [0, 1], 2)
    assert R1.dims == [1, 1, 0, 0]
    f = kcat.mor[(0, 1)][0]
    assert R1.act[f].tolist() == [[1]]
    with pytest.raises(NotDownwardClosed):
        interval_module(kcat, [1], 2)


def test_fixed_point_examples(kcat, klein4):
    triv = fixed_point_module(kcat, GroupRep.trivial(klein4, 2))
    assert triv.dims == [1, 1, 1, 1] and all(np.array_equal(a, la.eye(1)) for a in triv.act)
    reg = fixed_point_module(kcat, GroupRep.regular(klein4, 2))
    reg.check()
    assert reg.dims == [4, 2, 2, 2]
    assert limit_dim(reg) == 1


def test_hom_examples(kcat):
    Rbar = constant_module(kcat, 2)
    R0 = interval_module(kcat, [0], 2)
    assert hom_dim(free_module(kcat, 1, 2), Rbar) == 1
    assert hom_dim(R0, Rbar) == 1
    assert limit_dim(Rbar) == 1 and limit_dim(R0) == 0


def test_yoneda_random(kcat):
    rng = np.random.default_rng(7)
    for _ in range(10):
        M = random_module(kcat, 2, rng)
        for k in range(kcat.n_objects):
            assert hom_dim(free_module(kcat, k, 2), M) == M.dims[k]


def test_kernel_examples(kcat):
    Rbar = constant_module(kcat, 2)
    K, inc = kernel_module(GammaHom.identity(Rbar))
    assert K.is_zero()
    P = FreeModule(kcat, 2, [1, 2, 3])
    aug = P.hom_to(Rbar, [la.eye(1)[:, 0]] * 3)
    aug.check()
    K, inc = kernel_module(aug)
    assert K.dims == [5, 1, 1, 1]
    inc.check()
    K, inc = kernel_module(GammaHom.zero(Rbar, interval_module(kcat, [0], 2)))
    assert K.dims == Rbar.dims and all(np.array_equal(c, la.eye(d)) for c, d in zip(inc.comp, K.dims))


def test_tensor_examples(kcat):
    Rbar = constant_module(kcat, 3)
    M = random_module(kcat, 3, np.random.default_rng(3))
    T = tensor_module(Rbar, M)
    assert T.dims == M.dims and all(np.array_equal(a % 3, b % 3) for a, b in zip(T.act, M.act))
    P = free_module(kcat, 1, 2)
    PP = tensor_module(P, P)
    PP.check()
    assert PP.dims == direct_sum([P, P]).dims == [4, 4, 0, 0]
    assert tensor_module(P, GammaModule.zero(kcat, 2)).is_zero()


def test_tensor_category_mismatch(kcat, s3):
    other = OrbitCategory(s3, make_family(s3, "all"))
    with pytest.raises(CategoryMismatch):
        tensor_module(constant_module(kcat, 2), constant_module(other, 2))


def test_restrict_examples(klein4):
    W = OrbitCategory(klein4, make_family(klein4, "all_proper"))
    V = make_family(klein4, "list:S0")
    assert restrict_to_family(constant_module(W, 2), V).dims == [1]
    reg = fixed_point_module(W, GroupRep.regular(klein4, 2))
    assert restrict_to_family(reg, V).dims == [4]
    CV = OrbitCategory(klein4, make_family(klein4, "cyclic"))
    assert restrict_to_family(free_module(W, 1, 2), CV).dims == free_module(CV, 1, 2).dims
    with pytest.raises(NotSubfamily):
        restrict_to_family(constant_module(CV, 2), make_family(klein4, "all"))


def test_two_family_limit_examples(klein4, kcat):
    one = OrbitCategory(klein4, make_family(klein4, "list:S0"))
    reg = GroupRep.regular(klein4, 2)
    lim = two_family_limit(fixed_point_module(one, reg), kcat)
    lim.check()
    assert lim.dims == fixed_point_module(kcat, reg).dims
    top = OrbitCategory(klein4, make_family(klein4, "all"))
    up = two_family_limit(constant_module(kcat, 2), top)
    assert up.dims[top.object_index(klein4.whole)] == 1
    with pytest.raises(NotSuperfamily):
        two_family_limit(constant_module(top, 2), kcat)


def test_limit_composition(klein4, kcat):
    one = OrbitCategory(klein4, make_family(klein4, "list:S0"))
    top = OrbitCategory(klein4, make_family(klein4, "all"))
    M = fixed_point_module(one, GroupRep.regular(klein4, 2))
    two_step = two_family_limit(two_family_limit(M, kcat), top)
    one_step = two_family_limit(M, top)
    assert two_step.dims == one_step.dims


def test_adjointness_dims(klein4, kcat):
    rng = np.random.default_rng(11)
    one = OrbitCategory(klein4, make_family(klein4, "list:S0"))
    for _ in range(5):
        X = random_module(kcat, 2, rng)
        N = random_module(one, 2, rng)
        assert hom_dim(X, two_family_limit(N, kcat)) == hom_dim(restrict_to_family(X, one), N)


def test_perm_reps(klein4, kcat):
    assert perm_rep(klein4, klein4.whole, 2).dim == 1
    assert perm_rep(klein4, klein4.trivial, 2).dim == 4
    X = gset_rep(klein4, [klein4.subgroups[i] for i in (1, 2, 3)], 2)
    assert X.dim == 6
    top = OrbitCategory(klein4, make_family(klein4, "all"))
    # X^H is nonempty exactly on the cyclic family
    nonempty = {H for H in top.objects if _has_fixed_point(klein4, H)}
    assert nonempty == set(kcat.objects)


def _has_fixed_point(G, H):
    return any(all(G.mul(h, c[0]) in c for h in H.elements) for K in G.subgroups[1:4] for c in G.left_cosets(K))


def test_rep_from_generators_and_errors(klein4):
    rep = GroupRep.from_generators(klein4, 3, {1: [[2]], 2: [[1]]})
    assert rep.rho[3].tolist() == [[2]]
    rep.check()
