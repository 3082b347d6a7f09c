from __future__ import annotations

import numpy as np
import pytest

from orbicoh import linalg as la
from orbicoh.errors import NotEquivariant, NotSurjective, WindowTooShort
from orbicoh.groups import builtin_group, family_closure, make_family
from orbicoh.modules import GroupRep, gset_rep, perm_rep
from orbicoh.relcoh import (
    fsplit_check,
    gset_for_family,
    klein_sequence,
    periodicity_report,
    random_surjection,
    relative_cohomology_dims,
    rg_side_pipeline,
    rg_tensor_dims,
    section,
    xsplit_check,
)
from orbicoh.orbit import OrbitCategory


def test_klein_headline(klein4):
    F = make_family(klein4, "cyclic")
    T = GroupRep.trivial(klein4, 2)
    assert relative_cohomology_dims(klein4, F, T, 8) == (1, 0, 1, 3, 5, 7, 9, 11, 13)
    assert rg_tensor_dims(klein4, F, T, 4) == (1, 0, 1, 3, 5)


@pytest.mark.parametrize("name", ["klein4", "symmetric:3", "cyclic:6", "quaternion8"])
def test_family_all_is_fixed_points(name):
    G = builtin_group(name)
    for M in (GroupRep.trivial(G, 2), GroupRep.regular(G, 3)):
        d = relative_cohomology_dims(G, make_family(G, "all"), M, 3)
        assert d == (M.fixed_space(G.whole)[0].shape[1], 0, 0, 0)


def test_degree0_is_invariants(s3):
    F = make_family(s3, "cyclic")
    for M in (GroupRep.regular(s3, 2), perm_rep(s3, s3.subgroups[1], 3)):
        assert relative_cohomology_dims(s3, F, M, 0)[0] == M.fixed_space(s3.whole)[0].shape[1]


def test_rg_side_matches():
    G = builtin_group("cyclic:4")
    F = make_family(G, "list:S1")
    T = GroupRep.trivial(G, 2)
    assert rg_side_pipeline(G, F, T, 6) == relative_cohomology_dims(G, F, T, 6)
    S = builtin_group("symmetric:3")
    M = GroupRep.regular(S, 2)
    F = make_family(S, "cyclic")
    assert rg_side_pipeline(S, F, M, 4) == relative_cohomology_dims(S, F, M, 4)


def test_trivial_group():
    G = builtin_group("trivial")
    M = GroupRep.trivial(G, 5, dim=3)
    F = make_family(G, "all")
    assert rg_side_pipeline(G, F, M, 3) == (3, 0, 0, 0) == relative_cohomology_dims(G, F, M, 3)


def _augmentation(G, subs, p):
    B = gset_rep(G, subs, p)
    return B, GroupRep.trivial(G, p), np.ones((1, B.dim), dtype=np.int64)


def test_fsplit_examples(klein4):
    F = make_family(klein4, "cyclic")
    B, C, pi = _augmentation(klein4, gset_for_family(klein4, F), 2)
    report = fsplit_check(B, C, pi, F)
    assert report.overall
    for h, v in zip(F.members, report.verdicts.values()):
        assert np.array_equal(la.mul(pi, v.witness, 2), la.eye(1))
    full = fsplit_check(B, C, pi, make_family(klein4, "all"))
    assert not full.overall
    top = full.verdicts[f"S{klein4.subgroup_id(klein4.whole)}"]
    assert not top.split and top.certificate.startswith("rank")
    assert not xsplit_check(B, C, pi, [klein4.whole]).split


def test_trivial_subgroup_always_splits(s3):
    rng = np.random.default_rng(4)
    F1 = make_family(s3, "list:S0")
    for _ in range(10):
        B, C, pi = random_surjection(s3, 3, rng, 6)
        assert fsplit_check(B, C, pi, F1).overall


def test_split_errors(klein4):
    B, C, pi = _augmentation(klein4, [klein4.trivial], 2)
    with pytest.raises(NotSurjective):
        fsplit_check(B, C, np.zeros_like(pi), make_family(klein4, "cyclic"))
    with pytest.raises(NotEquivariant):
        fsplit_check(B, C, np.array([[1, 0, 0, 0]]), make_family(klein4, "cyclic"))


@pytest.mark.parametrize("name,p", [("klein4", 2), ("symmetric:3", 3), ("symmetric:3", 2)])
def test_f_split_iff_x_split(name, p):
    G = builtin_group(name)
    F = make_family(G, "cyclic")
    X = gset_for_family(G, F)
    rng = np.random.default_rng(21)
    for _ in range(25):
        B, C, pi = random_surjection(G, p, rng, 4)
        assert fsplit_check(B, C, pi, F).overall == xsplit_check(B, C, pi, X).split


def test_x_is_a_point_means_plain_splitting(s3):
    rng = np.random.default_rng(8)
    for _ in range(10):
        B, C, pi = random_surjection(s3, 3, rng, 6)
        plain = section(B, C, pi, range(s3.order)).split
        assert xsplit_check(B, C, pi, [s3.whole]).split == plain


def test_free_orbit_always_splits(s3):
    rng = np.random.default_rng(12)
    for _ in range(5):
        B, C, pi = random_surjection(s3, 2, rng, 3)
        assert xsplit_check(B, C, pi, [s3.trivial]).split


def test_monotone_in_family(klein4):
    small, big = make_family(klein4, "cyclic"), make_family(klein4, "all")
    rng = np.random.default_rng(13)
    for _ in range(20):
        B, C, pi = random_surjection(klein4, 2, rng, 6)
        if fsplit_check(B, C, pi, big).overall:
            assert fsplit_check(B, C, pi, small).overall


def test_closure_spot_check(s3):
    # splitting over the single seed already decides splitting over its closure
    t = next(H for H in s3.subgroups if len(H) == 2)
    Fbar = family_closure(s3, [t])
    rng = np.random.default_rng(3)
    for _ in range(10):
        B, C, pi = random_surjection(s3, 2, rng, 6)
        assert section(B, C, pi, t.elements).split == fsplit_check(B, C, pi, Fbar).overall


def test_periodicity_examples():
    rep = periodicity_report((1, 0, 1, 3, 5, 7, 9, 11, 13), 2)
    assert rep.line() == "periodicity: none detected (window 8, offset 2)"
    assert "strictly increasing" in rep.certificate
    assert periodicity_report((1,) * 6, 0).period == 1
    assert periodicity_report((1, 2) * 4, 0).period == 2
    assert periodicity_report((1, 0, 4, 5, 4, 5, 4, 5), 2).period == 2
    with pytest.raises(WindowTooShort):
        periodicity_report((1, 0, 1, 3), 2)


def test_klein_sequence_is_exact(kcat):
    for p in (2, 3, 5):
        ks = klein_sequence(kcat, p)
        for h in range(kcat.n_objects):
            g, q = ks.gamma.comp[h], ks.pi.comp[h]
            assert not la.mul(q, g, p).any()
            assert la.rank(g, p) == g.shape[1]
            assert la.rank(q, p) == q.shape[0]
            assert la.rank(g, p) + la.rank(q, p) == g.shape[0]
