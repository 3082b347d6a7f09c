from __future__ import annotations

import numpy as np
import pytest

from orbicoh import linalg as la
from orbicoh.groupcoh import cohomology_functors
from orbicoh.groups import builtin_group, make_family
from orbicoh.homalg import induced_ext_map
from orbicoh.modules import GroupRep, constant_module, fixed_point_module, interval_module, limit_dim
from orbicoh.relcoh import interval_inclusion, klein_sequence, relative_cohomology_dims
from orbicoh.spectral import BANNER, e2_page, essential_dims, horizontal_edge, vertical_edge
from orbicoh.orbit import OrbitCategory


@pytest.fixture(scope="module")
def page():
    G = builtin_group("klein4")
    return e2_page(G, make_family(G, "cyclic"), GroupRep.trivial(G, 2), 4, 3)


def test_grid(page):
    for q in range(1, 4):
        assert page.row(q) == [3] * 5
    assert page.row(0) == [1, 0, 1, 3, 5]
    assert page.banner == BANNER
    assert page.subquotient_ok()


def test_wiring(page, klein4, kcat):
    T = GroupRep.trivial(klein4, 2)
    assert tuple(page.row(0)) == relative_cohomology_dims(klein4, kcat.family, T, 4)
    for f in cohomology_functors(kcat, T, 3):
        assert page.dims[0][f.q] == limit_dim(f.values)


def test_vertical_examples(klein4, kcat):
    T = GroupRep.trivial(klein4, 2)
    v = vertical_edge(klein4, kcat.family, T, 3)
    assert np.array_equal(v[0], la.eye(1))
    assert la.rank(v[1], 2) == 2 and v[1].shape[1] == 2
    assert la.rank(v[3], 2) == 3 and v[3].shape[1] == 4


def test_horizontal_examples(page):
    assert page.horizontal_ranks() == [1, 0, 0, 0, 0]


def test_horizontal_factors_through_tau(kcat):
    ks = klein_sequence(kcat, 2)
    for R in ks.RH:
        ranks = [la.rank(m, 2) for m in induced_ext_map(interval_inclusion(R, ks.Rbar), ks.Rbar, 5)]
        assert ranks[1:] == [0] * 5


def test_essential(klein4):
    assert essential_dims(klein4, GroupRep.trivial(klein4, 2), 3) == (0, 0, 0, 1)
    assert essential_dims(builtin_group("symmetric:3"), GroupRep.trivial(builtin_group("symmetric:3"), 3), 0) == (0,)


def test_relative_essential_zero(page):
    assert page.relative_essential() == (0, 0, 0, 0)


def test_relative_essential_inside_kernel(page):
    # above degree 0 the image of the horizontal edge lies in the kernel of the vertical one
    for n in range(1, 4):
        h, v = page.horizontal_edge[n], page.vertical_edge[n]
        assert not la.mul(v, h, 2).any()


def test_all_family_column(s3):
    M = GroupRep.trivial(s3, 3)
    pg = e2_page(s3, make_family(s3, "all"), M, 2, 4)
    assert all(pg.dims[p][q] == 0 for p in (1, 2) for q in range(5))
    assert [pg.dims[0][q] for q in range(5)] == list(pg.target_dims[:5])
    assert pg.vertical_ranks() == list(pg.target_dims[:5])


def test_json(page):
    data = page.to_json()
    assert data["schema"] == 1 and data["banner"] == BANNER
    assert data["dims"][1] == [3] * 5
