from __future__ import annotations

import numpy as np
import pytest

from orbicoh.groups import all_subgroups, builtin_group, make_family
from orbicoh.orbit import OrbitCategory, build_orbit_category, check_category, dump, fixed_point_count, skeleton


def test_klein_census(kcat):
    C = kcat
    assert len(C.mor[(0, 0)]) == 4
    assert len(C.mor[(1, 1)]) == 2 and len(C.mor[(1, 2)]) == 0
    assert len(C.mor[(0, 1)]) == 2
    assert len(C.morphisms) == 16
    assert C.census() == [[4, 2, 2, 2], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]


def test_morphism_reps_canonical(kcat):
    G = kcat.group
    for m in kcat.morphisms:
        K = kcat.objects[m.target]
        assert m.coset_rep == min(G.mul(m.coset_rep, k) for k in K.elements)


@pytest.mark.parametrize("name,spec", [("klein4", "all"), ("symmetric:3", "all"), ("quaternion8", "cyclic"), ("dihedral:4", "all")])
def test_check_passes(name, spec):
    G = builtin_group(name)
    C = build_orbit_category(G, make_family(G, spec))
    assert check_category(C).ok
    for (i, j), ids in C.mor.items():
        assert len(ids) == fixed_point_count(G, C.objects[i], C.objects[j])
    for i in range(C.n_objects):
        H = C.objects[i]
        normalizer = [g for g in range(G.order) if G.conjugate(H, g) == H]
        assert len(C.endomorphisms(i)) == len(normalizer) // len(H)


def test_corrupted_table_detected(kcat):
    C = build_orbit_category(kcat.group, kcat.family)
    table = C.compose_table.copy()
    # first non-identity pair of composable endomorphisms of G/1
    f, g = C.mor[(0, 0)][1], C.mor[(0, 0)][2]
    table[f, g] = C.mor[(0, 0)][3] if table[f, g] != C.mor[(0, 0)][3] else C.mor[(0, 0)][0]
    C.compose_table = table
    report = check_category(C)
    assert not report.ok and "fails" in report.failure


def test_dump(kcat):
    d = dump(kcat)
    assert d["objects"] == ["S0", "S1", "S2", "S3"] and d["morphisms"] == 16
    assert "composition" in dump(kcat, True)


def test_skeleton_smaller():
    G = builtin_group("symmetric:3")
    F = make_family(G, "all")
    assert skeleton(G, F).n_objects == 4 < build_orbit_category(G, F).n_objects
