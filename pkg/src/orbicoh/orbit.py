"""The orbit category Or_F(G).

A morphism G/H -> G/K is the G-map eH -> gK, which exists iff g^-1 H g <= K.
It is stored by its canonical representative, the least element of gK.
Composition (f first, then f') has representative min(g g' L).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .groups import FiniteGroup, Subgroup, SubgroupFamily, family_from_members


@dataclass(frozen=True)
class Morphism:
    source: int
    target: int
    coset_rep: int


class OrbitCategory:
    """Objects are subgroups (all family members unless ``objects`` is given,
    in which case the full subcategory on those objects is built)."""

    def __init__(self, group: FiniteGroup, family: SubgroupFamily, objects=None):
        self.group = group
        self.family = family
        self.objects: tuple[Subgroup, ...] = tuple(objects) if objects is not None else family.members
        self._obj_index = {h: i for i, h in enumerate(self.objects)}
        G = group
        morphisms: list[Morphism] = []
        self.mor: dict[tuple[int, int], list[int]] = {}
        self._lookup: dict[tuple[int, int, int], int] = {}
        for i, h in enumerate(self.objects):
            for j, k in enumerate(self.objects):
                ids = []
                if len(h) <= len(k) and len(k) % len(h) == 0:
                    for coset in G.left_cosets(k):
                        g = coset[0]
                        if all(G.conj(g, x) in k for x in h.elements):
                            m = Morphism(i, j, g)
                            self._lookup[(i, j, g)] = len(morphisms)
                            ids.append(len(morphisms))
                            morphisms.append(m)
                self.mor[(i, j)] = ids
        self.morphisms = morphisms
        self.identity = [self._lookup[(i, i, 0)] for i in range(len(self.objects))]
        self.compose_table = self._build_composition()

    def __repr__(self):
        return f"OrbitCategory({self.group.name}, objects={len(self.objects)}, morphisms={len(self.morphisms)})"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def object_index(self, sub: Subgroup) -> int:
        return self._obj_index[sub]

    def find(self, source: int, target: int, g: int) -> int:
        """Id of the morphism source -> target sending e to g*target."""
        rep = self.group.coset_rep(g, self.objects[target])
        return self._lookup[(source, target, rep)]

    def _build_composition(self) -> np.ndarray:
        n = len(self.morphisms)
        table = np.full((n, n), -1, dtype=np.int64)
        G = self.group
        by_source: dict[int, list[int]] = {}
        for idx, m in enumerate(self.morphisms):
            by_source.setdefault(m.source, []).append(idx)
        for fi, f in enumerate(self.morphisms):
            for gi in by_source.get(f.target, []):
                g = self.morphisms[gi]
                rep = G.coset_rep(G.mul(f.coset_rep, g.coset_rep), self.objects[g.target])
                table[fi, gi] = self._lookup[(f.source, g.target, rep)]
        table.setflags(write=False)
        return table

    def compose(self, f: int, g: int) -> int:
        """g o f (f first)."""
        return int(self.compose_table[f, g])

    def endomorphisms(self, obj: int) -> list[int]:
        return self.mor[(obj, obj)]

    def sizes(self) -> list[int]:
        return [len(h) for h in self.objects]

    def census(self) -> list[list[int]]:
        n = self.n_objects
        return [[len(self.mor[(i, j)]) for j in range(n)] for i in range(n)]

    @cached_property
    def trivial_object(self) -> int:
        return self._obj_index[self.group.trivial]

    def object_ids(self) -> list[str]:
        return [f"S{self.group.subgroup_id(h)}" for h in self.objects]


def build_orbit_category(G: FiniteGroup, F: SubgroupFamily, *, check: bool = True) -> OrbitCategory:
    if check:
        F.check()
    return OrbitCategory(G, F)


def skeleton(G: FiniteGroup, F: SubgroupFamily) -> OrbitCategory:
    """Full subcategory on one representative per conjugacy class."""
    reps = {}
    for h, c in zip(F.members, F.conj_class):
        reps.setdefault(c, h)
    return OrbitCategory(G, F, objects=sorted(reps.values()))


def one_object_category(G: FiniteGroup) -> OrbitCategory:
    """Or_{1}(G): one object with endomorphisms G; modules are RG-modules."""
    return OrbitCategory(G, family_from_members(G, [G.trivial]))


def fixed_point_count(G: FiniteGroup, H: Subgroup, K: Subgroup) -> int:
    """|(G/K)^H| by direct action of H on the cosets."""
    count = 0
    for coset in G.left_cosets(K):
        cs = set(coset)
        if all(G.mul(h, coset[0]) in cs for h in H.elements):
            count += 1
    return count


@dataclass
class CategoryReport:
    ok: bool
    failure: str = ""


def check_category(C: OrbitCategory) -> CategoryReport:
    """Exhaustive associativity, identity and fixed-point-count checks."""
    G = C.group
    for (i, j), ids in C.mor.items():
        expected = fixed_point_count(G, C.objects[i], C.objects[j])
        if len(ids) != expected:
            return CategoryReport(False, f"|mor[{i}][{j}]| = {len(ids)}, fixed points {expected}")
    table = C.compose_table
    for f, m in enumerate(C.morphisms):
        if table[C.identity[m.source], f] != f or table[f, C.identity[m.target]] != f:
            return CategoryReport(False, f"identity law fails at morphism {f}")
    n = len(C.morphisms)
    for f in range(n):
        for g in np.flatnonzero(table[f] >= 0):
            fg = table[f, g]
            for h in np.flatnonzero(table[g] >= 0):
                if table[fg, h] != table[f, table[g, h]]:
                    return CategoryReport(False, f"associativity fails at ({f}, {int(g)}, {int(h)})")
    for i in range(C.n_objects):
        endo = set(C.endomorphisms(i))
        for f in endo:
            if table[f, list(endo)].tolist().count(C.identity[i]) != 1:
                return CategoryReport(False, f"endomorphism {f} of object {i} is not invertible")
    return CategoryReport(True)


def dump(C: OrbitCategory, with_composition: bool = False) -> dict:
    out = {
        "schema": 1,
        "group": C.group.name,
        "objects": C.object_ids(),
        "orders": C.sizes(),
        "census": C.census(),
        "morphisms": len(C.morphisms),
    }
    if with_composition:
        out["composition"] = [
            [int(C.compose_table[f, g]) for g in range(len(C.morphisms))] for f in range(len(C.morphisms))
        ]
    return out

