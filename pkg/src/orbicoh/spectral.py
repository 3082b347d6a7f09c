"""The E2 page Ext^p(R-bar, H^q(?, M)) => H^{p+q}(G, M) and its edge maps.

Only E2 and the two edges are computed; no differentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import LiftFailed
from .groupcoh import ExactComplex, GroupCohomology, cohomology_functors, for_subgroup, map_along
from .groups import FiniteGroup, SubgroupFamily, make_family
from .homalg import ext_dims, hom_complex, induced_on_cohomology, induced_ext_map, lift_chain_map, precompose_matrix, resolve
from .modules import (
    GammaHom,
    GammaModule,
    GroupRep,
    constant_module,
    fixed_point_module,
    interval_module,
    limit_basis,
)
from .orbit import OrbitCategory

BANNER = "E2 + edges only; differentials not computed"


class EdgeContext:
    """Shared resolutions and cohomology data for one (G, F, M, degree) job."""

    def __init__(self, G: FiniteGroup, F: SubgroupFamily, M: GroupRep, n: int):
        self.G, self.F, self.M, self.n, self.p = G, F, M, n, M.p
        self.cat = OrbitCategory(G, F)
        self.top = GroupCohomology(G, M, n)
        self._functors = None

    @property
    def functors(self):
        if self._functors is None:
            self._functors = cohomology_functors(self.cat, self.M, self.n)
        return self._functors


def vertical_edge(G, F, M, n, ctx: EdgeContext | None = None) -> list[np.ndarray]:
    """u |-> (res_H u)_H, as matrices H^q(G, M) -> lim_F H^q(?, M), q = 0..n."""
    ctx = ctx or EdgeContext(G, F, M, n)
    C, p = ctx.cat, ctx.p
    restrictions = []
    for sub in C.objects:
        low, emb = for_subgroup(G, sub, M, n)
        restrictions.append(map_along(low, ctx.top, emb, la.eye(M.dim)))
    out = []
    for q in range(n + 1):
        stacked = np.vstack([r[q] for r in restrictions]) if restrictions else la.zeros(0, ctx.top.dims[q])
        basis, free, _ = limit_basis(ctx.functors[q].values)
        coords = stacked[free]
        if not np.array_equal(la.mul(basis, coords, p), stacked % p):
            raise LiftFailed(f"restrictions in degree {q} are not a compatible family")
        out.append(coords)
    return out


def identification(C: OrbitCategory, M: GroupRep, top: GroupCohomology, res_r0, Mq: GammaModule, n: int):
    """Ext^q(R_0, M^?) -> H^q(G, M).

    The resolution of R_0 lives at the trivial object, where it is a free
    GF(p)G-resolution of the trivial module; compare it with ``top``'s.
    """
    p, t = M.p, C.trivial_object
    ends = {C.morphisms[f].coset_rep: f for f in C.endomorphisms(t)}
    terms = [
        GammaModule(top.cat, p, [T.dims[t]], [T.act[ends[m.coset_rep]] for m in top.cat.morphisms])
        for T in res_r0.terms[: n + 1]
    ]
    target = GammaModule(top.cat, p, [1], [la.eye(1) for _ in top.cat.morphisms])
    at_one = ExactComplex(
        terms,
        [None] + [GammaHom(terms[q], terms[q - 1], [res_r0.diffs[q].comp[t]]) for q in range(1, n + 1)],
        GammaHom(terms[0], target, [res_r0.augmentation.comp[t]]),
    )
    chain = lift_chain_map(GammaHom(top.trivial, target, [la.eye(1)]), top.res, at_one, n)
    cmaps = [
        precompose_matrix(res_r0.terms[q], [(t, v) for v in top.res.terms[q].images_of(chain[q])], Mq)
        for q in range(n + 1)
    ]
    return induced_on_cohomology(cmaps, hom_complex(res_r0, Mq, n), top.cc, n)


def horizontal_edge(G, F, M, n, ctx: EdgeContext | None = None) -> list[np.ndarray]:
    """Ext^q(R-bar, M^?) -> H^q(G, M) induced by R_0 -> R-bar, q = 0..n."""
    ctx = ctx or EdgeContext(G, F, M, n)
    C, p = ctx.cat, ctx.p
    t = C.trivial_object
    Mq = fixed_point_module(C, M)
    R0 = interval_module(C, [t], p)
    Rbar = constant_module(C, p)
    alpha = GammaHom(R0, Rbar, [la.eye(1)[: b, : a] for a, b in zip(R0.dims, Rbar.dims)], check=True)
    res_r0, res_bar = resolve(R0, n + 1), resolve(Rbar, n + 1)
    to_r0 = induced_ext_map(alpha, Mq, n, res_r0, res_bar)
    ident = identification(C, M, ctx.top, res_r0, Mq, n)
    return [la.mul(i, h, p) for i, h in zip(ident, to_r0)]


def essential_dims(G: FiniteGroup, M: GroupRep, n: int) -> tuple[int, ...]:
    """dim ker(H^q(G, M) -> prod over proper subgroups) for q = 0..n."""
    F = make_family(G, "all_proper")
    v = vertical_edge(G, F, M, n)
    return tuple(m.shape[1] - la.rank(m, M.p) for m in v)


def _intersection_dim(a: np.ndarray, b: np.ndarray, p: int) -> int:
    return la.rank(a, p) + la.rank(b, p) - la.rank(np.hstack([a, b]), p)


def relative_essential_dims(hor, vert, p: int) -> tuple[int, ...]:
    """dim(im horizontal cap ker vertical), degreewise."""
    out = []
    for h, v in zip(hor, vert):
        ker = la.kernel_basis(v, p)
        out.append(_intersection_dim(la.column_span(h, p), ker, p))
    return tuple(out)


@dataclass
class E2Page:
    P: int
    Q: int
    dims: list  # dims[p][q]
    target_dims: tuple
    vertical_edge: list = field(repr=False)
    horizontal_edge: list = field(repr=False)
    p: int = 2
    banner: str = BANNER

    def row(self, q: int) -> list[int]:
        return [self.dims[i][q] for i in range(self.P + 1)]

    def antidiagonal_sum(self, n: int) -> int:
        return sum(self.dims[i][n - i] for i in range(self.P + 1) if 0 <= n - i <= self.Q)

    def subquotient_ok(self) -> bool:
        top = min(len(self.target_dims) - 1, self.P, self.Q)
        return all(self.target_dims[k] <= self.antidiagonal_sum(k) for k in range(top + 1))

    def horizontal_ranks(self) -> list[int]:
        return [la.rank(m, self.p) for m in self.horizontal_edge]

    def vertical_ranks(self) -> list[int]:
        return [la.rank(m, self.p) for m in self.vertical_edge]

    def vertical_kernels(self) -> list[int]:
        return [m.shape[1] - la.rank(m, self.p) for m in self.vertical_edge]

    def relative_essential(self) -> tuple[int, ...]:
        k = min(len(self.horizontal_edge), len(self.vertical_edge))
        return relative_essential_dims(self.horizontal_edge[:k], self.vertical_edge[:k], self.p)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "banner": self.banner,
            "max_p": self.P,
            "max_q": self.Q,
            "dims": [[self.dims[i][q] for i in range(self.P + 1)] for q in range(self.Q + 1)],
            "target_dims": list(self.target_dims),
            "horizontal_edge_ranks": self.horizontal_ranks(),
            "vertical_edge_ranks": self.vertical_ranks(),
            "vertical_edge_kernels": self.vertical_kernels(),
            "relative_essential": list(self.relative_essential()),
        }


def e2_page(G: FiniteGroup, F: SubgroupFamily, M: GroupRep, P: int, Q: int) -> E2Page:
    n = max(P, Q)
    ctx = EdgeContext(G, F, M, n)
    C, p = ctx.cat, ctx.p
    res = resolve(constant_module(C, p), P + 1)
    functors = ctx.functors
    dims = [[0] * (Q + 1) for _ in range(P + 1)]
    for q in range(Q + 1):
        col = ext_dims(res.target, functors[q].values, P, res=res)
        for i in range(P + 1):
            dims[i][q] = col[i]
    target = GroupCohomology(G, M, P + Q).dims
    vert = vertical_edge(G, F, M, Q, ctx)
    hor = horizontal_edge(G, F, M, P, ctx)
    page = E2Page(P, Q, dims, target, vert, hor, p)
    for q in range(Q + 1):
        if la.kernel_basis(vert[q], p).shape[1] + la.rank(vert[q], p) != target[q]:
            raise LiftFailed("vertical edge has the wrong shape")
    if not page.subquotient_ok():
        raise LiftFailed("E2 page is smaller than its abutment")
    return page
