"""Ordinary group cohomology through one-object orbit categories.

H^q(H, M) is Ext over Or_{1}(H) of the trivial module against M.  Maps
along a group homomorphism c: K -> H with a coefficient map theta are
computed by pulling the H-resolution back along c (an exact complex of
K-modules), lifting the identity from the free K-resolution into it and
sending phi to theta o phi o f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg as la
from .errors import NotNormal
from .groups import FiniteGroup, Subgroup
from .homalg import CochainComplex, Resolution, hom_complex, induced_on_cohomology, lift_chain_map, precompose_matrix, resolve
from .modules import GammaHom, GammaModule, GroupRep, rep_module
from .orbit import OrbitCategory, one_object_category


class GroupCohomology:
    """H^*(group, rep) in degrees 0..n with deterministic bases."""

    def __init__(self, group: FiniteGroup, rep: GroupRep, n: int, *, full: bool = False):
        self.group = group
        self.rep = rep
        self.n = n
        self.p = rep.p
        self.cat = one_object_category(group)
        self.trivial = rep_module(self.cat, GroupRep.trivial(group, rep.p))
        self.coeff = rep_module(self.cat, rep)
        self.res = resolve(self.trivial, n + 1, full=full)
        self.cc = hom_complex(self.res, self.coeff, n)
        self.bases = [self.cc.cohomology_basis(q) for q in range(n + 1)]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.dim for b in self.bases)


def for_subgroup(G: FiniteGroup, sub: Subgroup, M: GroupRep, n: int, **kw):
    """Cohomology of a subgroup, together with its embedding into G."""
    H, emb = G.subgroup_group(sub)
    return GroupCohomology(H, GroupRep(H, M.p, M.rho[emb], check=False), n, **kw), emb


def group_cohomology_dims(G: FiniteGroup, sub: Subgroup, M: GroupRep, n: int, *, full: bool = False):
    return for_subgroup(G, sub, M, n, full=full)[0].dims


@dataclass
class ExactComplex:
    """A bare exact complex over a target, as accepted by lift_chain_map."""

    terms: list
    diffs: list
    augmentation: GammaHom


def _pull_module(M: GammaModule, cat: OrbitCategory, c) -> GammaModule:
    src = M.cat
    act = [M.act[src.find(0, 0, int(c[m.coset_rep]))] for m in cat.morphisms]
    return GammaModule(cat, M.p, M.dims, act)


def pullback(res: Resolution, cat: OrbitCategory, c, n: int) -> ExactComplex:
    """The exact complex res restricted along c: K -> H (as element arrays)."""
    res.extend(n)
    terms = [_pull_module(t, cat, c) for t in res.terms[: n + 1]]
    target = _pull_module(res.target, cat, c)
    diffs = [None] + [GammaHom(terms[q], terms[q - 1], res.diffs[q].comp) for q in range(1, n + 1)]
    aug = GammaHom(terms[0], target, res.augmentation.comp)
    return ExactComplex(terms, diffs, aug)


def map_along(src: GroupCohomology, dst: GroupCohomology, c, theta: np.ndarray) -> list[np.ndarray]:
    """H^q(dst.group, dst.rep) -> H^q(src.group, src.rep) for q <= min degree.

    ``c`` maps src.group elements to dst.group elements, ``theta`` is a
    src.group-map from the pulled-back dst.rep to src.rep.
    """
    n = min(src.n, dst.n)
    pulled = pullback(dst.res, src.cat, c, n)
    alpha = GammaHom(src.trivial, pulled.augmentation.target, [la.eye(1)])
    chain = lift_chain_map(alpha, src.res, pulled, n)
    cmaps = [
        precompose_matrix(dst.res.terms[q], [(0, v) for v in src.res.terms[q].images_of(chain[q])], dst.coeff, theta)
        for q in range(n + 1)
    ]
    return induced_on_cohomology(cmaps, dst.cc, src.cc, n)


def _index_map(emb) -> dict:
    return {int(x): i for i, x in enumerate(emb)}


def restriction_map(G: FiniteGroup, M: GroupRep, sub: Subgroup, n: int) -> list[np.ndarray]:
    """res: H^q(G, M) -> H^q(sub, M)."""
    top = GroupCohomology(G, M, n)
    low, emb = for_subgroup(G, sub, M, n)
    return map_along(low, top, emb, la.eye(M.dim))


def inflation_map(G: FiniteGroup, normal: Subgroup, M: GroupRep, n: int) -> list[np.ndarray]:
    """inf: H^q(G/N, M) -> H^q(G, inf M) for a rep M of the quotient group."""
    if not G.is_normal(normal):
        raise NotNormal(f"subgroup S{G.subgroup_id(normal)} is not normal")
    Q, proj = G.quotient(normal)
    if M.group.order != Q.order:
        raise NotNormal("coefficient module is not a representation of the quotient")
    M = GroupRep(Q, M.p, M.rho, check=False)
    top = GroupCohomology(Q, M, n)
    low = GroupCohomology(G, M.along(G, proj), n)
    return map_along(low, top, proj, la.eye(M.dim))


@dataclass
class CohomologyFunctor:
    q: int
    values: GammaModule
    provenance: dict = field(default_factory=dict, repr=False)


def cohomology_functors(C: OrbitCategory, M: GroupRep, n: int) -> list[CohomologyFunctor]:
    """H^q(?, M) as modules over C for q = 0..n.

    A morphism G/K -> G/H with representative g acts by the composite of
    conjugation by g and restriction: H^q(H, M) -> H^q(K, M).
    """
    G, p = C.group, M.p
    local = [for_subgroup(G, sub, M, n) for sub in C.objects]
    inv = [_index_map(emb) for _, emb in local]
    acts = [[None] * len(C.morphisms) for _ in range(n + 1)]
    for f, m in enumerate(C.morphisms):
        (kc, kemb), (hc, _) = local[m.source], local[m.target]
        g = m.coset_rep
        c = np.array([inv[m.target][G.conj(g, int(x))] for x in kemb], dtype=np.int64)
        mats = map_along(kc, hc, c, M.rho[g])
        for q in range(n + 1):
            acts[q][f] = mats[q]
    out = []
    for q in range(n + 1):
        dims = [coh.bases[q].dim for coh, _ in local]
        mod = GammaModule(C, p, dims, acts[q])
        mod.check()
        out.append(CohomologyFunctor(q, mod, {"resolutions": [coh.res.decls() for coh, _ in local]}))
    return out


def cohomology_functor(C: OrbitCategory, M: GroupRep, q: int) -> CohomologyFunctor:
    return cohomology_functors(C, M, q)[q]


# bar resolution oracle ------------------------------------------------------------------


def bar_cohomology_dims(G: FiniteGroup, M: GroupRep, n: int) -> tuple[int, ...]:
    """Dims via inhomogeneous cochains Map(G^q, M); only sensible for n <= 3."""
    if n > 3:
        raise ValueError("the bar-resolution oracle is limited to degrees <= 3")
    p, d, N = M.p, M.dim, G.order
    cob = [_bar_coboundary(G, M, q) for q in range(n + 1)]
    dims = []
    for q in range(n + 1):
        prev = la.rank(cob[q - 1], p) if q else 0
        dims.append(N**q * d - la.rank(cob[q], p) - prev)
    return tuple(dims)


def _bar_coboundary(G: FiniteGroup, M: GroupRep, q: int) -> np.ndarray:
    """delta: Map(G^q, M) -> Map(G^{q+1}, M); tuples indexed lexicographically."""
    p, d, N = M.p, M.dim, G.order
    out = la.zeros(N ** (q + 1) * d, N**q * d)

    def idx(tup):
        k = 0
        for x in tup:
            k = k * N + x
        return k

    for row, gs in enumerate(product(range(N), repeat=q + 1)):
        r = slice(row * d, (row + 1) * d)
        # g1 . f(g2, ..., g_{q+1})
        k = idx(gs[1:])
        out[r, k * d : (k + 1) * d] += M.rho[gs[0]]
        for i in range(q):
            merged = gs[:i] + (G.mul(gs[i], gs[i + 1]),) + gs[i + 2 :]
            k = idx(merged)
            out[r, k * d : (k + 1) * d] += (-1) ** (i + 1) * la.eye(d)
        k = idx(gs[:q])
        out[r, k * d : (k + 1) * d] += (-1) ** (q + 1) * la.eye(d)
    return out % p
