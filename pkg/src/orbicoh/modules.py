"""Modules over the orbit category: contravariant functors Or_F(G) -> GF(p)-Vect.

A module stores a matrix for every morphism.  For f: G/H -> G/K the matrix
``act[f]`` has shape dim[H] x dim[K] and maps the value at K to the value
at H, so that act[g o f] = act[f] @ act[g].
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import (
    CategoryMismatch,
    DimensionMismatch,
    FunctorialityError,
    InducedMapFailure,
    NoSolution,
    NotDownwardClosed,
    NotSubfamily,
    NotSuperfamily,
)
from .groups import FiniteGroup, Subgroup, SubgroupFamily
from .orbit import OrbitCategory


class GammaModule:
    def __init__(self, cat: OrbitCategory, p: int, dims, act, *, check: bool = False):
        self.cat = cat
        self.p = p
        self.dims = [int(d) for d in dims]
        self.act = list(act)
        if len(self.dims) != cat.n_objects or len(self.act) != len(cat.morphisms):
            raise DimensionMismatch("module data does not match the category")
        if check:
            self.check()

    def __repr__(self):
        return f"{type(self).__name__}(dims={self.dims}, p={self.p})"

    @classmethod
    def zero(cls, cat: OrbitCategory, p: int) -> "GammaModule":
        return cls(cat, p, [0] * cat.n_objects, [la.zeros(0, 0) for _ in cat.morphisms])

    def is_zero(self) -> bool:
        return not any(self.dims)

    def check(self) -> None:
        """Shapes, identities and contravariant functoriality, exhaustively."""
        C = self.cat
        for f, m in enumerate(C.morphisms):
            if self.act[f].shape != (self.dims[m.source], self.dims[m.target]):
                raise FunctorialityError(f"morphism {f}: bad shape {self.act[f].shape}")
        for i, idm in enumerate(C.identity):
            if not np.array_equal(self.act[idm], la.eye(self.dims[i])):
                raise FunctorialityError(f"identity at object {i} does not act trivially")
        table = C.compose_table
        for f in range(len(C.morphisms)):
            for g in np.flatnonzero(table[f] >= 0):
                gf = table[f, g]
                if not np.array_equal(self.act[gf], la.mul(self.act[f], self.act[g], self.p)):
                    raise FunctorialityError(f"act[{g} o {f}] != act[{f}] act[{g}]")

    def same_category(self, other: "GammaModule") -> None:
        if self.cat is not other.cat or self.p != other.p:
            raise CategoryMismatch("modules live over different categories or fields")


class GammaHom:
    """A natural transformation given by one matrix per object."""

    def __init__(self, source: GammaModule, target: GammaModule, comp, *, check: bool = False):
        source.same_category(target)
        self.source = source
        self.target = target
        self.comp = list(comp)
        if check:
            self.check()

    def check(self) -> None:
        s, t, p = self.source, self.target, self.source.p
        for i in range(s.cat.n_objects):
            if self.comp[i].shape != (t.dims[i], s.dims[i]):
                raise DimensionMismatch(f"component at object {i} has shape {self.comp[i].shape}")
        for f, m in enumerate(s.cat.morphisms):
            lhs = la.mul(self.comp[m.source], s.act[f], p)
            rhs = la.mul(t.act[f], self.comp[m.target], p)
            if not np.array_equal(lhs, rhs):
                raise FunctorialityError(f"naturality fails at morphism {f}")

    def after(self, other: "GammaHom") -> "GammaHom":
        """self o other."""
        p = self.source.p
        return GammaHom(other.source, self.target, [la.mul(a, b, p) for a, b in zip(self.comp, other.comp)])

    def is_surjective(self) -> bool:
        return all(la.rank(c, self.source.p) == d for c, d in zip(self.comp, self.target.dims))

    def is_zero(self) -> bool:
        return all(not c.any() for c in self.comp)

    @classmethod
    def identity(cls, M: GammaModule) -> "GammaHom":
        return cls(M, M, [la.eye(d) for d in M.dims])

    @classmethod
    def zero(cls, M: GammaModule, N: GammaModule) -> "GammaHom":
        return cls(M, N, [la.zeros(b, a) for a, b in zip(M.dims, N.dims)])


# free modules ----------------------------------------------------------------


class FreeModule(GammaModule):
    """A direct sum of frees P_K, one summand per entry of ``gens``.

    The basis at H is all pairs (i, m) with m: G/H -> G/K_i.
    """

    def __init__(self, cat: OrbitCategory, p: int, gens):
        self.gens = [int(k) for k in gens]
        basis = []
        index = []
        for h in range(cat.n_objects):
            b = [(i, m) for i, k in enumerate(self.gens) for m in cat.mor[(h, k)]]
            basis.append(b)
            index.append({x: n for n, x in enumerate(b)})
        self.basis = basis
        self.index = index
        dims = [len(b) for b in basis]
        act = []
        for f, mf in enumerate(cat.morphisms):
            a = la.zeros(dims[mf.source], dims[mf.target])
            idx = index[mf.source]
            for col, (i, m) in enumerate(basis[mf.target]):
                a[idx[(i, cat.compose(f, m))], col] = 1
            act.append(a)
        super().__init__(cat, p, dims, act)

    @cached_property
    def decl(self) -> list[tuple[int, int]]:
        """(object, multiplicity) pairs."""
        counts: dict[int, int] = {}
        for k in self.gens:
            counts[k] = counts.get(k, 0) + 1
        return sorted(counts.items())

    def gen_position(self, i: int) -> int:
        k = self.gens[i]
        return self.index[k][(i, self.cat.identity[k])]

    def hom_to(self, target: GammaModule, images) -> GammaHom:
        """The unique hom sending generator i to images[i] in target(K_i)."""
        comp = []
        for h in range(self.cat.n_objects):
            c = la.zeros(target.dims[h], self.dims[h])
            for col, (i, m) in enumerate(self.basis[h]):
                c[:, col] = target.act[m] @ images[i] % self.p
            comp.append(c)
        return GammaHom(self, target, comp)

    def images_of(self, h: GammaHom) -> list[np.ndarray]:
        """Generator images of a hom out of this free module."""
        return [h.comp[k][:, self.gen_position(i)] for i, k in enumerate(self.gens)]


def free_module(C: OrbitCategory, K: int, p: int) -> FreeModule:
    """P_K: value at H is the span of Mor(G/H, G/K)."""
    return FreeModule(C, p, [K])


# small constructors ------------------------------------------------------------


def interval_module(C: OrbitCategory, support, p: int) -> GammaModule:
    """Value GF(p) on ``support`` (object indices), zero elsewhere, identity maps.

    The support must be closed downward along morphisms: if G/H -> G/K exists
    with K in the support then H is in it too.
    """
    s = set(int(i) for i in support)
    for (h, k), ids in C.mor.items():
        if ids and k in s and h not in s:
            raise NotDownwardClosed(
                f"object {C.object_ids()[k]} is in the support but {C.object_ids()[h]} maps to it and is not"
            )
    dims = [1 if i in s else 0 for i in range(C.n_objects)]
    act = []
    for m in C.morphisms:
        if m.source in s and m.target in s:
            act.append(la.eye(1))
        else:
            act.append(la.zeros(dims[m.source], dims[m.target]))
    return GammaModule(C, p, dims, act)


def constant_module(C: OrbitCategory, p: int) -> GammaModule:
    return interval_module(C, range(C.n_objects), p)


def direct_sum(mods) -> GammaModule:
    mods = list(mods)
    first = mods[0]
    for m in mods[1:]:
        first.same_category(m)
    C = first.cat
    dims = [sum(m.dims[i] for m in mods) for i in range(C.n_objects)]
    act = [_block_diag([m.act[f] for m in mods]) for f in range(len(C.morphisms))]
    return GammaModule(C, first.p, dims, act)


def hom_from_blocks(source_parts, target_parts, blocks, source=None, target=None) -> GammaHom:
    """A hom between direct sums from a grid of component homs (or None for zero)."""
    source = source or direct_sum(source_parts)
    target = target or direct_sum(target_parts)
    comp = []
    for h in range(source.cat.n_objects):
        rows = []
        for ti, t in enumerate(target_parts):
            row = []
            for si, s in enumerate(source_parts):
                b = blocks[ti][si]
                row.append(la.zeros(t.dims[h], s.dims[h]) if b is None else b.comp[h])
            rows.append(np.hstack(row) if row else la.zeros(t.dims[h], 0))
        comp.append(np.vstack(rows) if rows else la.zeros(0, source.dims[h]))
    return GammaHom(source, target, comp)


def _block_diag(blocks) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = la.zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def tensor_module(M: GammaModule, N: GammaModule) -> GammaModule:
    """Objectwise tensor product over GF(p)."""
    M.same_category(N)
    p = M.p
    dims = [a * b for a, b in zip(M.dims, N.dims)]
    act = [np.kron(a, b) % p for a, b in zip(M.act, N.act)]
    return GammaModule(M.cat, p, dims, act)


# group representations -----------------------------------------------------------


class GroupRep:
    """A representation of a finite group over GF(p): one matrix per element."""

    def __init__(self, group: FiniteGroup, p: int, rho, *, check: bool = True):
        self.group = group
        self.p = p
        self.rho = np.asarray(rho, dtype=np.int64) % p
        if self.rho.ndim != 3 or self.rho.shape[0] != group.order:
            raise DimensionMismatch("need one square matrix per group element")
        self.dim = self.rho.shape[1]
        if check:
            self.check()

    def __repr__(self):
        return f"GroupRep({self.group.name}, dim={self.dim}, p={self.p})"

    def check(self) -> None:
        G, p = self.group, self.p
        if not np.array_equal(self.rho[0], la.eye(self.dim)):
            raise FunctorialityError("identity does not act as the identity")
        prod = np.einsum("aij,bjk->abik", self.rho, self.rho) % p
        if not np.array_equal(prod, self.rho[G.cayley]):
            raise FunctorialityError("rho is not a homomorphism")

    @classmethod
    def from_generators(cls, group: FiniteGroup, p: int, images: dict) -> "GroupRep":
        """Complete generator images to the whole group by word enumeration."""
        images = {int(g): la.asmat(m, p) for g, m in images.items()}
        dims = {m.shape for m in images.values()}
        if len(dims) > 1:
            raise DimensionMismatch("generator images have different shapes")
        d = dims.pop()[0] if dims else 0
        rho = {0: la.eye(d)}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for s, m in images.items():
                y = group.mul(x, s)
                if y not in rho:
                    rho[y] = la.mul(rho[x], m, p)
                    frontier.append(y)
        if len(rho) != group.order:
            raise FunctorialityError("generator images do not generate the group")
        for x in range(group.order):
            for s, m in images.items():
                if not np.array_equal(la.mul(rho[x], m, p), rho[group.mul(x, s)]):
                    raise FunctorialityError(f"relation fails at element {x}, generator {s}")
        return cls(group, p, [rho[g] for g in range(group.order)], check=False)

    @classmethod
    def trivial(cls, group: FiniteGroup, p: int, dim: int = 1) -> "GroupRep":
        return cls(group, p, np.broadcast_to(la.eye(dim), (group.order, dim, dim)), check=False)

    @classmethod
    def regular(cls, group: FiniteGroup, p: int) -> "GroupRep":
        return perm_rep(group, group.trivial, p)

    def restrict(self, sub: Subgroup) -> "GroupRep":
        H, emb = self.group.subgroup_group(sub)
        return GroupRep(H, self.p, self.rho[emb], check=False)

    def along(self, group: FiniteGroup, hom) -> "GroupRep":
        """Pull back along a group homomorphism given as an element array."""
        return GroupRep(group, self.p, self.rho[np.asarray(hom)], check=False)

    def fixed_space(self, sub: Subgroup):
        """RREF basis of the ``sub``-fixed vectors and its free coordinates."""
        d = self.dim
        rows = [self.rho[h] - la.eye(d) for h in sub.elements if h != 0]
        a = np.vstack(rows) % self.p if rows else la.zeros(0, d)
        return la.kernel_basis(a, self.p, with_free=True)

    def is_equivariant(self, other: "GroupRep", a: np.ndarray) -> bool:
        """Is ``a`` (other.dim x self.dim) a G-map self -> other?"""
        p = self.p
        return all(
            np.array_equal(la.mul(other.rho[g], a, p), la.mul(a, self.rho[g], p)) for g in range(self.group.order)
        )


GGRep = GroupRep


def perm_rep(G: FiniteGroup, K: Subgroup, p: int) -> GroupRep:
    """GF(p)[G/K] with basis the left cosets ordered by minimal element."""
    cosets = G.left_cosets(K)
    where = {}
    for i, c in enumerate(cosets):
        for x in c:
            where[x] = i
    n = len(cosets)
    rho = np.zeros((G.order, n, n), dtype=np.int64)
    for g in range(G.order):
        for i, c in enumerate(cosets):
            rho[g, where[G.mul(g, c[0])], i] = 1
    return GroupRep(G, p, rho, check=False)


def gset_rep(G: FiniteGroup, subs, p: int) -> GroupRep:
    """Permutation module of the G-set  G/K_1 + G/K_2 + ...  ."""
    return rep_direct_sum([perm_rep(G, K, p) for K in subs])


def rep_direct_sum(reps) -> GroupRep:
    reps = list(reps)
    G, p = reps[0].group, reps[0].p
    rho = [_block_diag([r.rho[g] for r in reps]) for g in range(G.order)]
    return GroupRep(G, p, np.array(rho).reshape(G.order, sum(r.dim for r in reps), -1), check=False)


def rep_tensor(a: GroupRep, b: GroupRep) -> GroupRep:
    rho = np.einsum("gij,gkl->gikjl", a.rho, b.rho).reshape(a.group.order, a.dim * b.dim, a.dim * b.dim)
    return GroupRep(a.group, a.p, rho % a.p, check=False)


def rep_module(C: OrbitCategory, rep: GroupRep) -> GammaModule:
    """A representation as a module over a one-object category Or_{1}(G)."""
    if C.n_objects != 1 or len(C.objects[0]) != 1:
        raise CategoryMismatch("rep_module needs the one-object category Or_{1}(G)")
    act = [rep.rho[m.coset_rep].copy() for m in C.morphisms]
    return GammaModule(C, rep.p, [rep.dim], act)


def fixed_point_module(C: OrbitCategory, rep: GroupRep) -> GammaModule:
    """M^?: the value at H is M^H; G/K -> G/H with representative g acts by rho(g)."""
    p = rep.p
    bases = [rep.fixed_space(h) for h in C.objects]
    dims = [b.shape[1] for b, _ in bases]
    act = []
    for f, m in enumerate(C.morphisms):
        bs, free_s = bases[m.source]
        bt, _ = bases[m.target]
        moved = la.mul(rep.rho[m.coset_rep], bt, p)
        x = moved[free_s]
        if not np.array_equal(la.mul(bs, x, p), moved):
            raise InducedMapFailure(f"fixed vectors not carried to fixed vectors at morphism {f}")
        act.append(x)
    return GammaModule(C, p, dims, act)


# hom spaces, kernels ----------------------------------------------------------------


def _naturality_system(M: GammaModule, N: GammaModule):
    C = M.cat
    offsets = np.cumsum([0] + [a * b for a, b in zip(M.dims, N.dims)])
    rows = []
    for f, m in enumerate(C.morphisms):
        if f in C.identity:
            continue
        k, h = m.source, m.target
        nrow = N.dims[k] * M.dims[h]
        if nrow == 0:
            continue
        block = la.zeros(nrow, offsets[-1])
        block[:, offsets[k] : offsets[k + 1]] += np.kron(la.eye(N.dims[k]), M.act[f].T)
        block[:, offsets[h] : offsets[h + 1]] -= np.kron(N.act[f], la.eye(M.dims[h]))
        rows.append(block % M.p)
    system = np.vstack(rows) if rows else la.zeros(0, offsets[-1])
    return system, offsets


def hom_space(M: GammaModule, N: GammaModule) -> list[GammaHom]:
    """A basis of Hom(M, N), found by solving the naturality equations."""
    M.same_category(N)
    system, offsets = _naturality_system(M, N)
    basis = la.kernel_basis(system, M.p)
    out = []
    for col in basis.T:
        comp = [
            col[offsets[i] : offsets[i + 1]].reshape(N.dims[i], M.dims[i]) for i in range(M.cat.n_objects)
        ]
        out.append(GammaHom(M, N, comp))
    return out


def hom_dim(M: GammaModule, N: GammaModule) -> int:
    M.same_category(N)
    system, offsets = _naturality_system(M, N)
    return int(offsets[-1]) - la.rank(system, M.p)


def kernel_module(h: GammaHom) -> tuple[GammaModule, GammaHom]:
    """Objectwise kernel with the induced structure maps and its inclusion."""
    M, p = h.source, h.source.p
    bases = [la.kernel_basis(c, p, with_free=True) for c in h.comp]
    dims = [b.shape[1] for b, _ in bases]
    act = []
    for f, m in enumerate(M.cat.morphisms):
        bs, free_s = bases[m.source]
        bt, _ = bases[m.target]
        moved = la.mul(M.act[f], bt, p)
        x = moved[free_s]
        if not np.array_equal(la.mul(bs, x, p), moved):
            raise InducedMapFailure(f"kernel not preserved by morphism {f}; the map is not natural")
        act.append(x)
    K = GammaModule(M.cat, p, dims, act)
    return K, GammaHom(K, M, [b for b, _ in bases])


def image_module(h: GammaHom) -> tuple[GammaModule, GammaHom]:
    """Objectwise image as a submodule of the target."""
    N, p = h.target, h.target.p
    bases = []
    for c in h.comp:
        b = la.column_span(c, p)
        piv = la.rref(b.T, p)[1] if b.shape[1] else []
        bases.append((b, piv))
    dims = [b.shape[1] for b, _ in bases]
    act = []
    for f, m in enumerate(N.cat.morphisms):
        bs, _ = bases[m.source]
        bt, _ = bases[m.target]
        moved = la.mul(N.act[f], bt, p)
        try:
            x = la.solve(bs, moved, p)
        except NoSolution:
            raise InducedMapFailure(f"image not preserved by morphism {f}") from None
        act.append(x)
    I = GammaModule(N.cat, p, dims, act)
    return I, GammaHom(I, N, [b for b, _ in bases])


# restriction and limits ------------------------------------------------------------


def restrict_to_family(M: GammaModule, V) -> GammaModule:
    """Drop the objects outside V (a subfamily, or a category built on one)."""
    C = M.cat
    CV = V if isinstance(V, OrbitCategory) else OrbitCategory(C.group, V)
    if CV.group is not C.group:
        raise CategoryMismatch("different groups")
    try:
        objmap = [C.object_index(h) for h in CV.objects]
    except KeyError:
        raise NotSubfamily("V is not contained in the module's family") from None
    dims = [M.dims[i] for i in objmap]
    act = []
    for m in CV.morphisms:
        f = C.find(objmap[m.source], objmap[m.target], m.coset_rep)
        act.append(M.act[f])
    return GammaModule(CV, M.p, dims, act)


def _compatible_tuples(M: GammaModule, members: list[int], inside: Subgroup | None):
    """Tuples (m_K) over ``members`` with m_L = act[phi] m_K for every phi: L -> K
    between members whose representative lies in ``inside`` (all, if None)."""
    C, p = M.cat, M.p
    pos = {k: n for n, k in enumerate(members)}
    offsets = np.cumsum([0] + [M.dims[k] for k in members])
    rows = []
    for f, m in enumerate(C.morphisms):
        if m.source not in pos or m.target not in pos or f in C.identity:
            continue
        if inside is not None and m.coset_rep not in inside:
            continue
        dl = M.dims[m.source]
        if dl == 0:
            continue
        block = la.zeros(dl, offsets[-1])
        ls, ks = pos[m.source], pos[m.target]
        block[:, offsets[ls] : offsets[ls + 1]] += la.eye(dl)
        block[:, offsets[ks] : offsets[ks + 1]] -= M.act[f]
        rows.append(block % p)
    system = np.vstack(rows) if rows else la.zeros(0, offsets[-1])
    basis, free = la.kernel_basis(system, p, with_free=True)
    return basis, free, offsets


def two_family_limit(M: GammaModule, W) -> GammaModule:
    """lim_V^W M for M over Or_V(G): at H in W, the compatible tuples
    (m_K) for K in V with K <= H; maps by translating tuples."""
    CV, p, G = M.cat, M.p, M.cat.group
    CW = W if isinstance(W, OrbitCategory) else OrbitCategory(G, W)
    if CW.group is not G:
        raise CategoryMismatch("different groups")
    wset = set(CW.objects)
    if not all(h in wset for h in CV.objects):
        raise NotSuperfamily("W does not contain V")
    below = [[k for k, K in enumerate(CV.objects) if K.issubset(H)] for H in CW.objects]
    spaces = [_compatible_tuples(M, below[i], H) for i, H in enumerate(CW.objects)]
    dims = [b.shape[1] for b, _, _ in spaces]
    act = []
    for f, m in enumerate(CW.morphisms):
        g = m.coset_rep
        src, tgt = m.source, m.target
        bs, free_s, off_s = spaces[src]
        bt, _, off_t = spaces[tgt]
        pos_t = {k: n for n, k in enumerate(below[tgt])}
        trans = la.zeros(off_s[-1], off_t[-1])
        for n, L in enumerate(below[src]):
            K = CV.object_index(G.conjugate(CV.objects[L], g))
            phi = CV.find(L, K, g)
            kk = pos_t[K]
            trans[off_s[n] : off_s[n + 1], off_t[kk] : off_t[kk + 1]] = M.act[phi]
        moved = la.mul(trans, bt, p)
        x = moved[free_s]
        if not np.array_equal(la.mul(bs, x, p), moved):
            raise InducedMapFailure(f"translated tuple not compatible at morphism {f}")
        act.append(x)
    return GammaModule(CW, p, dims, act)


def limit_dim(M: GammaModule) -> int:
    """dim lim_F M, as compatible tuples; cross-checked against Hom(constant, M)."""
    basis, _, _ = _compatible_tuples(M, list(range(M.cat.n_objects)), None)
    d = basis.shape[1]
    via_hom = hom_dim(constant_module(M.cat, M.p), M)
    if d != via_hom:
        raise InducedMapFailure(f"limit {d} disagrees with Hom(constant, M) = {via_hom}")
    return d


def limit_basis(M: GammaModule):
    """Compatible tuples over all objects: (basis, free coordinates, offsets)."""
    return _compatible_tuples(M, list(range(M.cat.n_objects)), None)


def restrict_family(F: SubgroupFamily, members) -> SubgroupFamily:
    from .groups import family_from_members

    return family_from_members(F.group, members)
