"""Free resolutions over orbit categories, Hom cochain complexes and Ext.

Everything is computed with generator-level (Yoneda) coordinates: a hom
out of a free module with generators at K_1, ..., K_r into N is the tuple
of generator images in N(K_1) + ... + N(K_r).
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import DegreeBoundExceeded, LiftFailed, NoSolution
from .modules import FreeModule, GammaHom, GammaModule, kernel_module

DEFAULT_MAX_DIM = 20000
MAX_DEGREE = 32


_cap_override: ContextVar[int | None] = ContextVar("max_dim", default=None)


def max_dim() -> int:
    """Per-object dimension cap: dimension_cap() override, then ORBICOH_MAX_DIM, then the default."""
    if (cap := _cap_override.get()) is not None:
        return cap
    raw = os.environ.get("ORBICOH_MAX_DIM")
    return int(raw) if raw else DEFAULT_MAX_DIM


@contextmanager
def dimension_cap(cap: int | None):
    token = _cap_override.set(cap)
    try:
        yield
    finally:
        _cap_override.reset(token)


# hulls -------------------------------------------------------------------------


def free_hull(M: GammaModule, *, full: bool = False) -> tuple[FreeModule, GammaHom]:
    """A free module mapping onto M.

    Objects are visited by decreasing subgroup order.  At each object the
    generators complete the span of (a) everything already generated and
    (b) the vectors (w - 1)m for Weyl-group endomorphisms w.  With ``full``
    every basis vector of every value becomes a generator instead.
    """
    C, p = M.cat, M.p
    order = sorted(range(C.n_objects), key=lambda i: (-len(C.objects[i]), i))
    gens: list[int] = []
    images: list[np.ndarray] = []

    def generated(h: int) -> np.ndarray:
        cols = [M.act[m] @ y % p for k, y in zip(gens, images) for m in C.mor[(h, k)]]
        if not cols:
            return la.zeros(M.dims[h], 0)
        return la.column_span(np.column_stack(cols), p)

    for h in order:
        d = M.dims[h]
        if d == 0:
            continue
        unit = la.eye(d)
        if full:
            for j in range(d):
                gens.append(h)
                images.append(unit[:, j])
            continue
        cur = generated(h)
        if cur.shape[1] == d:
            continue
        rad = [(M.act[w] - unit) % p for w in C.endomorphisms(h) if w != C.identity[h]]
        span = np.hstack([cur] + rad)
        piv = la.independent_columns(np.hstack([span, unit]), p)
        for c in piv:
            if c >= span.shape[1]:
                gens.append(h)
                images.append(unit[:, c - span.shape[1]])
        cur = generated(h)
        # the Weyl span need not lie in the radical when p does not divide |W|
        while cur.shape[1] < d:
            j = next(j for j in range(d) if not la.in_span(cur, unit[:, j], p))
            gens.append(h)
            images.append(unit[:, j])
            cur = generated(h)
    F = FreeModule(C, p, gens)
    return F, F.hom_to(M, images)


# resolutions ---------------------------------------------------------------------


@dataclass
class Resolution:
    """F_n -> ... -> F_1 -> F_0 -> target.  ``diffs[q]`` maps F_q to F_{q-1}
    (``diffs[0]`` is None); the augmentation maps F_0 onto the target."""

    target: GammaModule
    terms: list
    diffs: list
    augmentation: GammaHom
    full: bool = False
    kernels: list = field(default_factory=list, repr=False)

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def decls(self) -> list[list[tuple[int, int]]]:
        return [t.decl for t in self.terms]

    def dims(self) -> list[list[int]]:
        return [t.dims for t in self.terms]

    def extend(self, n: int) -> "Resolution":
        """Compute terms up to degree n in place."""
        if n > MAX_DEGREE:
            raise DegreeBoundExceeded(f"degree {n} exceeds the cap {MAX_DEGREE}")
        cap = max_dim()
        while self.length < n:
            last = self.diffs[-1] if self.length > 0 else self.augmentation
            K, inc = kernel_module(last)
            F, epi = free_hull(K, full=self.full)
            if max(F.dims, default=0) > cap:
                raise DegreeBoundExceeded(
                    f"term {self.length + 1} has dimension {max(F.dims)} > {cap} (ORBICOH_MAX_DIM)"
                )
            self.kernels.append(K)
            self.terms.append(F)
            self.diffs.append(inc.after(epi))
        return self

    def check(self) -> None:
        """d^2 = 0, augmentation surjective, exact at every object."""
        p = self.target.p
        n_obj = self.target.cat.n_objects
        maps = [self.augmentation] + self.diffs[1:]
        for h in range(n_obj):
            if la.rank(self.augmentation.comp[h], p) != self.target.dims[h]:
                raise LiftFailed(f"augmentation not surjective at object {h}")
        for q in range(1, len(maps)):
            for h in range(n_obj):
                a, b = maps[q - 1].comp[h], maps[q].comp[h]
                if la.mul(a, b, p).any():
                    raise LiftFailed(f"composite of degrees {q - 1},{q} is nonzero at object {h}")
                if la.rank(a, p) + la.rank(b, p) != self.terms[q - 1].dims[h]:
                    raise LiftFailed(f"not exact at degree {q - 1}, object {h}")


def resolve(M: GammaModule, n: int, *, full: bool = False) -> Resolution:
    if n < 0:
        raise ValueError("degree bound must be nonnegative")
    if n > MAX_DEGREE:
        raise DegreeBoundExceeded(f"degree {n} exceeds the cap {MAX_DEGREE}")
    F, eps = free_hull(M, full=full)
    res = Resolution(M, [F], [None], eps, full=full)
    return res.extend(n)


# cochains ----------------------------------------------------------------------------


def precompose_matrix(free: FreeModule, columns, N: GammaModule, theta=None) -> np.ndarray:
    """Matrix of phi |-> theta o phi o h in Yoneda coordinates.

    ``columns`` lists, for each generator j of the source free module, a
    pair (object, vector) with vector = h(gen_j) in the basis of
    ``free`` at that object.  ``N`` lives over ``free.cat``.
    """
    p = N.p
    col_off = np.cumsum([0] + [N.dims[k] for k in free.gens])
    blocks = []
    for obj, v in columns:
        block = la.zeros(N.dims[obj], int(col_off[-1]))
        for pos in np.flatnonzero(v):
            i, m = free.basis[obj][pos]
            block[:, col_off[i] : col_off[i + 1]] += int(v[pos]) * N.act[m]
        block %= p
        if theta is not None:
            block = la.mul(theta, block, p)
        blocks.append(block)
    if not blocks:
        return la.zeros(0, int(col_off[-1]))
    return np.vstack(blocks)


def hom_columns(h: GammaHom) -> list[tuple[int, np.ndarray]]:
    """(object, image vector) of every generator of the free source of ``h``."""
    F = h.source
    return [(k, img) for k, img in zip(F.gens, F.images_of(h))]


@dataclass
class CochainComplex:
    dims: list[int]
    coboundary: list[np.ndarray]  # coboundary[q]: C^q -> C^{q+1}
    p: int

    def check(self) -> None:
        for q in range(len(self.coboundary) - 1):
            if la.mul(self.coboundary[q + 1], self.coboundary[q], self.p).any():
                raise LiftFailed(f"coboundaries {q},{q + 1} do not compose to zero")

    def cycles(self, q: int) -> np.ndarray:
        return la.kernel_basis(self.coboundary[q], self.p)

    def boundaries(self, q: int) -> np.ndarray:
        if q == 0:
            return la.zeros(self.dims[0], 0)
        return la.column_span(self.coboundary[q - 1], self.p)

    def cohomology_dim(self, q: int) -> int:
        prev = la.rank(self.coboundary[q - 1], self.p) if q > 0 else 0
        return self.dims[q] - la.rank(self.coboundary[q], self.p) - prev

    def cohomology_basis(self, q: int) -> la.QuotientBasis:
        return la.QuotientBasis(self.cycles(q), self.boundaries(q), self.p)


def hom_complex(res: Resolution, N: GammaModule, n: int | None = None) -> CochainComplex:
    """Hom(F_*, N) in degrees 0..n (needs the resolution through n+1)."""
    res.target.same_category(N)
    n = res.length - 1 if n is None else n
    res.extend(n + 1)
    dims = [sum(N.dims[k] for k in res.terms[q].gens) for q in range(n + 2)]
    cob = [precompose_matrix(res.terms[q], hom_columns(res.diffs[q + 1]), N) for q in range(n + 1)]
    cc = CochainComplex(dims, cob, N.p)
    cc.check()
    return cc


def ext_dims(M: GammaModule, N: GammaModule, n: int, *, full: bool = False, res: Resolution | None = None):
    if res is None:
        res = resolve(M, n + 1, full=full)
    cc = hom_complex(res, N, n)
    return tuple(cc.cohomology_dim(q) for q in range(n + 1))


# chain maps -----------------------------------------------------------------------------


def lift_chain_map(alpha: GammaHom, src: Resolution, dst, n: int) -> list[GammaHom]:
    """Chain map f_0..f_n over alpha from a free resolution ``src`` into any
    exact complex ``dst`` (needs ``terms``, ``diffs`` and ``augmentation``).

    Each generator image is found by solving a linear system; free
    variables are set to zero, so alpha = 0 lifts to zero.
    """
    src.extend(n)
    if hasattr(dst, "extend"):
        dst.extend(n)
    p = alpha.source.p
    out: list[GammaHom] = []
    for q in range(n + 1):
        F = src.terms[q]
        if q == 0:
            below, target_map = alpha.after(src.augmentation), dst.augmentation
        else:
            below, target_map = out[q - 1].after(src.diffs[q]), dst.diffs[q]
        images = []
        for i, k in enumerate(F.gens):
            want = below.comp[k][:, F.gen_position(i)]
            try:
                images.append(la.solve(target_map.comp[k], want, p))
            except NoSolution:
                raise LiftFailed(f"no lift for generator {i} in degree {q}") from None
        f = F.hom_to(dst.terms[q], images)
        check = target_map.after(f)
        if any(not np.array_equal(a, b) for a, b in zip(check.comp, below.comp)):
            raise LiftFailed(f"square does not commute in degree {q}")
        out.append(f)
    return out


def cochain_map(chain: list[GammaHom], N: GammaModule, theta=None) -> list[np.ndarray]:
    """phi |-> theta o phi o f_q for a chain map between free resolutions."""
    return [precompose_matrix(f.target, hom_columns(f), N, theta) for f in chain]


def induced_on_cohomology(
    cmaps, src_cc: CochainComplex, dst_cc: CochainComplex, n: int
) -> list[np.ndarray]:
    """Matrices H^q(src_cc) -> H^q(dst_cc) in the deterministic quotient bases."""
    p = src_cc.p
    out = []
    for q in range(n + 1):
        qs = src_cc.cohomology_basis(q)
        qd = dst_cc.cohomology_basis(q)
        if qs.dim == 0 or qd.dim == 0:
            out.append(la.zeros(qd.dim, qs.dim))
            continue
        out.append(qd.coords(la.mul(cmaps[q], qs.reps, p)))
    return out


def induced_ext_map(
    alpha: GammaHom,
    N: GammaModule,
    n: int,
    res_src: Resolution | None = None,
    res_dst: Resolution | None = None,
) -> list[np.ndarray]:
    """Ext^q(M', N) -> Ext^q(M, N) for alpha: M -> M', q = 0..n."""
    res_src = res_src or resolve(alpha.source, n + 1)
    res_dst = res_dst or resolve(alpha.target, n + 1)
    chain = lift_chain_map(alpha, res_src, res_dst, n)
    return induced_on_cohomology(
        cochain_map(chain, N), hom_complex(res_dst, N, n), hom_complex(res_src, N, n), n
    )


# golden files ------------------------------------------------------------------------------


def resolution_to_json(res: Resolution) -> dict:
    C = res.target.cat
    ids = C.object_ids()
    return {
        "schema": 1,
        "group": C.group.name,
        "objects": ids,
        "p": res.target.p,
        "target_dims": res.target.dims,
        "degrees": [
            {
                "decl": [[ids[k], mult] for k, mult in t.decl],
                "gens": [ids[k] for k in t.gens],
                "dims": t.dims,
                "images": [v.tolist() for v in (t.images_of(res.diffs[q]) if q else t.images_of(res.augmentation))],
            }
            for q, t in enumerate(res.terms)
        ],
    }


def check_resolution_json(data: dict, M: GammaModule) -> Resolution:
    """Rebuild a resolution of M from stored generator images and re-verify it."""
    C, p = M.cat, M.p
    if data.get("schema") != 1 or data["p"] != p or data["objects"] != C.object_ids():
        raise LiftFailed("golden file does not match the category")
    index = {name: i for i, name in enumerate(C.object_ids())}
    terms, diffs, aug = [], [None], None
    for q, deg in enumerate(data["degrees"]):
        gens = [index[name] for name in deg["gens"]]
        F = FreeModule(C, p, gens)
        if F.decl != [(index[name], mult) for name, mult in deg["decl"]]:
            raise LiftFailed(f"degree {q}: generator list disagrees with the declaration")
        if F.dims != deg["dims"]:
            raise LiftFailed(f"degree {q}: dims {F.dims} differ from stored {deg['dims']}")
        images = [np.array(v, dtype=np.int64) for v in deg["images"]]
        if q == 0:
            aug = F.hom_to(M, images)
        else:
            diffs.append(F.hom_to(terms[-1], images))
        terms.append(F)
    res = Resolution(M, terms, diffs, aug)
    res.check()
    return res
