"""Relative cohomology FH^*(G, M), split checks and the periodicity report."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import NoSolution, NotEquivariant, NotSurjective, WindowTooShort
from .groups import FiniteGroup, Subgroup, SubgroupFamily
from .homalg import ext_dims, resolve
from .modules import (
    GammaHom,
    GammaModule,
    GroupRep,
    constant_module,
    direct_sum,
    fixed_point_module,
    gset_rep,
    interval_module,
    rep_tensor,
)
from .orbit import OrbitCategory


def relative_cohomology_dims(G: FiniteGroup, F: SubgroupFamily, M: GroupRep, n: int) -> tuple[int, ...]:
    C = OrbitCategory(G, F)
    return ext_dims(constant_module(C, M.p), fixed_point_module(C, M), n)


def generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = G.trivial
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = G.generated(gens)
            if len(span) == G.order:
                break
    return gens


def _equivariance_system(rho_a, rho_m, gens, p) -> np.ndarray:
    """Rows of rho_m(g) X - X rho_a(g) = 0 on row-major vec(X), X: A -> M."""
    a, m = rho_a.shape[1], rho_m.shape[1]
    blocks = [np.kron(rho_m[g], la.eye(a)) - np.kron(la.eye(m), rho_a[g].T) for g in gens]
    return np.vstack(blocks) % p if blocks else la.zeros(0, a * m)


def hom_g_dim(A: GroupRep, M: GroupRep, gens=None) -> int:
    gens = generating_set(A.group) if gens is None else gens
    system = _equivariance_system(A.rho, M.rho, gens, A.p)
    return A.dim * M.dim - la.rank(system, A.p)


def rg_side_pipeline(G: FiniteGroup, F: SubgroupFamily, M: GroupRep, n: int) -> tuple[int, ...]:
    """Cohomology of Hom_G(P_*(1), M) for a resolution P_* of the constant module.

    The evaluation at the trivial subgroup is a relative F-projective
    resolution over GF(p)G; Hom_G is solved from the equivariance equations
    rather than by Yoneda, so this is independent of the hom_complex path.
    """
    p = M.p
    C = OrbitCategory(G, F)
    res = resolve(constant_module(C, p), n + 1)
    t = C.trivial_object
    ends = {m.coset_rep: f for f, m in ((f, C.morphisms[f]) for f in C.endomorphisms(t))}
    gens = generating_set(G)
    bases = []
    for q in range(n + 2):
        T = res.terms[q]
        rho = np.array([T.act[ends[g]] for g in range(G.order)]).reshape(G.order, T.dims[t], T.dims[t])
        bases.append(la.kernel_basis(_equivariance_system(rho, M.rho, gens, p), p, with_free=True))
    cob = []
    for q in range(n + 1):
        d = res.diffs[q + 1].comp[t]
        basis, _ = bases[q]
        _, free_next = bases[q + 1]
        moved = np.kron(la.eye(M.dim), d.T) % p
        cob.append(la.mul(moved, basis, p)[free_next])
    dims = []
    for q in range(n + 1):
        prev = la.rank(cob[q - 1], p) if q else 0
        dims.append(bases[q][0].shape[1] - la.rank(cob[q], p) - prev)
    return tuple(dims)


def gset_for_family(G: FiniteGroup, F: SubgroupFamily) -> list[Subgroup]:
    """One orbit G/H per conjugacy class of maximal members, so X^K != 0 iff K in F."""
    maximal = [h for h in F.members if not any(h != k and h.issubset(k) for k in F.members)]
    out, seen = [], set()
    for h in maximal:
        c = F.conj_class[F.index(h)]
        if c not in seen:
            seen.add(c)
            out.append(h)
    return out


def augmentation_kernel(X: GroupRep) -> GroupRep:
    basis, free = la.kernel_basis(np.ones((1, X.dim), dtype=np.int64), X.p, with_free=True)
    rho = np.array([la.mul(r, basis, X.p)[free] for r in X.rho]).reshape(X.group.order, len(free), len(free))
    return GroupRep(X.group, X.p, rho, check=False)


def rg_tensor_dims(G: FiniteGroup, F: SubgroupFamily, M: GroupRep, n: int) -> tuple[int, ...]:
    """Relative cohomology from the resolution P_q = RX (x) I^(x)q, I = ker(RX -> R).

    Each 0 -> I (x) K -> RX (x) K -> K -> 0 is X-split, so dimension shifting
    gives dim H^q = hom(K_{q-1}) - hom(P_{q-1}) + hom(K_{q-2}) with
    K_{-1} = R, K_q = I^(x)(q+1).  Term sizes grow like |X|^q.
    """
    p = M.p
    X = gset_rep(G, gset_for_family(G, F), p)
    I = augmentation_kernel(X)
    gens = generating_set(G)
    K = [GroupRep.trivial(G, p)]  # K[j] = K_{j-1}
    P = []
    for _ in range(n):
        P.append(rep_tensor(X, K[-1]))
        K.append(rep_tensor(I, K[-1]))
    hk = [hom_g_dim(k, M, gens) for k in K]
    hp = [hom_g_dim(q, M, gens) for q in P]
    dims = [hk[0]]
    for q in range(1, n + 1):
        dims.append(hk[q] - hp[q - 1] + hk[q - 1])
    return tuple(dims)


# splitting ------------------------------------------------------------------------------------


@dataclass
class SplitVerdict:
    split: bool
    witness: np.ndarray | None = None
    certificate: str = ""


@dataclass
class FSplitReport:
    verdicts: dict = field(default_factory=dict)  # subgroup id -> SplitVerdict

    @property
    def overall(self) -> bool:
        return all(v.split for v in self.verdicts.values())


def _check_surjection(B: GroupRep, Cr: GroupRep, pi: np.ndarray) -> None:
    p = B.p
    if pi.shape != (Cr.dim, B.dim):
        raise NotEquivariant(f"pi has shape {pi.shape}, expected {(Cr.dim, B.dim)}")
    if not B.is_equivariant(Cr, pi):
        raise NotEquivariant("pi does not commute with the group action")
    if la.rank(pi, p) != Cr.dim:
        raise NotSurjective("pi is not surjective")


def section(B: GroupRep, Cr: GroupRep, pi: np.ndarray, elements) -> SplitVerdict:
    """Search s: C -> B with pi s = 1 and s equivariant for ``elements``."""
    p, b, c = B.p, B.dim, Cr.dim
    system = [np.kron(pi, la.eye(c))]  # vec(pi s) = vec(1)
    rhs = [la.eye(c).reshape(-1)]
    for g in elements:
        system.append(np.kron(B.rho[g], la.eye(c)) - np.kron(la.eye(b), Cr.rho[g].T))
        rhs.append(np.zeros(b * c, dtype=np.int64))
    A = np.vstack(system) % p
    y = np.concatenate(rhs)
    try:
        s = la.solve(A, y, p).reshape(b, c)
    except NoSolution:
        r = la.rank(A, p)
        ra = la.rank(np.column_stack([A, y]), p)
        return SplitVerdict(False, None, f"rank {r} < augmented rank {ra}")
    if not np.array_equal(la.mul(pi, s, p), la.eye(c)):
        raise NoSolution("section failed to verify")
    return SplitVerdict(True, s)


def fsplit_check(B: GroupRep, Cr: GroupRep, pi, F: SubgroupFamily) -> FSplitReport:
    pi = la.asmat(pi, B.p)
    _check_surjection(B, Cr, pi)
    G = B.group
    report = FSplitReport()
    for h in F.members:
        v = section(B, Cr, pi, generating_set_of(G, h))
        if v.split and not all(
            np.array_equal(la.mul(B.rho[x], v.witness, B.p), la.mul(v.witness, Cr.rho[x], B.p)) for x in h.elements
        ):
            raise NotEquivariant("witness failed to verify")
        report.verdicts[f"S{G.subgroup_id(h)}"] = v
    return report


def generating_set_of(G: FiniteGroup, sub: Subgroup) -> list[int]:
    gens: list[int] = []
    span = G.trivial
    for g in sub.elements:
        if g not in span:
            gens.append(g)
            span = G.generated(gens)
    return gens


def xsplit_check(B: GroupRep, Cr: GroupRep, pi, X) -> SplitVerdict:
    """Does 1 (x) pi: RX (x) B -> RX (x) C split G-equivariantly?"""
    pi = la.asmat(pi, B.p)
    _check_surjection(B, Cr, pi)
    RX = gset_rep(B.group, X, B.p)
    big_pi = np.kron(la.eye(RX.dim), pi)
    return section(rep_tensor(RX, B), rep_tensor(RX, Cr), big_pi, generating_set(B.group))


def quotient_surjection(B: GroupRep, U: np.ndarray) -> tuple[GroupRep, np.ndarray]:
    """B -> B/U for a G-stable subspace spanned by the columns of U."""
    p = B.p
    U = la.column_span(U, p)
    piv = la.independent_columns(np.hstack([U, la.eye(B.dim)]), p)
    E = la.eye(B.dim)[:, [c - U.shape[1] for c in piv if c >= U.shape[1]]]
    Tinv = la.inverse(np.hstack([U, E]), p)
    pi = Tinv[U.shape[1] :]
    rho = np.array([la.mul(pi, la.mul(r, E, p), p) for r in B.rho]).reshape(B.group.order, E.shape[1], E.shape[1])
    C = GroupRep(B.group, p, rho)
    return C, pi


def random_surjection(G: FiniteGroup, p: int, rng: np.random.Generator, max_dim: int = 6):
    """A random quotient of a permutation module by a random submodule."""
    subs = list(G.subgroups)
    while True:
        chosen = [subs[int(rng.integers(len(subs)))] for _ in range(int(rng.integers(1, 3)))]
        B = gset_rep(G, chosen, p)
        if B.dim <= max_dim:
            break
    vecs = []
    for _ in range(int(rng.integers(0, 3))):
        v = rng.integers(0, p, B.dim)
        vecs.extend(la.mul(r, v.reshape(-1, 1), p)[:, 0] for r in B.rho)
    U = np.column_stack(vecs) if vecs else la.zeros(B.dim, 0)
    if la.rank(U, p) == B.dim:
        U = U[:, :0]
    C, pi = quotient_surjection(B, U)
    return B, C, pi


# periodicity -----------------------------------------------------------------------------------------


@dataclass
class PeriodicityReport:
    dims: tuple
    offset: int
    period: int | None
    certificate: str

    @property
    def window(self) -> int:
        return len(self.dims) - 1

    @property
    def verdict(self) -> str:
        return "none" if self.period is None else f"period {self.period}"

    def line(self) -> str:
        if self.period is None:
            return f"periodicity: none detected (window {self.window}, offset {self.offset})"
        return f"periodicity: period {self.period} (window {self.window}, offset {self.offset})"


def periodicity_report(dims, offset: int = 2) -> PeriodicityReport:
    """Smallest d with dims[i] = dims[i+d] for all i >= offset in the window;
    only d <= len(tail)/2 are tried so every candidate is tested at least twice."""
    dims = tuple(int(x) for x in dims)
    if offset < 0 or len(dims) < 2 * (offset + 1):
        raise WindowTooShort(f"{len(dims)} values cannot support offset {offset}")
    tail = dims[offset:]
    for d in range(1, len(tail) // 2 + 1):
        if all(tail[i] == tail[i + d] for i in range(len(tail) - d)):
            return PeriodicityReport(dims, offset, d, f"tail repeats with period {d} on degrees {offset}..{len(dims) - 1}")
    if all(a < b for a, b in zip(tail, tail[1:])):
        cert = f"strictly increasing on degrees {offset}..{len(dims) - 1}"
    else:
        cert = f"no period <= {len(tail) // 2} on degrees {offset}..{len(dims) - 1}"
    return PeriodicityReport(dims, offset, None, cert)


# the Klein four sequence ------------------------------------------------------------------------------


@dataclass
class KleinSequence:
    """0 -> R_0 + R_0 --gamma--> R_H1 + R_H2 + R_H3 --pi--> R-bar -> 0."""

    R0: GammaModule
    RH: list
    Rbar: GammaModule
    gamma: GammaHom
    pi: GammaHom


def klein_sequence(C: OrbitCategory, p: int) -> KleinSequence:
    """Signs as written: gamma(u, v) = (-u, u + v, -v), pi(r, s, t) = r + s + t."""
    G = C.group
    if G.order != 4 or C.n_objects != 4 or any(len(h) != 2 for h in C.objects[1:]):
        raise ValueError("klein_sequence needs the cyclic family of the Klein four group")
    t = C.trivial_object
    R0 = interval_module(C, [t], p)
    RH = [interval_module(C, [t, i], p) for i in range(C.n_objects) if i != t]
    Rbar = constant_module(C, p)
    src, mid = direct_sum([R0, R0]), direct_sum(RH)
    gcomp, pcomp = [], []
    for h in range(C.n_objects):
        if h == t:
            gcomp.append(la.asmat([[-1, 0], [1, 1], [0, -1]], p))
            pcomp.append(la.asmat([[1, 1, 1]], p))
        else:
            gcomp.append(la.zeros(1, 0))
            pcomp.append(la.eye(1))
    gamma = GammaHom(src, mid, gcomp, check=True)
    pi = GammaHom(mid, Rbar, pcomp, check=True)
    return KleinSequence(R0, RH, Rbar, gamma, pi)


def interval_inclusion(src: GammaModule, dst: GammaModule) -> GammaHom:
    """The hom between interval modules that is the identity wherever both are nonzero."""
    comp = [la.eye(1)[: b, : a] if a and b else la.zeros(b, a) for a, b in zip(src.dims, dst.dims)]
    return GammaHom(src, dst, comp, check=True)
