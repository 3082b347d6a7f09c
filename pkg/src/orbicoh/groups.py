"""Finite groups on dense element indices, subgroups, and subgroup families."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    FamilyInvalid,
    GroupTooLarge,
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAPermutation,
    NotAssociative,
    NotNormal,
    UnknownName,
    UnknownSubgroupId,
)

DEFAULT_MAX_ORDER = 5040
EXHAUSTIVE_CHECK_ORDER = 64


class FiniteGroup:
    """A finite group given by its Cayley table; element 0 is the identity."""

    def __init__(self, cayley, name: str = "", *, check: bool = True):
        table = np.asarray(cayley, dtype=np.int64)
        self.name = name
        self.order = table.shape[0]
        self.cayley = table
        if check:
            _validate(table)
        inv = np.empty(self.order, dtype=np.int64)
        for a in range(self.order):
            inv[a] = int(np.flatnonzero(table[a] == 0)[0])
        self.inverse = inv
        self.cayley.setflags(write=False)
        self.inverse.setflags(write=False)

    identity = 0

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """g^-1 x g."""
        return int(self.cayley[self.cayley[self.inverse[g], x], g])

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = int(self.cayley[x, a])
                k += 1
            orders.append(k)
        return tuple(orders)

    def is_abelian(self) -> bool:
        return bool((self.cayley == self.cayley.T).all())

    # subgroups -----------------------------------------------------------

    def generated(self, gens) -> "Subgroup":
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = int(self.cayley[x, s])
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return Subgroup(tuple(sorted(elems)))

    def conjugate(self, sub: "Subgroup", g: int) -> "Subgroup":
        """The subgroup g^-1 H g."""
        return Subgroup(tuple(sorted(self.conj(g, h) for h in sub.elements)))

    def is_subgroup(self, elements) -> bool:
        s = set(elements)
        if 0 not in s:
            return False
        for a in s:
            if self.inv(a) not in s:
                return False
            for b in s:
                if self.mul(a, b) not in s:
                    return False
        return True

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        return tuple(all_subgroups(self))

    def subgroup_id(self, sub: "Subgroup") -> int:
        return self._subgroup_index[sub]

    @cached_property
    def _subgroup_index(self) -> dict:
        return {s: i for i, s in enumerate(self.subgroups)}

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(tuple(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup((0,))

    def is_normal(self, sub: "Subgroup") -> bool:
        return all(self.conjugate(sub, g) == sub for g in range(self.order))

    def left_cosets(self, sub: "Subgroup") -> list[tuple[int, ...]]:
        """Cosets gK as sorted tuples, ordered by their minimal element."""
        seen = set()
        cosets = []
        for g in range(self.order):
            if g in seen:
                continue
            c = tuple(sorted(int(self.cayley[g, k]) for k in sub.elements))
            seen.update(c)
            cosets.append(c)
        return cosets

    def coset_rep(self, g: int, sub: "Subgroup") -> int:
        return min(int(self.cayley[g, k]) for k in sub.elements)

    def subgroup_group(self, sub: "Subgroup") -> tuple["FiniteGroup", np.ndarray]:
        """``sub`` as a group of its own plus the embedding local -> global."""
        emb = np.array(sub.elements, dtype=np.int64)
        local = {int(g): i for i, g in enumerate(emb)}
        table = [[local[int(self.cayley[a, b])] for b in emb] for a in emb]
        return FiniteGroup(table, name=f"{self.name}|{len(emb)}", check=False), emb

    def quotient(self, normal: "Subgroup") -> tuple["FiniteGroup", np.ndarray]:
        """G/N with the projection as an array of coset indices."""
        if not self.is_normal(normal):
            raise NotNormal(f"subgroup {normal.elements} is not normal")
        cosets = self.left_cosets(normal)
        proj = np.empty(self.order, dtype=np.int64)
        for i, c in enumerate(cosets):
            proj[list(c)] = i
        reps = [c[0] for c in cosets]
        table = [[int(proj[self.cayley[a, b]]) for b in reps] for a in reps]
        return FiniteGroup(table, name=f"{self.name}/{len(normal)}", check=False), proj


def _validate(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise MalformedTable(f"table must be square and nonempty, got shape {table.shape}")
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise MalformedTable(f"entries must lie in 0..{n - 1}")
    full = np.arange(n)
    if not (np.array_equal(table[0], full) and np.array_equal(table[:, 0], full)):
        raise NoIdentity("element 0 is not a two-sided identity")
    for a in range(n):
        b = np.flatnonzero(table[a] == 0)
        if b.size == 0 or table[b[0], a] != 0:
            raise NoInverse(f"element {a} has no two-sided inverse")
    if n <= EXHAUSTIVE_CHECK_ORDER:
        left = table[table]  # left[a, b, c] = (ab)c
        right = table[:, table]  # right[a, b, c] = a(bc)
        bad = np.argwhere(left != right)
        if bad.size:
            a, b, c = (int(x) for x in bad[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    else:
        rng = np.random.default_rng(0x5EED)
        trip = rng.integers(0, n, size=(100_000, 3))
        a, b, c = trip.T
        bad = np.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
        if bad.size:
            a, b, c = (int(x) for x in trip[bad[0]])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), full):
            raise MalformedTable(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(table[:, i]), full):
            raise MalformedTable(f"column {i} is not a permutation")


def group_from_cayley(table, name: str = "") -> FiniteGroup:
    """Validate a Cayley table, relabelling so that the identity is element 0."""
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise MalformedTable(f"table must be square and nonempty, got shape {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        raise MalformedTable("table entries must be integers")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise MalformedTable(f"entries must lie in 0..{n - 1}")
    full = np.arange(n)
    ident = None
    for e in range(n):
        if np.array_equal(t[e], full) and np.array_equal(t[:, e], full):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no element acts as a two-sided identity")
    if ident != 0:
        perm = np.arange(n)
        perm[0], perm[ident] = ident, 0  # new label i <- old label perm[i]
        old_to_new = np.argsort(perm)
        t = old_to_new[t[np.ix_(perm, perm)]]
    return FiniteGroup(t, name=name)


def _compose(a: tuple, b: tuple) -> tuple:
    """(a*b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def group_from_permutations(generators, name: str = "", max_order: int | None = None) -> FiniteGroup:
    """Close permutation generators (image tables) under composition."""
    if max_order is None:
        max_order = DEFAULT_MAX_ORDER
    gens = [tuple(int(x) for x in g) for g in generators]
    m = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != m or sorted(g) != list(range(m)):
            raise NotAPermutation(f"{list(g)} is not a permutation of 0..{m - 1}")
    ident = tuple(range(m))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for s in gens:
            y = _compose(x, s)
            if y not in index:
                if len(elems) >= max_order:
                    raise GroupTooLarge(f"closure exceeds {max_order} elements")
                index[y] = len(elems)
                elems.append(y)
        i += 1
    table = [[index[_compose(a, b)] for b in elems] for a in elems]
    g = FiniteGroup(table, name=name)
    g.permutations = elems
    return g


# builtins -----------------------------------------------------------------


def _cyclic(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _elementary_abelian(p: int, k: int) -> list[list[int]]:
    n = p**k

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    def num(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    return [[num([(u + v) % p for u, v in zip(digits(a), digits(b))]) for b in range(n)] for a in range(n)]


def _klein4() -> list[list[int]]:
    # labels: 0 = e, 1 = a1, 2 = a1a2, 3 = a2, so that S1 = <a1>, S2 = <a1a2>, S3 = <a2>
    bits = [(0, 0), (1, 0), (1, 1), (0, 1)]
    label = {b: i for i, b in enumerate(bits)}
    return [[label[(x[0] ^ y[0], x[1] ^ y[1])] for y in bits] for x in bits]


def _dihedral(n: int) -> list[list[int]]:
    # k -> r^k, n + k -> s r^k;  r s = s r^-1
    def mul(a, b):
        sa, ka = divmod(a, n)
        sb, kb = divmod(b, n)
        if sb == 0:
            return sa * n + (ka + kb) % n
        return (1 - sa) * n + (kb - ka) % n

    return [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]


def _quaternion8() -> list[list[int]]:
    # elements (sign, unit) with unit in 1, i, j, k
    units = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }  # fmt: skip
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    index = {e: i for i, e in enumerate(elems)}

    def mul(a, b):
        s, u = units[(a[1], b[1])]
        return index[(a[0] * b[0] * s, u)]

    return [[mul(a, b) for b in elems] for a in elems]


def _symmetric(n: int) -> list[list[int]]:
    perms = list(itertools.permutations(range(n)))
    index = {q: i for i, q in enumerate(perms)}
    return [[index[_compose(a, b)] for b in perms] for a in perms]


def builtin_group(name: str) -> FiniteGroup:
    """Named groups: trivial, cyclic:n, klein4, elem_abelian:p:k, dihedral:n,
    quaternion8, symmetric:n (n <= 4)."""
    parts = name.split(":")
    head, args = parts[0], parts[1:]
    try:
        ints = [int(a) for a in args]
    except ValueError:
        raise UnknownName(f"bad group arguments in {name!r}") from None
    if head == "trivial" and not ints:
        table = [[0]]
    elif head == "cyclic" and len(ints) == 1 and ints[0] >= 1:
        table = _cyclic(ints[0])
    elif head == "klein4" and not ints:
        table = _klein4()
    elif head == "elem_abelian" and len(ints) == 2 and ints[1] >= 0:
        from .linalg import is_prime

        if not is_prime(ints[0]):
            raise UnknownName(f"{ints[0]} is not prime")
        table = _elementary_abelian(*ints)
    elif head == "dihedral" and len(ints) == 1 and ints[0] >= 1:
        table = _dihedral(ints[0])
    elif head == "quaternion8" and not ints:
        table = _quaternion8()
    elif head == "symmetric" and len(ints) == 1 and 1 <= ints[0] <= 4:
        table = _symmetric(ints[0])
    else:
        raise UnknownName(f"unknown group {name!r}")
    return FiniteGroup(table, name=name)


# subgroups ------------------------------------------------------------------


@dataclass(frozen=True, order=False)
class Subgroup:
    """A subgroup as the strictly sorted tuple of its element indices."""

    elements: tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def sort_key(self):
        return (len(self.elements), self.elements)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup once, sorted by (order, elements).

    Starts from the cyclic subgroups and closes under joins.
    """
    cyclic = {G.generated([g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    cyc = sorted(cyclic)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyc:
                if c.issubset(h):
                    continue
                j = G.generated(h.elements + c.elements)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found)


def _p_rank(G: FiniteGroup, sub: Subgroup, elementary: dict) -> int:
    """Largest rank of an elementary abelian p-subgroup of ``sub``, max over p."""
    best = 0
    for e, r in elementary.items():
        if r > best and e.issubset(sub):
            best = r
    return best


def _elementary_abelian_subgroups(G: FiniteGroup) -> dict:
    out = {}
    for s in G.subgroups:
        n = len(s)
        if n == 1:
            continue
        p = min(d for d in range(2, n + 1) if n % d == 0)
        k, m = 0, n
        while m % p == 0:
            m //= p
            k += 1
        if m != 1:
            continue
        if all(G.element_orders[x] in (1, p) for x in s.elements) and all(
            G.mul(a, b) == G.mul(b, a) for a in s.elements for b in s.elements
        ):
            out[s] = k
    return out


def subgroup_rank(G: FiniteGroup, sub: Subgroup) -> int:
    return _p_rank(G, sub, _elementary_abelian_subgroups(G))


@dataclass(frozen=True)
class SubgroupFamily:
    """Subgroups closed under conjugation and taking subgroups."""

    group: FiniteGroup = field(repr=False, compare=False)
    members: tuple[Subgroup, ...]
    conj_class: tuple[int, ...] = field(default=(), compare=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, sub):
        return sub in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def index(self, sub: Subgroup) -> int:
        return self.members.index(sub)

    def ids(self) -> list[str]:
        return [f"S{self.group.subgroup_id(s)}" for s in self.members]

    def is_subfamily_of(self, other: "SubgroupFamily") -> bool:
        return self._set <= other._set

    def check(self) -> None:
        G = self.group
        for h in self.members:
            if not G.is_subgroup(h.elements):
                raise FamilyInvalid(f"{h.elements} is not a subgroup")
            for g in range(G.order):
                if G.conjugate(h, g) not in self:
                    raise FamilyInvalid(f"not closed under conjugation at {h.elements}, g={g}")
            for s in G.subgroups:
                if s.issubset(h) and s not in self:
                    raise FamilyInvalid(f"{s.elements} <= {h.elements} missing")


def family_from_members(G: FiniteGroup, members) -> SubgroupFamily:
    members = sorted(set(members))
    classes: list[int] = []
    reps: list[Subgroup] = []
    for h in members:
        for ci, r in enumerate(reps):
            if any(G.conjugate(r, g) == h for g in range(G.order)):
                classes.append(ci)
                break
        else:
            classes.append(len(reps))
            reps.append(h)
    return SubgroupFamily(G, tuple(members), tuple(classes))


def family_closure(G: FiniteGroup, seeds) -> SubgroupFamily:
    """Smallest family containing ``seeds``: all subgroups of conjugates of seeds."""
    conj = {G.conjugate(s, g) for s in seeds for g in range(G.order)}
    members = [h for h in G.subgroups if any(h.issubset(c) for c in conj)]
    if not members:
        members = [G.trivial]
    return family_from_members(G, members)


def make_family(G: FiniteGroup, spec: str) -> SubgroupFamily:
    """Families by name: cyclic, all_proper, all, rank_at_most:k, list:S1,S3,..."""
    subs = G.subgroups
    if spec == "cyclic":
        members = [s for s in subs if any(G.generated([g]) == s for g in s.elements)]
    elif spec == "all":
        members = list(subs)
    elif spec == "all_proper":
        members = [s for s in subs if len(s) < G.order] or [G.trivial]
    elif spec.startswith("rank_at_most:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise UnknownName(f"bad family spec {spec!r}") from None
        elem = _elementary_abelian_subgroups(G)
        members = [s for s in subs if _p_rank(G, s, elem) <= k]
    elif spec.startswith("list:"):
        seeds = [subgroup_by_id(G, tok) for tok in spec[5:].split(",") if tok]
        return family_closure(G, seeds)
    else:
        raise UnknownName(f"unknown family {spec!r}")
    return family_from_members(G, members)


def subgroup_by_id(G: FiniteGroup, token: str) -> Subgroup:
    tok = token.strip()
    if tok.startswith("S"):
        tok = tok[1:]
    try:
        k = int(tok)
    except ValueError:
        raise UnknownSubgroupId(f"bad subgroup id {token!r}") from None
    if not 0 <= k < len(G.subgroups):
        raise UnknownSubgroupId(f"{token!r} out of range (group has {len(G.subgroups)} subgroups)")
    return G.subgroups[k]


def max_order_from_env() -> int:
    return int(os.environ.get("ORBICOH_MAX_ORDER", DEFAULT_MAX_ORDER))
