"""Dense exact linear algebra over prime fields GF(p).

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``.
Every function takes the modulus explicitly; nothing here is floating point.
Products stay below 2**63 for p < 2**16 and inner dimensions up to ~10**9.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoSolution

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field GF(p); validates primality on construction."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p >= MAX_PRIME:
            raise ValueError(f"characteristic must be a prime < {MAX_PRIME}, got {self.p}")

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, self.p - 2, self.p)

    def matrix(self, rows) -> np.ndarray:
        return asmat(rows, self.p)


def asmat(rows, p: int, shape=None) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over GF(p) and its pivot columns."""
    r = np.array(a, dtype=np.int64) % p
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for c in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(r[row:, c])
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            r[[row, k]] = r[[k, row]]
        lead = int(r[row, c])
        if lead != 1:
            r[row, c:] = (r[row, c:] * pow(lead, p - 2, p)) % p
        col = r[:, c].copy()
        col[row] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            r[hit, c:] = (r[hit, c:] - np.outer(col[hit], r[row, c:])) % p
        pivots.append(c)
        row += 1
    return r, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def kernel_basis(a: np.ndarray, p: int, with_free: bool = False):
    """Columns spanning the null space of ``a``.

    The basis is the RREF one: the vector for free column ``j`` has a 1 in
    position ``j`` and 0 in every other free position, so the coordinates of a
    kernel vector ``v`` are simply ``v[free]``.
    """
    ncols = a.shape[1]
    if a.shape[0] == 0:
        k = eye(ncols)
        free = list(range(ncols))
    else:
        r, piv = rref(a, p)
        pivset = set(piv)
        free = [j for j in range(ncols) if j not in pivset]
        k = zeros(ncols, len(free))
        for idx, j in enumerate(free):
            k[j, idx] = 1
            if piv:
                k[piv, idx] = (-r[: len(piv), j]) % p
    if with_free:
        return k, free
    return k


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Some X with a @ X == b (mod p); free variables are set to zero.

    Raises NoSolution when the system is inconsistent.
    """
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"rows differ: {a.shape} vs {b.shape}")
    n = a.shape[1]
    x = zeros(n, b.shape[1])
    if a.shape[0] and b.shape[1]:
        r, piv = rref(np.hstack([a % p, b % p]), p)
        if piv and piv[-1] >= n:
            raise NoSolution(f"inconsistent system: pivot in augmented column {piv[-1] - n}")
        if piv:
            x[piv] = r[: len(piv), n:]
    return x[:, 0] if vector else x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch(f"not square: {a.shape}")
    r, piv = rref(np.hstack([a % p, eye(n)]), p)
    if piv[:n] != list(range(n)):
        raise NoSolution("matrix is singular")
    return r[:, n:]


def independent_columns(a: np.ndarray, p: int) -> list[int]:
    if a.shape[1] == 0 or a.shape[0] == 0:
        return []
    return rref(a, p)[1]


def column_span(a: np.ndarray, p: int) -> np.ndarray:
    """A basis (as columns) of the column space of ``a``."""
    return a[:, independent_columns(a, p)]


def in_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    try:
        solve(basis, v, p)
    except NoSolution:
        return False
    return True


class QuotientBasis:
    """Deterministic basis of ker/im for a pair im <= ker <= GF(p)^n.

    Representatives are the kernel columns that become pivots after the
    image columns; ``coords`` expresses cocycles in that basis.
    """

    def __init__(self, cycles: np.ndarray, boundaries: np.ndarray, p: int):
        self.p = p
        n = cycles.shape[0]
        nb = boundaries.shape[1]
        both = np.hstack([boundaries, cycles]) if n else zeros(0, nb + cycles.shape[1])
        piv = independent_columns(both, p)
        bpiv = [c for c in piv if c < nb]
        rpiv = [c - nb for c in piv if c >= nb]
        self.n_boundary = len(bpiv)
        self.reps = cycles[:, rpiv]
        self._basis = np.hstack([boundaries[:, bpiv], self.reps])

    @property
    def dim(self) -> int:
        return self.reps.shape[1]

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of cocycles (columns of ``v``) modulo boundaries."""
        x = solve(self._basis, v, self.p)
        return x[self.n_boundary :]
