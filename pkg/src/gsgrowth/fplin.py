"""Exact linear algebra over prime fields and subspace counting.

Vectors are plain tuples of ints reduced mod ``p``.  Subspaces are kept in
reduced row-echelon form only, so two subspaces are equal exactly when their
representations are equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .config import limits
from .errors import DomainError, ResourceCapError, UsageError

Vector = tuple[int, ...]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_base(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` and ``p`` prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


@dataclass(frozen=True)
class FpMatrix:
    p: int
    rows: tuple[Vector, ...]
    ncols: int

    @classmethod
    def from_rows(cls, p: int, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "FpMatrix":
        require_prime(p)
        data = tuple(tuple(int(x) % p for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise UsageError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise UsageError("ragged matrix rows")
        return cls(p, data, ncols)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zero(cls, p: int, nrows: int, ncols: int) -> "FpMatrix":
        return cls(p, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p or self.ncols != other.nrows:
            raise UsageError("incompatible matrices")
        return FpMatrix(self.p, tuple(vec_mat(r, other) for r in self.rows), other.ncols)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def rank(self) -> int:
        return rref(self)[1]

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "FpMatrix":
        n = self.nrows
        if n != self.ncols:
            raise DomainError("only square matrices are invertible")
        aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self.rows)]
        rows, pivots = _rref_rows(aug, 2 * n, self.p)
        if pivots != list(range(n)):
            raise DomainError("matrix is singular")
        return FpMatrix(self.p, tuple(tuple(r[n:]) for r in rows), n)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def vec_mat(v: Sequence[int], m: FpMatrix) -> Vector:
    """Row vector times matrix."""
    p = m.p
    acc = [0] * m.ncols
    for coeff, row in zip(v, m.rows):
        if coeff:
            for j, x in enumerate(row):
                if x:
                    acc[j] += coeff * x
    return tuple(a % p for a in acc)


def vec_add(u: Sequence[int], v: Sequence[int], p: int) -> Vector:
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_scale(c: int, v: Sequence[int], p: int) -> Vector:
    return tuple((c * a) % p for a in v)


def _rref_rows(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        sel = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c] % p
                if f:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, int]:
    """Reduced row-echelon form with zero rows dropped, and the rank."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols, m.p)
    return FpMatrix(m.p, tuple(tuple(r) for r in rows), m.ncols), len(pivots)


def kernel(m: FpMatrix) -> list[Vector]:
    """Basis of the right null space ``{x : m x = 0}``."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols, m.p)
    p = m.p
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * m.ncols
        x[f] = 1
        for row, pc in zip(rows, pivots):
            x[pc] = (-row[f]) % p
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace of F_p^n stored by its canonical RREF basis."""

    p: int
    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, p: int, n: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        rows, _ = _rref_rows([[x % p for x in v] for v in vectors], n, p)
        return cls(p, n, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    @property
    def free_columns(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in piv)

    def is_canonical(self) -> bool:
        return Subspace.span(self.p, self.ambient_dim, self.basis) == self

    def reduce(self, v: Sequence[int]) -> Vector:
        """Residue of ``v`` after clearing the pivot columns; zero iff ``v`` is in the space."""
        p = self.p
        w = [x % p for x in v]
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                w = [(a - f * b) % p for a, b in zip(w, row)]
        return tuple(w)

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Coordinates of a member vector with respect to the canonical basis."""
        if v not in self:
            raise DomainError("vector does not lie in the subspace")
        return tuple(v[pc] % self.p for pc in self.pivots)

    def quotient_coordinates(self, v: Sequence[int]) -> Vector:
        """Coordinates of ``v + self`` in the ambient quotient, read on the free columns."""
        r = self.reduce(v)
        return tuple(r[c] for c in self.free_columns)

    def lift_quotient(self, coords: Sequence[int]) -> Vector:
        """Inverse of :meth:`quotient_coordinates` choosing the representative supported on free columns."""
        w = [0] * self.ambient_dim
        for c, x in zip(self.free_columns, coords):
            w[c] = x % self.p
        return tuple(w)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.p, self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        # solve a.A = b.B via the kernel of the stacked transpose
        if not self.basis or not other.basis:
            return Subspace.zero(self.p, self.ambient_dim)
        p = self.p
        rows = [tuple(self.basis[i][j] for i in range(self.dim)) + tuple((-other.basis[i][j]) % p for i in range(other.dim))
                for j in range(self.ambient_dim)]
        sols = kernel(FpMatrix(p, tuple(rows), self.dim + other.dim))
        vecs = []
        for s in sols:
            acc = [0] * self.ambient_dim
            for c, b in zip(s[: self.dim], self.basis):
                if c:
                    acc = [(x + c * y) % p for x, y in zip(acc, b)]
            vecs.append(acc)
        return Subspace.span(p, self.ambient_dim, vecs)

    def vectors(self) -> Iterator[Vector]:
        """Every vector of the subspace, in lexicographic order of coordinates."""
        p = self.p
        for coeffs in itertools.product(range(p), repeat=self.dim):
            acc = [0] * self.ambient_dim
            for c, b in zip(coeffs, self.basis):
                if c:
                    acc = [(x + c * y) % p for x, y in zip(acc, b)]
            yield tuple(acc)

    def matrix(self) -> FpMatrix:
        return FpMatrix(self.p, self.basis, self.ambient_dim)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of an ``n``-dimensional space over the ``q``-element field."""
    if q < 2 or prime_power_base(q) is None:
        raise DomainError(f"q={q} is not a prime power")
    if k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def count_all_subspaces(n: int, q: int) -> int:
    if n < 0:
        raise DomainError("n must be nonnegative")
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(n: int, q: int, codim: int, cap: int | None = None) -> list[Subspace]:
    """All subspaces of F_q^n of the given codimension, sorted by canonical basis."""
    require_prime(q)
    if not 0 <= codim <= n:
        raise DomainError(f"need 0 <= codim <= n, got n={n}, codim={codim}")
    cap = limits().enumeration if cap is None else cap
    k = n - codim
    total = gaussian_binomial(n, k, q)
    if total > cap:
        raise ResourceCapError(f"enumeration of {total} subspaces exceeds cap {cap}", cap=cap)
    out = []
    for pivots in itertools.combinations(range(n), k):
        piv = set(pivots)
        slots = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in piv]
        for values in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), x in zip(slots, values):
                rows[i][j] = x
            out.append(Subspace(q, n, tuple(tuple(r) for r in rows)))
    out.sort()
    return out


def all_vectors(n: int, p: int, cap: int | None = None) -> Iterator[Vector]:
    cap = limits().enumeration if cap is None else cap
    if p**n > cap:
        raise ResourceCapError(f"{p}^{n} vectors exceed enumeration cap {cap}", cap=cap)
    return itertools.product(range(p), repeat=n)
