"""Modules over group algebras F_pG for small finite groups.

A module is a right action: row vectors times one invertible matrix per
chosen group generator, ``v . g = v @ A_g``.  Submodules are canonical
subspaces that every generator matrix preserves.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .config import limits
from .errors import DomainError, ResourceCapError, UsageError
from .fplin import FpMatrix, Subspace, Vector, kernel, require_prime, unit_vector, vec_mat
from .pgroups.group import FiniteGroup


class FpGModule:
    def __init__(self, p: int, group: FiniteGroup, generators: Sequence[int], matrices: Sequence[FpMatrix],
                 dim: int | None = None, validate: bool = True):
        require_prime(p)
        self.p = p
        self.group = group
        self.generators = tuple(int(g) for g in generators)
        mats = tuple(m if isinstance(m, FpMatrix) else FpMatrix.from_rows(p, m, dim) for m in matrices)
        if len(mats) != len(self.generators):
            raise UsageError("one matrix per generator is required")
        if dim is None:
            if not mats:
                raise UsageError("dimension is required without generator matrices")
            dim = mats[0].nrows
        self.dim = dim
        self.matrices = mats
        if dim > limits().module_dim:
            raise ResourceCapError(f"module dimension {dim} exceeds cap {limits().module_dim}",
                                   cap=limits().module_dim)
        if validate:
            self._validate()

    def _validate(self):
        for m in self.matrices:
            if m.p != self.p or m.shape != (self.dim, self.dim):
                raise DomainError("generator matrices must be dim x dim over F_p")
            if not m.is_invertible():
                raise DomainError("generator matrices must be invertible")
        if self.element_matrices is None:
            raise DomainError("matrices do not satisfy the relations of the group")

    @cached_property
    def element_matrices(self) -> dict[int, FpMatrix] | None:
        """The matrix of every group element, built along the Cayley graph; None if inconsistent."""
        G = self.group
        rows = G.rows
        rho = {0: FpMatrix.identity(self.p, self.dim)}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, a in zip(self.generators, self.matrices):
                    y = rows[x][g]
                    m = rho[x] @ a
                    if y in rho:
                        if rho[y] != m:
                            return None
                    else:
                        rho[y] = m
                        nxt.append(y)
            frontier = nxt
        if len(rho) != G.order:
            raise DomainError("chosen generators do not generate the group")
        return rho

    def act(self, v: Sequence[int], i: int) -> Vector:
        return vec_mat(v, self.matrices[i])

    def __repr__(self):
        return f"FpGModule(p={self.p}, group={self.group.label}, dim={self.dim})"

    def same_action(self, other: "FpGModule") -> bool:
        return self.p == other.p and self.group is other.group and self.generators == other.generators

    def zero(self) -> "Submodule":
        return Submodule(self, Subspace.zero(self.p, self.dim))

    def full(self) -> "Submodule":
        return Submodule(self, Subspace.full(self.p, self.dim))

    def is_invariant(self, space: Subspace) -> bool:
        return all(vec_mat(b, m) in space for b in space.basis for m in self.matrices)


@dataclass(frozen=True)
class Submodule:
    parent: FpGModule = field(compare=False)
    space: Subspace

    def __post_init__(self):
        if not self.parent.is_invariant(self.space):
            raise DomainError("subspace is not invariant under the group action")

    @property
    def dim(self) -> int:
        return self.space.dim

    def __le__(self, other: "Submodule") -> bool:
        return other.space.contains_space(self.space)

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.dim < other.dim


def trivial_module(G: FiniteGroup, p: int, dim: int = 1) -> FpGModule:
    gens = G.generators
    return FpGModule(p, G, gens, [FpMatrix.identity(p, dim) for _ in gens], dim=dim)


def regular_module(G: FiniteGroup, p: int) -> FpGModule:
    """F_pG with basis the group elements; ``e_x . g = e_(xg)``."""
    n = G.order
    mats = []
    for g in G.generators:
        mats.append(FpMatrix(p, tuple(unit_vector(n, G.mul(x, g)) for x in range(n)), n))
    return FpGModule(p, G, G.generators, mats, dim=n)


def permutation_module(G: FiniteGroup, p: int, points: Sequence[Sequence[int]]) -> FpGModule:
    """Module from a permutation action: ``points[i][x]`` is the image of point ``x`` under generator ``i``."""
    k = len(points[0])
    mats = [FpMatrix(p, tuple(unit_vector(k, perm[x]) for x in range(k)), k) for perm in points]
    return FpGModule(p, G, G.generators, mats, dim=k)


def direct_sum(*modules: FpGModule) -> FpGModule:
    if not modules:
        raise UsageError("direct_sum needs at least one module")
    first = modules[0]
    if any(not first.same_action(m) for m in modules[1:]):
        raise UsageError("summands must share prime, group and generators")
    dim = sum(m.dim for m in modules)
    mats = []
    for i in range(len(first.generators)):
        rows = []
        offset = 0
        for m in modules:
            for r in m.matrices[i].rows:
                rows.append((0,) * offset + r + (0,) * (dim - offset - m.dim))
            offset += m.dim
        mats.append(FpMatrix(first.p, tuple(rows), dim))
    return FpGModule(first.p, first.group, first.generators, mats, dim=dim, validate=False)


def power_module(M: FpGModule, n: int) -> FpGModule:
    """``M^n``, block diagonal; ``n = 0`` gives the zero module."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n == 0:
        return FpGModule(M.p, M.group, M.generators, [FpMatrix(M.p, (), 0) for _ in M.generators], dim=0,
                         validate=False)
    if n * M.dim > limits().module_dim:
        raise ResourceCapError(f"dimension {n * M.dim} exceeds cap {limits().module_dim}", cap=limits().module_dim)
    return direct_sum(*([M] * n))


def change_basis(M: FpGModule, P: FpMatrix) -> FpGModule:
    """Same module written in the basis given by the rows of ``P``: ``A' = P A P^-1``."""
    Pinv = P.inverse()
    return FpGModule(M.p, M.group, M.generators, [P @ a @ Pinv for a in M.matrices], dim=M.dim, validate=False)


def spin(M: FpGModule, vectors: Iterable[Sequence[int]]) -> Submodule:
    """Smallest submodule containing the vectors."""
    p, n = M.p, M.dim
    space = Subspace.zero(p, n)
    queue = []
    for v in vectors:
        if tuple(v) not in space:
            space = Subspace.span(p, n, space.basis + (tuple(x % p for x in v),))
            queue.append(tuple(x % p for x in v))
    while queue:
        v = queue.pop()
        for a in M.matrices:
            w = vec_mat(v, a)
            if w not in space:
                space = Subspace.span(p, n, space.basis + (w,))
                queue.append(w)
    return Submodule(M, space)


def submodule_action(U: Submodule) -> FpGModule:
    """``U`` as a module in the coordinates of its canonical basis."""
    M = U.parent
    mats = []
    for a in M.matrices:
        mats.append(FpMatrix(M.p, tuple(U.space.coordinates(vec_mat(b, a)) for b in U.space.basis), U.dim))
    return FpGModule(M.p, M.group, M.generators, mats, dim=U.dim, validate=False)


def quotient_module(M: FpGModule, U: Submodule) -> FpGModule:
    """``M/U`` in coordinates on the free (non-pivot) columns of ``U``."""
    sp = U.space
    free = sp.free_columns
    mats = []
    for a in M.matrices:
        rows = tuple(sp.quotient_coordinates(vec_mat(unit_vector(M.dim, c), a)) for c in free)
        mats.append(FpMatrix(M.p, rows, len(free)))
    return FpGModule(M.p, M.group, M.generators, mats, dim=len(free), validate=False)


def pullback(M: FpGModule, U: Submodule, sub_of_quotient: Subspace) -> Submodule:
    """Preimage in ``M`` of a subspace of ``M/U`` (quotient coordinates)."""
    lifted = [U.space.lift_quotient(v) for v in sub_of_quotient.basis]
    return Submodule(M, Subspace.span(M.p, M.dim, U.space.basis + tuple(lifted)))


def hom_space(S: FpGModule, T: FpGModule) -> list[FpMatrix]:
    """Basis of ``Hom_G(S, T)``: matrices ``X`` (dim S x dim T) with ``A^S_g X = X A^T_g``."""
    if not S.same_action(T):
        raise UsageError("modules must share prime, group and generators")
    p, s, t = S.p, S.dim, T.dim
    nvars = s * t
    equations = []
    for aS, aT in zip(S.matrices, T.matrices):
        for i in range(s):
            for j in range(t):
                # (A^S X)_ij - (X A^T)_ij = sum_k aS[i][k] X[k][j] - sum_k X[i][k] aT[k][j]
                eq = [0] * nvars
                for k in range(s):
                    eq[k * t + j] += aS.rows[i][k]
                for k in range(t):
                    eq[i * t + k] -= aT.rows[k][j]
                equations.append(tuple(x % p for x in eq))
    if not equations:
        sols = [unit_vector(nvars, i) for i in range(nvars)]
    else:
        sols = kernel(FpMatrix(p, tuple(equations), nvars))
    return [FpMatrix(p, tuple(tuple(x[i * t:(i + 1) * t]) for i in range(s)), t) for x in sols]


def _combinations(basis: list[FpMatrix], p: int, cap: int):
    if p ** len(basis) > cap:
        raise ResourceCapError(f"hom space of size {p}^{len(basis)} exceeds cap {cap}", cap=cap)
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if any(coeffs):
            yield _linear_combination(basis, coeffs, p)


def _linear_combination(basis: list[FpMatrix], coeffs, p: int) -> FpMatrix:
    rows = [[0] * basis[0].ncols for _ in range(basis[0].nrows)]
    for c, b in zip(coeffs, basis):
        if c:
            for i, r in enumerate(b.rows):
                for j, x in enumerate(r):
                    rows[i][j] = (rows[i][j] + c * x) % p
    return FpMatrix(p, tuple(tuple(r) for r in rows), basis[0].ncols)


def module_iso(S: FpGModule, T: FpGModule, cap: int | None = None) -> FpMatrix | None:
    """An invertible intertwiner ``S -> T``, or None."""
    if S.dim != T.dim or not S.same_action(T):
        return None
    if S.dim == 0:
        return FpMatrix(S.p, (), 0)
    basis = hom_space(S, T)
    for X in basis:
        if X.is_invertible():
            return X
    if not basis:
        return None
    # a random element of an isomorphic hom space is invertible with probability
    # bounded below by prod (1 - q^-i), so a seeded sample almost always finds one
    rng = random.Random(0)
    for _ in range(64):
        X = _linear_combination(basis, [rng.randrange(S.p) for _ in basis], S.p)
        if X.is_invertible():
            return X
    cap = limits().enumeration if cap is None else cap
    for X in _combinations(basis, S.p, cap):
        if X.is_invertible():
            return X
    return None


def _cyclic_submodules_walk(M: FpGModule):
    p = M.p
    for v in itertools.product(range(p), repeat=M.dim):
        # normalise: first nonzero coordinate equal to 1
        nz = next((x for x in v if x), 0)
        if nz == 1:
            yield v


def find_simple_submodule(M: FpGModule, cap: int | None = None) -> Submodule:
    """A minimal nonzero submodule, by descending through proper cyclic submodules."""
    if M.dim == 0:
        raise DomainError("the zero module has no simple submodule")
    cap = limits().enumeration if cap is None else cap
    U = M.full()
    while True:
        if M.p ** U.dim > cap:
            raise ResourceCapError(f"{M.p}^{U.dim} vectors exceed enumeration cap {cap}", cap=cap)
        smaller = None
        for coeffs in itertools.product(range(M.p), repeat=U.dim):
            if next((x for x in coeffs if x), 0) != 1:
                continue
            v = _combine(U.space, coeffs, M.p)
            W = spin(M, [v])
            if W.dim < U.dim:
                smaller = W
                break
        if smaller is None:
            return U
        U = smaller


def _combine(space: Subspace, coeffs, p) -> Vector:
    acc = [0] * space.ambient_dim
    for c, b in zip(coeffs, space.basis):
        if c:
            acc = [(x + c * y) % p for x, y in zip(acc, b)]
    return tuple(acc)


def is_simple(M: FpGModule, cap: int | None = None) -> bool:
    return M.dim > 0 and find_simple_submodule(M, cap).dim == M.dim


def simple_modules(G: FiniteGroup, p: int, cap: int | None = None) -> list[FpGModule]:
    """One representative per isomorphism class of simple F_pG-modules.

    Every simple module is a composition factor of the regular module, so
    peeling simple submodules off successive quotients of F_pG finds them all.
    Representatives use the group's stored generators.
    """
    cache = G.__dict__.setdefault("_simple_modules", {})
    if p in cache:
        return cache[p]
    found: list[FpGModule] = []
    Q = regular_module(G, p)
    while Q.dim:
        U = find_simple_submodule(Q, cap)
        S = submodule_action(U)
        if not any(module_iso(S, T, cap) is not None for T in found):
            found.append(S)
        Q = quotient_module(Q, U)
    found.sort(key=lambda S: S.dim)
    cache[p] = found
    return found


def _simples_for(M: FpGModule, cap=None) -> list[FpGModule]:
    simples = simple_modules(M.group, M.p, cap)
    if all(S.same_action(M) for S in simples):
        return simples
    # M uses other generators: express every simple through M's generators
    out = []
    for S in simples:
        rho = S.element_matrices
        out.append(FpGModule(M.p, M.group, M.generators, [rho[g] for g in M.generators], dim=S.dim,
                             validate=False))
    return out


def isotypic_components(M: FpGModule, cap: int | None = None) -> list[tuple[FpGModule, list[FpMatrix]]]:
    """For each simple ``S`` with a copy in ``M``: embeddings ``S -> M`` whose images form a direct sum
    equal to the ``S``-isotypic part of the socle."""
    out = []
    for S in _simples_for(M, cap):
        homs = hom_space(S, M)
        chosen: list[FpMatrix] = []
        span = Subspace.zero(M.p, M.dim)
        for X in homs:
            bigger = Subspace.span(M.p, M.dim, span.basis + X.rows)
            # images are simple, so either independent of the span or contained in it
            if bigger.dim == span.dim + S.dim:
                chosen.append(X)
                span = bigger
        if chosen:
            out.append((S, chosen))
    return out


def socle(M: FpGModule, cap: int | None = None) -> Submodule:
    """Sum of all simple submodules: the images of all homomorphisms from simple modules."""
    vecs = []
    for _, embeds in isotypic_components(M, cap):
        for X in embeds:
            vecs.extend(X.rows)
    return Submodule(M, Subspace.span(M.p, M.dim, vecs))


def socle_bruteforce(M: FpGModule, cap: int | None = None) -> Submodule:
    """Sum of the cyclic submodules that are simple, found by enumerating every vector."""
    cap = limits().enumeration if cap is None else cap
    if M.p ** M.dim > cap:
        raise ResourceCapError(f"{M.p}^{M.dim} vectors exceed enumeration cap {cap}", cap=cap)
    total = Subspace.zero(M.p, M.dim)
    for v in _cyclic_submodules_walk(M):
        if v in total:
            continue
        W = spin(M, [v])
        if all(spin(M, [w]).dim == W.dim for w in W.space.vectors() if any(w)):
            total = total + W.space
    return Submodule(M, total)


@dataclass(frozen=True)
class IsotypicSection:
    """``M2/M1`` is isomorphic to ``simple^multiplicity``.

    ``embeddings`` are matrices ``S -> M`` (rows are images of the basis of
    ``S``) that are module maps modulo ``M1`` and whose images, together with
    ``M1``, span ``M2`` with the expected dimension.
    """

    M1: Submodule
    M2: Submodule
    simple: FpGModule
    multiplicity: int
    embeddings: tuple[FpMatrix, ...]
    depth: int

    def verify(self) -> bool:
        M = self.M1.parent
        S = self.simple
        if not (self.M1 < self.M2) or len(self.embeddings) != self.multiplicity:
            return False
        if self.M2.dim - self.M1.dim != self.multiplicity * S.dim:
            return False
        rows = list(self.M1.space.basis)
        for X in self.embeddings:
            for aS, aM in zip(S.matrices, M.matrices):
                left, right = aS @ X, X @ aM
                for r1, r2 in zip(left.rows, right.rows):
                    if tuple((a - b) % M.p for a, b in zip(r1, r2)) not in self.M1.space:
                        return False
            rows.extend(X.rows)
        return Subspace.span(M.p, M.dim, rows) == self.M2.space and \
            len(rows) == self.M2.dim and is_simple(S)


def _largest_component(M: FpGModule, cap) -> tuple[FpGModule, list[FpMatrix]]:
    comps = isotypic_components(M, cap)
    return max(comps, key=lambda c: (len(c[1]), -c[0].dim))


def isotypic_section(M: FpGModule, cap: int | None = None) -> IsotypicSection:
    """Submodules ``M1 < M2`` with ``M2/M1`` a direct sum of many isomorphic simple modules.

    If the socle ``N`` holds more than half of ``M``, its largest isotypic
    component is returned; otherwise recurse into ``M/N`` and pull back.
    ``depth`` counts recursion levels so that the multiplicity is at least
    ``gerdau_constant(G, p, depth) * dim M``.
    """
    if M.dim == 0:
        raise DomainError("the zero module has no nontrivial section")
    N = socle(M, cap)
    if 2 * N.dim > M.dim:
        S, embeds = _largest_component(M, cap)
        M2 = Submodule(M, Subspace.span(M.p, M.dim, [r for X in embeds for r in X.rows]))
        depth = 1 if N.dim == M.dim else 2
        return IsotypicSection(M.zero(), M2, S, len(embeds), tuple(embeds), depth)
    Q = quotient_module(M, N)
    inner = isotypic_section(Q, cap)
    M1 = pullback(M, N, inner.M1.space)
    M2 = pullback(M, N, inner.M2.space)
    embeds = tuple(FpMatrix(M.p, tuple(N.space.lift_quotient(r) for r in X.rows), M.dim) for X in inner.embeddings)
    return IsotypicSection(M1, M2, inner.simple, inner.multiplicity, embeds, inner.depth + 1)


def gerdau_constant(G: FiniteGroup, p: int, ell: int, cap: int | None = None) -> Fraction:
    """``c_1 / 2^(ell - 1)`` with ``c_1 = 1 / sum(dim S)`` over the simple F_pG-modules."""
    if ell < 1:
        raise DomainError("ell must be >= 1")
    c1 = Fraction(1, sum(S.dim for S in simple_modules(G, p, cap)))
    return c1 / 2 ** (ell - 1)


def submodules(M: FpGModule, cap: int | None = None) -> list[Submodule]:
    """Every submodule, growing the lattice by spinning one quotient vector at a time."""
    cap = limits().enumeration if cap is None else cap
    if M.p ** M.dim > cap:
        raise ResourceCapError(f"{M.p}^{M.dim} vectors exceed enumeration cap {cap}", cap=cap)
    zero = M.zero()
    found = {zero.space: zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for U in frontier:
            sp = U.space
            for coords in itertools.product(range(M.p), repeat=sp.codim):
                if next((x for x in coords if x), 0) != 1:
                    continue
                W = spin(M, list(sp.basis) + [sp.lift_quotient(coords)])
                if W.space not in found:
                    found[W.space] = W
                    nxt.append(W)
        frontier = nxt
    return sorted(found.values(), key=lambda U: (U.dim, U.space))


def count_submodules(M: FpGModule, cap: int | None = None) -> int:
    return len(submodules(M, cap))


def endomorphism_field_size(S: FpGModule) -> int:
    """``|End_G(S)|`` for a simple module (a finite field by Schur's lemma)."""
    return S.p ** len(hom_space(S, S))


def random_invertible(p: int, n: int, rng: random.Random) -> FpMatrix:
    while True:
        A = FpMatrix(p, tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n)), n)
        if A.is_invertible():
            return A


def random_module(G: FiniteGroup, p: int, max_dim: int, rng: random.Random) -> FpGModule:
    """A random nonzero module of dimension at most ``max_dim``.

    Direct sums of simple, trivial and regular modules, optionally cut down
    to a random cyclic submodule or quotient, written in a random basis.
    """
    pieces = list(simple_modules(G, p))
    if G.order <= max_dim:
        pieces.append(regular_module(G, p))
    summands, dim = [], 0
    while True:
        fitting = [S for S in pieces if dim + S.dim <= max_dim]
        if not fitting or (summands and rng.random() < 0.3):
            break
        S = rng.choice(fitting)
        summands.append(S)
        dim += S.dim
    M = direct_sum(*summands)
    roll = rng.random()
    if roll < 0.3:
        v = [rng.randrange(p) for _ in range(M.dim)]
        if any(v):
            M = submodule_action(spin(M, [v]))
    elif roll < 0.6:
        U = spin(M, [[rng.randrange(p) for _ in range(M.dim)]])
        if U.dim < M.dim:
            M = quotient_module(M, U)
    return change_basis(M, random_invertible(p, M.dim, rng))
