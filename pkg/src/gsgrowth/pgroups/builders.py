"""Constructors for the group library.

Elements are encoded as integers with the identity at index 0.  Tables are
filled row by row with numpy so that orders up to the group cap stay cheap.
"""

from __future__ import annotations

from math import comb

import numpy as np

from ..config import limits
from ..errors import DomainError, ResourceCapError
from .group import FiniteGroup, check_prime


def _cap(order: int):
    cap = limits().group_order
    if order > cap:
        raise ResourceCapError(f"group order {order} exceeds cap {cap}", cap=cap)


def _digits(n_elements: int, radices: list[int]) -> np.ndarray:
    """Mixed-radix digits of ``0..n-1``, least significant first; shape (n, len(radices))."""
    out = np.zeros((n_elements, len(radices)), dtype=np.int64)
    x = np.arange(n_elements)
    for j, r in enumerate(radices):
        out[:, j] = x % r
        x = x // r
    return out


def _encode(digits: np.ndarray, radices: list[int]) -> np.ndarray:
    idx = np.zeros(digits.shape[:-1], dtype=np.int64)
    scale = 1
    for j, r in enumerate(radices):
        idx += digits[..., j] * scale
        scale *= r
    return idx


def _table_from_coordinates(radices: list[int], product) -> np.ndarray:
    """``product(a_digits_row, all_digits)`` returns the digits of ``a * b`` for every ``b``."""
    n = int(np.prod(radices)) if radices else 1
    digs = _digits(n, radices)
    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        table[a] = _encode(product(digs[a], digs), radices)
    return table


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], "trivial", origin={"builtin": "trivial", "params": []})


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("cyclic group order must be >= 1")
    _cap(n)
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, f"C{n}", generators=[1] if n > 1 else None,
                       origin={"builtin": "cyclic", "params": [n]})


def elementary_abelian(p: int, r: int) -> FiniteGroup:
    check_prime(p)
    if r < 0:
        raise DomainError("rank must be >= 0")
    _cap(p**r)
    rad = [p] * r
    table = _table_from_coordinates(rad, lambda a, b: (a + b) % p)
    gens = [p**i for i in range(r)]
    return FiniteGroup(table, f"C{p}^{r}", generators=gens or None,
                       origin={"builtin": "elementary_abelian", "params": [p, r]})


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order: ``r^i s^j`` at index ``i + m j``."""
    if order < 2 or order % 2:
        raise DomainError("dihedral group order must be even and >= 2")
    _cap(order)
    m = order // 2

    def prod(a, b):
        i, j = a
        sign = -1 if j else 1
        return np.stack([(i + sign * b[:, 0]) % m, (j + b[:, 1]) % 2], axis=1)

    table = _table_from_coordinates([m, 2], prod)
    return FiniteGroup(table, f"D{order}", generators=[1, m] if m > 1 else [m],
                       origin={"builtin": "dihedral", "params": [order]})


def quaternion(order: int) -> FiniteGroup:
    """Dicyclic group of order ``4m``: ``a^(2m) = 1, x^2 = a^m, x a x^-1 = a^-1``."""
    if order < 4 or order % 4:
        raise DomainError("dicyclic order must be a multiple of 4")
    _cap(order)
    n2 = order // 2  # order of a
    m = n2 // 2

    def prod(a, b):
        i, j = a
        bi, bj = b[:, 0], b[:, 1]
        if j == 0:
            return np.stack([(i + bi) % n2, bj], axis=1)
        # a^i x a^bi x^bj = a^(i - bi) x^(1 + bj)
        ii = i - bi
        jj = 1 + bj
        carry = jj >= 2
        return np.stack([(ii + carry * m) % n2, jj % 2], axis=1)

    table = _table_from_coordinates([n2, 2], prod)
    return FiniteGroup(table, f"Q{order}", generators=[1, n2],
                       origin={"builtin": "quaternion", "params": [order]})


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    _cap(n * m)
    tg, th = G.table.astype(np.int64), H.table.astype(np.int64)
    # (a, b) sits at index a + n*b
    idx = np.arange(n * m)
    a, b = idx % n, idx // n
    table = tg[a[:, None], a[None, :]] + n * th[b[:, None], b[None, :]]
    gens = list(G.generators) + [n * h for h in H.generators]
    origin = None
    if G.origin and H.origin:
        origin = {"builtin": "direct_product", "params": [G.origin, H.origin]}
    return FiniteGroup(table, f"{G.label}x{H.label}", generators=gens or None, origin=origin)


def permutation_group(gens: list[tuple[int, ...]], label: str = "Perm", origin: dict | None = None) -> FiniteGroup:
    """Closure of permutations (tuples of images) under composition ``(ab)(i) = b(a(i))``."""
    degree = len(gens[0]) if gens else 1
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in index:
                    _cap(len(elements) + 1)
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    n = len(elements)
    perms = np.asarray(elements, dtype=np.int64)
    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        # row b holds b(a(i)), i.e. the product "a then b"
        comp = np.take_along_axis(perms, np.broadcast_to(perms[a], (n, degree)), axis=1)
        table[a] = [index[tuple(r)] for r in comp.tolist()]
    gen_idx = [index[tuple(g)] for g in gens if tuple(g) != ident]
    return FiniteGroup(table, label, generators=gen_idx or None, origin=origin)


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("degree must be >= 1")
    gens = []
    if n >= 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return permutation_group(gens, f"S{n}", origin={"builtin": "symmetric", "params": [n]})


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("degree must be >= 1")
    gens = [tuple([1, 2, 0] + list(range(3, n)))] if n >= 3 else []
    for k in range(3, n):
        # 3-cycles (0 1 k) generate A_n
        g = list(range(n))
        g[0], g[1], g[k] = 1, k, 0
        gens.append(tuple(g))
    return permutation_group(gens, f"A{n}", origin={"builtin": "alternating", "params": [n]})


def free_cmea(d: int, p: int) -> FiniteGroup:
    """The free CMEA group on ``d`` generators.

    Normal form ``x^a y^b z^c`` with ``a, b`` in F_p^d and ``c`` indexed by pairs
    ``k < i``.  ``x_i^p = y_i``, ``[x_i, x_k] = z_ik`` (``i > k``) and ``y, z`` are
    central of exponent ``p``.  Collecting gives ``(a, b, c)(a', b', c') =
    (a + a', b + b' + carry(a, a'), c + c' + a_i a'_k)``.
    """
    check_prime(p)
    if d < 1:
        raise DomainError("d must be >= 1")
    pairs = [(i, k) for i in range(d) for k in range(i)]
    order_exp = d + comb(d + 1, 2)
    _cap(p**order_exp)
    rad = [p] * (2 * d + len(pairs))
    ai = np.array([i for i, _ in pairs], dtype=np.int64)
    ki = np.array([k for _, k in pairs], dtype=np.int64)

    def prod(a, b):
        xa, ya, za = a[:d], a[d:2 * d], a[2 * d:]
        xb, yb, zb = b[:, :d], b[:, d:2 * d], b[:, 2 * d:]
        s = xa[None, :] + xb
        carry = s // p
        out = np.empty_like(b)
        out[:, :d] = s % p
        out[:, d:2 * d] = (ya[None, :] + yb + carry) % p
        if pairs:
            out[:, 2 * d:] = (za[None, :] + zb + xa[ai][None, :] * xb[:, ki]) % p
        return out

    table = _table_from_coordinates(rad, prod)
    gens = [p**i for i in range(d)]
    return FiniteGroup(table, f"CMEA({d},{p})", generators=gens,
                       origin={"builtin": "free_cmea", "params": [d, p]})


def lamplighter_quotient(p: int, k: int) -> FiniteGroup:
    """``(F_p)^(p^k) ⋊ C_(p^k)`` with the top generator shifting coordinates cyclically.

    Element ``(v, s)`` means ``v`` then shift ``s``;
    ``(v, s)(w, t) = (v + shift^s(w), s + t)``.  The base subgroup is stored
    under the name ``"base"``.
    """
    check_prime(p)
    if k < 0:
        raise DomainError("k must be >= 0")
    m = p**k
    _cap(p ** (m + k))
    rad = [p] * m + [m]
    cols = np.arange(m)

    def prod(a, b):
        v, s = a[:m], int(a[m])
        w, t = b[:, :m], b[:, m]
        out = np.empty_like(b)
        # shift^s(w)_j = w_(j - s)
        out[:, :m] = (v[None, :] + w[:, (cols - s) % m]) % p
        out[:, m] = (s + t) % m
        return out

    table = _table_from_coordinates(rad, prod)
    base = [int(x) for x in range(p**m)]  # top coordinate is most significant
    gens = [1] + ([p**m] if m > 1 else [])
    return FiniteGroup(table, f"Lamp({p},{k})", generators=gens, named={"base": base},
                       origin={"builtin": "lamplighter", "params": [p, k]})


BUILTINS = {
    "trivial": trivial_group,
    "cyclic": cyclic,
    "elementary_abelian": elementary_abelian,
    "dihedral": dihedral,
    "quaternion": quaternion,
    "symmetric": symmetric,
    "alternating": alternating,
    "free_cmea": free_cmea,
    "lamplighter": lamplighter_quotient,
}


def build(name: str, params) -> FiniteGroup:
    if name == "direct_product":
        G, H = (build(f["builtin"], f.get("params", [])) for f in params)
        return direct_product(G, H)
    if name not in BUILTINS:
        raise DomainError(f"unknown builtin group {name!r}; known: {', '.join(sorted(BUILTINS))}")
    return BUILTINS[name](*params)


def library(max_order: int = 64) -> list[FiniteGroup]:
    """A fixed sweep of small groups from the constructors above."""
    cands = [
        trivial_group, lambda: cyclic(2), lambda: cyclic(3), lambda: cyclic(4), lambda: cyclic(6),
        lambda: cyclic(8), lambda: cyclic(9), lambda: cyclic(12), lambda: cyclic(16), lambda: cyclic(27),
        lambda: elementary_abelian(2, 2), lambda: elementary_abelian(2, 3), lambda: elementary_abelian(3, 2),
        lambda: elementary_abelian(2, 4),
        lambda: dihedral(6), lambda: dihedral(8), lambda: dihedral(10), lambda: dihedral(12), lambda: dihedral(16),
        lambda: quaternion(8), lambda: quaternion(12), lambda: symmetric(3), lambda: symmetric(4), lambda: alternating(4),
        lambda: direct_product(cyclic(2), cyclic(4)), lambda: direct_product(cyclic(4), cyclic(4)),
        lambda: direct_product(cyclic(3), symmetric(3)), lambda: direct_product(cyclic(2), dihedral(8)),
        lambda: free_cmea(1, 2), lambda: free_cmea(2, 2), lambda: free_cmea(1, 3),
        lambda: lamplighter_quotient(2, 1), lambda: lamplighter_quotient(2, 2),
    ]
    out = []
    for c in cands:
        G = c()
        if G.order <= max_order:
            out.append(G)
    return out

