"""Finite groups as Cayley tables.

Permutations act on the left and compose right-to-left: ``(p*q)[i] = p[q[i]]``.
Elements of a permutation group are numbered in lexicographic order of their
image arrays, so the identity is always index 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from .kernels import assoc_witness

MAX_ORDER = 10080


class GroupError(ValueError):
    pass


class SizeBoundError(GroupError):
    pass


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    mul: np.ndarray
    identity: int = 0
    names: tuple | None = None
    inv: np.ndarray = field(init=False)

    def __post_init__(self):
        mul = _frozen(self.mul)
        object.__setattr__(self, "mul", mul)
        n = mul.shape[0]
        if mul.shape != (n, n) or n == 0:
            raise GroupError(f"multiplication table must be square and non-empty, got {mul.shape}")
        if mul.min() < 0 or mul.max() >= n:
            raise GroupError("multiplication table entries out of range")
        e = self.identity
        inv = np.argmax(mul == e, axis=1)
        object.__setattr__(self, "inv", _frozen(inv))

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self) -> int:
        return self.order

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def validation_witness(self):
        """First failing group axiom as ``(kind, elements)`` or ``None``."""
        n, e, mul = self.order, self.identity, self.mul
        idx = np.arange(n)
        if not (np.array_equal(mul[e], idx) and np.array_equal(mul[:, e], idx)):
            bad = int(np.flatnonzero((mul[e] != idx) | (mul[:, e] != idx))[0])
            return ("identity", (bad,))
        for a in range(n):
            if mul[a, self.inv[a]] != e or mul[self.inv[a], a] != e:
                return ("inverse", (a,))
        w = assoc_witness(mul)
        if w is not None:
            return ("associativity", w)
        return None

    def validate(self) -> "CayleyGroup":
        w = self.validation_witness()
        if w is not None:
            raise GroupError(f"not a group: {w[0]} fails at {w[1]}")
        return self

    def power_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.mul[x, a])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))


class Subgroup(NamedTuple):
    parent: CayleyGroup
    members: tuple

    @property
    def order(self) -> int:
        return len(self.members)


def _perm_codes(P: np.ndarray) -> np.ndarray | None:
    deg = P.shape[1]
    if deg == 0 or deg ** deg >= 2 ** 62:
        return None
    return P @ (deg ** np.arange(deg, dtype=np.int64))


def from_permutations(perms: np.ndarray) -> CayleyGroup:
    """Cayley table of a list of permutations that is already closed."""
    P = np.asarray(perms, dtype=np.int64)
    n = P.shape[0]
    comp = P[np.arange(n)[:, None, None], P[None, :, :]]  # comp[a, b] = P[a][P[b]]
    codes = _perm_codes(P)
    if codes is not None:
        order = np.argsort(codes)
        if np.any(np.diff(codes[order]) == 0):
            raise GroupError("duplicate permutations")
        flat = _perm_codes(comp.reshape(n * n, -1))
        pos = np.searchsorted(codes[order], flat)
        if np.any(pos >= n) or np.any(codes[order][np.minimum(pos, n - 1)] != flat):
            raise GroupError("permutation set not closed under composition")
        mul = order[pos].reshape(n, n)
    else:
        index = {p.tobytes(): i for i, p in enumerate(P)}
        try:
            mul = np.array([[index[comp[a, b].tobytes()] for b in range(n)] for a in range(n)])
        except KeyError as exc:
            raise GroupError("permutation set not closed under composition") from exc
    ident = np.arange(P.shape[1])
    e = int(np.flatnonzero((P == ident).all(axis=1))[0])
    return CayleyGroup(mul, e, tuple(tuple(int(v) for v in p) for p in P))


def from_permutation_generators(degree: int, generators: Sequence[Sequence[int]],
                                max_order: int = MAX_ORDER) -> CayleyGroup:
    gens = []
    for g in generators:
        g = [int(v) for v in g]
        if sorted(g) != list(range(degree)):
            raise GroupError(f"{g} is not a permutation of 0..{degree - 1}")
        gens.append(tuple(g))
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)  # g composed after x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_order:
                        raise SizeBoundError(f"group order exceeds bound {max_order}")
        frontier = nxt
    perms = np.array(sorted(seen), dtype=np.int64).reshape(len(seen), degree)
    return from_permutations(perms)


def from_table(mul, identity: int | None = None, names=None) -> CayleyGroup:
    mul = np.asarray(mul, dtype=np.int64)
    if identity is None:
        idx = np.arange(mul.shape[0])
        hits = [e for e in range(mul.shape[0]) if np.array_equal(mul[e], idx)]
        if not hits:
            raise GroupError("table has no left identity")
        identity = hits[0]
    return CayleyGroup(mul, identity, names).validate()


def cyclic(n: int) -> CayleyGroup:
    if n == 1:
        return from_permutation_generators(1, [])
    return from_permutation_generators(n, [[(i + 1) % n for i in range(n)]])


def symmetric(n: int) -> CayleyGroup:
    gens = []
    if n >= 2:
        gens.append([1, 0] + list(range(2, n)))
    if n >= 3:
        gens.append([(i + 1) % n for i in range(n)])
    return from_permutation_generators(n, gens)


def alternating(n: int) -> CayleyGroup:
    gens = [[1, 2, 0] + list(range(3, n))] if n >= 3 else []
    for k in range(3, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0  # 3-cycle (0 1 k)
        gens.append(p)
    return from_permutation_generators(n, gens)


def direct_product(A: CayleyGroup, B: CayleyGroup) -> CayleyGroup:
    """Elements ``(a, b)`` indexed ``a*|B| + b``."""
    na, nb = A.order, B.order
    a = np.repeat(np.arange(na), nb)
    b = np.tile(np.arange(nb), na)
    mul = A.mul[a[:, None], a[None, :]] * nb + B.mul[b[:, None], b[None, :]]
    names = None
    if A.names is not None and B.names is not None:
        names = tuple((A.names[i], B.names[j]) for i in range(na) for j in range(nb))
    return CayleyGroup(mul, A.identity * nb + B.identity, names)


def trivial_group() -> CayleyGroup:
    return cyclic(1)


def subgroup_closure(G: CayleyGroup, seeds: Sequence[int]) -> Subgroup:
    members = {G.identity}
    frontier = [G.identity]
    gens = sorted({int(s) for s in seeds})
    for s in gens:
        if not 0 <= s < G.order:
            raise GroupError(f"element index {s} out of range")
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(G.mul[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)))


def generating_set(G: CayleyGroup) -> list[int]:
    """Greedy generators in index order: each one is the first element not yet reached."""
    gens: list[int] = []
    reached = {G.identity}
    for x in range(G.order):
        if x not in reached:
            gens.append(x)
            reached = set(subgroup_closure(G, gens).members)
    return gens


def is_subgroup(G: CayleyGroup, members: Sequence[int]) -> bool:
    m = np.asarray(sorted(set(members)), dtype=np.int64)
    if G.identity not in set(m.tolist()):
        return False
    inside = np.zeros(G.order, bool)
    inside[m] = True
    return bool(inside[G.mul[np.ix_(m, m)]].all())


def subgroup_as_group(S: Subgroup) -> tuple[CayleyGroup, tuple]:
    """The subgroup as a standalone group plus the embedding into its parent."""
    G, m = S.parent, np.asarray(S.members, dtype=np.int64)
    pos = -np.ones(G.order, dtype=np.int64)
    pos[m] = np.arange(len(m))
    mul = pos[G.mul[np.ix_(m, m)]]
    if (mul < 0).any():
        raise GroupError("member list is not closed under multiplication")
    names = tuple(G.names[i] for i in m) if G.names is not None else None
    return CayleyGroup(mul, int(pos[G.identity]), names), tuple(int(v) for v in m)


def center(G: CayleyGroup) -> Subgroup:
    comm = (G.mul == G.mul.T).all(axis=1)
    return Subgroup(G, tuple(int(z) for z in np.flatnonzero(comm)))


def conjugacy_classes(G: CayleyGroup, members: Sequence[int] | None = None) -> list[tuple]:
    m = list(range(G.order)) if members is None else sorted(members)
    left = set(m)
    out = []
    for x in m:
        if x not in left:
            continue
        cls = sorted({int(G.mul[G.mul[g, x], G.inv[g]]) for g in m})
        out.append(tuple(cls))
        left -= set(cls)
    return out


def conjugacy_class_count(G: CayleyGroup, members: Sequence[int] | None = None) -> int:
    return len(conjugacy_classes(G, members))


class ActionError(GroupError):
    def __init__(self, msg: str, witness: tuple):
        super().__init__(f"{msg}: witness {witness}")
        self.witness = witness


class Orbit(NamedTuple):
    points: tuple
    stabilizer_order: int
    class_count: int
    stabilizer: tuple


def check_right_action(G: CayleyGroup, action) -> np.ndarray:
    A = np.asarray(action, dtype=np.int64)
    npts = A.shape[0]
    if A.shape != (npts, G.order):
        raise GroupError(f"action table must have shape (points, {G.order}), got {A.shape}")
    if A.min(initial=0) < 0 or A.max(initial=0) >= npts:
        raise GroupError("action table entries out of range")
    bad = np.flatnonzero(A[:, G.identity] != np.arange(npts))
    if bad.size:
        raise ActionError("identity does not fix every point", (int(bad[0]), G.identity, -1))
    lhs = A[A][:, :, :]  # lhs[p, g, h] = (p.g).h
    rhs = A[:, G.mul]  # rhs[p, g, h] = p.(gh)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise ActionError("(p.g).h != p.(gh)", tuple(int(v) for v in bad[0]))
    return A


def orbits_and_stabilizers(G: CayleyGroup, action) -> list[Orbit]:
    A = check_right_action(G, action)
    seen = np.zeros(A.shape[0], bool)
    out = []
    for p in range(A.shape[0]):
        if seen[p]:
            continue
        orbit = sorted(set(int(v) for v in A[p]))
        seen[orbit] = True
        stab = tuple(int(g) for g in np.flatnonzero(A[p] == p))
        out.append(Orbit(tuple(orbit), len(stab), conjugacy_class_count(G, stab), stab))
    return out


def is_exact_factorization(L: CayleyGroup, A: Subgroup, B: Subgroup) -> bool:
    if A.order * B.order != L.order:
        return False
    if set(A.members) & set(B.members) != {L.identity}:
        return False
    prods = L.mul[np.ix_(np.asarray(A.members), np.asarray(B.members))]
    return len(np.unique(prods)) == L.order


def all_subgroups(G: CayleyGroup) -> list[Subgroup]:
    """Every subgroup, by joining cyclic subgroups to a fixpoint."""
    cyc = {subgroup_closure(G, [x]).members for x in range(G.order)}
    cyc_list = sorted(cyc)
    found = set(cyc)
    frontier = set(cyc)
    while frontier:
        nxt = set()
        for H, C in product(sorted(frontier), cyc_list):
            if set(C) <= set(H):
                continue
            J = subgroup_closure(G, H + C).members
            if J not in found:
                found.add(J)
                nxt.add(J)
        frontier = nxt
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (len(m), m))]
