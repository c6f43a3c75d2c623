"""Based (fusion) rings given by non-negative integer structure constants.

``N[x, y, z]`` is the multiplicity of ``z`` in ``x*y``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .groups import CayleyGroup
from .kernels import fusion_assoc_witness


class RingError(ValueError):
    pass


class IsomorphismTimeout(TimeoutError):
    """The isomorphism search ran out of time before deciding."""


@dataclass(frozen=True, eq=False)
class BasedRing:
    labels: tuple
    unit: int
    dual: tuple
    N: np.ndarray

    def __post_init__(self):
        N = np.ascontiguousarray(self.N, dtype=np.int64)
        n = len(self.labels)
        if N.shape != (n, n, n):
            raise RingError(f"structure constants must have shape {(n, n, n)}, got {N.shape}")
        if len(self.dual) != n or not 0 <= self.unit < n:
            raise RingError("dual table or unit index out of range")
        if (N < 0).any():
            raise RingError("structure constants must be non-negative")
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(int(d) for d in self.dual))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def support(self, x: int, y: int) -> tuple:
        return tuple(int(z) for z in np.flatnonzero(self.N[x, y]))

    def to_sparse(self) -> list:
        return [[int(x), int(y), int(z), int(self.N[x, y, z])] for x, y, z in np.argwhere(self.N)]

    @classmethod
    def from_sparse(cls, labels, unit, dual, entries) -> "BasedRing":
        n = len(labels)
        N = np.zeros((n, n, n), dtype=np.int64)
        for x, y, z, m in entries:
            if m < 1:
                raise RingError(f"sparse multiplicities must be >= 1, got {m}")
            N[x, y, z] += m
        return cls(tuple(labels), unit, tuple(dual), N)

    def sub_basis_closed(self, members) -> bool:
        inside = np.zeros(self.rank, bool)
        inside[list(members)] = True
        sub = self.N[np.ix_(inside, inside)]
        return not sub[:, :, ~inside].any() and all(inside[self.dual[x]] for x in members)


@dataclass
class RingReport:
    valid: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def verify_based_ring(R: BasedRing, limit: int = 8) -> RingReport:
    wit = []
    N, n, e, d = R.N, R.rank, R.unit, np.asarray(R.dual)

    w = fusion_assoc_witness(N)
    if w is not None:
        wit.append({"axiom": "associativity", "x": w[0], "y": w[1], "z": w[2], "v": w[3]})

    eye = np.eye(n, dtype=np.int64)
    for side, M in (("left unit", N[e]), ("right unit", N[:, e])):
        bad = np.argwhere(M != eye)
        for x, y in bad[:limit]:
            wit.append({"axiom": side, "x": int(x), "y": int(y)})

    if sorted(d.tolist()) != list(range(n)) or not np.array_equal(d[d], np.arange(n)) or d[e] != e:
        wit.append({"axiom": "dual involution", "dual": d.tolist()})
        return RingReport(False, wit)

    target = (d[None, :] == np.arange(n)[:, None]).astype(np.int64)  # [x, y] = [y = x*]
    bad = np.argwhere(N[:, :, e] != target)
    for x, y in bad[:limit]:
        wit.append({"axiom": "rigidity", "x": int(x), "y": int(y)})

    # N_xy^z = N_{y* x*}^{z*} = N_{x* z}^y
    swap = N[d][:, d][:, :, d].transpose(1, 0, 2)
    frob = N[d].transpose(0, 2, 1)
    for name, other in (("dual compatibility", swap), ("Frobenius reciprocity", frob)):
        bad = np.argwhere(N != other)
        for x, y, z in bad[:limit]:
            wit.append({"axiom": name, "x": int(x), "y": int(y), "z": int(z)})
    return RingReport(not wit, wit)


def fp_dimensions(R: BasedRing, rtol: float = 1e-10, max_iter: int = 100_000) -> np.ndarray:
    """Perron-Frobenius dimensions, normalized so the unit has dimension 1."""
    n = R.rank
    if n == 1:
        return np.ones(1)
    # the sum of all left multiplications is a positive matrix for a based ring
    L = R.N.sum(axis=0).T.astype(float)  # L[z, y] = sum_x N[x, y, z]
    v = np.ones(n) / n
    lam = 0.0
    for _ in range(max_iter):
        w = L @ v
        new = float(w.sum())
        w /= new
        if np.abs(w - v).max() <= rtol * np.abs(w).max() and abs(new - lam) <= rtol * new:
            v = w
            break
        v, lam = w, new
    else:
        raise ArithmeticError("power iteration for FP dimensions did not converge")
    return v / v[R.unit]


@dataclass(frozen=True, eq=False)
class GradingMap:
    group: CayleyGroup
    deg: tuple


def grading_witness(R: BasedRing, grading: GradingMap):
    G, deg = grading.group, np.asarray(grading.deg, dtype=np.int64)
    if deg.shape != (R.rank,):
        raise RingError("grading map has the wrong length")
    if deg[R.unit] != G.identity:
        return ("unit degree", R.unit)
    for x in range(R.rank):
        if deg[R.dual[x]] != G.inv[deg[x]]:
            return ("dual degree", x)
    for x, y, z in np.argwhere(R.N):
        if deg[z] != G.mul[deg[x], deg[y]]:
            return ("product degree", (int(x), int(y), int(z)))
    return None


def check_grading(R: BasedRing, grading: GradingMap) -> bool:
    return grading_witness(R, grading) is None


def is_faithful(grading: GradingMap) -> bool:
    return set(grading.deg) == set(range(grading.group.order))


def universal_grading(R: BasedRing) -> tuple[GradingMap, CayleyGroup]:
    n = R.rank
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            return True
        return False

    supports = {(x, y): R.support(x, y) for x in range(n) for y in range(n)}
    for s in supports.values():
        for z in s[1:]:
            union(s[0], z)
    # refine to a congruence: block(x)block(y) must be a single block
    changed = True
    while changed:
        changed = False
        target: dict = {}
        for (x, y), s in supports.items():
            if not s:
                continue
            key = (find(x), find(y))
            if key in target:
                changed |= union(target[key], s[0])
            else:
                target[key] = s[0]
    roots = sorted({find(x) for x in range(n)})
    if find(R.unit) != roots[0]:
        roots.remove(find(R.unit))
        roots.insert(0, find(R.unit))
    block = {r: i for i, r in enumerate(roots)}
    deg = tuple(block[find(x)] for x in range(n))
    k = len(roots)
    mul = -np.ones((k, k), dtype=np.int64)
    rep = [deg.index(b) for b in range(k)]
    for a in range(k):
        for b in range(k):
            s = supports[(rep[a], rep[b])]
            mul[a, b] = deg[s[0]]
    U = CayleyGroup(mul, 0)
    w = U.validation_witness()
    if w is not None:
        raise RuntimeError(f"universal grading group is not a group ({w[0]} at {w[1]})")
    g = GradingMap(U, deg)
    if not check_grading(R, g):
        raise RuntimeError("universal grading failed its own grading check")
    return g, U


def generated_subring(R: BasedRing, seeds) -> tuple:
    members = {R.unit} | set(int(s) for s in seeds)
    members |= {R.dual[x] for x in members}
    changed = True
    while changed:
        changed = False
        for x in sorted(members):
            for y in sorted(members):
                for z in R.support(x, y):
                    if z not in members:
                        members.add(z)
                        members.add(R.dual[z])
                        changed = True
    return tuple(sorted(members))


def adjoint_support(R: BasedRing, members=None) -> tuple:
    members = range(R.rank) if members is None else members
    seeds = set()
    for x in members:
        seeds.update(R.support(x, R.dual[x]))
    return generated_subring(R, seeds)


@dataclass
class CentralSeries:
    chain: list
    nilpotent: bool
    nil_class: int | None

    @property
    def stabilized_at(self) -> int:
        return len(self.chain) - 1


def upper_central_series(R: BasedRing) -> CentralSeries:
    chain = [tuple(range(R.rank))]
    while True:
        cur = chain[-1]
        if cur == (R.unit,):
            return CentralSeries(chain, True, len(chain) - 1)
        nxt = adjoint_support(R, cur)
        if nxt == cur:
            chain.append(nxt)
            return CentralSeries(chain, False, None)
        chain.append(nxt)


def group_ring(G: CayleyGroup) -> BasedRing:
    n = G.order
    N = np.zeros((n, n, n), dtype=np.int64)
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    N[a, b, G.mul] = 1
    labels = tuple(str(G.names[i]) if G.names is not None else f"g{i}" for i in range(n))
    return BasedRing(labels, G.identity, tuple(int(v) for v in G.inv), N)


def trivial_ring() -> BasedRing:
    return BasedRing(("1",), 0, (0,), np.ones((1, 1, 1), dtype=np.int64))


def _invariants(R: BasedRing, fp: np.ndarray) -> list:
    n = R.rank
    rfp = [round(float(f) / 1e-6) for f in fp]
    out = []
    for x in range(n):
        selfprod = tuple(sorted((int(R.N[x, x, z]), rfp[z]) for z in R.support(x, x)))
        order = 0
        if rfp[x] == round(1 / 1e-6):
            y, order = x, 1
            while y != R.unit and order <= n:
                y = R.support(y, x)[0]
                order += 1
        out.append((rfp[x], R.dual[x] == x, selfprod, order))
    return out


def based_ring_isomorphism(R: BasedRing, S: BasedRing, timeout_ms: int = 10_000):
    """Lexicographically least basis bijection R -> S preserving all data, or None."""
    if R.rank != S.rank:
        return None
    n = R.rank
    deadline = time.monotonic() + timeout_ms / 1000.0
    inv_r = _invariants(R, fp_dimensions(R))
    inv_s = _invariants(S, fp_dimensions(S))
    if sorted(inv_r) != sorted(inv_s):
        return None
    cands = [[y for y in range(n) if inv_s[y] == inv_r[x]] for x in range(n)]
    NR, NS = R.N, S.N

    def consistent(phi, x):
        # every constraint between x and already-assigned elements
        assigned = [a for a in range(n) if phi[a] >= 0]
        ia = np.asarray(assigned)
        pa = np.asarray([phi[a] for a in assigned])
        px = phi[x]
        return (np.array_equal(NR[x][np.ix_(ia, ia)], NS[px][np.ix_(pa, pa)])
                and np.array_equal(NR[:, x][np.ix_(ia, ia)], NS[:, px][np.ix_(pa, pa)])
                and np.array_equal(NR[:, :, x][np.ix_(ia, ia)], NS[:, :, px][np.ix_(pa, pa)]))

    def assign(phi, used, x, y, trail):
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if phi[a] >= 0:
                if phi[a] != b:
                    return False
                continue
            if used[b] or b not in cands[a]:
                return False
            phi[a] = b
            used[b] = True
            trail.append(a)
            if not consistent(phi, a):
                return False
            stack.append((R.dual[a], S.dual[b]))
            # single-support products force images
            for c in range(n):
                if phi[c] < 0:
                    continue
                for u, v in ((a, c), (c, a)):
                    sr = R.support(u, v)
                    if len(sr) == 1 and NR[u, v, sr[0]] == 1:
                        ss = S.support(phi[u], phi[v])
                        if len(ss) != 1 or NS[phi[u], phi[v], ss[0]] != 1:
                            return False
                        stack.append((sr[0], ss[0]))
        return True

    phi = [-1] * n
    used = [False] * n

    def search(x):
        if time.monotonic() > deadline:
            raise IsomorphismTimeout(f"isomorphism search exceeded {timeout_ms} ms")
        while x < n and phi[x] >= 0:
            x += 1
        if x == n:
            return True
        for y in cands[x]:
            if used[y]:
                continue
            trail: list = []
            if assign(phi, used, x, y, trail) and search(x + 1):
                return True
            for a in trail:
                used[phi[a]] = False
                phi[a] = -1
        return False

    trail0: list = []
    if not assign(phi, used, R.unit, S.unit, trail0):
        return None
    if not search(0):
        return None
    phi_a = np.asarray(phi)
    assert np.array_equal(NS[np.ix_(phi_a, phi_a, phi_a)], NR)
    return tuple(int(v) for v in phi)
