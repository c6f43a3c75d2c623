"""Crossed actions of matched pairs on pointed data and their equivariantizations.

An equivariant object is a Gamma-graded space with matrices ``R[g]`` sending the
component of degree ``s`` to the component of degree ``s <| g`` and composing as
a right action, ``R[g] @ R[h] == R[hg]``. Components are stored contiguously in
the index order of Gamma.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import CayleyGroup, generating_set, orbits_and_stabilizers
from .linalg import DEFAULT_TOL, Tolerance, orthonormal_columns
from .matched import MatchedPair, bicrossed_group, verify_matched_pair
from .repth import (DecompositionError, Rep, assemble_ring, decompose,
                    gate_integer, hom_dim, split_simple, classify)
from .rings import (BasedRing, GradingMap, RingError, grading_witness,
                    is_faithful, verify_based_ring)


class CrossedActionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CrossedActionData:
    mp: MatchedPair
    ring: BasedRing
    deg: tuple  # basis element -> index of Gamma
    rho: np.ndarray  # rho[g, x] = image of basis element x under the action of g

    def __post_init__(self):
        rho = np.ascontiguousarray(self.rho, dtype=np.int64)
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "deg", tuple(int(v) for v in self.deg))
        if rho.shape != (self.mp.G.order, self.ring.rank) or len(self.deg) != self.ring.rank:
            raise CrossedActionError(f"rho must have shape ({self.mp.G.order}, {self.ring.rank}) "
                                     "and deg one entry per basis element")


@dataclass
class CrossedReport:
    valid: bool
    witnesses: list

    def __bool__(self) -> bool:
        return self.valid

    def as_dict(self) -> dict:
        return {"valid": self.valid, "witnesses": self.witnesses}


def verify_crossed_action(d: CrossedActionData, limit: int = 8) -> CrossedReport:
    """Check the pointed crossed-action identities exhaustively.

    The matched-pair identities are checked as well, since the twisted
    multiplicativity only sees part of them.
    """
    mp, R, rho = d.mp, d.ring, d.rho
    G, Gam = mp.G, mp.Gamma
    deg = np.asarray(d.deg)
    w: list = []

    def add(kind, **data):
        if len(w) < limit:
            w.append({"identity": kind, **data})

    rep = verify_matched_pair(mp, limit)
    for x in rep.witnesses + rep.bijectivity_witnesses:
        add("matched pair", detail=x)
    if deg.min() < 0 or deg.max() >= Gam.order:
        add("grading range")
        return CrossedReport(False, w)
    gw = grading_witness(R, GradingMap(Gam, d.deg))
    if gw is not None:
        add("Gamma-grading", detail=[gw[0], np.asarray(gw[1]).tolist()])
    for g in range(G.order):
        if sorted(rho[g].tolist()) != list(range(R.rank)):
            add("rho is a permutation", g=g)
            return CrossedReport(False, w)
    if not np.array_equal(rho[G.identity], np.arange(R.rank)):
        add("rho of identity", x=int(np.flatnonzero(rho[G.identity] != np.arange(R.rank))[0]))
    for g in range(G.order):
        for h in range(G.order):
            # rho^g after rho^h equals rho^{hg}
            bad = np.flatnonzero(rho[g][rho[h]] != rho[G.mul[h, g]])
            if bad.size:
                add("right action", g=g, h=h, x=int(bad[0]))
    for g in range(G.order):
        if rho[g, R.unit] != R.unit:
            add("rho fixes the unit", g=g)
        bad = np.flatnonzero(deg[rho[g]] != mp.lhd[deg, g])
        if bad.size:
            add("degree of rho^g(x) is deg(x) <| g", g=g, x=int(bad[0]))
    for x, y, z in np.argwhere(R.N):
        t = deg[y]
        for g in range(G.order):
            a = rho[mp.rhd[t, g], x]
            if R.N[a, rho[g, y], rho[g, z]] != R.N[x, y, z]:
                add("twisted multiplicativity", g=g, x=int(x), y=int(y), z=int(z))
                break
    return CrossedReport(not w, w)


def pointed_crossed_from_matched_pair(mp: MatchedPair) -> CrossedActionData:
    """Gamma acting on itself by the right action, graded by the identity."""
    rep = verify_matched_pair(mp)
    if not rep:
        raise CrossedActionError(f"invalid matched pair: {(rep.witnesses + rep.bijectivity_witnesses)[0]}")
    from .rings import group_ring
    return CrossedActionData(mp, group_ring(mp.Gamma), tuple(range(mp.Gamma.order)), mp.lhd.T.copy())


# ---------------------------------------------------------------- equivariant objects

@dataclass(eq=False)
class EquivariantObject(Rep):
    data: CrossedActionData
    graded_dims: tuple
    R: np.ndarray  # (|G|, n, n)
    _char: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.graded_dims = tuple(int(v) for v in self.graded_dims)
        self.R = np.asarray(self.R, dtype=np.complex128)
        n = sum(self.graded_dims)
        if len(self.graded_dims) != self.data.mp.Gamma.order:
            raise CrossedActionError("graded_dims needs one entry per element of Gamma")
        if self.R.shape != (self.data.mp.G.order, n, n):
            raise CrossedActionError(f"R must have shape ({self.data.mp.G.order}, {n}, {n})")

    @property
    def dim(self) -> int:
        return sum(self.graded_dims)

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.graded_dims)]).astype(int)

    def block(self, g: int, s: int) -> np.ndarray:
        """The block of R[g] from component s to component s <| g."""
        o = self.offsets
        t = self.data.mp.lhd[s, g]
        return self.R[g, o[t]:o[t + 1], o[s]:o[s + 1]]

    def projector(self, s: int) -> np.ndarray:
        o = self.offsets
        P = np.zeros((self.dim, self.dim))
        P[o[s]:o[s + 1], o[s]:o[s + 1]] = np.eye(self.graded_dims[s])
        return P

    def support(self) -> tuple:
        return tuple(s for s, k in enumerate(self.graded_dims) if k)

    def character(self) -> np.ndarray:
        """Flattened table chi[s, g] = trace of the block of R[g] on a fixed component s."""
        if self._char is None:
            mp = self.data.mp
            o = self.offsets
            ch = np.zeros((mp.Gamma.order, mp.G.order), dtype=complex)
            for s in self.support():
                for g in range(mp.G.order):
                    if mp.lhd[s, g] == s:
                        ch[s, g] = np.trace(self.R[g, o[s]:o[s + 1], o[s]:o[s + 1]])
            self._char = ch.ravel()
        return self._char

    def hom_trace(self, other: "EquivariantObject") -> complex:
        G = self.data.mp.G
        a = self.character().reshape(-1, G.order)
        b = other.character().reshape(-1, G.order)
        return complex(np.sum(a[:, G.inv] * b) / G.order)

    def reynolds(self, X: np.ndarray) -> np.ndarray:
        o = self.offsets
        Y = np.zeros_like(X, dtype=complex)
        for s in self.support():
            Y[o[s]:o[s + 1], o[s]:o[s + 1]] = X[o[s]:o[s + 1], o[s]:o[s + 1]]
        G = self.data.mp.G
        return sum(self.R[g] @ Y @ self.R[G.inv[g]] for g in range(G.order)) / G.order

    def restrict(self, Q: np.ndarray) -> "EquivariantObject":
        o = self.offsets
        cols, dims = [], []
        for s in range(len(self.graded_dims)):
            Ps = np.zeros_like(Q)
            Ps[o[s]:o[s + 1]] = Q[o[s]:o[s + 1]]
            B = orthonormal_columns(Ps) if Ps.any() else Ps[:, :0]
            cols.append(B)
            dims.append(B.shape[1])
        B = np.hstack(cols)
        if B.shape[1] != Q.shape[1]:
            raise DecompositionError("invariant subspace is not spanned by homogeneous vectors")
        return EquivariantObject(self.data, tuple(dims), np.einsum("ab,gbc,cd->gad", B.conj().T, self.R, B))

    def intertwiner_gens(self) -> list[np.ndarray]:
        mp = self.data.mp
        return [self.projector(s) for s in range(mp.Gamma.order)] + \
               [self.R[g] for g in generating_set(mp.G)]


def equivariant_witness(X: EquivariantObject, atol: float = 1e-8):
    """First failing condition of an equivariant object, or None."""
    mp = X.data.mp
    G = mp.G
    if not np.allclose(X.R[G.identity], np.eye(X.dim), atol=atol):
        return ("R(e) is the identity", None)
    for s in range(mp.Gamma.order):
        for g in range(G.order):
            t = mp.lhd[s, g]
            if X.graded_dims[t] != X.graded_dims[s]:
                return ("component dimensions along orbits", (s, g))
    o = X.offsets
    for g in range(G.order):
        for s in X.support():
            col = X.R[g][:, o[s]:o[s + 1]].copy()
            t = mp.lhd[s, g]
            col[o[t]:o[t + 1]] = 0
            if np.abs(col).max() > atol:
                return ("block support follows <|", (s, g))
    for g in range(G.order):
        for h in range(G.order):
            if not np.allclose(X.R[g] @ X.R[h], X.R[G.mul[h, g]], atol=atol):
                return ("R(g)R(h) = R(hg)", (g, h))
    return None


def unit_object(d: CrossedActionData) -> EquivariantObject:
    mp = d.mp
    dims = [0] * mp.Gamma.order
    dims[mp.Gamma.identity] = 1
    return EquivariantObject(d, tuple(dims), np.ones((mp.G.order, 1, 1)))


def _require_pointed(d: CrossedActionData):
    mp, R = d.mp, d.ring
    if R.rank != mp.Gamma.order or sorted(d.deg) != list(range(mp.Gamma.order)):
        raise CrossedActionError("equivariant objects are only built over pointed data graded bijectively by Gamma")
    deg = np.asarray(d.deg)
    if not np.array_equal(deg[d.rho], mp.lhd[deg].T):
        raise CrossedActionError("action on simples does not follow <| on degrees")


def tensor_equivariant(d: CrossedActionData, X: EquivariantObject, Y: EquivariantObject) -> EquivariantObject:
    """Components X_a (x) Y_t sit in degree a*t; R(g) there is R_X(t |> g) (x) R_Y(g)."""
    mp = d.mp
    Gam = mp.Gamma
    pairs = [(a, t) for a in X.support() for t in Y.support()]
    pairs.sort(key=lambda p: (Gam.mul[p[0], p[1]], p[0]))
    dims = [0] * Gam.order
    start = {}
    pos = 0
    for a, t in pairs:
        k = X.graded_dims[a] * Y.graded_dims[t]
        start[(a, t)] = pos
        pos += k
        dims[Gam.mul[a, t]] += k
    R = np.zeros((mp.G.order, pos, pos), dtype=complex)
    for g in range(mp.G.order):
        for a, t in pairs:
            tg = mp.rhd[t, g]
            target = (mp.lhd[a, tg], mp.lhd[t, g])
            blk = np.kron(X.block(tg, a), Y.block(g, t))
            r0, c0 = start[target], start[(a, t)]
            R[g, r0:r0 + blk.shape[0], c0:c0 + blk.shape[1]] = blk
    return EquivariantObject(d, tuple(dims), R)


def hom_equivariant(d: CrossedActionData, X: EquivariantObject, Y: EquivariantObject,
                    tol: Tolerance = DEFAULT_TOL) -> int:
    return hom_dim(X, Y, tol)


def induced_object(d: CrossedActionData, s0: int) -> EquivariantObject:
    """Basis e_g (g in G) with e_g in degree s0 <| g and R(h) e_g = e_{gh}."""
    mp = d.mp
    G = mp.G
    degs = mp.lhd[s0]
    order = sorted(range(G.order), key=lambda g: (degs[g], g))
    pos = {g: i for i, g in enumerate(order)}
    dims = [0] * mp.Gamma.order
    for g in range(G.order):
        dims[degs[g]] += 1
    R = np.zeros((G.order, G.order, G.order))
    for h in range(G.order):
        for g in range(G.order):
            R[h, pos[G.mul[g, h]], pos[g]] = 1.0
    return EquivariantObject(d, tuple(dims), R)


def regular_object(d: CrossedActionData) -> EquivariantObject:
    """Direct sum of the induced objects of all orbits of Gamma under <|."""
    _require_pointed(d)
    parts = [induced_object(d, o.points[0]) for o in orbits_and_stabilizers(d.mp.G, d.mp.lhd)]
    return direct_sum(d, parts)


def direct_sum(d: CrossedActionData, objs) -> EquivariantObject:
    ng = d.mp.Gamma.order
    dims = [sum(X.graded_dims[s] for X in objs) for s in range(ng)]
    n = sum(dims)
    starts = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    # place each summand's component s after the earlier summands' components s
    index = []
    fill = starts[:-1].copy()
    for X in objs:
        idx = np.empty(X.dim, dtype=int)
        o = X.offsets
        for s in range(ng):
            k = X.graded_dims[s]
            idx[o[s]:o[s] + k] = np.arange(fill[s], fill[s] + k)
            fill[s] += k
        index.append(idx)
    R = np.zeros((d.mp.G.order, n, n), dtype=complex)
    for X, idx in zip(objs, index):
        R[:, idx[:, None], idx[None, :]] = X.R
    return EquivariantObject(d, tuple(dims), R)


def _simple_key(unit: EquivariantObject):
    uc = unit.character()

    def key(X: EquivariantObject):
        is_unit = X.dim == 1 and np.allclose(X.character(), uc, atol=1e-6)
        ch = np.round(X.character(), 6) + 0.0
        return (0 if is_unit else 1, min(X.support()), X.dim,
                tuple((float(z.real), float(z.imag)) for z in ch))
    return key


def decompose_equivariant(d: CrossedActionData, X: EquivariantObject, seed: int = 0,
                          tol: Tolerance = DEFAULT_TOL):
    unit = unit_object(d)
    return decompose(X, unit, tol, seed, key=_simple_key(unit))


def equivariant_simples(d: CrossedActionData, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> list:
    """One representative per simple, found inside the induced objects."""
    _require_pointed(d)
    unit = unit_object(d)
    parts = []
    for o in orbits_and_stabilizers(d.mp.G, d.mp.lhd):
        parts += split_simple(induced_object(d, o.points[0]), tol, seed)
    classes, _ = classify(parts, unit, tol, key=_simple_key(unit))
    total = sum(X.dim ** 2 for X in classes)
    if total != d.mp.order:
        raise DecompositionError(f"simple dimensions squared sum to {total}, expected {d.mp.order}")
    return classes


def equivariantization_ring(d: CrossedActionData, seed: int = 0,
                            tol: Tolerance = DEFAULT_TOL) -> tuple[BasedRing, list]:
    simples = equivariant_simples(d, seed, tol)
    ring = assemble_ring(simples, lambda A, B: tensor_equivariant(d, A, B), tol,
                         labels=tuple(f"X{i}[{X.dim}@{min(X.support())}]" for i, X in enumerate(simples)))
    rep = verify_based_ring(ring)
    if not rep:
        raise RingError(f"equivariantization ring fails the based-ring axioms: {rep.witnesses[:1]}")
    return ring, simples


# ---------------------------------------------------------------- dual graded ring

def dual_graded_ring(d: CrossedActionData) -> tuple[BasedRing, GradingMap]:
    """Ring on G x basis with (g,x)(h,y) = (g(t|>h), rho^h(x) y), t = deg x.

    Basis element (g, x) has index g*rank + x and degree (g, deg x) in the
    bicrossed group.
    """
    mp, R = d.mp, d.ring
    G = mp.G
    n, ng = R.rank, G.order
    size = ng * n
    N = np.zeros((size, size, size), dtype=np.int64)
    for g in range(ng):
        for x in range(n):
            t = d.deg[x]
            for h in range(ng):
                gh = G.mul[g, mp.rhd[t, h]]
                xh = d.rho[h, x]
                N[g * n + x, h * n:(h + 1) * n, gh * n:(gh + 1) * n] = R.N[xh]
    unit = G.identity * n + R.unit
    dual = []
    for i in range(size):
        hits = np.flatnonzero(N[i, :, unit])
        if len(hits) != 1 or N[i, hits[0], unit] != 1:
            raise RingError(f"basis element {i} has no unique dual")
        dual.append(int(hits[0]))
    labels = tuple(f"({g},{R.labels[x]})" for g in range(ng) for x in range(n))
    ring = BasedRing(labels, unit, tuple(dual), N)
    B = bicrossed_group(mp)
    deg = tuple(g * mp.Gamma.order + d.deg[x] for g in range(ng) for x in range(n))
    return ring, GradingMap(B, deg)


def neutral_component(grading: GradingMap) -> tuple:
    e = grading.group.identity
    return tuple(i for i, v in enumerate(grading.deg) if v == e)


def base_neutral_component(d: CrossedActionData) -> tuple:
    e = d.mp.Gamma.identity
    return tuple(x for x, s in enumerate(d.deg) if s == e)
