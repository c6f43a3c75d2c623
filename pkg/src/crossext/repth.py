"""Numerical module theory over Hopf algebras given by structure tensors.

Simple modules are split out of a module by generalized eigenspaces of random
elements of its commutant. Commutant elements come from averaging a random
matrix with a normalized integral, and Hom dimensions from nullspaces of the
intertwiner equations over a generating set of the algebra. Multiplicities
are cross-checked against the integral-trace formula and must be integral.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exact import Subspace, nullspace as exact_nullspace
from .groups import CayleyGroup, from_permutation_generators
from .hopf import HopfAlgebra, sub_hopf
from .linalg import (DEFAULT_TOL, Tolerance, Unsplittable, gen_eigensplit,
                     nullspace, orthonormal_columns)
from .rings import BasedRing, GradingMap, check_grading, grading_witness, group_ring

MAX_RESEEDS = 32


class DecompositionError(ArithmeticError):
    pass


class IntegralityError(ArithmeticError):
    pass


def gate_integer(x: complex, tol: Tolerance, what: str) -> int:
    r = round(float(np.real(x)))
    if abs(x - r) > tol.round_eps:
        raise IntegralityError(f"{what} = {x:.9g} is not within {tol.round_eps:g} of an integer")
    return int(r)


# ---------------------------------------------------------------- generic engine

class Rep:
    """Interface shared by Hopf modules and equivariant objects."""

    dim: int

    def reynolds(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def restrict(self, Q: np.ndarray) -> "Rep":
        raise NotImplementedError

    def character(self) -> np.ndarray:
        raise NotImplementedError

    def hom_trace(self, other: "Rep") -> complex:
        """dim Hom(self, other) from characters."""
        raise NotImplementedError

    def intertwiner_gens(self) -> list[np.ndarray]:
        raise NotImplementedError


def hom_nullspace(A: Rep, B: Rep, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Basis of Hom(A, B) as columns of row-major flattened ``dim B x dim A`` maps."""
    m, n = B.dim, A.dim
    if m == 0 or n == 0:
        return np.zeros((m * n, 0), dtype=complex)
    blocks = []
    Im, In = np.eye(m), np.eye(n)
    scale = 0.0
    for gb, ga in zip(B.intertwiner_gens(), A.intertwiner_gens()):
        # gb X - X ga = 0 on row-major vec(X)
        blocks.append(np.kron(gb, In) - np.kron(Im, ga.T))
        scale = max(scale, np.abs(gb).max(), np.abs(ga).max())
    return nullspace(np.vstack(blocks), tol, scale)


def hom_dim(A: Rep, B: Rep, tol: Tolerance = DEFAULT_TOL, check: bool = True) -> int:
    k = hom_nullspace(A, B, tol).shape[1]
    if check:
        t = A.hom_trace(B)
        if gate_integer(t, tol, "Hom dimension from characters") != k:
            raise IntegralityError(f"Hom dimension {k} from the nullspace disagrees with trace {t:.6g}")
    return k


def split_simple(rep: Rep, tol: Tolerance = DEFAULT_TOL, seed: int = 0) -> list[Rep]:
    """Simple summands (with repetition) of a semisimple ``rep``."""
    rng = np.random.default_rng(seed)
    out: list[Rep] = []
    stack = [rep]
    while stack:
        r = stack.pop()
        if r.dim == 0:
            continue
        if gate_integer(r.hom_trace(r), tol, "End dimension") == 1:
            out.append(r)
            continue
        for attempt in range(MAX_RESEEDS):
            X = rng.standard_normal((r.dim, r.dim)) + 1j * rng.standard_normal((r.dim, r.dim))
            C = r.reynolds(X)
            try:
                parts = gen_eigensplit(C, tol, seed=seed + attempt)
            except Unsplittable:
                continue
            if len(parts) > 1:
                break
        else:
            raise DecompositionError(f"no splitting commutant element after {MAX_RESEEDS} attempts "
                                     f"(dim {r.dim})")
        for Q, _ in reversed(parts):
            stack.append(r.restrict(Q))
    return out


def _char_key(rep: Rep, unit_char: np.ndarray) -> tuple:
    ch = rep.character()
    is_unit = rep.dim == 1 and np.allclose(ch, unit_char, atol=1e-6)
    r = np.round(ch, 6) + 0.0  # normalizes -0.0
    return (0 if is_unit else 1, rep.dim, tuple((float(z.real), float(z.imag)) for z in r))


def classify(simples: Sequence[Rep], unit: Rep, tol: Tolerance, key=None) -> tuple[list[Rep], list[int]]:
    """Distinct isomorphism classes in canonical order, and each summand's class."""
    classes: list[Rep] = []
    which = []
    for s in simples:
        for k, c in enumerate(classes):
            if c.dim == s.dim and np.allclose(c.character(), s.character(), atol=tol.round_eps):
                which.append(k)
                break
        else:
            classes.append(s)
            which.append(len(classes) - 1)
    uc = unit.character()
    key = key or (lambda r: _char_key(r, uc))
    order = sorted(range(len(classes)), key=lambda k: key(classes[k]))
    pos = {k: i for i, k in enumerate(order)}
    return [classes[k] for k in order], [pos[w] for w in which]


def decompose(rep: Rep, unit: Rep, tol: Tolerance = DEFAULT_TOL, seed: int = 0, key=None):
    """``[(simple, multiplicity)]`` with multiplicities from Hom dimensions."""
    parts = split_simple(rep, tol, seed)
    classes, which = classify(parts, unit, tol, key)
    out = []
    for k, S in enumerate(classes):
        mult = hom_dim(S, rep, tol) if S.dim * rep.dim <= 4096 else \
            gate_integer(S.hom_trace(rep), tol, "multiplicity")
        if mult != which.count(k):
            raise IntegralityError(f"class {k}: Hom gives {mult}, splitting gave {which.count(k)}")
        out.append((S, mult))
    if sum(S.dim * m for S, m in out) != rep.dim:
        raise DecompositionError("summand dimensions do not add up")
    return out


def assemble_ring(simples: list[Rep], tensor: Callable[[Rep, Rep], Rep],
                  tol: Tolerance = DEFAULT_TOL, labels=None) -> BasedRing:
    """Fusion ring of a list of simples (unit first) under ``tensor``."""
    n = len(simples)
    N = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            T = tensor(simples[i], simples[j])
            total = 0
            for k in range(n):
                N[i, j, k] = hom_dim(simples[k], T, tol)
                total += N[i, j, k] * simples[k].dim
            if total != T.dim:
                raise DecompositionError(f"simples {i}, {j}: tensor product not exhausted ({total} of {T.dim})")
    dual = []
    for i in range(n):
        hits = [j for j in range(n) if N[i, j, 0] == 1]
        if len(hits) != 1:
            raise DecompositionError(f"simple {i} has {len(hits)} dual candidates")
        dual.append(hits[0])
    if labels is None:
        labels = tuple(f"V{i}[{s.dim}]" for i, s in enumerate(simples))
    return BasedRing(tuple(labels), 0, tuple(dual), N)


# ---------------------------------------------------------------- Hopf modules

_integral_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def left_integral(H: HopfAlgebra) -> list[Fraction]:
    """The left integral with counit 1 (exists exactly when H is semisimple)."""
    if H in _integral_cache:
        return _integral_cache[H]
    d = H.dim
    mf, ef = H.m.fractions(), H.eps.fractions()
    rows = []
    for i in range(d):
        for k in range(d):
            row = {j: mf[i, j, k] for j in range(d) if mf[i, j, k]}
            row[k] = row.get(k, 0) - ef[i]
            row = {j: v for j, v in row.items() if v}
            if row:
                rows.append(row)
    ker = exact_nullspace(rows, d)
    if len(ker) != 1:
        raise DecompositionError(f"space of left integrals has dimension {len(ker)}")
    lam = ker[0]
    e = sum(l * x for l, x in zip(lam, ef))
    if e == 0:
        raise DecompositionError("integral has zero counit: algebra is not semisimple")
    lam = [x / e for x in lam]
    _integral_cache[H] = lam
    return lam


_gens_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def algebra_generators(H: HopfAlgebra) -> list[int]:
    """Basis indices generating H as an algebra, chosen greedily in index order."""
    if H in _gens_cache:
        return _gens_cache[H]
    X = H.exact
    d = H.dim
    span = Subspace(d, [X.unit])
    vectors = [X.unit]
    gens: list[int] = []
    for i in range(d):
        if span.contains({i: Fraction(1)}):
            continue
        gens.append(i)
        frontier = list(vectors)
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = X.mul(v, {g: Fraction(1)})
                    if span.add(w):
                        vectors.append(w)
                        nxt.append(w)
            # new generator must also act on everything already present
            frontier = nxt
        if span.dim == d:
            break
    _gens_cache[H] = gens
    return gens


@dataclass(eq=False)
class HModule(Rep):
    parent: HopfAlgebra
    action: np.ndarray  # (d, n, n)
    _char: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.action = np.asarray(self.action, dtype=np.complex128)
        d = self.parent.dim
        if self.action.ndim != 3 or self.action.shape[0] != d or self.action.shape[1] != self.action.shape[2]:
            raise ValueError(f"action must have shape ({d}, n, n), got {self.action.shape}")

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def character(self) -> np.ndarray:
        if self._char is None:
            self._char = np.trace(self.action, axis1=1, axis2=2)
        return self._char

    def _lam_delta(self) -> np.ndarray:
        lam = np.array([float(x) for x in left_integral(self.parent)])
        return np.einsum("j,jpq->pq", lam, self.parent.floats["delta"])

    def hom_trace(self, other: "HModule") -> complex:
        c = self._lam_delta()
        chi_s = self.parent.floats["S"] @ self.character()  # chi(S b_q)
        return complex(np.einsum("pq,p,q->", c, other.character(), chi_s))

    def reynolds(self, X: np.ndarray) -> np.ndarray:
        c = self._lam_delta()
        Sact = np.einsum("qj,jab->qab", self.parent.floats["S"], self.action)
        out = np.zeros_like(X, dtype=complex)
        for p, q in zip(*np.nonzero(np.abs(c) > 0)):
            out += c[p, q] * self.action[p] @ X @ Sact[q]
        return out

    def restrict(self, Q: np.ndarray) -> "HModule":
        Q = orthonormal_columns(Q)
        return HModule(self.parent, np.einsum("ab,ibc,cd->iad", Q.conj().T, self.action, Q))

    def intertwiner_gens(self) -> list[np.ndarray]:
        return [self.action[g] for g in algebra_generators(self.parent)]


def module_witness(M: HModule, rtol: float = 1e-8):
    f = M.parent.floats
    A = M.action
    scale = max(1.0, float(np.abs(A).max()))
    if not np.allclose(np.einsum("k,kab->ab", f["u"], A), np.eye(M.dim), atol=rtol * scale):
        return ("unit", None)
    for i in range(M.parent.dim):
        lhs = np.einsum("ab,jbc->jac", A[i], A)
        rhs = np.einsum("jk,kac->jac", f["m"][i], A)
        bad = np.abs(lhs - rhs).max(axis=(1, 2)) > rtol * scale * scale
        if bad.any():
            return ("multiplication", (i, int(np.flatnonzero(bad)[0])))
    return None


def regular_module(H: HopfAlgebra) -> HModule:
    # b_i b_j = sum_k m[i,j,k] b_k, so rho(b_i)[k, j] = m[i, j, k]
    return HModule(H, H.floats["m"].transpose(0, 2, 1))


def trivial_module(H: HopfAlgebra) -> HModule:
    return HModule(H, H.floats["eps"].reshape(-1, 1, 1))


def restrict(H: HopfAlgebra, sub, M: HModule) -> HModule:
    """``M`` as a module over the Hopf subalgebra spanned by ``sub``."""
    K, V = sub_hopf(H, sub)
    basis = np.array([[float(x) for x in row] for row in V.basis()])
    return HModule(K, np.einsum("ai,ibc->abc", basis, M.action))


def tensor_modules(H: HopfAlgebra, M: HModule, N: HModule) -> HModule:
    D = H.floats["delta"]
    d = H.dim
    out = np.zeros((d, M.dim * N.dim, M.dim * N.dim), dtype=complex)
    for i, p, q in zip(*np.nonzero(D)):
        out[i] += D[i, p, q] * np.kron(M.action[p], N.action[q])
    return HModule(H, out)


def hom_space(H: HopfAlgebra, M: HModule, N: HModule, tol: Tolerance = DEFAULT_TOL) -> int:
    return hom_dim(M, N, tol)


def decompose_module(H: HopfAlgebra, M: HModule, seed: int = 0, tol: Tolerance = DEFAULT_TOL):
    return decompose(M, trivial_module(H), tol, seed)


def simple_modules(H: HopfAlgebra, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> list[HModule]:
    return [S for S, _ in decompose_module(H, regular_module(H), seed, tol)]


def fusion_ring_of_hopf(H: HopfAlgebra, seed: int = 0, tol: Tolerance = DEFAULT_TOL) -> tuple[BasedRing, list]:
    simples = simple_modules(H, seed, tol)
    if simples[0].dim != 1 or not np.allclose(simples[0].character(), H.floats["eps"], atol=1e-6):
        raise DecompositionError("trivial module not found among the simples")
    ring = assemble_ring(simples, lambda A, B: tensor_modules(H, A, B), tol)
    return ring, simples


def kernel_simples(H: HopfAlgebra, sub, simples: Sequence[HModule], atol: float = 1e-8) -> list[int]:
    """Simples on which the subalgebra acts through the counit."""
    V = Subspace(H.dim, [[Fraction(x) for x in row] for row in np.asarray(sub).tolist()])
    basis = np.array([[float(x) for x in row] for row in V.basis()])
    eps = basis @ H.floats["eps"]
    out = []
    for k, S in enumerate(simples):
        act = np.einsum("ai,ibc->abc", basis, S.action)
        if np.allclose(act, eps[:, None, None] * np.eye(S.dim), atol=atol):
            out.append(k)
    return out


# ---------------------------------------------------------------- automorphism grading

class AutGradingError(ValueError):
    pass


@dataclass
class AutGradingInput:
    group: CayleyGroup
    invertible_blocks: tuple  # g -> simple id of X_g
    sigma_blocks: list  # per simple: list of (g, h) pairs with a nonzero block X_g (x) X -> X (x) X_h
    ring: BasedRing | None = None


@dataclass
class AutGradingResult:
    grading: GradingMap
    automorphisms: list  # per simple, the permutation of G
    aut_group: CayleyGroup
    neutral: tuple
    grading_checked: bool


def _support_map(G: CayleyGroup, pairs) -> np.ndarray:
    beta = -np.ones(G.order, dtype=np.int64)
    for g, h in pairs:
        if beta[g] >= 0:
            raise AutGradingError(f"block support has two targets for {g}")
        beta[g] = h
    if (beta < 0).any() or len(set(beta.tolist())) != G.order:
        raise AutGradingError("block support is not a bijection of G")
    return beta


def aut_grading(inp: AutGradingInput) -> AutGradingResult:
    """Grading by automorphisms of G read off from half-braiding block supports.

    The block support of simple X sends g to the h with X_g (x) X -> X (x) X_h
    nonzero; the automorphism attached to X is its inverse map.
    """
    G = inp.group
    autos = []
    for x, pairs in enumerate(inp.sigma_blocks):
        beta = _support_map(G, pairs)
        d = np.empty_like(beta)
        d[beta] = np.arange(G.order)
        hom = d[G.mul] == G.mul[d[:, None], d[None, :]]
        if not hom.all():
            a, b = np.argwhere(~hom)[0]
            raise AutGradingError(f"map of simple {x} is not an automorphism at ({a}, {b})")
        autos.append(tuple(int(v) for v in d))
    distinct = sorted(set(autos))
    A = from_permutation_generators(G.order, distinct)
    deg = tuple(A.names.index(a) for a in autos)
    grading = GradingMap(A, deg)
    checked = False
    if inp.ring is not None:
        w = grading_witness(inp.ring, grading)
        if w is not None:
            raise AutGradingError(f"automorphism map is not a grading: {w}")
        checked = True
    ident = tuple(range(G.order))
    neutral = tuple(x for x, a in enumerate(autos) if a == ident)
    return AutGradingResult(grading, autos, A, neutral, checked)


def vect_group_model(G: CayleyGroup) -> AutGradingInput:
    """Skeletal vect_G: simples X_h = h, half-braiding blocks X_g (x) X_h -> X_h (x) X_{h^-1 g h}."""
    blocks = []
    for h in range(G.order):
        hi = G.inv[h]
        blocks.append([(g, int(G.mul[G.mul[hi, g], h])) for g in range(G.order)])
    return AutGradingInput(G, tuple(range(G.order)), blocks, group_ring(G))


def conjugation_perm(G: CayleyGroup, h: int) -> tuple:
    return tuple(int(G.mul[G.mul[h, g], G.inv[h]]) for g in range(G.order))
