"""Finite-dimensional Hopf algebras as exact structure tensors.

Tensors are stored as integer numerator arrays over a common denominator.
Index conventions, for a basis ``b_0 .. b_{d-1}``:

* ``m[i, j, k]``  coefficient of ``b_k`` in ``b_i b_j``
* ``u[k]``        coefficient of ``b_k`` in the unit
* ``delta[i, p, q]`` coefficient of ``b_p (x) b_q`` in ``Delta(b_i)``
* ``eps[i]``      counit of ``b_i``
* ``S[i, j]``     coefficient of ``b_j`` in ``S(b_i)``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .exact import Subspace, nullspace as exact_nullspace, to_row
from .groups import CayleyGroup
from .kernels import hopf_violation
from .matched import MatchedPair, verify_matched_pair

FAMILIES = {1: "associativity", 2: "unit", 3: "coassociativity", 4: "counit",
            5: "bialgebra", 6: "antipode"}
BIALGEBRA_CODES = {-1: "Delta(xy) = Delta(x)Delta(y)", -2: "eps(xy) = eps(x)eps(y)",
                   -3: "Delta(1) = 1 (x) 1", -4: "eps(1) = 1"}


class HopfError(ValueError):
    pass


@dataclass(frozen=True)
class Rat:
    """Integer array over a positive common denominator."""
    num: np.ndarray
    den: int = 1

    @classmethod
    def of(cls, arr) -> "Rat":
        a = np.asarray(arr, dtype=object)
        fr = [Fraction(x) for x in a.ravel()]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        num = np.array([int(f * den) for f in fr], dtype=np.int64).reshape(a.shape)
        return cls(num, den).reduced()

    @classmethod
    def ints(cls, arr) -> "Rat":
        return cls(np.ascontiguousarray(arr, dtype=np.int64), 1)

    def reduced(self) -> "Rat":
        g = math.gcd(self.den, *(int(v) for v in np.unique(np.abs(self.num)))) if self.num.size else self.den
        g = g or 1
        return Rat(np.ascontiguousarray(self.num // g, dtype=np.int64), self.den // g)

    def fractions(self) -> np.ndarray:
        out = np.empty(self.num.shape, dtype=object)
        flat = out.reshape(-1)
        for i, v in enumerate(self.num.ravel()):
            flat[i] = Fraction(int(v), self.den)
        return out

    def float(self) -> np.ndarray:
        return self.num / self.den

    def transpose(self, *axes) -> "Rat":
        return Rat(np.ascontiguousarray(self.num.transpose(*axes)), self.den)

    def equals(self, other: "Rat") -> bool:
        return np.array_equal(self.num * other.den, other.num * self.den)


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    m: Rat
    u: Rat
    delta: Rat
    eps: Rat
    S: Rat
    labels: tuple | None = None

    def __post_init__(self):
        d = self.u.num.shape[0]
        shapes = {"m": (d, d, d), "u": (d,), "delta": (d, d, d), "eps": (d,), "S": (d, d)}
        for name, shape in shapes.items():
            if getattr(self, name).num.shape != shape:
                raise HopfError(f"{name} has shape {getattr(self, name).num.shape}, expected {shape}")

    @property
    def dim(self) -> int:
        return self.u.num.shape[0]

    @cached_property
    def exact(self) -> "ExactOps":
        return ExactOps(self)

    @cached_property
    def floats(self) -> dict:
        return {k: getattr(self, k).float() for k in ("m", "u", "delta", "eps", "S")}


@dataclass
class HopfReport:
    valid: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def _csr(num2d: np.ndarray):
    rows, cols = np.nonzero(num2d)
    ptr = np.zeros(num2d.shape[0] + 1, dtype=np.int64)
    np.add.at(ptr, rows + 1, 1)
    return np.cumsum(ptr), cols.astype(np.int64), np.ascontiguousarray(num2d[rows, cols], dtype=np.int64)


def violation_args(H: HopfAlgebra) -> tuple:
    """Sparse integer arguments of the axiom kernel."""
    d = H.dim
    m_ptr, m_idx, m_val = _csr(H.m.num.reshape(d * d, d))
    dl_ptr, dl_pq, dl_val = _csr(H.delta.num.reshape(d, d * d))
    s_ptr, s_idx, s_val = _csr(H.S.num)
    return (d, m_ptr, m_idx, m_val, H.m.den,
            np.ascontiguousarray(H.u.num), H.u.den,
            dl_ptr, dl_pq // d, dl_pq % d, dl_val, H.delta.den,
            np.ascontiguousarray(H.eps.num), H.eps.den,
            s_ptr, s_idx, s_val, H.S.den)


def first_violation(H: HopfAlgebra):
    return hopf_violation(*violation_args(H))


def hopf_axioms_hold(H: HopfAlgebra) -> bool:
    return first_violation(H) is None


def verify_hopf_axioms(H: HopfAlgebra) -> HopfReport:
    w = first_violation(H)
    if w is None:
        return HopfReport(True)
    fam, i, j, k = (int(v) for v in w)
    info = {"family": FAMILIES[fam]}
    if fam == 1:
        info.update(i=i, j=j, k=k)
    elif fam in (2, 4, 6):
        info.update(i=i, side="left" if j == 0 else "right")
    elif fam == 3:
        info.update(i=i)
    else:
        info.update(identity=BIALGEBRA_CODES[k])
        if i >= 0:
            info.update(i=i, j=j)
    return HopfReport(False, [info])


def is_commutative(H: HopfAlgebra) -> bool:
    return bool(np.array_equal(H.m.num, H.m.num.transpose(1, 0, 2)))


def is_cocommutative(H: HopfAlgebra) -> bool:
    return bool(np.array_equal(H.delta.num, H.delta.num.transpose(0, 2, 1)))


def group_algebra(G: CayleyGroup) -> HopfAlgebra:
    n = G.order
    idx = np.arange(n)
    m = np.zeros((n, n, n), dtype=np.int64)
    m[idx[:, None], idx[None, :], G.mul] = 1
    u = np.zeros(n, dtype=np.int64)
    u[G.identity] = 1
    delta = np.zeros((n, n, n), dtype=np.int64)
    delta[idx, idx, idx] = 1
    S = np.zeros((n, n), dtype=np.int64)
    S[idx, G.inv] = 1
    return HopfAlgebra(Rat.ints(m), Rat.ints(u), Rat.ints(delta), Rat.ints(np.ones(n, dtype=np.int64)),
                       Rat.ints(S), tuple(f"g{i}" for i in range(n)))


def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    labels = None if H.labels is None else tuple(f"{b}*" if not b.endswith("*") else b[:-1] for b in H.labels)
    return HopfAlgebra(H.delta.transpose(1, 2, 0), H.eps, H.m.transpose(2, 0, 1), H.u,
                       H.S.transpose(1, 0), labels)


def function_algebra(G: CayleyGroup) -> HopfAlgebra:
    return dual_hopf(group_algebra(G))


def kac_candidate(G: CayleyGroup, Gamma: CayleyGroup, rhd, lhd) -> HopfAlgebra:
    """Structure tensors of k^Gamma # kG on raw action tables (not validated).

    Basis ``e_s # g`` has index ``s*|G| + g``.
    """
    rhd = np.asarray(rhd, dtype=np.int64)
    lhd = np.asarray(lhd, dtype=np.int64)
    ng, ns = G.order, Gamma.order
    d = ng * ns
    s = np.repeat(np.arange(ns), ng)
    g = np.tile(np.arange(ng), ns)
    m = np.zeros((d, d, d), dtype=np.int64)
    # (e_s#g)(e_t#h) = [s<|g = t] e_s#gh
    for i in range(d):
        t = lhd[s[i], g[i]]
        js = t * ng + np.arange(ng)
        m[i, js, s[i] * ng + G.mul[g[i], np.arange(ng)]] = 1
    u = np.zeros(d, dtype=np.int64)
    u[np.arange(ns) * ng + G.identity] = 1
    # Delta(e_s#g) = sum_{ab=s} e_a#(b|>g) (x) e_b#g
    delta = np.zeros((d, d, d), dtype=np.int64)
    a = np.arange(ns)
    for i in range(d):
        b = Gamma.mul[Gamma.inv[a], s[i]]
        delta[i, a * ng + rhd[b, g[i]], b * ng + g[i]] += 1
    eps = (s == Gamma.identity).astype(np.int64)
    # S(e_s#g) = e_{(s<|g)^-1} # (s|>g)^-1
    S = np.zeros((d, d), dtype=np.int64)
    S[np.arange(d), Gamma.inv[lhd[s, g]] * ng + G.inv[rhd[s, g]]] = 1
    labels = tuple(f"e{si}#g{gi}" for si, gi in zip(s, g))
    return HopfAlgebra(Rat.ints(m), Rat.ints(u), Rat.ints(delta), Rat.ints(eps), Rat.ints(S), labels)


def kac_bicrossed(mp: MatchedPair) -> HopfAlgebra:
    rep = verify_matched_pair(mp)
    if not rep:
        raise HopfError(f"not a matched pair: {(rep.witnesses + rep.bijectivity_witnesses)[0]}")
    H = kac_candidate(mp.G, mp.Gamma, mp.rhd, mp.lhd)
    r = verify_hopf_axioms(H)
    if not r:
        raise HopfError(f"bicrossed product fails the Hopf axioms: {r.witnesses[0]}")
    return H


def kac_exact_sequence_data(mp: MatchedPair):
    """``(sub_basis, projection, kG)`` for k -> k^Gamma -> H -> kG -> k."""
    ng, ns = mp.G.order, mp.Gamma.order
    d = ng * ns
    sub = np.zeros((ns, d), dtype=np.int64)
    sub[np.arange(ns), np.arange(ns) * ng + mp.G.identity] = 1
    pi = np.zeros((ng, d), dtype=np.int64)
    pi[np.arange(ng), mp.Gamma.identity * ng + np.arange(ng)] = 1
    return sub, pi, group_algebra(mp.G)


# ---------------------------------------------------------------- exact vectors

class ExactOps:
    """Sparse Fraction arithmetic on elements of a Hopf algebra."""

    def __init__(self, H: HopfAlgebra):
        self.d = H.dim
        mf, df, sf = H.m.fractions(), H.delta.fractions(), H.S.fractions()
        self.mrows = {}
        for i, j, k in np.argwhere(H.m.num):
            self.mrows.setdefault((int(i), int(j)), []).append((int(k), mf[i, j, k]))
        self.drows = {i: [] for i in range(self.d)}
        for i, p, q in np.argwhere(H.delta.num):
            self.drows[int(i)].append((int(p), int(q), df[i, p, q]))
        self.srows = {i: [] for i in range(self.d)}
        for i, j in np.argwhere(H.S.num):
            self.srows[int(i)].append((int(j), sf[i, j]))
        self.eps = [Fraction(int(v), H.eps.den) for v in H.eps.num]
        self.unit = to_row([Fraction(int(v), H.u.den) for v in H.u.num])

    def mul(self, v: dict, w: dict) -> dict:
        out: dict = {}
        for i, a in v.items():
            for j, b in w.items():
                for k, c in self.mrows.get((i, j), ()):
                    out[k] = out.get(k, 0) + a * b * c
        return {k: x for k, x in out.items() if x}

    def comul(self, v: dict) -> dict:
        out: dict = {}
        for i, a in v.items():
            for p, q, c in self.drows[i]:
                out[(p, q)] = out.get((p, q), 0) + a * c
        return {k: x for k, x in out.items() if x}

    def antipode(self, v: dict) -> dict:
        out: dict = {}
        for i, a in v.items():
            for j, c in self.srows[i]:
                out[j] = out.get(j, 0) + a * c
        return {k: x for k, x in out.items() if x}

    def counit(self, v: dict) -> Fraction:
        return sum((a * self.eps[i] for i, a in v.items()), Fraction(0))


def _rows(basis, d: int) -> list[dict]:
    out = []
    for v in basis:
        if isinstance(v, dict):
            out.append(dict(v))
        else:
            v = list(v)
            if len(v) != d:
                raise HopfError(f"basis vector has length {len(v)}, expected {d}")
            out.append(to_row(v))
    return out


def _pair_row(t: dict, d: int) -> dict:
    return {p * d + q: c for (p, q), c in t.items()}


class SubalgebraError(HopfError):
    def __init__(self, condition: str, witness):
        super().__init__(f"{condition}: {witness}")
        self.condition = condition
        self.witness = witness


def sub_hopf(H: HopfAlgebra, basis) -> tuple[HopfAlgebra, Subspace]:
    """The Hopf subalgebra spanned by ``basis``, in its echelon basis."""
    d, X = H.dim, H.exact
    V = Subspace(d, _rows(basis, d))
    k = V.dim
    if not V.contains(X.unit):
        raise SubalgebraError("unit not in subspace", None)
    piv = V.pivots
    m = np.zeros((k, k, k), dtype=object)
    for a, va in enumerate(V.rows):
        for b, vb in enumerate(V.rows):
            prod = X.mul(va, vb)
            if V.reduce(prod):
                raise SubalgebraError("not closed under multiplication", (a, b))
            for c, p in enumerate(piv):
                m[a, b, c] = prod.get(p, Fraction(0))
    u = np.array([X.unit.get(p, Fraction(0)) for p in piv], dtype=object)
    delta = np.zeros((k, k, k), dtype=object)
    S = np.zeros((k, k), dtype=object)
    eps = np.zeros(k, dtype=object)
    for a, va in enumerate(V.rows):
        t = X.comul(va)
        coef = np.array([[t.get((p, q), Fraction(0)) for q in piv] for p in piv], dtype=object)
        # reconstruct and compare: t must equal sum coef[b, c] v_b (x) v_c
        back: dict = {}
        for b, vb in enumerate(V.rows):
            for c, vc in enumerate(V.rows):
                if coef[b, c]:
                    for i, x in vb.items():
                        for j, y in vc.items():
                            back[(i, j)] = back.get((i, j), 0) + coef[b, c] * x * y
        if {kk: vv for kk, vv in back.items() if vv} != t:
            raise SubalgebraError("not closed under comultiplication", a)
        delta[a] = coef
        sv = X.antipode(va)
        if V.reduce(sv):
            raise SubalgebraError("not closed under the antipode", a)
        S[a] = [sv.get(p, Fraction(0)) for p in piv]
        eps[a] = X.counit(va)
    return HopfAlgebra(Rat.of(m), Rat.of(u), Rat.of(delta), Rat.of(eps), Rat.of(S)), V


def augmentation_basis(H: HopfAlgebra, sub: Subspace) -> list[dict]:
    """Spanning set of the kernel of the counit on ``sub``."""
    X = H.exact
    out = []
    for v in sub.rows:
        e = X.counit(v)
        w = dict(v)
        for k, c in X.unit.items():
            w[k] = w.get(k, 0) - e * c
        w = {k: c for k, c in w.items() if c}
        if w:
            out.append(w)
    return out


def generated_left_ideal(H: HopfAlgebra, gens: Sequence[dict]) -> Subspace:
    X = H.exact
    I = Subspace(H.dim)
    for i in range(H.dim):
        for x in gens:
            I.add(X.mul({i: Fraction(1)}, x))
    return I


def quotient_hopf(H: HopfAlgebra, ideal: Subspace) -> tuple[HopfAlgebra, np.ndarray]:
    """Quotient by a Hopf ideal; complement basis = non-pivot coordinates.

    Returns the quotient and the projection matrix (object array of Fractions,
    shape ``(q, d)``; column ``j`` is the image of ``b_j``).
    """
    d, X = H.dim, H.exact
    comp = [j for j in range(d) if j not in set(ideal.pivots)]
    q = len(comp)
    pi = np.zeros((q, d), dtype=object)
    for j in range(d):
        r = ideal.reduce({j: Fraction(1)})
        pi[:, j] = [r.get(c, Fraction(0)) for c in comp]

    def proj(v: dict):
        r = ideal.reduce(v)
        return [r.get(c, Fraction(0)) for c in comp]

    for i in range(d):
        bi = {i: Fraction(1)}
        for x in ideal.rows:
            if ideal.reduce(X.mul(bi, x)) or ideal.reduce(X.mul(x, bi)):
                raise SubalgebraError("not a two-sided ideal", i)
    for a, x in enumerate(ideal.rows):
        if X.counit(x):
            raise SubalgebraError("counit does not vanish on the ideal", a)
        if ideal.reduce(X.antipode(x)):
            raise SubalgebraError("ideal not stable under the antipode", a)
        t = X.comul(x)
        img = np.zeros((q, q), dtype=object)
        for (p, r), c in t.items():
            img += c * np.outer(pi[:, p], pi[:, r])
        if any(v != 0 for v in img.ravel()):
            raise SubalgebraError("ideal is not a coideal", a)
    m = np.zeros((q, q, q), dtype=object)
    for a, ca in enumerate(comp):
        for b, cb in enumerate(comp):
            m[a, b] = proj(X.mul({ca: Fraction(1)}, {cb: Fraction(1)}))
    u = np.array(proj(X.unit), dtype=object)
    delta = np.zeros((q, q, q), dtype=object)
    S = np.zeros((q, q), dtype=object)
    eps = np.zeros(q, dtype=object)
    for a, ca in enumerate(comp):
        for (p, r), c in X.comul({ca: Fraction(1)}).items():
            delta[a] += c * np.outer(pi[:, p], pi[:, r])
        S[a] = proj(X.antipode({ca: Fraction(1)}))
        eps[a] = X.eps[ca]
    Q = HopfAlgebra(Rat.of(m), Rat.of(u), Rat.of(delta), Rat.of(eps), Rat.of(S))
    return Q, pi


# ---------------------------------------------------------------- exact sequences

def exact_sequence_check(H: HopfAlgebra, sub_basis, quotient_onto, target: HopfAlgebra) -> HopfReport:
    d, X = H.dim, H.exact
    fails = []
    rows = _rows(sub_basis, d)
    V = Subspace(d, rows)
    if V.dim != len(rows):
        fails.append({"condition": "a", "detail": "inclusion is not injective"})
    try:
        sub_hopf(H, rows)
    except SubalgebraError as exc:
        fails.append({"condition": "a", "detail": f"image of inclusion: {exc}"})
    P = np.asarray(quotient_onto, dtype=object)
    q = target.dim
    if P.shape != (q, d):
        raise HopfError(f"projection must have shape {(q, d)}, got {P.shape}")
    P = np.vectorize(Fraction, otypes=[object])(P)
    if Subspace(d, [list(r) for r in P]).dim != q:
        fails.append({"condition": "a", "detail": "projection is not surjective"})
    fails += _hopf_map_failures(H, P, target)

    ker = Subspace(d, exact_nullspace([list(r) for r in P], d))
    ideal = generated_left_ideal(H, augmentation_basis(H, V))
    if not ker == ideal:
        fails.append({"condition": "b", "detail": f"ker has dim {ker.dim}, H*sub^+ has dim {ideal.dim}"})

    # coinvariants: (pi (x) id) Delta(h) = 1 (x) h
    Y = target.exact
    eqs = np.zeros((q * d, d), dtype=object)
    for i in range(d):
        col = np.zeros((q, d), dtype=object)
        for (p, r), c in X.comul({i: Fraction(1)}).items():
            col[:, r] += c * P[:, p]
        for k, c in Y.unit.items():
            col[k, i] -= c
        eqs[:, i] = col.ravel()
    coinv = Subspace(d, exact_nullspace([list(r) for r in eqs], d))
    if not coinv == V:
        fails.append({"condition": "c", "detail": f"coinvariants have dim {coinv.dim}, sub has dim {V.dim}"})
    return HopfReport(not fails, fails)


def _same(a: np.ndarray, da: int, b: np.ndarray, db: int) -> bool:
    # exact comparison of a/da and b/db; python ints avoid overflow
    return bool(np.array_equal(a.astype(object) * db, b.astype(object) * da))


def _hopf_map_failures(H: HopfAlgebra, P: np.ndarray, T: HopfAlgebra) -> list:
    Pr = Rat.of(P)
    p, dp = Pr.num, Pr.den
    ein = lambda subs, *ops: np.einsum(subs, *ops, optimize=True)
    checks = [
        ("multiplicative", ein("ijk,qk->ijq", H.m.num, p), H.m.den * dp,
         ein("ai,bj,abq->ijq", p, p, T.m.num), dp * dp * T.m.den),
        ("unital", p @ H.u.num, dp * H.u.den, T.u.num, T.u.den),
        ("comultiplicative", ein("ipq,ap,bq->iab", H.delta.num, p, p), H.delta.den * dp * dp,
         ein("ci,cab->iab", p, T.delta.num), dp * T.delta.den),
        ("counital", T.eps.num @ p, T.eps.den * dp, H.eps.num, H.eps.den),
        ("compatible with the antipode", ein("ij,aj->ia", H.S.num, p), H.S.den * dp,
         ein("ai,ab->ib", p, T.S.num), dp * T.S.den),
    ]
    return [{"condition": "a", "detail": f"projection is not {name}"}
            for name, lhs, dl, rhs, dr in checks if not _same(lhs, dl, rhs, dr)]


# ---------------------------------------------------------------- subnormal series

@dataclass
class HopfChain:
    H: HopfAlgebra
    subspaces: list  # each a list of basis vectors of H, largest first

    def normalized(self) -> list:
        subs = list(self.subspaces)
        if subs and len(subs[0]) < len(subs[-1]):
            subs = subs[::-1]
        return subs


@dataclass
class SeriesCertificate:
    certified: bool
    factors: list = field(default_factory=list)
    failure: dict | None = None

    def __bool__(self) -> bool:
        return self.certified


def _classify(Q: HopfAlgebra) -> dict:
    c, cc = is_commutative(Q), is_cocommutative(Q)
    label = {(True, True): "commutative and cocommutative", (True, False): "commutative",
             (False, True): "cocommutative", (False, False): "neither"}[(c, cc)]
    return {"dim": Q.dim, "commutative": c, "cocommutative": cc, "type": label}


def verify_subnormal_series(chain: HopfChain) -> SeriesCertificate:
    """Check each step is a normal Hopf subalgebra and classify the factors.

    Factors are reported from the smallest step upwards.
    """
    H = chain.H
    d, X = H.dim, H.exact
    subs = [Subspace(d, _rows(b, d)) for b in chain.normalized()]
    if not subs or subs[0].dim != d:
        return SeriesCertificate(False, failure={"step": 0, "condition": "chain must start at the whole algebra"})
    if subs[-1] != Subspace(d, [X.unit]):
        return SeriesCertificate(False, failure={"step": len(subs) - 1,
                                                 "condition": "chain must end at the unit line"})
    factors = []
    for i in range(len(subs) - 1):
        K, L = subs[i], subs[i + 1]
        if not L.issubset(K):
            return SeriesCertificate(False, failure={"step": i + 1, "condition": "not contained in the previous term"})
        try:
            sub_hopf(H, L.rows)
        except SubalgebraError as exc:
            return SeriesCertificate(False, failure={"step": i + 1, "condition": "not a Hopf subalgebra",
                                                     "reason": exc.condition, "witness": exc.witness})
        for a, h in enumerate(K.rows):
            t = X.comul(h)
            for b, x in enumerate(L.rows):
                left: dict = {}
                right: dict = {}
                for (p, q), c in t.items():
                    for k, v in X.mul(X.mul({p: c}, x), X.antipode({q: Fraction(1)})).items():
                        left[k] = left.get(k, 0) + v
                    for k, v in X.mul(X.mul(X.antipode({p: c}), x), {q: Fraction(1)}).items():
                        right[k] = right.get(k, 0) + v
                for side, val in (("h1 x S(h2)", left), ("S(h1) x h2", right)):
                    val = {k: v for k, v in val.items() if v}
                    if L.reduce(val):
                        return SeriesCertificate(False, failure={
                            "step": i + 1, "condition": "not normal", "action": side, "h": a, "x": b})
        K_alg, _ = sub_hopf(H, K.rows)
        # L in coordinates of K's echelon basis
        L_in_K = Subspace(K.dim, [K.coords(v) for v in L.rows])
        ideal = generated_left_ideal(K_alg, augmentation_basis(K_alg, L_in_K))
        try:
            Q, _ = quotient_hopf(K_alg, ideal)
        except SubalgebraError as exc:
            return SeriesCertificate(False, failure={"step": i + 1, "condition": "factor is not a quotient Hopf algebra",
                                                     "reason": exc.condition})
        rep = verify_hopf_axioms(Q)
        if not rep:
            return SeriesCertificate(False, failure={"step": i + 1, "condition": "factor fails Hopf axioms",
                                                     "witness": rep.witnesses[0]})
        info = _classify(Q)
        info["step"] = i + 1
        factors.append(info)
    factors.reverse()
    bad = [f for f in factors if f["type"] == "neither"]
    if bad:
        return SeriesCertificate(False, factors, {"step": bad[0]["step"],
                                                  "condition": "factor neither commutative nor cocommutative"})
    return SeriesCertificate(True, factors)


def upper_series_via_dual(H: HopfAlgebra, dual_chain: HopfChain) -> SeriesCertificate:
    D = dual_hopf(H)
    if not (np.array_equal(D.m.num * dual_chain.H.m.den, dual_chain.H.m.num * D.m.den)
            and np.array_equal(D.delta.num * dual_chain.H.delta.den, dual_chain.H.delta.num * D.delta.den)):
        return SeriesCertificate(False, failure={"step": 0, "condition": "chain does not live in the dual algebra"})
    return verify_subnormal_series(dual_chain)


# ---------------------------------------------------------------- half-braidings

def regular_coaction(H: HopfAlgebra) -> np.ndarray:
    return H.floats["delta"]


def trivial_coaction(H: HopfAlgebra) -> np.ndarray:
    C = np.zeros((1, 1, H.dim))
    C[0, 0] = H.floats["u"]
    return C


def comodule_witness(H: HopfAlgebra, C: np.ndarray, atol: float = 1e-10):
    """``C[j, k, i]``: coefficient of ``v_k (x) b_i`` in the coaction of ``v_j``."""
    f = H.floats
    n = C.shape[0]
    if C.shape != (n, n, H.dim):
        return "coaction tensor has the wrong shape"
    lhs = np.einsum("jki,klp->jlpi", C, C)
    rhs = np.einsum("jli,ipq->jlpq", C, f["delta"])
    if not np.allclose(lhs, rhs, atol=atol):
        return "coaction is not coassociative"
    if not np.allclose(np.einsum("jki,i->jk", C, f["eps"]), np.eye(n), atol=atol):
        return "coaction is not counital"
    return None


def tensor_coaction(H: HopfAlgebra, C1: np.ndarray, C2: np.ndarray) -> np.ndarray:
    n1, n2 = C1.shape[0], C2.shape[0]
    T = np.einsum("jki,abr,irs->jakbs", C1, C2, H.floats["m"])
    return T.reshape(n1 * n2, n1 * n2, H.dim)


def half_braiding_sigma(H: HopfAlgebra, C: np.ndarray) -> np.ndarray:
    """Matrix of h (x) v -> v0 (x) S(v1) h v2, from A (x) V to V (x) A with A = H."""
    w = comodule_witness(H, C)
    if w:
        raise HopfError(f"invalid comodule: {w}")
    f = H.floats
    d, n = H.dim, C.shape[0]
    # T[p, h, i, r]: coefficient of b_r in S(b_p) b_h b_i
    Sh = np.einsum("pa,ahc->phc", f["S"], f["m"])
    T = np.einsum("phc,cir->phir", Sh, f["m"])
    sig = np.einsum("jki,klp,phir->lrhj", C, C, T, optimize=True)
    sig = sig.reshape(n * d, d * n)
    if np.linalg.matrix_rank(sig) != n * d:
        raise HopfError("half-braiding is not invertible")
    return sig


def half_braiding_multiplicative(H: HopfAlgebra, C1: np.ndarray, C2: np.ndarray, atol: float = 1e-10) -> bool:
    d, n1, n2 = H.dim, C1.shape[0], C2.shape[0]
    s1 = half_braiding_sigma(H, C1)
    s2 = half_braiding_sigma(H, C2)
    s12 = half_braiding_sigma(H, tensor_coaction(H, C1, C2))
    rhs = np.kron(np.eye(n1), s2) @ np.kron(s1, np.eye(n2))
    return bool(np.allclose(s12, rhs, atol=atol))


def symmetric_central_algebra_test(H: HopfAlgebra, atol: float = 1e-10) -> tuple[bool, bool]:
    sig = half_braiding_sigma(H, regular_coaction(H))
    sq = sig @ sig
    symmetric = bool(np.abs(sq - np.eye(sq.shape[0])).max() <= atol)
    return symmetric, is_commutative(H)
