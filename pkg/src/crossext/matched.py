"""Matched pairs of finite groups and their bicrossed product groups.

Factorization convention: for ``s`` in Gamma and ``g`` in G the ambient product
``s*g`` is rewritten as ``(s |> g)(s <| g)`` with the G-factor on the left.
Tables are stored densely as ``rhd[s, g]`` (an index of G) and ``lhd[s, g]``
(an index of Gamma). The bicrossed group numbers the pair ``(g, s)`` as
``g*|Gamma| + s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import (CayleyGroup, GroupError, Subgroup, all_subgroups,
                     is_exact_factorization, subgroup_as_group)
from .kernels import matched_witnesses

IDENTITY_NAMES = (
    "left action of Gamma on G",
    "right action of G on Gamma",
    "s |> e = e",
    "e <| g = e",
    "s |> (gh) = (s |> g)((s <| g) |> h)",
    "(st) <| g = (s <| (t |> g))(t <| g)",
)


class MatchedPairError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatchedPair:
    G: CayleyGroup
    Gamma: CayleyGroup
    rhd: np.ndarray
    lhd: np.ndarray
    # indices into an ambient group when the pair came from a factorization
    embedding: tuple | None = field(default=None)

    def __post_init__(self):
        for name in ("rhd", "lhd"):
            a = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        shape = (self.Gamma.order, self.G.order)
        if self.rhd.shape != shape or self.lhd.shape != shape:
            raise MatchedPairError(f"action tables must have shape {shape}, "
                                   f"got {self.rhd.shape} and {self.lhd.shape}")
        if self.rhd.size and (self.rhd.min() < 0 or self.rhd.max() >= self.G.order):
            raise MatchedPairError("rhd entries must be indices of G")
        if self.lhd.size and (self.lhd.min() < 0 or self.lhd.max() >= self.Gamma.order):
            raise MatchedPairError("lhd entries must be indices of Gamma")

    @property
    def order(self) -> int:
        return self.G.order * self.Gamma.order


@dataclass
class MatchedPairReport:
    valid: bool
    witnesses: list
    bijective: bool
    bijectivity_witnesses: list

    def __bool__(self) -> bool:
        return self.valid

    def as_dict(self) -> dict:
        return {"valid": self.valid, "bijective": self.bijective,
                "witnesses": self.witnesses, "bijectivity_witnesses": self.bijectivity_witnesses}


def trivial_pair(G: CayleyGroup, Gamma: CayleyGroup) -> MatchedPair:
    rhd = np.tile(np.arange(G.order), (Gamma.order, 1))
    lhd = np.tile(np.arange(Gamma.order)[:, None], (1, G.order))
    return MatchedPair(G, Gamma, rhd, lhd)


def verify_matched_pair(mp: MatchedPair, limit: int = 8) -> MatchedPairReport:
    raw = matched_witnesses(mp.G.mul, mp.Gamma.mul, mp.rhd, mp.lhd,
                            mp.G.identity, mp.Gamma.identity, limit)
    wit = [{"identity": IDENTITY_NAMES[f], "family": int(f),
            "s": int(s), "t": int(t), "g": int(g), "h": int(h)} for f, s, t, g, h in raw]
    bij = []
    for s in range(mp.Gamma.order):
        if len(np.unique(mp.rhd[s])) != mp.G.order:
            bij.append({"map": "s |> -", "s": s})
    for g in range(mp.G.order):
        if len(np.unique(mp.lhd[:, g])) != mp.Gamma.order:
            bij.append({"map": "- <| g", "g": g})
    return MatchedPairReport(not wit and not bij, wit, not bij, bij)


def bicrossed_table(G: CayleyGroup, Gamma: CayleyGroup, rhd, lhd) -> np.ndarray:
    """Multiplication (g,s)(h,t) = (g(s|>h), (s<|h)t) on raw tables."""
    rhd = np.asarray(rhd)
    lhd = np.asarray(lhd)
    ng, ns = G.order, Gamma.order
    g = np.repeat(np.arange(ng), ns)
    s = np.tile(np.arange(ns), ng)
    first = G.mul[g[:, None], rhd[s[:, None], g[None, :]]]
    second = Gamma.mul[lhd[s[:, None], g[None, :]], s[None, :]]
    return first * ns + second


def bicrossed_axiom_witness(G: CayleyGroup, Gamma: CayleyGroup, rhd, lhd):
    """First failing group axiom of the bicrossed multiplication with unit (e,e)."""
    mul = bicrossed_table(G, Gamma, rhd, lhd)
    return CayleyGroup(mul, G.identity * Gamma.order + Gamma.identity).validation_witness()


def bicrossed_group(mp: MatchedPair, check: bool = True) -> CayleyGroup:
    if check:
        rep = verify_matched_pair(mp)
        if not rep:
            raise MatchedPairError(f"invalid matched pair: {(rep.witnesses + rep.bijectivity_witnesses)[0]}")
    ns = mp.Gamma.order
    mul = bicrossed_table(mp.G, mp.Gamma, mp.rhd, mp.lhd)
    names = tuple((g, s) for g in range(mp.G.order) for s in range(ns))
    L = CayleyGroup(mul, mp.G.identity * ns + mp.Gamma.identity, names)
    w = L.validation_witness()
    if w is not None:
        raise RuntimeError(f"bicrossed product failed {w[0]} at {w[1]} on a verified pair")
    G1, S1 = bicrossed_factors(mp, L)
    if not is_exact_factorization(L, G1, S1):
        raise RuntimeError("G x 1 and 1 x Gamma do not factor the bicrossed group")
    return L


def bicrossed_factors(mp: MatchedPair, L: CayleyGroup) -> tuple[Subgroup, Subgroup]:
    ns = mp.Gamma.order
    G1 = Subgroup(L, tuple(g * ns + mp.Gamma.identity for g in range(mp.G.order)))
    S1 = Subgroup(L, tuple(mp.G.identity * ns + s for s in range(ns)))
    return G1, S1


def from_exact_factorization(L: CayleyGroup, Gsub: Subgroup, Ssub: Subgroup) -> MatchedPair:
    if not is_exact_factorization(L, Gsub, Ssub):
        raise MatchedPairError("subgroups do not give an exact factorization")
    G, g_emb = subgroup_as_group(Gsub)
    Gamma, s_emb = subgroup_as_group(Ssub)
    g_emb_a = np.asarray(g_emb)
    s_emb_a = np.asarray(s_emb)
    # every element of L is uniquely h*t
    where = np.empty((L.order, 2), dtype=np.int64)
    prods = L.mul[np.ix_(g_emb_a, s_emb_a)]
    for h in range(G.order):
        where[prods[h], 0] = h
        where[prods[h], 1] = np.arange(Gamma.order)
    st = L.mul[np.ix_(s_emb_a, g_emb_a)]  # s*g
    rhd = where[st, 0]
    lhd = where[st, 1]
    return MatchedPair(G, Gamma, rhd, lhd, (g_emb, s_emb))


def embedding_is_isomorphism(mp: MatchedPair, L: CayleyGroup) -> bool:
    """Check that (g, s) -> g*s is an isomorphism from the bicrossed group onto ``L``."""
    if mp.embedding is None:
        raise MatchedPairError("matched pair carries no embedding")
    g_emb, s_emb = (np.asarray(e) for e in mp.embedding)
    B = bicrossed_group(mp)
    ns = mp.Gamma.order
    phi = L.mul[g_emb[np.arange(B.order) // ns], s_emb[np.arange(B.order) % ns]]
    if len(np.unique(phi)) != L.order or B.order != L.order:
        return False
    return bool(np.array_equal(phi[B.mul], L.mul[np.ix_(phi, phi)]))


def enumerate_exact_factorizations(L: CayleyGroup, bound: int = 120):
    if L.order > bound:
        raise GroupError(f"group order {L.order} exceeds enumeration bound {bound}")
    subs = all_subgroups(L)
    by_order: dict[int, list[Subgroup]] = {}
    for S in subs:
        by_order.setdefault(S.order, []).append(S)
    out = []
    for A in subs:
        if L.order % A.order:
            continue
        for B in by_order.get(L.order // A.order, []):
            if is_exact_factorization(L, A, B):
                out.append((A, B, from_exact_factorization(L, A, B)))
    out.sort(key=lambda t: (t[0].members, t[1].members))
    return out
