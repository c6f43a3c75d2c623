"""JSON readers and writers for groups, pairs, rings, Hopf algebras and friends.

Rationals are written as strings ``"p/q"`` (or ``"p"``). Parse failures raise
``InputError`` naming the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .crossed import CrossedActionData, pointed_crossed_from_matched_pair
from .groups import (CayleyGroup, cyclic, direct_product, from_permutation_generators,
                     from_table, subgroup_closure, symmetric, alternating, trivial_group)
from .hopf import (HopfAlgebra, HopfChain, Rat, function_algebra, group_algebra,
                   kac_bicrossed)
from .matched import MatchedPair, from_exact_factorization
from .repth import AutGradingInput, vect_group_model
from .rings import BasedRing


class InputError(ValueError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def read_json(path) -> object:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(str(path), f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(where, f"missing field '{key}'")
    return obj[key]


def frac(x, where="value") -> Fraction:
    try:
        return Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(10**12)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(where, f"not a rational number: {x!r}") from None


def frac_str(f) -> str:
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------- groups

def load_group(obj, where="group") -> CayleyGroup:
    if not isinstance(obj, dict):
        raise InputError(where, "expected an object")
    try:
        if "table" in obj:
            return from_table(obj["table"], obj.get("identity"))
        if "generators" in obj:
            return from_permutation_generators(int(_need(obj, "degree", where)), obj["generators"])
        for key, make in (("cyclic", cyclic), ("symmetric", symmetric), ("alternating", alternating)):
            if key in obj:
                return make(int(obj[key]))
        if "product" in obj:
            a, b = obj["product"]
            return direct_product(load_group(a, where + ".product[0]"), load_group(b, where + ".product[1]"))
        if obj.get("trivial"):
            return trivial_group()
    except InputError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError(where, str(exc)) from None
    raise InputError(where, "expected one of table, generators, cyclic, symmetric, alternating, product, trivial")


def dump_group(G: CayleyGroup) -> dict:
    return {"table": G.mul.tolist(), "identity": int(G.identity)}


def _element(L: CayleyGroup, x, where) -> int:
    if isinstance(x, int):
        if not 0 <= x < L.order:
            raise InputError(where, f"element index {x} out of range")
        return x
    try:
        return L.names.index(tuple(x))
    except (ValueError, TypeError, AttributeError):
        raise InputError(where, f"{x!r} is not an element of the ambient group") from None


# ---------------------------------------------------------------- matched pairs

def load_matched_pair(obj, where="matched_pair") -> tuple[MatchedPair, CayleyGroup | None]:
    """Direct tables, or an ambient group with generators of the two factors."""
    if isinstance(obj, dict) and "ambient" in obj:
        L = load_group(obj["ambient"], where + ".ambient")
        gs = [_element(L, x, where + ".G") for x in _need(obj, "G", where)]
        ss = [_element(L, x, where + ".Gamma") for x in _need(obj, "Gamma", where)]
        try:
            return from_exact_factorization(L, subgroup_closure(L, gs), subgroup_closure(L, ss)), L
        except ValueError as exc:
            raise InputError(where, str(exc)) from None
    G = load_group(_need(obj, "G", where), where + ".G")
    S = load_group(_need(obj, "Gamma", where), where + ".Gamma")
    try:
        return MatchedPair(G, S, _need(obj, "rhd", where), _need(obj, "lhd", where)), None
    except ValueError as exc:
        raise InputError(where, str(exc)) from None


def dump_matched_pair(mp: MatchedPair) -> dict:
    return {"G": dump_group(mp.G), "Gamma": dump_group(mp.Gamma),
            "rhd": mp.rhd.tolist(), "lhd": mp.lhd.tolist()}


# ---------------------------------------------------------------- rings

def load_ring(obj, where="ring") -> BasedRing:
    if isinstance(obj, dict) and "group_ring" in obj:
        from .rings import group_ring
        return group_ring(load_group(obj["group_ring"], where + ".group_ring"))
    labels = _need(obj, "labels", where)
    try:
        return BasedRing.from_sparse(labels, int(_need(obj, "unit", where)),
                                     _need(obj, "dual", where), _need(obj, "N", where))
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError(where, str(exc)) from None


def dump_ring(R: BasedRing) -> dict:
    return {"labels": list(R.labels), "unit": int(R.unit), "dual": [int(v) for v in R.dual],
            "N": R.to_sparse()}


# ---------------------------------------------------------------- crossed data

def load_crossed(obj, where="crossed") -> CrossedActionData:
    """Full crossed data, or just a matched pair (pointed data is then derived)."""
    if isinstance(obj, dict) and "ring" not in obj:
        mp, _ = load_matched_pair(obj.get("matched_pair", obj), where)
        try:
            return pointed_crossed_from_matched_pair(mp)
        except ValueError as exc:
            raise InputError(where, str(exc)) from None
    mp, _ = load_matched_pair(_need(obj, "matched_pair", where), where + ".matched_pair")
    R = load_ring(obj["ring"], where + ".ring")
    try:
        return CrossedActionData(mp, R, tuple(_need(obj, "deg", where)), np.asarray(_need(obj, "rho", where)))
    except ValueError as exc:
        raise InputError(where, str(exc)) from None


def dump_crossed(d: CrossedActionData) -> dict:
    return {"matched_pair": dump_matched_pair(d.mp), "ring": dump_ring(d.ring),
            "deg": list(d.deg), "rho": d.rho.tolist()}


# ---------------------------------------------------------------- Hopf algebras

_SHAPES = {"m": 3, "u": 1, "delta": 3, "eps": 1, "S": 2}


def _sparse_tensor(entries, d: int, rank: int, where: str) -> Rat:
    arr = np.zeros((d,) * rank, dtype=object)
    arr[...] = Fraction(0)
    for k, e in enumerate(entries):
        if len(e) != rank + 1:
            raise InputError(f"{where}[{k}]", f"expected {rank} indices and a value")
        try:
            arr[tuple(int(i) for i in e[:rank])] += frac(e[rank], f"{where}[{k}]")
        except IndexError:
            raise InputError(f"{where}[{k}]", "index out of range") from None
    return Rat.of(arr)


def load_hopf(obj, where="hopf") -> HopfAlgebra:
    if not isinstance(obj, dict):
        raise InputError(where, "expected an object")
    if "group_algebra" in obj:
        return group_algebra(load_group(obj["group_algebra"], where + ".group_algebra"))
    if "function_algebra" in obj:
        return function_algebra(load_group(obj["function_algebra"], where + ".function_algebra"))
    if "kac" in obj:
        mp, _ = load_matched_pair(obj["kac"], where + ".kac")
        try:
            return kac_bicrossed(mp)
        except ValueError as exc:
            raise InputError(where, str(exc)) from None
    d = int(_need(obj, "dim", where))
    parts = {k: _sparse_tensor(_need(obj, k, where), d, r, f"{where}.{k}") for k, r in _SHAPES.items()}
    labels = obj.get("labels")
    return HopfAlgebra(labels=tuple(labels) if labels else None, **parts)


def dump_hopf(H: HopfAlgebra) -> dict:
    out: dict = {"dim": H.dim}
    for k in _SHAPES:
        f = getattr(H, k).fractions()
        out[k] = [[*map(int, idx), frac_str(f[idx])] for idx in zip(*np.nonzero(getattr(H, k).num))]
    if H.labels:
        out["labels"] = list(H.labels)
    return out


def load_chain(obj, where="chain") -> tuple[HopfChain, bool]:
    """``{"hopf": ..., "chain": [[rows...], ...]}``; ``dual_chain`` asks for the upper series."""
    H = load_hopf(_need(obj, "hopf", where), where + ".hopf")
    upper = "dual_chain" in obj
    raw = obj["dual_chain"] if upper else _need(obj, "chain", where)
    if upper:
        from .hopf import dual_hopf
        H = dual_hopf(H)
    d = H.dim
    subs = []
    for a, term in enumerate(raw):
        rows = []
        for b, row in enumerate(term):
            if len(row) != d:
                raise InputError(f"{where}.chain[{a}][{b}]", f"row has length {len(row)}, expected {d}")
            rows.append([frac(x, f"{where}.chain[{a}][{b}]") for x in row])
        subs.append(rows)
    return HopfChain(H, subs), upper


# ---------------------------------------------------------------- automorphism grading input

def load_aut_input(obj, where="aut") -> AutGradingInput:
    if isinstance(obj, dict) and "vect_group" in obj:
        return vect_group_model(load_group(obj["vect_group"], where + ".vect_group"))
    G = load_group(_need(obj, "group", where), where + ".group")
    ring = load_ring(obj["ring"], where + ".ring") if "ring" in obj else None
    blocks = [[(int(g), int(h)) for g, h in pairs] for pairs in _need(obj, "sigma_blocks", where)]
    return AutGradingInput(G, tuple(_need(obj, "invertible_blocks", where)), blocks, ring)


def dump_aut_input(inp: AutGradingInput) -> dict:
    out = {"group": dump_group(inp.group), "invertible_blocks": list(inp.invertible_blocks),
           "sigma_blocks": [[list(p) for p in pairs] for pairs in inp.sigma_blocks]}
    if inp.ring is not None:
        out["ring"] = dump_ring(inp.ring)
    return out


# ---------------------------------------------------------------- modules

def dump_module(M) -> dict:
    return {"dim": M.dim, "action": [[[[float(z.real), float(z.imag)] for z in row] for row in A]
                                     for A in M.action]}


def load_module(obj, H: HopfAlgebra, where="module"):
    from .repth import HModule
    act = np.asarray(_need(obj, "action", where), dtype=float)
    if act.ndim == 4:
        act = act[..., 0] + 1j * act[..., 1]
    try:
        return HModule(H, act)
    except ValueError as exc:
        raise InputError(where, str(exc)) from None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
