"""The compiled kernels and the numpy fallback must agree witness for witness."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossext import _kernels_py as pure
from crossext.groups import cyclic, symmetric
from crossext.hopf import HopfAlgebra, Rat, group_algebra, kac_candidate, violation_args
from crossext.rings import group_ring

compiled = pytest.importorskip("crossext._kernels")


def _norm(w):
    return None if w is None else tuple(int(v) for v in w)


@given(st.integers(1, 5), st.data())
def test_assoc_witness(n, data):
    mul = np.array(data.draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n)),
                   dtype=np.int64).reshape(n, n)
    assert _norm(compiled.assoc_witness(mul)) == _norm(pure.assoc_witness(mul))


@given(st.sampled_from([(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)]), st.integers(1, 8), st.data())
def test_matched_witnesses(orders, limit, data):
    ng, ns = orders
    G, S = cyclic(ng), cyclic(ns)
    rhd = np.array(data.draw(st.lists(st.integers(0, ng - 1), min_size=ng * ns, max_size=ng * ns)),
                   dtype=np.int64).reshape(ns, ng)
    lhd = np.array(data.draw(st.lists(st.integers(0, ns - 1), min_size=ng * ns, max_size=ng * ns)),
                   dtype=np.int64).reshape(ns, ng)
    a = compiled.matched_witnesses(G.mul, S.mul, rhd, lhd, 0, 0, limit)
    b = pure.matched_witnesses(G.mul, S.mul, rhd, lhd, 0, 0, limit)
    assert [_norm(w) for w in a] == [_norm(w) for w in b]


@given(st.sampled_from([cyclic(3), symmetric(3)]), st.integers(0, 2**31 - 1))
def test_fusion_assoc_witness(G, seed):
    N = group_ring(G).N.copy()
    rng = np.random.default_rng(seed)
    if seed % 3:
        N[tuple(rng.integers(0, G.order, 3))] += 1
    assert _norm(compiled.fusion_assoc_witness(N)) == _norm(pure.fusion_assoc_witness(N))


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 7), st.integers(0, 2**31 - 1))
def test_eliminate(m, n, r, seed):
    rng = np.random.default_rng(seed)
    r = min(r, m, n)
    A = (rng.standard_normal((m, r)) @ rng.standard_normal((r, n))).astype(complex)
    Ra, pa, acc_a, rej_a = compiled.eliminate(np.ascontiguousarray(A), 1e-9)
    Rb, pb, acc_b, rej_b = pure.eliminate(np.ascontiguousarray(A), 1e-9)
    assert list(pa) == list(pb)
    assert np.allclose(Ra, Rb, atol=1e-9)
    assert np.allclose(acc_a, acc_b) and np.isclose(rej_a, rej_b, atol=1e-12)


def _corrupt(H: HopfAlgebra, which: str, seed: int) -> HopfAlgebra:
    rng = np.random.default_rng(seed)
    parts = {k: getattr(H, k) for k in ("m", "u", "delta", "eps", "S")}
    r = parts[which]
    num = r.num.copy()
    idx = tuple(rng.integers(0, s) for s in num.shape)
    num[idx] += int(rng.integers(1, 3)) * r.den
    parts[which] = Rat(num, r.den)
    return HopfAlgebra(**parts)


@given(st.sampled_from(["m", "u", "delta", "eps", "S", None]), st.integers(0, 2**31 - 1),
       st.sampled_from([3, 6, 16]))
def test_hopf_violation(which, seed, size):
    # 16 exercises the sparse path of the fallback
    H = group_algebra(cyclic(size) if size != 6 else symmetric(3))
    if which:
        H = _corrupt(H, which, seed)
    args = violation_args(H)
    assert _norm(compiled.hopf_violation(*args)) == _norm(pure.hopf_violation(*args))


@given(st.data())
def test_hopf_violation_on_random_kac_candidates(data):
    G, S = cyclic(2), cyclic(3)
    rhd = np.array(data.draw(st.lists(st.integers(0, 1), min_size=6, max_size=6))).reshape(3, 2)
    lhd = np.array(data.draw(st.lists(st.integers(0, 2), min_size=6, max_size=6))).reshape(3, 2)
    args = violation_args(kac_candidate(G, S, rhd, lhd))
    assert _norm(compiled.hopf_violation(*args)) == _norm(pure.hopf_violation(*args))
