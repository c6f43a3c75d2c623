from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossext.groups import alternating, cyclic, symmetric, subgroup_closure
from crossext.hopf import (HopfAlgebra, HopfChain, HopfError, Rat, comodule_witness, dual_hopf,
                           exact_sequence_check, function_algebra, group_algebra,
                           half_braiding_multiplicative, hopf_axioms_hold, is_cocommutative,
                           is_commutative, kac_bicrossed, kac_candidate, kac_exact_sequence_data,
                           regular_coaction, sub_hopf, SubalgebraError, symmetric_central_algebra_test,
                           trivial_coaction, upper_series_via_dual, verify_hopf_axioms,
                           verify_subnormal_series)
from crossext.matched import enumerate_exact_factorizations, trivial_pair

S3 = symmetric(3)
C3_IN_S3 = subgroup_closure(S3, [S3.names.index((1, 2, 0))]).members


def unit_rows(idx, d):
    return [[int(j == i) for j in range(d)] for i in idx]


def test_small_algebras():
    for H in (group_algebra(cyclic(2)), function_algebra(S3), group_algebra(S3)):
        assert verify_hopf_axioms(H).valid
    assert is_commutative(function_algebra(S3)) and not is_cocommutative(function_algebra(S3))
    assert not is_commutative(group_algebra(S3)) and is_cocommutative(group_algebra(S3))


def test_double_dual_is_identity():
    H = group_algebra(S3)
    D = dual_hopf(dual_hopf(H))
    for k in ("m", "u", "delta", "eps", "S"):
        assert getattr(D, k).equals(getattr(H, k))


def test_kac_instances(s3_instance, kac_a5):
    K = kac_bicrossed(s3_instance[0])
    assert K.dim == 6 and is_cocommutative(K) and not is_commutative(K)
    assert kac_a5.dim == 60
    assert not is_commutative(kac_a5) and not is_cocommutative(kac_a5)


def test_antipode_formula(s3_instance):
    # S(e_s # g) = e_{(s<|g)^-1} # (s|>g)^-1
    mp = s3_instance[0]
    K = kac_bicrossed(mp)
    ng = mp.G.order
    S = K.S.fractions()
    for s in range(mp.Gamma.order):
        for g in range(ng):
            t = mp.Gamma.inv[mp.lhd[s, g]]
            h = mp.G.inv[mp.rhd[s, g]]
            row = S[s * ng + g]
            assert row[t * ng + h] == 1 and sum(row) == 1


def test_corrupted_structure_is_caught(s3_instance):
    K = kac_bicrossed(s3_instance[0])
    m = K.m.num.copy()
    m[1, 1] = np.roll(m[1, 1], 1)
    bad = HopfAlgebra(Rat(m, K.m.den), K.u, K.delta, K.eps, K.S)
    rep = verify_hopf_axioms(bad)
    assert not rep.valid and rep.witnesses[0]["family"]


def test_invalid_pair_rejected():
    mp = trivial_pair(cyclic(2), cyclic(3))
    lhd = mp.lhd.copy()
    lhd[1, 1] = 2
    from crossext.matched import MatchedPair
    with pytest.raises(HopfError):
        kac_bicrossed(MatchedPair(mp.G, mp.Gamma, mp.rhd, lhd))
    assert not hopf_axioms_hold(kac_candidate(mp.G, mp.Gamma, mp.rhd, lhd))


def test_exact_sequences(s3_instance):
    mp = s3_instance[0]
    K = kac_bicrossed(mp)
    sub, pi, kG = kac_exact_sequence_data(mp)
    assert exact_sequence_check(K, sub, pi, kG).valid
    # k -> kS3 -> kS3 -> k -> k
    H = group_algebra(S3)
    assert exact_sequence_check(H, np.eye(6, dtype=int), [[1] * 6], group_algebra(cyclic(1))).valid
    # kC3 -> kS3 -> kC2 by the sign
    sign = [1 if i in C3_IN_S3 else 0 for i in range(6)]
    pi = [sign, [1 - x for x in sign]]
    assert exact_sequence_check(H, unit_rows(C3_IN_S3, 6), pi, group_algebra(cyclic(2))).valid


def test_exact_sequence_failures():
    H = group_algebra(S3)
    bad = exact_sequence_check(H, [[0, 1, 0, 0, 0, 0]], [[1] * 6], group_algebra(cyclic(1)))
    assert not bad.valid
    assert {w["condition"] for w in bad.witnesses} == {"a", "b", "c"}


def test_a5_exact_sequence(a5_instance, kac_a5):
    sub, pi, kG = kac_exact_sequence_data(a5_instance[0])
    assert exact_sequence_check(kac_a5, sub, pi, kG).valid


def test_sub_hopf_errors():
    H = group_algebra(S3)
    with pytest.raises(SubalgebraError) as exc:
        sub_hopf(H, [[1, 0, 0, 0, 0, 0], [0, 1, 1, 0, 0, 0]])
    assert exc.value.condition == "not closed under multiplication"
    with pytest.raises(SubalgebraError):
        sub_hopf(H, [[0, 1, 0, 0, 0, 0]])
    K, V = sub_hopf(H, unit_rows(C3_IN_S3, 6))
    assert K.dim == 3 and verify_hopf_axioms(K).valid


def test_series_s3():
    H = group_algebra(S3)
    cert = verify_subnormal_series(HopfChain(H, [np.eye(6, dtype=int), unit_rows(C3_IN_S3, 6), [[1, 0, 0, 0, 0, 0]]]))
    assert cert.certified
    assert [f["dim"] for f in cert.factors] == [3, 2]
    bad = verify_subnormal_series(HopfChain(H, [np.eye(6, dtype=int), [[0, 1, 1, 0, 0, 0], [1, 0, 0, 0, 0, 0]],
                                                [[1, 0, 0, 0, 0, 0]]]))
    assert not bad.certified and bad.failure["condition"] == "not a Hopf subalgebra"
    assert bad.failure["witness"] is not None


def test_non_normal_step_is_rejected():
    H = group_algebra(S3)
    c2 = subgroup_closure(S3, [S3.names.index((1, 0, 2))]).members
    cert = verify_subnormal_series(HopfChain(H, [np.eye(6, dtype=int), unit_rows(c2, 6), [[1, 0, 0, 0, 0, 0]]]))
    assert not cert.certified and cert.failure["condition"] == "not normal"


def test_upper_series_via_dual(s3_instance):
    mp = s3_instance[0]
    K = kac_bicrossed(mp)
    D = dual_hopf(K)
    ng = mp.G.order
    e = mp.Gamma.identity
    # image of the dual of H -> kG: functionals dual to e_e # g
    sub = unit_rows([e * ng + g for g in range(ng)], K.dim)
    unit = [[int(x) for x in D.u.fractions()]]
    cert = upper_series_via_dual(K, HopfChain(D, [np.eye(6, dtype=int), sub, unit]))
    assert cert.certified
    assert [f["dim"] for f in cert.factors] == [2, 3]


def test_char_sym_booleans():
    cases = [(function_algebra(cyclic(2)), (True, True)), (function_algebra(S3), (True, True)),
             (group_algebra(cyclic(6)), (True, True)), (group_algebra(S3), (False, False)),
             (group_algebra(alternating(4)), (False, False))]
    for H, want in cases:
        assert symmetric_central_algebra_test(H) == want


def test_coactions():
    H = group_algebra(S3)
    assert comodule_witness(H, regular_coaction(H)) is None
    assert comodule_witness(H, trivial_coaction(H)) is None
    assert comodule_witness(H, 2 * trivial_coaction(H)) is not None
    assert half_braiding_multiplicative(H, regular_coaction(H), trivial_coaction(H))


@given(st.sampled_from([symmetric(3), cyclic(4), cyclic(6), alternating(4)]), st.data())
def test_kac_from_factorizations(L, data):
    A, B, mp = data.draw(st.sampled_from(enumerate_exact_factorizations(L)))
    K = kac_bicrossed(mp)
    assert K.dim == L.order
    sub, pi, kG = kac_exact_sequence_data(mp)
    assert exact_sequence_check(K, sub, pi, kG).valid


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=12))
def test_rat_round_trip(xs):
    r = Rat.of(np.array(xs, dtype=object))
    assert list(r.fractions()) == [Fraction(x) for x in xs]
    assert np.allclose(r.float(), [float(x) for x in xs])


@given(st.sampled_from([cyclic(3), symmetric(3), alternating(4)]))
def test_commutative_iff_symmetric(G):
    for H in (group_algebra(G), function_algebra(G)):
        sym, comm = symmetric_central_algebra_test(H)
        assert sym == comm
