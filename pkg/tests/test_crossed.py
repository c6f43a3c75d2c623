import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossext.crossed import (CrossedActionData, CrossedActionError, EquivariantObject,
                              base_neutral_component, decompose_equivariant, dual_graded_ring,
                              equivariant_simples, equivariant_witness, equivariantization_ring,
                              hom_equivariant, induced_object, neutral_component,
                              pointed_crossed_from_matched_pair, regular_object,
                              tensor_equivariant, unit_object, verify_crossed_action)
from crossext.groups import (alternating, conjugacy_class_count, cyclic, orbits_and_stabilizers,
                             symmetric, trivial_group)
from crossext.hopf import group_algebra
from crossext.matched import MatchedPair, bicrossed_group, trivial_pair, verify_matched_pair
from crossext.repth import fusion_ring_of_hopf
from crossext.rings import (BasedRing, based_ring_isomorphism, check_grading, group_ring,
                            is_faithful, upper_central_series, verify_based_ring)


def rep_s3() -> BasedRing:
    entries = [(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (1, 0, 1, 1), (1, 1, 0, 1),
               (1, 2, 2, 1), (2, 0, 2, 1), (2, 1, 2, 1), (2, 2, 0, 1), (2, 2, 1, 1), (2, 2, 2, 1)]
    return BasedRing.from_sparse(("1", "sgn", "V"), 0, (0, 1, 2), entries)


def one_dim(d, s):
    dims = [0] * d.mp.Gamma.order
    dims[s] = 1
    return EquivariantObject(d, tuple(dims), np.ones((d.mp.G.order, 1, 1)))


def test_verify_examples(s3_instance):
    d = pointed_crossed_from_matched_pair(trivial_pair(cyclic(2), cyclic(3)))
    assert verify_crossed_action(d).valid
    mp = s3_instance[0]
    d = pointed_crossed_from_matched_pair(mp)
    assert d.rho.tolist() == [[0, 1, 2], [0, 2, 1]]
    assert verify_crossed_action(d).valid
    frozen = CrossedActionData(mp, d.ring, d.deg, np.tile(np.arange(3), (2, 1)))
    rep = verify_crossed_action(frozen)
    assert not rep.valid
    assert any(w["identity"] == "degree of rho^g(x) is deg(x) <| g" for w in rep.witnesses)


def test_a5_crossed_action(a5_instance):
    assert verify_crossed_action(pointed_crossed_from_matched_pair(a5_instance[0])).valid


def test_invalid_pair_rejected():
    mp = trivial_pair(cyclic(2), cyclic(3))
    lhd = mp.lhd.copy()
    lhd[1, 1] = 2
    with pytest.raises(CrossedActionError):
        pointed_crossed_from_matched_pair(MatchedPair(mp.G, mp.Gamma, mp.rhd, lhd))


def test_twisted_multiplicativity_witness():
    # C2 acting on Z[C4] by a permutation that is not a ring automorphism
    mp = trivial_pair(cyclic(2), trivial_group())
    rho = np.array([[0, 1, 2, 3], [0, 2, 1, 3]])
    rep = verify_crossed_action(CrossedActionData(mp, group_ring(cyclic(4)), (0, 0, 0, 0), rho))
    assert not rep.valid
    assert rep.witnesses[0]["identity"] == "twisted multiplicativity"
    inv = np.array([[0, 1, 2, 3], [0, 3, 2, 1]])
    assert verify_crossed_action(CrossedActionData(mp, group_ring(cyclic(4)), (0, 0, 0, 0), inv)).valid


def test_tensor_unit_and_points(s3_instance):
    d = pointed_crossed_from_matched_pair(s3_instance[0])
    U = unit_object(d)
    X = induced_object(d, 1)
    UX = tensor_equivariant(d, U, X)
    assert UX.graded_dims == X.graded_dims and np.allclose(UX.R, X.R)
    a = one_dim(d, 0)
    P = tensor_equivariant(d, a, a)
    assert P.graded_dims == (1, 0, 0)
    d2 = pointed_crossed_from_matched_pair(trivial_pair(cyclic(1), cyclic(3)))
    P = tensor_equivariant(d2, one_dim(d2, 1), one_dim(d2, 2))
    assert P.graded_dims == (1, 0, 0)


def test_hom_examples(s3_instance):
    d = pointed_crossed_from_matched_pair(s3_instance[0])
    U = unit_object(d)
    assert hom_equivariant(d, U, U) == 1
    simples = equivariant_simples(d)
    for S in simples:
        assert hom_equivariant(d, S, S) == 1
    A, B = induced_object(d, 0), induced_object(d, 1)
    assert hom_equivariant(d, A, B) == 0


def test_regular_object_s3(s3_instance):
    mp = s3_instance[0]
    d = pointed_crossed_from_matched_pair(mp)
    parts = decompose_equivariant(d, regular_object(d))
    assert [(S.dim, S.support(), m) for S, m in parts] == [(1, (0,), 1), (1, (0,), 1), (2, (1, 2), 1)]
    orbits = orbits_and_stabilizers(mp.G, mp.lhd)
    assert len(parts) == sum(o.class_count for o in orbits)
    assert decompose_equivariant(d, unit_object(d))[0][1] == 1


def test_trivial_gamma_gives_class_count():
    for G in (symmetric(3), alternating(4)):
        d = pointed_crossed_from_matched_pair(trivial_pair(G, trivial_group()))
        assert len(decompose_equivariant(d, regular_object(d))) == conjugacy_class_count(G)


def test_equivariantization_examples(s3_instance):
    d = pointed_crossed_from_matched_pair(trivial_pair(cyclic(2), trivial_group()))
    R, _ = equivariantization_ring(d)
    assert based_ring_isomorphism(R, group_ring(cyclic(2))) is not None
    d = pointed_crossed_from_matched_pair(trivial_pair(trivial_group(), cyclic(3)))
    R, _ = equivariantization_ring(d)
    assert based_ring_isomorphism(R, group_ring(cyclic(3))) is not None
    R, simples = equivariantization_ring(pointed_crossed_from_matched_pair(s3_instance[0]))
    assert based_ring_isomorphism(R, rep_s3()) is not None
    oracle, _ = fusion_ring_of_hopf(group_algebra(symmetric(3)))
    assert based_ring_isomorphism(R, oracle) is not None


def test_dual_graded_ring_pointed(s3_instance):
    mp, L = s3_instance
    d = pointed_crossed_from_matched_pair(mp)
    R, gr = dual_graded_ring(d)
    assert verify_based_ring(R).valid and check_grading(R, gr) and is_faithful(gr)
    assert based_ring_isomorphism(R, group_ring(L)) is not None
    assert neutral_component(gr) == (0,) == base_neutral_component(d)


def test_dual_graded_ring_trivial_grading():
    mp = trivial_pair(cyclic(2), trivial_group())
    d = CrossedActionData(mp, rep_s3(), (0, 0, 0), np.tile(np.arange(3), (2, 1)))
    assert verify_crossed_action(d).valid
    R, gr = dual_graded_ring(d)
    assert verify_based_ring(R).valid and check_grading(R, gr)
    assert neutral_component(gr) == (0, 1, 2)
    # (e, V)(e, V) = (e,1) + (e,sgn) + (e,V); (g, 1)(g, 1) = (e, 1)
    assert R.support(2, 2) == (0, 1, 2) and R.support(3, 3) == (0,)


def test_equivariant_validation(s3_instance):
    d = pointed_crossed_from_matched_pair(s3_instance[0])
    X = induced_object(d, 1)
    assert equivariant_witness(X) is None
    bad = EquivariantObject(d, X.graded_dims, X.R[::-1].copy())
    assert equivariant_witness(bad) is not None
    with pytest.raises(CrossedActionError):
        EquivariantObject(d, (1, 1), np.ones((2, 2, 2)))


def test_tensor_associativity(s3_instance):
    d = pointed_crossed_from_matched_pair(s3_instance[0])
    simples = equivariant_simples(d)
    for X, Y, Z in itertools.product(simples, repeat=3):
        left = tensor_equivariant(d, tensor_equivariant(d, X, Y), Z)
        right = tensor_equivariant(d, X, tensor_equivariant(d, Y, Z))
        assert left.graded_dims == right.graded_dims
        assert equivariant_witness(left) is None and equivariant_witness(right) is None
        assert [hom_equivariant(d, S, left) for S in simples] == [hom_equivariant(d, S, right) for S in simples]


@pytest.mark.parametrize("ng,ns", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_crossed_check_equals_matched_check_exhaustive(ng, ns):
    G, S = cyclic(ng), cyclic(ns)
    R = group_ring(S)
    for rv in itertools.product(range(ng), repeat=ns * ng):
        rhd = np.array(rv).reshape(ns, ng)
        for lv in itertools.product(range(ns), repeat=ns * ng):
            mp = MatchedPair(G, S, rhd, np.array(lv).reshape(ns, ng))
            d = CrossedActionData(mp, R, tuple(range(ns)), mp.lhd.T)
            assert verify_crossed_action(d).valid == verify_matched_pair(mp).valid


@given(st.data())
def test_crossed_check_on_sampled_c3_c3_tables(data):
    G = S = cyclic(3)
    ints = st.lists(st.integers(0, 2), min_size=9, max_size=9)
    mp = MatchedPair(G, S, np.array(data.draw(ints)).reshape(3, 3), np.array(data.draw(ints)).reshape(3, 3))
    d = CrossedActionData(mp, group_ring(S), (0, 1, 2), mp.lhd.T)
    assert verify_crossed_action(d).valid == verify_matched_pair(mp).valid


@given(st.sampled_from([symmetric(3), cyclic(4), cyclic(6), alternating(4)]), st.data())
def test_pointed_constructions(L, data):
    from crossext.matched import enumerate_exact_factorizations
    _, _, mp = data.draw(st.sampled_from(enumerate_exact_factorizations(L)))
    d = pointed_crossed_from_matched_pair(mp)
    assert verify_crossed_action(d).valid
    R, simples = equivariantization_ring(d)
    assert sum(S.dim ** 2 for S in simples) == L.order
    D, gr = dual_graded_ring(d)
    assert check_grading(D, gr) and is_faithful(gr)
    assert upper_central_series(D).nil_class <= 1
    assert based_ring_isomorphism(D, group_ring(bicrossed_group(mp))) is not None
