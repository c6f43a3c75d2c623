import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossext.groups import (ActionError, GroupError, SizeBoundError, all_subgroups, alternating,
                             center, check_right_action, conjugacy_class_count, cyclic,
                             direct_product, from_permutation_generators, from_table,
                             generating_set, is_subgroup, orbits_and_stabilizers,
                             subgroup_as_group, subgroup_closure, symmetric, trivial_group)


def test_permutation_convention():
    S3 = symmetric(3)
    assert S3.identity == 0 and S3.names[0] == (0, 1, 2)
    a, b = S3.names.index((1, 0, 2)), S3.names.index((1, 2, 0))
    # (p o q)[i] = p[q[i]]
    ab = S3.names[S3.mul[a, b]]
    assert ab == tuple((1, 0, 2)[(1, 2, 0)[i]] for i in range(3))


def test_orders_and_validity():
    assert alternating(5).order == 60 and alternating(5).validation_witness() is None
    assert symmetric(4).order == 24
    assert not symmetric(3).is_abelian() and cyclic(7).is_abelian()
    assert trivial_group().order == 1


def test_subgroup_counts():
    # frozen from a two-generator closure enumeration in plain Python
    assert len(all_subgroups(symmetric(3))) == 6
    assert len(all_subgroups(alternating(5))) == 59


def test_center_and_classes():
    assert center(direct_product(cyclic(2), cyclic(4))).order == 8
    assert center(symmetric(3)).members == (0,)
    assert conjugacy_class_count(alternating(5)) == 5
    assert conjugacy_class_count(symmetric(3)) == 3


def test_bad_tables_are_rejected():
    with pytest.raises(GroupError):
        from_table([[0, 1], [0, 1]])
    with pytest.raises(GroupError):
        from_table([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_size_bound():
    with pytest.raises(SizeBoundError):
        from_permutation_generators(8, [[1, 2, 3, 4, 5, 6, 7, 0], [1, 0, 2, 3, 4, 5, 6, 7]])


def test_subgroup_helpers():
    S3 = symmetric(3)
    c3 = subgroup_closure(S3, [S3.names.index((1, 2, 0))])
    assert c3.order == 3 and is_subgroup(S3, c3.members)
    assert is_subgroup(S3, (0, 1)) and not is_subgroup(S3, (0, 3))
    H, emb = subgroup_as_group(c3)
    assert H.order == 3 and emb[H.identity] == S3.identity
    assert generating_set(S3) and subgroup_closure(S3, generating_set(S3)).order == 6


def test_right_action_checks():
    C2 = cyclic(2)
    with pytest.raises(ActionError):
        check_right_action(C2, [[1, 0], [0, 1]])
    orbs = orbits_and_stabilizers(C2, [[0, 0], [1, 2], [2, 1]])
    assert [(o.points, o.stabilizer_order, o.class_count) for o in orbs] == [((0,), 2, 2), ((1, 2), 1, 1)]


@given(st.integers(1, 12))
def test_cyclic_is_valid(n):
    G = cyclic(n)
    assert G.validation_witness() is None
    assert all(G.power_order(a) * np.gcd(a, n) == n for a in range(n))


@given(st.integers(1, 5), st.integers(1, 5))
def test_direct_product_orders(a, b):
    P = direct_product(cyclic(a), symmetric(min(b, 3)))
    assert P.order == a * symmetric(min(b, 3)).order
    assert P.validation_witness() is None


@given(st.permutations(range(5)), st.permutations(range(5)))
def test_generated_subgroup_is_closed(p, q):
    G = from_permutation_generators(5, [p, q])
    assert G.validation_witness() is None
    assert G.order in {1, 2, 3, 4, 5, 6, 8, 10, 12, 20, 24, 60, 120}
