import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossext.groups import alternating, center, cyclic, direct_product, symmetric, subgroup_closure
from crossext.hopf import function_algebra, group_algebra, kac_bicrossed
from crossext.repth import (AutGradingError, AutGradingInput, HModule, aut_grading,
                            conjugation_perm, decompose_module, fusion_ring_of_hopf,
                            hom_space, kernel_simples, left_integral, module_witness,
                            regular_module, restrict, simple_modules, tensor_modules,
                            trivial_module, vect_group_model)
from crossext.rings import (BasedRing, based_ring_isomorphism, check_grading, fp_dimensions,
                            verify_based_ring)

S3 = symmetric(3)
C3_IN_S3 = subgroup_closure(S3, [S3.names.index((1, 2, 0))]).members


def rep_s3() -> BasedRing:
    entries = [(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (1, 0, 1, 1), (1, 1, 0, 1),
               (1, 2, 2, 1), (2, 0, 2, 1), (2, 1, 2, 1), (2, 2, 0, 1), (2, 2, 1, 1), (2, 2, 2, 1)]
    return BasedRing.from_sparse(("1", "sgn", "V"), 0, (0, 1, 2), entries)


def rows(idx, d):
    return [[int(j == i) for j in range(d)] for i in idx]


def test_regular_and_trivial_modules():
    H = group_algebra(cyclic(2))
    M = regular_module(H)
    assert M.dim == 2 and module_witness(M) is None
    assert hom_space(H, M, trivial_module(H)) == 1


def test_integral_of_group_algebra():
    lam = left_integral(group_algebra(S3))
    assert all(x == lam[0] for x in lam) and sum(lam) == 1


def test_regular_s3_decomposition():
    H = group_algebra(S3)
    parts = decompose_module(H, regular_module(H))
    assert [(S.dim, m) for S, m in parts] == [(1, 1), (1, 1), (2, 2)]


def test_v_tensor_v():
    H = group_algebra(S3)
    one, sgn, V = simple_modules(H)
    parts = decompose_module(H, tensor_modules(H, V, V))
    assert [(S.dim, m) for S, m in parts] == [(1, 1), (1, 1), (2, 1)]
    assert np.allclose(parts[1][0].character(), sgn.character())


def test_restriction():
    H = group_algebra(S3)
    M = restrict(H, rows(C3_IN_S3, 6), regular_module(H))
    assert M.dim == 6
    parts = decompose_module(M.parent, M)
    assert [(S.dim, m) for S, m in parts] == [(1, 2), (1, 2), (1, 2)]
    U = restrict(H, rows([0], 6), regular_module(H))
    assert np.allclose(U.action[0], np.eye(6))


def test_kernel_simples():
    H = group_algebra(S3)
    simples = simple_modules(H)
    assert kernel_simples(H, rows(C3_IN_S3, 6), simples) == [0, 1]
    assert kernel_simples(H, rows([0], 6), simples) == [0, 1, 2]


def test_kernel_of_kac_exact_sequence(s3_instance):
    mp = s3_instance[0]
    K = kac_bicrossed(mp)
    simples = simple_modules(K)
    ng = mp.G.order
    fun_part = rows([t * ng + mp.G.identity for t in range(mp.Gamma.order)], K.dim)
    ker = kernel_simples(K, fun_part, simples)
    # the kernel of restriction to the normal subalgebra is Rep of the quotient kG
    assert sum(simples[k].dim ** 2 for k in ker) == mp.G.order
    group_part = [[int(i % ng == g) for i in range(K.dim)] for g in range(ng)]
    assert kernel_simples(K, group_part, simples) == [0]


def test_kac_s3_ring_matches_rep_s3(s3_instance):
    R, simples = fusion_ring_of_hopf(kac_bicrossed(s3_instance[0]))
    assert [S.dim for S in simples] == [1, 1, 2]
    assert based_ring_isomorphism(R, rep_s3()) is not None


def test_kac_a5_simples(kac_a5):
    simples = simple_modules(kac_a5)
    # orbit-stabilizer count: two fixed points with stabilizer C5, two free orbits of size 5
    assert sorted(S.dim for S in simples) == [1] * 10 + [5] * 2
    assert sum(S.dim ** 2 for S in simples) == 60
    five = [S for S in simples if S.dim == 5][0]
    assert tensor_modules(kac_a5, five, five).dim == 25


def test_trivial_is_tensor_unit():
    H = group_algebra(alternating(4))
    simples = simple_modules(H)
    T = trivial_module(H)
    for M in simples:
        TM = tensor_modules(H, T, M)
        assert [hom_space(H, S, TM) for S in simples] == [hom_space(H, S, M) for S in simples]


def test_module_validation():
    H = group_algebra(cyclic(3))
    bad = HModule(H, np.stack([np.eye(2), np.diag([1, -1]), np.eye(2)]))
    assert module_witness(bad) is not None
    with pytest.raises(ValueError):
        HModule(H, np.zeros((2, 2, 2)))


def test_aut_grading_vect_s3():
    G = S3
    out = aut_grading(vect_group_model(G))
    assert out.grading_checked
    for h in range(G.order):
        assert out.automorphisms[h] == conjugation_perm(G, h)
    assert out.neutral == center(G).members == (0,)


def test_aut_grading_vect_c4():
    out = aut_grading(vect_group_model(cyclic(4)))
    assert out.aut_group.order == 1
    assert out.neutral == (0, 1, 2, 3) == center(cyclic(4)).members


def test_aut_grading_diagonal_blocks():
    G = S3
    inp = AutGradingInput(G, tuple(range(6)), [[(g, g) for g in range(6)]] * 3)
    out = aut_grading(inp)
    assert out.aut_group.order == 1 and out.neutral == (0, 1, 2)


def test_aut_grading_rejects_bad_blocks():
    G = cyclic(3)
    with pytest.raises(AutGradingError):
        aut_grading(AutGradingInput(G, (0, 1, 2), [[(0, 0), (1, 0), (2, 2)]]))
    # a bijection that is not a homomorphism
    with pytest.raises(AutGradingError):
        aut_grading(AutGradingInput(G, (0, 1, 2), [[(0, 1), (1, 0), (2, 2)]]))


groups = st.sampled_from([cyclic(2), cyclic(3), symmetric(3), direct_product(cyclic(2), cyclic(2)),
                          alternating(4)])


@given(groups, st.integers(0, 2**16))
def test_group_algebra_fusion_rings(G, seed):
    R, simples = fusion_ring_of_hopf(group_algebra(G), seed=seed)
    assert verify_based_ring(R).valid
    assert sum(S.dim ** 2 for S in simples) == G.order
    # characters of a group commute
    assert np.array_equal(R.N, R.N.transpose(1, 0, 2))
    assert np.allclose(sorted(fp_dimensions(R)), sorted(S.dim for S in simples))


@given(groups, st.integers(0, 2**16))
def test_seed_stability(G, seed):
    H = group_algebra(G)
    a = [(S.dim, m, tuple(np.round(S.character(), 6))) for S, m in decompose_module(H, regular_module(H), 0)]
    b = [(S.dim, m, tuple(np.round(S.character(), 6))) for S, m in decompose_module(H, regular_module(H), seed)]
    assert a == b


@given(groups)
def test_function_algebra_is_pointed(G):
    R, simples = fusion_ring_of_hopf(function_algebra(G))
    assert all(S.dim == 1 for S in simples) and R.rank == G.order


@given(st.sampled_from([symmetric(3), alternating(4), cyclic(6)]))
def test_aut_grading_is_inner_and_grades(G):
    out = aut_grading(vect_group_model(G))
    assert check_grading(vect_group_model(G).ring, out.grading)
    assert set(out.neutral) == set(center(G).members)
    R = vect_group_model(G).ring
    for x in range(G.order):
        assert out.grading.deg[R.dual[x]] == out.aut_group.inv[out.grading.deg[x]]
