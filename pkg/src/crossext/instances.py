"""Named example data used by the tests, the CLI and the benchmarks."""

from __future__ import annotations

from .groups import (CayleyGroup, cyclic, from_permutation_generators,
                     subgroup_closure)
from .matched import MatchedPair, from_exact_factorization, trivial_pair


def _index_of(L: CayleyGroup, perm) -> int:
    return L.names.index(tuple(perm))


def s3_ambient() -> CayleyGroup:
    return from_permutation_generators(3, [[1, 0, 2], [1, 2, 0]])


def s3_pair() -> tuple[MatchedPair, CayleyGroup]:
    """S3 = <(0 1)> <(0 1 2)>: G = C2 acting trivially, Gamma = C3 inverted by G."""
    L = s3_ambient()
    Gs = subgroup_closure(L, [_index_of(L, [1, 0, 2])])
    Ss = subgroup_closure(L, [_index_of(L, [1, 2, 0])])
    return from_exact_factorization(L, Gs, Ss), L


def a5_ambient() -> CayleyGroup:
    return from_permutation_generators(5, [[1, 2, 3, 4, 0], [1, 2, 0, 3, 4], [1, 0, 3, 2, 4]])


def a5_pair() -> tuple[MatchedPair, CayleyGroup]:
    """A5 = C5 * A4 with G = <(0 1 2 3 4)> and Gamma = A4 fixing the point 4."""
    L = a5_ambient()
    Gs = subgroup_closure(L, [_index_of(L, [1, 2, 3, 4, 0])])
    Ss = subgroup_closure(L, [_index_of(L, [1, 2, 0, 3, 4]), _index_of(L, [1, 0, 3, 2, 4])])
    return from_exact_factorization(L, Gs, Ss), L


def trivial_c2c2() -> MatchedPair:
    return trivial_pair(cyclic(2), cyclic(2))
