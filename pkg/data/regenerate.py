"""Rebuild the derived example files in this directory."""

import json
from pathlib import Path

import numpy as np

from crossext import io as jio
from crossext.crossed import pointed_crossed_from_matched_pair
from crossext.groups import cyclic, subgroup_closure, symmetric, alternating
from crossext.hopf import group_algebra, kac_bicrossed, kac_exact_sequence_data
from crossext.instances import a5_pair, s3_pair
from crossext.repth import fusion_ring_of_hopf

HERE = Path(__file__).parent


def write(name, obj):
    (HERE / name).write_text(json.dumps(obj, sort_keys=True) + "\n")


def rep_ring(G, labels):
    R, _ = fusion_ring_of_hopf(group_algebra(G))
    out = jio.dump_ring(R)
    out["labels"] = labels
    return out


s3_ambient = {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}
a5_ambient = {"degree": 5, "generators": [[1, 2, 3, 4, 0], [1, 2, 0, 3, 4], [1, 0, 3, 2, 4]]}
write("s3_pair.json", {"ambient": s3_ambient, "G": [[1, 0, 2]], "Gamma": [[1, 2, 0]]})
write("a5_pair.json", {"ambient": a5_ambient, "G": [[1, 2, 3, 4, 0]],
                       "Gamma": [[1, 2, 0, 3, 4], [1, 0, 3, 2, 4]]})
write("c2c2_trivial_pair.json", {"G": {"cyclic": 2}, "Gamma": {"cyclic": 2},
                                 "rhd": [[0, 1], [0, 1]], "lhd": [[0, 0], [1, 1]]})
write("s3_group.json", {"symmetric": 3})
write("z_s3_ring.json", rep_ring(symmetric(3), ["1", "sgn", "V"]))
write("z_a4_ring.json", rep_ring(alternating(4), ["1", "w", "w2", "V"]))
write("z_c4_ring.json", {"group_ring": {"cyclic": 4}})
write("crossed_s3.json", jio.dump_crossed(pointed_crossed_from_matched_pair(s3_pair()[0])))
write("ks3_hopf.json", {"group_algebra": {"symmetric": 3}})
write("fun_s3_hopf.json", {"function_algebra": {"symmetric": 3}})
write("kac_s3_hopf.json", jio.dump_hopf(kac_bicrossed(s3_pair()[0])))

# k < kC3 < kS3, elements of S3 indexed by sorted image arrays
S3 = symmetric(3)
c3 = subgroup_closure(S3, [S3.names.index((1, 2, 0))]).members
rows = lambda members: [[1 if j == i else 0 for j in range(6)] for i in members]
write("ks3_chain.json", {"hopf": {"group_algebra": {"symmetric": 3}},
                         "chain": [rows(range(6)), rows(c3), [[1, 0, 0, 0, 0, 0]]]})
write("ks3_bad_chain.json", {"hopf": {"group_algebra": {"symmetric": 3}},
                             "chain": [rows(range(6)), [[0, 1, 1, 0, 0, 0], [1, 0, 0, 0, 0, 0]],
                                       [[1, 0, 0, 0, 0, 0]]]})
a5_kac = {"ambient": a5_ambient, "G": [[1, 2, 3, 4, 0]], "Gamma": [[1, 2, 0, 3, 4], [1, 0, 3, 2, 4]]}
mp, _ = jio.load_matched_pair(a5_kac)
sub, _, _ = kac_exact_sequence_data(mp)
unit = [int(x) for x in kac_bicrossed(mp).u.num]
write("a5_chain.json", {"hopf": {"kac": a5_kac},
                        "chain": [np.eye(60, dtype=int).tolist(), sub.tolist(), [unit]]})
write("vect_s3_aut.json", {"vect_group": {"symmetric": 3}})
write("vect_c4_aut.json", {"vect_group": {"cyclic": 4}})
