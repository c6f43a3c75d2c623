"""Time the compiled kernels against the numpy fallback on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from crossext import _kernels_py as pure
from crossext.groups import alternating, symmetric
from crossext.hopf import kac_bicrossed, violation_args
from crossext.instances import a5_pair
from crossext.rings import group_ring

try:
    from crossext import _kernels as compiled
except ImportError:
    compiled = None


def workloads():
    S5 = symmetric(5)
    mp, _ = a5_pair()
    N = group_ring(alternating(4)).N
    rng = np.random.default_rng(0)
    A = rng.standard_normal((120, 160)) + 1j * rng.standard_normal((120, 160))
    A[60:] = rng.standard_normal((60, 60)) @ A[:60]
    hargs = violation_args(kac_bicrossed(mp))
    return {
        "assoc_witness (S5 table)": ("assoc_witness", (np.ascontiguousarray(S5.mul),)),
        "matched_witnesses (A5 = C5 A4)": ("matched_witnesses", (mp.G.mul, mp.Gamma.mul, mp.rhd, mp.lhd,
                                                                 mp.G.identity, mp.Gamma.identity, 8)),
        "fusion_assoc_witness (Z[A4])": ("fusion_assoc_witness", (np.ascontiguousarray(N),)),
        "eliminate (120x160 complex, rank 60)": ("eliminate", (A, 1e-10)),
        "hopf_violation (Kac A5, dim 60)": ("hopf_violation", hargs),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':42s} {'pure (ms)':>11s} {'cython (ms)':>12s} {'speedup':>8s}")
    for label, (name, fargs) in workloads().items():
        tp = min(timeit.repeat(lambda: getattr(pure, name)(*fargs), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{label:42s} {tp * 1e3:11.2f} {'n/a':>12s}")
            continue
        tc = min(timeit.repeat(lambda: getattr(compiled, name)(*fargs), number=1, repeat=args.repeat))
        print(f"{label:42s} {tp * 1e3:11.2f} {tc * 1e3:12.2f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
