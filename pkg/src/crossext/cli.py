"""Command line front end.

Every subcommand writes a report ``{command, inputs, result, witnesses,
provenance}``. Exit status is 0 when the checked statement holds, 1 when it
was verified to fail and 2 on input or numerical errors.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io as jio
from .linalg import Tolerance

OK, FALSE, ERROR = 0, 1, 2


class Outcome:
    def __init__(self, ok: bool, result: dict, witnesses: list | None = None):
        self.ok = ok
        self.result = result
        self.witnesses = witnesses or []


def _r(x: float) -> float:
    return float(round(float(x), 10)) + 0.0


def _ring_summary(R, simples=None) -> dict:
    from .rings import fp_dimensions
    out = jio.dump_ring(R)
    out["rank"] = R.rank
    out["fp_dimensions"] = [_r(v) for v in fp_dimensions(R)]
    if simples is not None:
        out["simple_dimensions"] = [int(S.dim) for S in simples]
    return out


def _group_summary(G) -> dict:
    return {"order": G.order, "abelian": G.is_abelian(), "table": G.mul.tolist()}


# ---------------------------------------------------------------- pipelines

def cmd_verify_matched_pair(args, tol) -> Outcome:
    from .matched import verify_matched_pair
    mp, _ = jio.load_matched_pair(jio.read_json(args.inputs[0]))
    rep = verify_matched_pair(mp)
    res = {"valid": rep.valid, "message": "valid" if rep.valid else "invalid",
           "orders": [mp.G.order, mp.Gamma.order], "bijective": rep.bijective}
    return Outcome(rep.valid, res, rep.witnesses + rep.bijectivity_witnesses)


def cmd_factorize(args, tol) -> Outcome:
    from .matched import enumerate_exact_factorizations
    L = jio.load_group(jio.read_json(args.inputs[0]))
    facts = enumerate_exact_factorizations(L, bound=args.bound)
    res = {"order": L.order, "count": len(facts),
           "factorizations": [{"G": list(A.members), "Gamma": list(B.members),
                               "rhd": mp.rhd.tolist(), "lhd": mp.lhd.tolist()} for A, B, mp in facts]}
    return Outcome(True, res)


def cmd_bicrossed_group(args, tol) -> Outcome:
    from .matched import bicrossed_group, embedding_is_isomorphism
    mp, L = jio.load_matched_pair(jio.read_json(args.inputs[0]))
    B = bicrossed_group(mp)
    res = _group_summary(B)
    ok = True
    if L is not None:
        iso = embedding_is_isomorphism(mp, L)
        res["isomorphic_to_ambient"] = iso
        ok = iso
    return Outcome(ok, res)


def cmd_kac(args, tol) -> Outcome:
    from .hopf import (exact_sequence_check, is_cocommutative, is_commutative,
                       kac_candidate, kac_exact_sequence_data, verify_hopf_axioms)
    from .matched import verify_matched_pair
    mp, _ = jio.load_matched_pair(jio.read_json(args.inputs[0]))
    H = kac_candidate(mp.G, mp.Gamma, mp.rhd, mp.lhd)
    rep = verify_hopf_axioms(H)
    mrep = verify_matched_pair(mp)
    res = {"dim": H.dim, "hopf_axioms": rep.valid, "matched_pair": mrep.valid}
    if not rep.valid:
        return Outcome(False, res, rep.witnesses)
    res["commutative"] = is_commutative(H)
    res["cocommutative"] = is_cocommutative(H)
    sub, pi, kG = kac_exact_sequence_data(mp)
    ex = exact_sequence_check(H, sub, pi, kG)
    res["exact_sequence"] = ex.valid
    if args.fusion:
        from .repth import fusion_ring_of_hopf
        R, simples = fusion_ring_of_hopf(H, args.seed, tol)
        res["fusion"] = _ring_summary(R, simples)
    return Outcome(ex.valid, res, ex.witnesses)


def cmd_equivariantize(args, tol) -> Outcome:
    from .crossed import equivariantization_ring, verify_crossed_action
    d = jio.load_crossed(jio.read_json(args.inputs[0]))
    rep = verify_crossed_action(d)
    if not rep:
        return Outcome(False, {"crossed_action": False}, rep.witnesses)
    R, simples = equivariantization_ring(d, args.seed, tol)
    res = {"crossed_action": True, "ring": _ring_summary(R, simples),
           "sum_fp_squared": int(sum(S.dim ** 2 for S in simples))}
    return Outcome(True, res)


def cmd_dual_ring(args, tol) -> Outcome:
    from .crossed import (base_neutral_component, dual_graded_ring, neutral_component,
                          verify_crossed_action)
    from .rings import grading_witness, is_faithful, verify_based_ring
    d = jio.load_crossed(jio.read_json(args.inputs[0]))
    rep = verify_crossed_action(d)
    if not rep:
        return Outcome(False, {"crossed_action": False}, rep.witnesses)
    R, gr = dual_graded_ring(d)
    rr = verify_based_ring(R)
    gw = grading_witness(R, gr)
    res = {"ring": jio.dump_ring(R), "based_ring": rr.valid, "grading": list(gr.deg),
           "grading_valid": gw is None, "faithful": is_faithful(gr),
           "neutral": list(neutral_component(gr)), "base_neutral": list(base_neutral_component(d))}
    wit = list(rr.witnesses) + ([{"grading": [gw[0], np.asarray(gw[1]).tolist()]}] if gw else [])
    return Outcome(rr.valid and gw is None, res, wit)


def cmd_nilpotency(args, tol) -> Outcome:
    from .rings import upper_central_series, verify_based_ring
    R = jio.load_ring(jio.read_json(args.inputs[0]))
    rep = verify_based_ring(R)
    if not rep:
        return Outcome(False, {"based_ring": False, "message": "not a based ring"}, rep.witnesses)
    cs = upper_central_series(R)
    if cs.nilpotent:
        msg = f"nilpotent of class {cs.nil_class}"
    else:
        msg = f"not nilpotent, series stabilizes at step {cs.stabilized_at}"
    res = {"nilpotent": cs.nilpotent, "class": cs.nil_class, "message": msg,
           "series": [list(c) for c in cs.chain]}
    return Outcome(cs.nilpotent, res)


def cmd_hopf_verify(args, tol) -> Outcome:
    from .hopf import is_cocommutative, is_commutative, verify_hopf_axioms
    H = jio.load_hopf(jio.read_json(args.inputs[0]))
    rep = verify_hopf_axioms(H)
    res = {"dim": H.dim, "valid": rep.valid}
    if rep.valid:
        res.update(commutative=is_commutative(H), cocommutative=is_cocommutative(H))
    return Outcome(rep.valid, res, rep.witnesses)


def cmd_subnormal_series(args, tol) -> Outcome:
    from .hopf import verify_subnormal_series
    chain, upper = jio.load_chain(jio.read_json(args.inputs[0]))
    cert = verify_subnormal_series(chain)
    res = {"certified": cert.certified, "series": "upper (via dual)" if upper else "lower",
           "factors": cert.factors}
    return Outcome(cert.certified, res, [cert.failure] if cert.failure else [])


def cmd_char_sym(args, tol) -> Outcome:
    from .hopf import symmetric_central_algebra_test
    H = jio.load_hopf(jio.read_json(args.inputs[0]))
    sym, comm = symmetric_central_algebra_test(H)
    res = {"symmetric_half_braiding": sym, "commutative": comm, "equivalent": sym == comm}
    return Outcome(sym == comm, res)


def cmd_aut_grading(args, tol) -> Outcome:
    from .groups import center
    from .repth import aut_grading
    inp = jio.load_aut_input(jio.read_json(args.inputs[0]))
    out = aut_grading(inp)
    res = {"automorphisms": [list(a) for a in out.automorphisms],
           "degrees": list(out.grading.deg), "image_order": out.aut_group.order,
           "neutral": list(out.neutral), "grading_checked": out.grading_checked,
           "trivial": out.aut_group.order == 1,
           "center": list(center(inp.group).members)}
    return Outcome(True, res)


def cmd_ring_iso(args, tol) -> Outcome:
    from .rings import based_ring_isomorphism
    if len(args.inputs) != 2:
        raise jio.InputError("inputs", "ring-iso needs two ring files")
    R = jio.load_ring(jio.read_json(args.inputs[0]), "ring[0]")
    S = jio.load_ring(jio.read_json(args.inputs[1]), "ring[1]")
    phi = based_ring_isomorphism(R, S, timeout_ms=args.timeout_ms)
    res = {"isomorphic": phi is not None, "bijection": list(phi) if phi is not None else None}
    return Outcome(phi is not None, res)


COMMANDS = {
    "verify-matched-pair": (cmd_verify_matched_pair, "check the matched-pair identities"),
    "factorize": (cmd_factorize, "enumerate exact factorizations of a group"),
    "bicrossed-group": (cmd_bicrossed_group, "build the bicrossed product group"),
    "kac": (cmd_kac, "build and verify the bicrossed Hopf algebra"),
    "equivariantize": (cmd_equivariantize, "fusion ring of the equivariantization"),
    "dual-ring": (cmd_dual_ring, "graded ring over the bicrossed group"),
    "nilpotency": (cmd_nilpotency, "upper central series of a based ring"),
    "hopf-verify": (cmd_hopf_verify, "check the Hopf algebra axioms"),
    "subnormal-series": (cmd_subnormal_series, "certify a subnormal series"),
    "char-sym": (cmd_char_sym, "symmetric half-braiding versus commutativity"),
    "aut-grading": (cmd_aut_grading, "automorphism grading from half-braiding blocks"),
    "ring-iso": (cmd_ring_iso, "based-ring isomorphism search"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crossext", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("inputs", nargs="+", help="input JSON file(s)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol-pivot", type=float, default=1e-9)
        sp.add_argument("--tol-round", type=float, default=1e-6)
        sp.add_argument("--timeout-ms", type=int, default=10_000)
        sp.add_argument("--format", choices=("json", "md"), default="json")
        sp.add_argument("--out", help="write the report here instead of stdout")
        if name == "kac":
            sp.add_argument("--fusion", action="store_true", help="also compute the fusion ring")
        if name == "factorize":
            sp.add_argument("--bound", type=int, default=120)
    return p


def _hash(path: str) -> str:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return ""


def _markdown(report: dict) -> str:
    lines = [f"# crossext {report['command']}", "", f"status: **{report['status']}**", ""]

    def walk(obj, indent):
        pad = "  " * indent
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, dict):
                lines.append(f"{pad}- {k}:")
                walk(v, indent + 1)
            else:
                lines.append(f"{pad}- {k}: `{jio.json.dumps(v, sort_keys=True)}`")
    lines.append("## Result")
    walk(report["result"], 0)
    lines += ["", "## Witnesses"]
    lines += [f"- `{jio.json.dumps(w, sort_keys=True)}`" for w in report["witnesses"]] or ["- none"]
    lines += ["", "## Provenance"]
    walk(report["provenance"], 0)
    return "\n".join(lines) + "\n"


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return _r(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, float):
        return _r(x)
    return x


def run(argv=None) -> tuple[int, str, bool]:
    """Run one pipeline; returns exit status, rendered report and whether it went to a file."""
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        tol = Tolerance(pivot_eps=args.tol_pivot, round_eps=args.tol_round)
    except ValueError as exc:
        tol, err = None, str(exc)
    report = {"command": args.command, "inputs": list(args.inputs), "result": {}, "witnesses": []}
    if tol is not None:
        try:
            out = func(args, tol)
            code = OK if out.ok else FALSE
            report["result"], report["witnesses"] = out.result, out.witnesses
        except jio.InputError as exc:
            code = ERROR
            report["result"] = {"error": "input", "message": str(exc), "field": exc.where}
        except (ArithmeticError, ValueError, TimeoutError, RuntimeError) as exc:
            code = ERROR
            report["result"] = {"error": type(exc).__name__, "message": str(exc)}
    else:
        code = ERROR
        report["result"] = {"error": "input", "message": err, "field": "tolerance"}
    report["status"] = {OK: "true", FALSE: "false", ERROR: "error"}[code]
    report["provenance"] = {
        "version": __version__, "seed": args.seed,
        "tolerances": tol.as_dict() if tol is not None else None,
        "timeout_ms": args.timeout_ms,
        "input_sha256": {Path(p).name: _hash(p) for p in args.inputs},
    }
    report = _plain(report)
    text = jio.canonical_json(report) if args.format == "json" else _markdown(report)
    if args.out:
        Path(args.out).write_text(text)
    return code, text, bool(args.out)


def main(argv=None) -> int:
    code, text, to_file = run(argv)
    if not to_file:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
