import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crossext import io as jio
from crossext.cli import main, run
from crossext.crossed import pointed_crossed_from_matched_pair
from crossext.groups import cyclic, symmetric
from crossext.hopf import function_algebra, group_algebra, kac_bicrossed
from crossext.instances import s3_pair
from crossext.repth import vect_group_model
from crossext.rings import group_ring

DATA = Path(__file__).resolve().parent.parent / "data"


def cli(*argv):
    code, text, _ = run([str(a) for a in argv])
    return code, json.loads(text)


def test_round_trips(tmp_path):
    mp, _ = s3_pair()
    back, _ = jio.load_matched_pair(jio.dump_matched_pair(mp))
    assert np.array_equal(back.rhd, mp.rhd) and np.array_equal(back.lhd, mp.lhd)
    R = group_ring(symmetric(3))
    S = jio.load_ring(jio.dump_ring(R))
    assert np.array_equal(S.N, R.N) and S.dual == R.dual
    H = kac_bicrossed(mp)
    K = jio.load_hopf(json.loads(json.dumps(jio.dump_hopf(H))))
    for k in ("m", "u", "delta", "eps", "S"):
        assert getattr(K, k).equals(getattr(H, k))
    d = pointed_crossed_from_matched_pair(mp)
    e = jio.load_crossed(jio.dump_crossed(d))
    assert np.array_equal(e.rho, d.rho) and e.deg == d.deg
    a = jio.load_aut_input(jio.dump_aut_input(vect_group_model(symmetric(3))))
    assert a.sigma_blocks == vect_group_model(symmetric(3)).sigma_blocks


def test_parse_errors_name_the_field(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"G": {"cyclic": 2},\n "Gamma": ')
    code, rep = cli("verify-matched-pair", p)
    assert code == 2 and "line 2" in rep["result"]["message"]
    p.write_text(json.dumps({"G": {"cyclic": 2}, "Gamma": {"cyclic": 2}, "rhd": [[0, 1], [0, 1]]}))
    code, rep = cli("verify-matched-pair", p)
    assert code == 2 and "lhd" in rep["result"]["message"]
    p.write_text(json.dumps({"dim": 1, "m": [[0, 0, 0, "x/y"]], "u": [], "delta": [], "eps": [], "S": []}))
    code, rep = cli("hopf-verify", p)
    assert code == 2 and rep["result"]["field"].startswith("hopf.m[0]")


def test_documented_examples():
    code, rep = cli("verify-matched-pair", DATA / "s3_pair.json")
    assert code == 0 and rep["result"]["message"] == "valid"
    code, rep = cli("kac", DATA / "s3_pair.json", "--fusion", "--format", "json")
    assert code == 0 and rep["result"]["dim"] == 6 and rep["result"]["fusion"]["rank"] == 3
    code, rep = cli("nilpotency", DATA / "z_s3_ring.json")
    assert code == 1 and rep["result"]["message"] == "not nilpotent, series stabilizes at step 1"


def test_report_schema_and_provenance():
    code, rep = cli("nilpotency", DATA / "z_c4_ring.json", "--seed", "3", "--tol-pivot", "1e-8")
    assert set(rep) == {"command", "inputs", "result", "witnesses", "provenance", "status"}
    prov = rep["provenance"]
    assert prov["seed"] == 3 and prov["tolerances"]["pivot_eps"] == 1e-8
    assert len(prov["input_sha256"]["z_c4_ring.json"]) == 64
    assert code == 0 and rep["result"]["class"] == 1


@pytest.mark.parametrize("argv,code", [
    (["factorize", "s3_group.json"], 0),
    (["bicrossed-group", "a5_pair.json"], 0),
    (["equivariantize", "s3_pair.json"], 0),
    (["equivariantize", "crossed_s3.json"], 0),
    (["dual-ring", "s3_pair.json"], 0),
    (["hopf-verify", "kac_s3_hopf.json"], 0),
    (["subnormal-series", "ks3_chain.json"], 0),
    (["subnormal-series", "ks3_bad_chain.json"], 1),
    (["char-sym", "ks3_hopf.json"], 0),
    (["aut-grading", "vect_s3_aut.json"], 0),
    (["aut-grading", "vect_c4_aut.json"], 0),
    (["ring-iso", "z_s3_ring.json", "z_a4_ring.json"], 1),
    (["ring-iso", "z_s3_ring.json", "z_s3_ring.json"], 0),
    (["nilpotency", "z_a4_ring.json"], 1),
    (["nilpotency", "z_c4_ring.json"], 0),
    (["subnormal-series", "a5_chain.json"], 0),
    (["verify-matched-pair", "c2c2_trivial_pair.json"], 0),
    (["dual-ring", "c2c2_trivial_pair.json"], 0),
    (["hopf-verify", "ks3_hopf.json"], 0),
    (["hopf-verify", "fun_s3_hopf.json"], 0),
    (["char-sym", "fun_s3_hopf.json"], 0),
    (["ring-iso", "z_c4_ring.json", "z_c4_ring.json"], 0),
])
def test_pipelines(argv, code):
    got, rep = cli(argv[0], *[DATA / a for a in argv[1:]])
    assert got == code
    if code == 1:
        assert rep["witnesses"] or "message" in rep["result"] or rep["result"].get("isomorphic") is False


def test_failure_reports_carry_witnesses():
    code, rep = cli("subnormal-series", DATA / "ks3_bad_chain.json")
    assert rep["witnesses"][0]["condition"] == "not a Hopf subalgebra"


def test_markdown_and_out(tmp_path, capsys):
    out = tmp_path / "r.md"
    assert main(["aut-grading", str(DATA / "vect_s3_aut.json"), "--format", "md", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# crossext aut-grading") and "## Provenance" in text
    assert capsys.readouterr().out == ""


def test_byte_identical_reruns():
    for argv in (["kac", DATA / "s3_pair.json", "--fusion"], ["equivariantize", DATA / "s3_pair.json"]):
        a = run([str(x) for x in argv])[1]
        b = run([str(x) for x in argv])[1]
        assert a == b


def test_bad_tolerance_is_an_input_error():
    code, rep = cli("nilpotency", DATA / "z_c4_ring.json", "--tol-pivot", "-1")
    assert code == 2 and rep["result"]["field"] == "tolerance"


@given(st.sampled_from([cyclic(2), cyclic(5), symmetric(3)]))
def test_hopf_json_round_trip(G):
    for H in (group_algebra(G), function_algebra(G)):
        K = jio.load_hopf(json.loads(jio.canonical_json(jio.dump_hopf(H))))
        assert K.m.equals(H.m) and K.S.equals(H.S)
