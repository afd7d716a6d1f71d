import json
import random
import subprocess
import sys

import pytest

from widthlab import certificates as cert
from widthlab.cli import run
from widthlab.constructions import build_separator_graph
from widthlab.decomp import bfs_layering
from widthlab.errors import Verdict
from widthlab.graph import dumps
from widthlab.sampling import random_partition


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def doc(out: str):
    text = out.strip()
    assert text.count("\n") == 0, "stdout must hold a single JSON document"
    return json.loads(text)


@pytest.fixture
def k3(tmp_path, capsys):
    path = tmp_path / "k3.json"
    assert call(capsys, "gen", "complete", "--n", 3, "--out", path)[0] == 0
    return path


# ---------------------------------------------------------------- gen

def test_gen_separator_with_meta(tmp_path, capsys):
    out = tmp_path / "sep.json"
    code, stdout, err = call(capsys, "gen", "separator", "--s", 0, "--k", 1, "--w", 1, "--out", out)
    report = doc(stdout)
    assert code == 0 and report["n"] == 43 and "wrote" in err
    meta = json.loads((tmp_path / "sep.json.meta.json").read_text())
    assert meta["N"] == 6 and meta["n"] == 43 and len(meta["copy_offsets"]) == 6


def test_gen_dary_to_stdout(capsys):
    code, stdout, _ = call(capsys, "gen", "dary", "--d", 3, "--h", 2)
    assert code == 0 and doc(stdout)["n"] == 13


@pytest.mark.parametrize("argv", [
    ["gen", "complete", "--n", "0"],
    ["gen", "cycle", "--n", "2"],
    ["gen", "dary", "--d", "2"],
    ["gen", "wheel", "--n", "4"],
    ["compute", "tw"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, stdout, err = call(capsys, *argv)
    assert code == 2 and doc(stdout)["error"]["category"] == "input" and err


def test_gen_budget_exit_3(capsys):
    code, stdout, _ = call(capsys, "gen", "separator", "--s", 1, "--k", 2, "--budget", 1000)
    assert code == 3 and "predicted" in doc(stdout)["error"]["message"]


def test_gen_subdivide_and_product(tmp_path, capsys, k3):
    code, stdout, _ = call(capsys, "gen", "subdivide", "--graph", k3, "--s", 1)
    sub = doc(stdout)
    assert code == 0 and sub["kind"] == "subdivision" and sub["graph"]["n"] == 6
    code, stdout, _ = call(capsys, "gen", "product", "--a", k3, "--b", k3)
    assert code == 0 and doc(stdout)["n"] == 9 and len(doc(stdout)["edges"]) == 36


# ---------------------------------------------------------------- compute

@pytest.mark.parametrize("family,n,param,value", [
    ("complete", 5, "tw", 4), ("path", 6, "rtw", 0), ("complete", 6, "ltw", 3),
    ("complete", 4, "pw", 3), ("cycle", 5, "lpw", 2), ("complete", 4, "rpw", 1),
])
def test_compute(tmp_path, capsys, family, n, param, value):
    g = tmp_path / "g.json"
    call(capsys, "gen", family, "--n", n, "--out", g)
    code, stdout, _ = call(capsys, "compute", param, g)
    res = doc(stdout)
    assert code == 0 and res["param"] == param and res["value"] == value
    wit = tmp_path / "w.json"
    wit.write_text(json.dumps(res))
    code, stdout, _ = call(capsys, "verify", wit)
    assert code == 0 and doc(stdout)["valid"]


def test_compute_cap_exit_3(tmp_path, capsys):
    g = tmp_path / "g.json"
    call(capsys, "gen", "path", "--n", 12, "--out", g)
    code, stdout, _ = call(capsys, "compute", "ltw", g)
    assert code == 3 and doc(stdout)["error"]["type"] == "CapExceeded"
    assert call(capsys, "compute", "ltw", g, "--max-n", 12)[0] == 0


def test_compute_env_override(tmp_path, capsys, monkeypatch):
    g = tmp_path / "g.json"
    call(capsys, "gen", "path", "--n", 5, "--out", g)
    monkeypatch.setenv("WIDTHLAB_MAX_N", "4")
    assert call(capsys, "compute", "tw", g)[0] == 3


def test_compute_parse_error(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text('{"n": 2, "edges": [[0, 0]]}')
    code, stdout, _ = call(capsys, "compute", "tw", g)
    assert code == 2 and "$.edges[0]" in doc(stdout)["error"]["message"]


# ---------------------------------------------------------------- certify + verify

def test_certify_ltw1_then_contract(tmp_path, capsys, k3):
    c, s = tmp_path / "c.json", tmp_path / "s.json"
    code, stdout, _ = call(capsys, "certify", "ltw1", "--graph", k3, "--out", c, "--sub-out", s)
    assert code == 0 and doc(stdout)["width"] == 1
    assert doc(call(capsys, "verify", c)[1])["width"] == 1
    back = tmp_path / "back.json"
    code, stdout, _ = call(capsys, "certify", "contract", "--subdivision", s, "--decomposition", c, "--out", back)
    assert code == 0 and doc(stdout)["width"] <= 3


def test_certify_model_on_separator(tmp_path, capsys):
    m = tmp_path / "m.json"
    code, stdout, _ = call(capsys, "certify", "model", "--s", 0, "--k", 1, "--w", 1, "--out", m)
    assert code == 0 and doc(stdout)["t"] == 2
    report = doc(call(capsys, "verify", m)[1])
    assert report == {"kind": "minor_model", "valid": True, "width": 2}


def test_certify_model_with_partition_file(tmp_path, capsys):
    g, _ = build_separator_graph(0, 1, 1)
    layering = bfs_layering(g)
    hp = random_partition(random.Random(5), g, layering, 1, parts=8)
    part = tmp_path / "hp.json"
    part.write_bytes(dumps(cert.envelope(g, "h_partition", cert.hp_to_obj(hp, layering))))
    m = tmp_path / "m.json"
    code, stdout, _ = call(capsys, "certify", "model", "--s", 0, "--k", 1, "--partition", part, "--out", m)
    assert code == 0
    assert call(capsys, "verify", m)[0] == 0


def test_certify_product_to_layered(tmp_path, capsys):
    g = tmp_path / "k5.json"
    call(capsys, "gen", "complete", "--n", 5, "--out", g)
    res = tmp_path / "rtw.json"
    res.write_text(call(capsys, "compute", "rtw", g)[1])
    out = tmp_path / "ld.json"
    code, stdout, _ = call(capsys, "certify", "product-to-layered", "--embedding", res, "--out", out)
    assert code == 0 and doc(stdout)["width"] <= 3


def test_certify_tree_host(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, stdout, _ = call(capsys, "certify", "tree-host", "--h", 1, "--w", 1, "--ell", 2, "--out", out)
    assert code == 0 and doc(stdout)["d"] == 13
    assert call(capsys, "verify", out)[0] == 0


def test_certify_witness_budget(tmp_path, capsys):
    code, stdout, _ = call(capsys, "certify", "witness", "--k", 2, "--out", tmp_path / "w.json")
    assert code == 3 and doc(stdout)["error"]["type"] == "BudgetExceeded"


def test_certify_self_check_failure_exits_4(tmp_path, capsys, monkeypatch, k3):
    monkeypatch.setattr(cert, "verify_bytes", lambda data: Verdict.fail("forced", "simulated bug"))
    code, stdout, _ = call(capsys, "certify", "ltw1", "--graph", k3, "--out", tmp_path / "c.json")
    assert code == 4 and doc(stdout)["error"]["category"] == "internal"
    assert not (tmp_path / "c.json").exists()


def test_verify_after_deleting_bag_vertex(tmp_path, capsys):
    g = tmp_path / "c4.json"
    call(capsys, "gen", "cycle", "--n", 4, "--out", g)
    env = json.loads(call(capsys, "compute", "tw", g)[1])["witness"]
    bags = env["payload"]["bags"]
    # drop a vertex from a bag where it is the only cover of one of its edges
    edges = [tuple(e) for e in env["graph"]["edges"]]
    for x, bag in enumerate(bags):
        for v in bag:
            others = [b for y, b in enumerate(bags) if y != x]
            lost = [e for e in edges if v in e and set(e) <= set(bag) and not any(set(e) <= set(b) for b in others)]
            if lost and any(v in b for b in others):
                break
        else:
            continue
        break
    bag.remove(v)
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(env))
    code, stdout, err = call(capsys, "verify", f)
    report = doc(stdout)
    assert code == 1 and not report["valid"]
    assert report["violation"]["code"] == "edge-uncovered"
    assert tuple(report["violation"]["where"]["edge"]) == lost[0]
    assert "invalid" in err


def test_verify_truncated_exit_2(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text('{"graph": {"n": 3, "edges": [[0, 1]')
    assert call(capsys, "verify", f)[0] == 2


# ---------------------------------------------------------------- export

def test_export(tmp_path, capsys, k3):
    code, stdout, _ = call(capsys, "export", k3, "--dot")
    assert code == 0 and stdout.count(" -- ") == 3 and stdout.startswith("graph G {")
    sep = tmp_path / "sep.json"
    call(capsys, "gen", "separator", "--s", 0, "--k", 1, "--out", sep)
    stdout = call(capsys, "export", sep, "--dot")[1]
    assert sum(1 for line in stdout.splitlines() if line.strip().rstrip(";").isdigit()) == 43
    assert call(capsys, "export", tmp_path / "missing.json")[0] == 2


# ---------------------------------------------------------------- fresh process

def _cli(*argv, cwd):
    return subprocess.run([sys.executable, "-m", "widthlab.cli", *map(str, argv)], cwd=cwd,
                          capture_output=True, text=True)


def test_certificates_verify_in_fresh_process(tmp_path):
    steps = [
        ("certify", "witness", "--k", 1, "--out", "w.json", "--sub-out", "ws.json", "--meta-out", "wm.json"),
        ("gen", "complete", "--n", 3, "--out", "k3.json"),
        ("certify", "ltw1", "--graph", "k3.json", "--out", "c.json", "--sub-out", "s.json"),
        ("certify", "model", "--s", 0, "--k", 1, "--out", "m.json"),
        ("certify", "tree-host", "--h", 1, "--w", 1, "--ell", 2, "--out", "t.json"),
    ]
    for argv in steps:
        proc = _cli(*argv, cwd=tmp_path)
        assert proc.returncode == 0, proc.stderr
        json.loads(proc.stdout)
    for name in ["w.json", "ws.json", "c.json", "s.json", "m.json", "t.json"]:
        proc = _cli("verify", name, cwd=tmp_path)
        assert proc.returncode == 0, (name, proc.stdout, proc.stderr)
        assert json.loads(proc.stdout)["valid"]


def test_output_is_byte_stable(tmp_path):
    first = _cli("certify", "model", "--s", 0, "--k", 1, "--out", "a.json", cwd=tmp_path)
    second = _cli("certify", "model", "--s", 0, "--k", 1, "--out", "b.json", cwd=tmp_path)
    assert first.returncode == second.returncode == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
