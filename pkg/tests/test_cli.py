import io
import json
import subprocess
import sys

import pytest

from affine_fpf import cli
from affine_fpf.cli import ResultCache, run


def call(*argv, cache=None):
    out, err = io.StringIO(), io.StringIO()
    extra = ["--no-cache"] if cache is None else ["--cache-dir", str(cache)]
    code = run(list(argv) + extra, out, err)
    return code, out.getvalue(), err.getvalue()


def test_expand_json():
    code, out, _ = call("expand", "--w", "[3,0,5,2]", "--json")
    assert code == 0
    assert json.loads(out) == json.loads(call("expand", "--w", "[3,0,5,2]", "--json")[1])
    assert "4" in out


def test_text_outputs():
    assert call("expand", "--w", "[3,0,5,2]")[1].strip() == "m[2,2] + 2*m[2,1,1] + 4*m[1,1,1,1]"
    code, out, _ = call("fpf-expand", "--w", "t(1,6)t(3,8)", "--n", "4")
    assert code == 0 and out.strip() == "m[2,2] + 2*m[2,1,1] + 4*m[1,1,1,1]"


@pytest.mark.parametrize("argv", [
    ["fpf-expand", "--w", "[6,-3,8,-1]"],
    ["atoms", "--w", "[4,3,2,1]"],
    ["code", "--w", "[-3,3,4,6]"],
    ["code", "--w", "[6,-3,8,-1]", "--fpf"],
    ["shape", "--w", "[5,0,2,3]"],
    ["universe", "--n", "4", "--sign", "-", "--Lmax", "2"],
    ["qp-verify", "--n", "2", "--sign", "+", "--Lmax", "3"],
    ["bruhat", "--y", "[6,-3,8,-1]", "--z", "[4,-5,10,1]", "--fpf"],
    ["canonical-basis", "--n", "4", "--sign", "+", "--Lmax", "2"],
    ["wgraph-cells", "--n", "2", "--sign", "both", "--Lmax", "3"],
    ["transition", "fpf", "--y", "[6,-3,8,-1]", "--p", "1"],
    ["transition", "lam", "--w", "[3,0,5,2]", "--r", "1"],
    ["conjectures", "--n", "4", "--Dmax", "2"],
])
def test_verbs_succeed_and_are_byte_stable(argv):
    code, out, err = call(*argv, "--json")
    assert code == 0, err
    assert json.loads(out) is not None
    assert call(*argv, "--json")[1] == out


def test_specific_payloads():
    out = json.loads(call("atoms", "--w", "[4,3,2,1]", "--json")[1])
    assert len(out["atoms"]) == 2
    out = json.loads(call("bruhat", "--y", "[6,-3,8,-1]", "--z", "[4,-5,10,1]", "--fpf", "--json")[1])
    assert out["leq_F"] is True and out["leq"] is True
    out = json.loads(call("wgraph-cells", "--n", "2", "--sign", "both", "--Lmax", "3", "--json")[1])
    assert len(out["cells"]) == 2
    out = json.loads(call("code", "--w", "[6,-3,8,-1]", "--fpf", "--json")[1])
    assert out["code"] == [2, 0, 2, 0]


@pytest.mark.parametrize("argv", [
    ["expand", "--w", "[1,2,3,5]"],
    ["fpf-expand", "--w", "[1,2,3,4]"],
    ["transition", "fpf", "--y", "[6,-3,8,-1]", "--p", "2"],
    ["universe", "--n", "4", "--sign", "+", "--Lmax", "20"],
    ["universe", "--n", "6", "--sign", "+", "--Lmax", "6", "--max-elements", "10"],
    ["expand"],
    ["no-such-verb"],
])
def test_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""


def test_inequality_exits_1(monkeypatch):
    from affine_fpf.transition import check_transition_fpf
    from affine_fpf.symfunc import MonomialExpansion

    def broken(y, p):
        rep = check_transition_fpf(y, p)
        rep.right_sum = rep.right_sum + MonomialExpansion(4, 5, {(1,) * 5: 1})
        return rep

    monkeypatch.setattr(cli, "check_transition_fpf", broken)
    code, out, _ = call("transition", "fpf", "--y", "[6,-3,8,-1]", "--p", "1", "--json")
    assert code == 1 and json.loads(out)["equal"] is False


def test_cache_hit_and_audit(tmp_path, monkeypatch):
    monkeypatch.setenv("AFFINE_FPF_AUDIT", "1")
    argv = ["expand", "--w", "[3,0,5,2]", "--json"]
    code, first, _ = call(*argv, cache=tmp_path)
    files = list(tmp_path.rglob("*.json"))
    assert code == 0 and len(files) == 1
    assert call(*argv, cache=tmp_path)[1] == first
    # a tampered entry is caught by the audit and dropped
    entry = json.loads(files[0].read_text())
    entry["payload"] = {"tampered": True}
    files[0].write_text(json.dumps(entry))
    code, out, err = call(*argv, cache=tmp_path)
    assert code == 2 and "differs" in err and out == ""
    assert not files[0].exists()
    assert call(*argv, cache=tmp_path)[1] == first


def test_cache_key_canonical():
    a = ResultCache.key("expand", {"w": [3, 0, 5, 2]})
    assert a == ResultCache.key("expand", {"w": [3, 0, 5, 2]})
    assert a != ResultCache.key("expand", {"w": [3, 2, 5, 0]})


def test_cache_env(tmp_cache, monkeypatch):
    monkeypatch.setenv("AFFINE_FPF_AUDIT", "0")
    out, err = io.StringIO(), io.StringIO()
    assert run(["shape", "--w", "[5,0,2,3]"], out, err) == 0
    assert list(tmp_cache.rglob("*.json"))


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "affine_fpf.cli", "expand", "--w", "[3,0,5,2]",
                          "--no-cache"], capture_output=True, text=True)
    assert res.returncode == 0 and "4*m[1,1,1,1]" in res.stdout
