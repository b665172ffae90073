import json

import pytest

from cohom32 import cli
from cohom32.config import ResourceCapError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_groups(capsys):
    code, out, _ = run(capsys, "groups", "list")
    assert code == 0 and "32G3f" in out and "Phi4" in out
    code, out, _ = run(capsys, "groups", "show", "32G3f")
    assert code == 0 and "f2^f1 = f2f3" in out
    code, out, _ = run(capsys, "--format", "json", "groups", "show", "D8")
    assert json.loads(out)["order"] == 8


def test_betti_text_and_progress(capsys):
    code, out, err = run(capsys, "betti", "D8", "--max-degree", "6", "--no-cache")
    assert code == 0
    assert out.strip() == "1 2 3 4 5 6 7"
    assert "b_6" in err


def test_cocycle_check(capsys):
    code, out, _ = run(capsys, "cocycle", "check", "32G3f", "y")
    assert code == 0 and out.strip().endswith("pass")


def test_restrict(capsys):
    code, out, _ = run(capsys, "restrict", "32G3f", "y", "--subgroup", "K")
    assert code == 0 and out.strip() == "res y = xi^3"
    code, out, _ = run(capsys, "restrict", "16G2c2", "u", "--subgroup", "S2")
    assert out.strip() == "res u = 0"


def test_hilbert(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("gens: u:1 v:1 w:2; rels: v^2+u*v\n")
    code, out, _ = run(capsys, "hilbert", "--presentation", str(f), "--max-degree", "5")
    assert code == 0 and out.strip() == "1 2 3 4 5 6"


def test_usage_errors(capsys):
    assert run(capsys, "betti", "Q17")[0] == 2
    assert run(capsys, "cocycle", "check", "D8", "nope")[0] == 2
    assert run(capsys, "restrict", "D8", "u", "--subgroup", "K")[0] == 2
    assert run(capsys, "hilbert", "--presentation", "/nonexistent/file")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_resource_cap_exit_code(capsys, monkeypatch):
    def boom(*a, **k):
        raise ResourceCapError("too big")

    monkeypatch.setattr(cli, "extend_resolution", boom)
    code, _, err = run(capsys, "betti", "Phi4", "--max-degree", "40")
    assert code == 3 and "too big" in err


def test_verify_paper(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, err = run(capsys, "verify-paper", "--max-degree", "8", "--report", str(report))
    # Sq^1(w) and Sq^2(uw) do not hold for the displayed D8 cocycle, so the suite exits 1
    assert code == 1
    assert "verdict: Result presentation confirmed" in out
    assert "running C1" in err
    doc = json.loads(report.read_text())
    assert [c["id"] for c in doc["checks"] if c["status"] == "fail"] == ["C6", "C16"]


def test_cache_info(capsys):
    code, out, _ = run(capsys, "cache", "info")
    assert code == 0 and "files" in out
