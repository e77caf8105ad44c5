import json
import subprocess
import sys

import pytest

from commlen.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_json(capsys):
    code, out, _ = run(capsys, "construct", "--n", "15", "--N", "5", "--fmt", "json")
    data = json.loads(out)
    assert code == 0 and data["certificate"]["ok"] and data["certificate"]["genus"] == 5


def test_construct_refuses_odd_N_even_n(capsys):
    code, _, err = run(capsys, "construct", "--n", "4", "--N", "3")
    assert code == 2 and "N odd, n even: use decompose" in err


def test_construct_tikz(capsys):
    code, out, _ = run(capsys, "construct", "--n", "3", "--N", "3", "--fmt", "tikz")
    assert code == 0 and "\\begin{tikzpicture}" in out and out.startswith("% certificate")


def test_construct_svg_embeds_certificate(capsys):
    code, out, _ = run(capsys, "construct", "--n", "5", "--N", "4", "--fmt", "svg")
    assert code == 0 and "<!-- certificate" in out


@pytest.mark.parametrize("n,N,count", [("3", "3", 1), ("8", "4", 3), ("5", "9", 3), ("6", "inf", 4)])
def test_decompose(capsys, n, N, count):
    code, out, _ = run(capsys, "decompose", "--n", n, "--N", N)
    assert code == 0 and f"count {count} " in out and "verified true" in out


def test_decompose_json(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "10", "--N", "5", "--M", "10", "--fmt", "json")
    data = json.loads(out)
    assert code == 0 and data["ctx"] == {"N": 5, "M": 10} and data["optimal"]


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "decompose", "--n", "0", "--N", "3")[0] == 2
    assert run(capsys, "decompose", "--n", "3", "--N", "5", "--M", "3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["decompose", "--n", "3", "--N", "x"])
    assert exc.value.code == 2


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "7", "--N", "3,inf", "--csv")
    rows = [r.split(",") for r in out.strip().splitlines()]
    assert code == 0 and rows[0] == ["n", "N=3", "N=inf"]
    assert rows[7] == ["7", "2", "4"] and rows[1] == ["1", "1", "1"]


def test_table_verify_tags(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "4", "--N", "2,3", "--verify")
    assert code == 0 and "closed-form-N2" in out and "!" not in out


@pytest.mark.parametrize("suite", ["identities", "figures", "search-evidence"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite)
    items = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and items and all(i["ok"] and i["suite"] == suite for i in items)


def test_verify_small_grids(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "extraction-grid", "--n-max", "10")
    assert code == 0 and len(out.splitlines()) > 10


def test_verify_lists_culler_and_fig4(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "identities")
    assert "culler cube" in out and "Z3 cube" in out
    _, out, _ = run(capsys, "verify", "--suite", "figures")
    assert "fig4 l(p1)" in out


def test_render_files(capsys, tmp_path):
    built = tmp_path / "d.json"
    assert run(capsys, "construct", "--n", "7", "--N", "4", "--out", str(built))[0] == 0
    code, out, _ = run(capsys, "render", str(built), "--fmt", "text")
    assert code == 0 and "genus=3" in out
    from commlen.figures import FIGURE_DIR
    code, out, _ = run(capsys, "render", str(FIGURE_DIR / "fig1_torus.json"), "--fmt", "svg")
    assert code == 0 and out.startswith("<svg")


def test_render_rejects_failing_certificate(capsys, tmp_path):
    built = tmp_path / "d.json"
    run(capsys, "construct", "--n", "7", "--N", "4", "--out", str(built))
    data = json.loads(built.read_text())
    data["certificate"]["ok"] = False
    built.write_text(json.dumps(data))
    assert run(capsys, "render", str(built))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "render", str(bad))[0] == 2


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("COMMLEN_OUT_DIR", str(tmp_path))
    assert run(capsys, "decompose", "--n", "3", "--N", "3", "--out", "x/dec.txt")[0] == 0
    assert (tmp_path / "x" / "dec.txt").read_text().startswith("a")


def test_search(capsys):
    code, out, err = run(capsys, "search", "--target", "[a,t]^3", "--genus", "1")
    assert code == 0 and json.loads(out)["status"] == "completed-empty"
    code, out, _ = run(capsys, "search", "--target", "(ab)^3", "--genus", "1", "--N", "3", "--M", "3")
    assert code == 0 and json.loads(out)["status"] == "found"
    code, out, _ = run(capsys, "search", "--target", "[a,t]^5", "--genus", "2", "--time-budget", "1e-9")
    assert code == 1 and json.loads(out)["status"] == "budget-exhausted"
    assert run(capsys, "search", "--target", "a^2", "--genus", "0")[0] == 2
    assert run(capsys, "search", "--target", "a^(", "--genus", "0")[0] == 2


def test_search_is_deterministic(capsys):
    outs = {run(capsys, "search", "--target", "[a,t]^3", "--genus", "2")[1] for _ in range(2)}
    assert len(outs) == 1


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "commlen.cli", "table", "--n-max", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("n")
