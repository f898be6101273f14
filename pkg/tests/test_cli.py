import csv
import io
import json

import pytest

from friezegrowth.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_growth_json(capsys):
    code, out, _ = run(capsys, "growth", "-q", "1,2,6", "--k", "3")
    assert code == 0
    d = json.loads(out)
    assert d["s"] == ["2", "3", "7", "18"] and d["n_min"] == 3
    assert {c["name"] for c in d["checks"]} == {"lattice_equals_recursion", "closed_form", "chebyshev"}
    assert all(c["ok"] for c in d["checks"])


def test_growth_from_surface(capsys):
    code, out, _ = run(capsys, "growth", "-i", '{"fans":[{"n":4,"m":3}]}', "--k", "1")
    assert code == 0 and json.loads(out)["s"] == ["2", "14"]


def test_render_contains_figure(capsys):
    code, out, _ = run(capsys, "render", "-q", "1,2,6", "--rows", "12")
    assert code == 0
    assert "37 69 29" in " ".join(out.split())


def test_render_tsv_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "-q", "2,2,2,5", "--format", "tsv", "--window", "1,-6,8,20")
    assert code == 0
    path = tmp_path / "w.tsv"
    path.write_text(out)
    code, out2, _ = run(capsys, "verify", "--tsv", str(path), "--window", "2,-4,5,14")
    assert code == 0 and json.loads(out2)["ok"]


def test_classify_frieze(capsys):
    code, out, _ = run(capsys, "classify-frieze", "-q", "1,3,1,2,2", "--depth", "10")
    d = json.loads(out)
    assert code == 0 and d["class"] == "Finite" and d["order"] == 5


def test_classify_dynamics(capsys):
    code, out, _ = run(capsys, "classify-dynamics", "--r0", "5", "--r1", "1")
    d = json.loads(out)
    assert code == 0 and d["class"] == "Periodic" and d["period"] == 6
    assert d["pattern"] == ["5", "1", "-4", "-5", "-1", "4"]
    code, out, _ = run(capsys, "classify-dynamics", "--r0=-1", "--r1", "sqrt2")
    assert code == 0 and json.loads(out)["period"] == 8
    code, out, _ = run(capsys, "classify-dynamics", "--r0", "2", "--r1", "3")
    d = json.loads(out)
    assert d["class"] == "ExponentialGrowth" and d["rate"] == "3/2+1/2√5" and d["certificate_ok"]


def test_annulus(capsys):
    code, out, _ = run(capsys, "annulus", "--fans", "4:3")
    d = json.loads(out)
    assert code == 0
    assert d["s_q"] == d["s_q_continuant"] == d["s_q_sum_formula"] == "14"
    assert all(c["ok"] for c in d["checks"])
    surface = {"fans": [{"n": 1, "m": 1}, {"n": 1, "m": 1}],
            "glue_ops": [{"boundary": "outer", "index": 2}, {"boundary": "outer", "index": 1},
                         {"boundary": "outer", "index": 1}]}
    code, out, _ = run(capsys, "annulus", "-i", json.dumps(surface))
    d = json.loads(out)
    assert code == 0 and d["glued"]["outer"] == "6,1,2,5,1" and d["s_q"] == "7"


def test_glue_and_cut(capsys):
    code, out, _ = run(capsys, "glue", "-q", "6,1,2,5,1", "--index", "1")
    d = json.loads(out)
    assert code == 0 and d["output"] == "7,1,2,2,5,1" and d["s_q"] == "7"
    code, out, _ = run(capsys, "cut", "-q", "7,1,2,2,5,1", "--index", "2")
    assert code == 0 and json.loads(out)["output"] == "6,1,2,5,1"
    code, _, err = run(capsys, "cut", "-q", "1,2,6", "--index", "2")
    assert code == 2 and err.startswith("error:")


def test_verify_and_perturb(capsys):
    code, out, _ = run(capsys, "verify", "-q", "1,2,6")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "verify", "-q", "1,2,6", "--perturb", "2,5,1")
    d = json.loads(out)
    assert code == 1 and not d["ok"]
    assert any(c["name"] == "diamond" and not c["ok"] for c in d["checks"])


@pytest.mark.parametrize("argv", [
    ["growth", "-q", "1,x"],
    ["growth"],
    ["classify-dynamics", "--r0", "1", "--r1", "1", "--K", "5"],
    ["classify-frieze", "-q", "1,2,6", "--depth", "2"],
    ["verify", "-q", "1,2,6", "--window", "1,2"],
    ["annulus", "--fans", "0:1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--r0=-1:1:1", "--r1", "0,1,2,3", "--K", "24")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 12
    assert rows[0].keys() == {"r0", "r1", "class", "period", "rate_numeric", "certificate_ok"}
    by = {(r["r0"], r["r1"]): r for r in rows}
    assert by["0", "1"]["period"] == "6"
    assert by["1", "3"]["class"] == "ExponentialGrowth"


def test_determinism(capsys):
    for argv in (["growth", "-q", "sqrt2,sqrt2,3", "--k", "6"],
                 ["sweep", "--r0", "0:2:1/2", "--r1", "1,5/2", "--workers", "3"],
                 ["render", "-q", "1,2,6"]):
        first = run(capsys, *argv)[1]
        assert first == run(capsys, *argv)[1]
