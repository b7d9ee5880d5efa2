import json
import random
import subprocess
import sys

import pytest

from gen import random_surface, random_sym_tensor, random_tangent_frame
from pertdef.cli import main
from pertdef.files import format_tensor

CIRCLE = {"N": 2, "n": 1, "k": 2, "F": "(x1^2 + x2^2 - 1)/2", "x_star": ["1", "0"], "tangent_frame": [["0", "1"]]}


def run(capsys, tmp_path, args, data, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    code = main([args[0], str(path), *args[1:]])
    out, err = capsys.readouterr()
    return code, out, err


def test_pert_solve_circle(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, ["pert-solve"], CIRCLE)
    assert code == 0
    chart = json.loads(out)
    assert chart["ring"] == {"type": "pert", "n": 1, "k": 2}
    assert chart["coordinates"] == [{"": "1", "l1^2": "-1/2"}, {"l1": "1"}]
    assert chart["provenance"]["command"] == "pert-solve"
    assert len(chart["provenance"]["input_sha256"]) == 64


def test_def_chart_embed_retract_chain(capsys, tmp_path):
    prob = {**CIRCLE, "seeds": [[{"": ["0", "1"]}], [{"": ["0", "1"]}]]}
    code, out, _ = run(capsys, tmp_path, ["def-chart"], prob)
    assert code == 0
    dchart = json.loads(out)
    assert dchart["coordinates"] == [{"": "1", "e1_1*e2_1": "-1"}, {"e1_1": "1", "e2_1": "1"}]
    code, out, _ = run(capsys, tmp_path, ["retract"], dchart, "d.json")
    assert code == 0
    pchart = json.loads(out)
    assert pchart["coordinates"] == [{"": "1", "l1^2": "-1/2"}, {"l1": "1"}]
    code, out, _ = run(capsys, tmp_path, ["embed"], pchart, "p.json")
    assert json.loads(out)["coordinates"] == dchart["coordinates"]


def test_def_chart_from_params(capsys, tmp_path):
    prob = {**CIRCLE, "params": {"A": {"1|1,1": "2"}}}
    code, out, _ = run(capsys, tmp_path, ["def-chart"], prob)
    assert code == 0
    # the tangential part -A e of the eps1 eps2 coefficient
    assert json.loads(out)["coordinates"][1]["e1_1*e2_1"] == "-2"


def test_symmetrize_and_guard(capsys, tmp_path):
    chart = {"ring": {"type": "def", "n": 1, "k": 2}, "coordinates": [{"e1_1": "1"}]}
    code, out, _ = run(capsys, tmp_path, ["symmetrize"], chart)
    assert code == 0
    assert json.loads(out)["coordinates"] == [{"e1_1": "1/2", "e2_1": "1/2"}]
    code, _, err = run(capsys, tmp_path, ["symmetrize", "--max-k", "1"], chart)
    assert code == 3
    assert json.loads(err)["error"]["category"] == "precondition"
    code, _, err = run(capsys, tmp_path, ["retract"], chart)
    assert code == 3


def test_residual(capsys, tmp_path):
    chart = {"ring": {"type": "pert", "n": 1, "k": 3}, "coordinates": [{"": "1"}, {"l1": "1"}]}
    cpath = tmp_path / "chart.json"
    cpath.write_text(json.dumps(chart))
    code, out, _ = run(capsys, tmp_path, ["residual", "--chart", str(cpath)], CIRCLE)
    assert code == 0
    res = json.loads(out)
    assert res["residual"] == {"l1^2": "1/2"}
    assert res["is_zero"] is False


def _quadric_problem(seed=0):
    rng = random.Random(seed)
    surf = random_surface(rng, 4)
    frame = random_tangent_frame(rng, surf, 2)
    return {
        "N": 4, "n": 2, "k": 3,
        "F": str(surf.F),
        "x_star": [str(x) for x in surf.x],
        "tangent_frame": [[str(x) for x in v] for v in frame],
        "params": {"A": format_tensor(random_sym_tensor(rng, 2, 3)), "B": format_tensor(random_sym_tensor(rng, 2, 4))},
    }


def test_verify_theorem_quadric(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, ["verify-theorem"], _quadric_problem())
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"] == "all checks passed"


def test_beta_gamma_commands(capsys, tmp_path):
    prob = {"n": 1, "k": 1, "family": {"udot": {"1|1,1": "3"}}}
    code, out, _ = run(capsys, tmp_path, ["beta"], prob)
    assert code == 0
    assert json.loads(out)["beta"] == {"l1": {"l1^2": "3"}}
    code, out, _ = run(capsys, tmp_path, ["gamma"], prob)
    assert json.loads(out)["gamma"] == {"f1": {"f1": {"l1": "6"}}}
    code, out, _ = run(capsys, tmp_path, ["gamma-beta-check"], prob)
    assert code == 0
    rep = json.loads(out)
    assert rep["factor"] == 2 and rep["observed_ratios"] == ["2"] and rep["passed"]


@pytest.mark.parametrize("data, category, code", [
    ({"N": 2, "n": 1, "k": 2, "F": "x1 x2", "x_star": ["0", "0"]}, "parse", 2),
    ({"N": 2, "n": 1, "k": 2, "F": "x1^2 + x2^2", "x_star": ["0", "0"]}, "precondition", 3),
    ({"n": 1, "k": 2}, "parse", 2),
])
def test_error_categories(capsys, tmp_path, data, category, code):
    got, out, err = run(capsys, tmp_path, ["pert-solve"], data)
    assert got == code
    assert out == ""
    assert json.loads(err)["error"]["category"] == category


def test_io_error(capsys, tmp_path):
    assert main(["pert-solve", str(tmp_path / "missing.json")]) == 4
    assert json.loads(capsys.readouterr().err)["error"]["category"] == "io"


def test_bad_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["embed", str(path)]) == 2


def test_out_flag(capsys, tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(CIRCLE))
    dest = tmp_path / "out.json"
    assert main(["pert-solve", str(path), "--out", str(dest)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(dest.read_text())["coordinates"][1] == {"l1": "1"}


def test_subprocess_stdin_and_determinism():
    text = json.dumps(_quadric_problem(3))
    outs = []
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "pertdef", "pert-solve", "-"], input=text,
                              capture_output=True, text=True, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["ring"]["k"] == 3
