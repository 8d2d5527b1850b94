from __future__ import annotations

import json
import subprocess
import sys

import pytest

from catinterleave import DynSystem, chain_category
from catinterleave.cli import execute_command, main
from catinterleave.documents import Document, emit_document, parse_document
from catinterleave.futequiv import enumerate_future_equivalences
from catinterleave.metric import from_points_on_line

GRID = "0,1/2,1,3/2,2"


def put(path, doc: Document) -> str:
    path.write_text(emit_document(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def files(tmp_path):
    out = {
        "line": put(tmp_path / "line.json", Document("lawvere", from_points_on_line([0, 1, 3]))),
        "two": put(tmp_path / "s1.json", Document("dynsystem", DynSystem(["0", "1"], {"0": "1", "1": "1"}))),
        "one": put(tmp_path / "s2.json", Document("dynsystem", DynSystem(["1"], {"1": "1"}))),
    }
    c2 = chain_category(2)
    fes = enumerate_future_equivalences(c2, c2)
    for k, fe in enumerate(fes):
        out[f"fe{k}"] = put(tmp_path / f"fe{k}.json", Document("future-equivalence", fe))
    for name, birth in (("m0", "0"), ("m1", "1")):
        out[name] = str(tmp_path / f"{name}.json")
        assert execute_command(["zoo", "interval", "--values", GRID, "--birth", birth, "-o", out[name]])[0] == 0
    out["ieps"] = str(tmp_path / "ieps.json")
    assert execute_command(["zoo", "family", "--values", GRID, "--eps", "0,1/2,1", "-o", out["ieps"]])[0] == 0
    out["dir"] = tmp_path
    return out


def test_hausdorff_on_line(files, capsys):
    code, result = execute_command(["hausdorff", files["line"], "0", "3"])
    assert code == 0 and result["value"] == "3"
    assert capsys.readouterr().out.strip() == "3"
    assert execute_command(["hausdorff", files["line"], "0,1", "3", "--symmetric"])[1]["value"] == "3"
    assert execute_command(["hausdorff", files["line"], "0", "3", "--via-offsets"])[1]["value"] == "3"


def test_hausdorff_errors(files):
    assert execute_command(["hausdorff", files["line"], "", "3"])[0] == 2
    assert execute_command(["hausdorff", files["line"], "7", "3"])[0] == 2


def test_shift_equivalence_search(files, capsys):
    code, result = execute_command(["shift-equiv", files["two"], files["one"], "--lag", "1", "--search"])
    assert code == 0
    assert result["alpha"] == {"0": "1", "1": "1"} and result["beta"] == {"1": "1"}
    assert "alpha=" in capsys.readouterr().out
    assert execute_command(["shift-equiv", files["two"], files["one"], "--lag", "0"])[0] == 1


def test_shift_equivalence_check_and_bounds(files):
    args = ["shift-equiv", files["two"], files["one"], "--lag", "1"]
    assert execute_command(args + ["--alpha", '{"0": "1", "1": "1"}', "--beta", '{"1": "1"}'])[0] == 0
    assert execute_command(args + ["--alpha", '{"0": "1", "1": "1"}'])[0] == 2
    assert execute_command(args + ["--cap", "1"])[0] == 3


def test_distance_between_interval_modules(files, capsys):
    code, result = execute_command(["--json", "distance", files["m0"], files["m1"], "--family", files["ieps"]])
    assert code == 0
    assert result["value"] == "1" and result["witness_label"] == "I_1" and result["upper_bound"] is True
    printed = json.loads(capsys.readouterr().out)
    assert printed == {"command": "distance", "exit": 0, "value": "1", "witness": 2,
                       "witness_label": "I_1", "upper_bound": True}


def test_distance_without_witness_is_negative(files, tmp_path):
    small = str(tmp_path / "small.json")
    execute_command(["zoo", "family", "--values", GRID, "--eps", "0,1/2", "-o", small])
    code, result = execute_command(["distance", files["m0"], files["m1"], "--family", small])
    assert code == 1 and result["value"] == "inf"


def test_interleave_and_pushout(files, tmp_path):
    cospan = str(tmp_path / "i1.json")
    execute_command(["zoo", "iepsilon", "--values", GRID, "--eps", "1", "--windowed", "-o", cospan])
    ext = str(tmp_path / "ext.json")
    assert execute_command(["interleave", cospan, files["m0"], files["m1"], "-o", ext])[0] == 0
    assert execute_command(["interleave", cospan, files["m0"], files["m1"], "--extension", ext])[0] == 0
    assert execute_command(["interleave", cospan, files["m0"], files["m1"], "--search-cap", "0"])[0] == 3
    glued = str(tmp_path / "glued.json")
    code, result = execute_command(["pushout", cospan, cospan, "-o", glued])
    assert code == 0 and result["objects"] == 15
    assert parse_document(open(glued, encoding="utf-8").read()).kind == "cospan"


def test_fut_subcommands(files, tmp_path):
    assert execute_command(["fut", "validate", files["fe0"]])[0] == 0
    code, result = execute_command(["fut", "weight", files["fe1"]])
    assert code == 0 and set(result) >= {"W_eta", "W_nu", "omega"}
    comp = str(tmp_path / "comp.json")
    assert execute_command(["fut", "compose", files["fe1"], files["fe2"], "-o", comp])[0] == 0
    assert parse_document(open(comp, encoding="utf-8").read()).kind == "future-equivalence"
    phi = str(tmp_path / "phi.json")
    assert execute_command(["fut", "phi", files["fe1"], "-o", phi])[0] == 0
    assert execute_command(["validate", phi])[0] == 0
    assert execute_command(["fut", "compose", files["fe1"]])[0] == 2


def test_validate_exit_codes(files, tmp_path):
    assert execute_command(["validate", files["line"]])[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "lawvere", "points": ["x", "y", "z"], '
                   '"dist": [[0, 1, 10], [1, 0, 1], [10, 1, 0]]}', encoding="utf-8")
    code, result = execute_command(["validate", str(bad)])
    assert code == 2 and "triangle" in " ".join(result["violations"])
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert execute_command(["validate", str(broken)])[0] == 4
    assert execute_command(["validate", str(tmp_path / "missing.json")])[0] == 4
    assert execute_command(["hausdorff", files["two"], "0", "1"])[0] == 2


def test_zoo_outputs(files, tmp_path, capsys):
    assert execute_command(["zoo", "grid", "--values", "0,1"])[0] == 0
    assert parse_document(capsys.readouterr().out).kind == "category"
    assert execute_command(["zoo", "iepsilon", "--values", "0,1", "--mode", "Iae", "--eps", "1/2"])[0] == 2


def test_console_entry_point(files):
    assert main(["validate", files["line"]]) == 0
    proc = subprocess.run(
        [sys.executable, "-m", "catinterleave.cli", "--json", "hausdorff", files["line"], "0", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "3"
