import json
import re
from importlib import resources

import jsonschema
import pytest

from autfn.catalog import octahedron_actions
from autfn.cli import main, strip_timing
from autfn.simplicial import actions_to_json, octahedron

REPORT_SCHEMA = json.loads(resources.files("autfn").joinpath("schemas/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def octa_files(tmp_path):
    o = octahedron()
    acts = octahedron_actions(o)
    (tmp_path / "oct.json").write_text(json.dumps(o.to_json()))
    (tmp_path / "inv.json").write_text(json.dumps(actions_to_json([acts[k] for k in ("refl_x", "rot_pi_z", "antipodal")])))
    (tmp_path / "pair.json").write_text(json.dumps(actions_to_json([acts["refl_x"], acts["refl_y"]])))
    (tmp_path / "rot3.json").write_text(json.dumps(actions_to_json([acts["rot3"]])))
    return tmp_path


def test_relations_report(capsys):
    code, out, _ = run(capsys, "relations", "--n", "4", "--m", "2")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert code == 0 and doc["summary"]["failed"] == 0
    assert doc["command"] == ["relations", "--n", "4", "--m", "2"]
    assert json.loads(json.dumps(doc)) == doc
    ids = [r["id"] for r in doc["results"]]
    assert ids == sorted(ids)


def test_text_and_json_list_the_same_checks(capsys):
    _, out_json, _ = run(capsys, "relations", "--n", "3", "--m", "2", "--check", "r_lemma.*")
    _, out_text, _ = run(capsys, "relations", "--n", "3", "--m", "2", "--check", "r_lemma.*", "--format", "text")
    ids_json = {r["id"] for r in json.loads(out_json)["results"]}
    ids_text = set(re.findall(r"^(?:PASS|FAIL|SKIP)\s+(\S+)", out_text, re.M))
    assert ids_json == ids_text and ids_json


def test_reports_identical_across_jobs(capsys):
    _, one, _ = run(capsys, "relations", "--n", "4", "--m", "2", "--jobs", "1")
    _, eight, _ = run(capsys, "relations", "--n", "4", "--m", "2", "--jobs", "8")
    a, b = strip_timing(json.loads(one)), strip_timing(json.loads(eight))
    a["command"] = b["command"] = None
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_unknown_check_is_usage_error(capsys):
    code, _, err = run(capsys, "relations", "--check", "nothing.*")
    assert code == 2 and "nothing" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--group", "saut", "--n", "3", "--space", "sphere", "--dim", "1", "--p", "2")
    assert code == 0 and json.loads(out)["verdict"] == "trivial_forced"
    _, out, _ = run(capsys, "oracle", "--group", "saut", "--n", "5", "--space", "sphere", "--dim", "3", "--p", "2")
    assert json.loads(out)["theorem"] == "sphere_Z2"
    code, _, _ = run(capsys, "oracle", "--group", "saut", "--n", "1", "--space", "sphere", "--dim", "0")
    assert code == 2


def test_effective(capsys):
    code, out, _ = run(capsys, "effective", "--p", "2", "--d", "4", "--space", "sphere", "--dim", "2")
    assert code == 0 and json.loads(out)["verdict"] == "ruled_out"


def test_homology(capsys, octa_files):
    code, out, _ = run(capsys, "homology", "--input", str(octa_files / "oct.json"), "--p", "2")
    assert code == 0 and json.loads(out) == {"p": 2, "betti": [1, 0, 1]}
    code, out, _ = run(capsys, "homology", "--builtin", "cone_octahedron", "--p", "3")
    assert json.loads(out)["betti"] == [1, 0, 0, 0]


def test_malformed_inputs(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "homology", "--input", str(bad))[0] == 2
    assert run(capsys, "homology", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "homology")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["homology", "--no-such-flag"])
    assert exc.value.code == 2


def test_smith_commands(capsys, octa_files):
    oct_ = str(octa_files / "oct.json")
    for action, check in (("inv.json", "fixed"), ("pair.json", "borel"), ("inv.json", "pairs"), ("pair.json", "free")):
        code, out, _ = run(capsys, "smith", "--input", oct_, "--action", str(octa_files / action), "--check", check)
        doc = json.loads(out)
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert code == 0 and doc["summary"]["passed"] >= 1, check
    code, out, _ = run(capsys, "smith", "--input", oct_, "--action", str(octa_files / "rot3.json"), "--p", "3")
    assert code == 0
    code, _, err = run(capsys, "smith", "--input", oct_, "--action", str(octa_files / "rot3.json"), "--p", "2")
    assert code == 2 and "order" in err


def test_smith_rejects_non_simplicial_action(capsys, octa_files):
    bad = octa_files / "bad_action.json"
    bad.write_text(json.dumps({"vertex_maps": [{"name": "bad", "map": [0, 2, 1, 3, 4, 5]}]}))
    code, _, err = run(capsys, "smith", "--input", str(octa_files / "oct.json"), "--action", str(bad))
    assert code == 2 and "NotSimplicial" in err


def test_matrix_group(capsys, monkeypatch):
    code, out, _ = run(capsys, "matrix-group", "--named", "sl", "--n", "3", "--p", "2", "--simple")
    doc = json.loads(out)
    assert code == 0 and "order=168" in doc["results"][0]["witness"]
    code, _, _ = run(capsys, "matrix-group", "--named", "sl", "--n", "2", "--p", "3", "--simple")
    assert code == 1
    code, out, _ = run(capsys, "matrix-group", "--gen", "L21", "--gen", "L31", "--n", "3")
    assert code == 0 and "elementary_abelian_rank=2" in json.loads(out)["results"][0]["witness"]
    code, out, _ = run(capsys, "matrix-group", "--named", "sl", "--n", "3", "--normal-closure", "1 1 0; 0 1 0; 0 0 1")
    assert "order=168" in json.loads(out)["results"][1]["witness"]
    monkeypatch.setenv("AUTFN_CAP", "20")
    code, _, err = run(capsys, "matrix-group", "--named", "sl", "--n", "3")
    assert code == 2 and "cap" in err


def test_subgroup(capsys):
    code, out, _ = run(capsys, "subgroup", "--n", "6", "R1", "R2", "R3")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 27 and doc["elementary_abelian_rank"]["3"] == 3
    code, _, _ = run(capsys, "subgroup", "--n", "2", "--cap", "50", "L12")
    assert code == 2


def test_graph_aut(capsys, tmp_path):
    code, out, _ = run(capsys, "graph-aut", "--builtin", "T2")
    doc = json.loads(out)
    assert code == 0 and doc["summary"] == {"passed": 2, "failed": 0, "skipped": 0}
    from autfn.graph import graph_to_json, t_graph, t_rotation

    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_to_json(t_graph(1), {"rot": t_rotation(1, 1)})))
    code, out, _ = run(capsys, "graph-aut", "--graph", str(path), "--symmetry", "rot", "--format", "text")
    assert code == 0 and "PASS  graph_aut.rot.in_T" in out
    assert run(capsys, "graph-aut", "--builtin", "T2", "--symmetry", "nope")[0] == 2
