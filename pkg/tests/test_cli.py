import json

import pytest

from magmakit import io
from magmakit.actions import semidirect, trivial_action
from magmakit.cli import main
from magmakit.sweeps import specific_noncomposable_pair


def write(path, doc):
    path.write_text(io.dumps(doc))
    return str(path)


@pytest.fixture
def action_file(tmp_path):
    return write(tmp_path / "act.json", {"B": "Z2", "X": "Z2", "table": [[0, 1], [0, 0]]})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_prints_count(capsys):
    assert run(capsys, "enumerate", "--kind", "magma", "--order", "3") == (0, "81\n", "")


def test_enumerate_json_and_dump(capsys, tmp_path):
    dump = tmp_path / "m.jsonl"
    code, out, _ = run(capsys, "enumerate", "--kind", "magma", "--order", "2", "--up-to-iso", "--json", "-o", str(dump))
    assert code == 0
    assert json.loads(out)["count"] == 2
    lines = dump.read_text().splitlines()
    assert [json.loads(l)["table"] for l in lines] == [[[0, 1], [1, 0]], [[0, 1], [1, 1]]]
    code, out, _ = run(capsys, "enumerate", "--kind", "monoid", "--order", "3")
    assert out == "11\n"
    code, out, _ = run(capsys, "enumerate", "--order", "3", "--associative", "--up-to-iso")
    assert out == "7\n"


def test_compose_witness_pair(capsys, tmp_path):
    f, e = specific_noncomposable_pair()
    outer = write(tmp_path / "F.json", io.to_json(f))
    inner = write(tmp_path / "E.json", io.to_json(e))
    code, out, err = run(capsys, "compose", "--outer", outer, "--inner", inner)
    assert code == 1
    assert json.loads(out)["witness"] == [1, 1, 1]
    assert "(1, 1, 1)" in err
    pair = write(tmp_path / "pair.json", {"outer": io.to_json(f), "inner": io.to_json(e)})
    assert run(capsys, "compose", pair)[0] == 1


def test_compose_composable_emits_composite(capsys, tmp_path):
    f, _ = specific_noncomposable_pair()
    e = semidirect(trivial_action(f.a, f.x)).extension
    pair = write(tmp_path / "pair.json", {"outer": io.to_json(f), "inner": io.to_json(e)})
    out_path = tmp_path / "g.json"
    code, _, _ = run(capsys, "compose", pair, "-o", str(out_path))
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["composable"] is True
    comp = write(tmp_path / "comp.json", report["composite"])
    assert run(capsys, "validate", comp)[:2] == (0, "valid splitext\n")


def test_emitted_json_revalidates_identically(capsys, tmp_path, action_file):
    ext = tmp_path / "ext.json"
    assert run(capsys, "semidirect", action_file, "-o", str(ext))[0] == 0
    act = tmp_path / "act2.json"
    assert run(capsys, "extract-action", str(ext), "-o", str(act))[0] == 0
    pb_in = write(tmp_path / "pb.json", {"ext": json.loads(ext.read_text()),
                                         "f": {"dom": "Z2", "cod": "Z2", "values": [0, 0]}})
    pb = tmp_path / "pb_out.json"
    assert run(capsys, "pullback", pb_in, "-o", str(pb))[0] == 0
    for path in (ext, act, pb):
        again = tmp_path / "again.json"
        code, out, _ = run(capsys, "validate", str(path), "-o", str(again))
        assert code == 0 and out.startswith("valid")
        assert again.read_bytes() == path.read_bytes()


def test_search_outputs_revalidate(capsys, tmp_path):
    out = tmp_path / "hit.json"
    assert run(capsys, "search", "noncomposable", "--max-order", "2", "-o", str(out))[0] == 0
    hit = json.loads(out.read_text())
    assert hit["witness"] == [1, 1, 1]
    for part in ("outer", "inner"):
        path = write(tmp_path / f"{part}.json", hit[part])
        assert run(capsys, "validate", path)[0] == 0


def test_search_targets(capsys):
    code, out, _ = run(capsys, "search", "sfl-c", "--max-order", "2")
    assert code == 0 and json.loads(out)["report"]["injective"] is False
    code, out, err = run(capsys, "search", "e-prime-not-epp", "--max-order", "2")
    assert code == 0 and out == "" and "no witness" in err
    code, _, _ = run(capsys, "search", "e-prime-not-epp", "--max-order", "2", "--require-found")
    assert code == 1
    code, out, _ = run(capsys, "search", "e-prime-not-epp", "--max-order", "3", "--require-found")
    assert code == 0 and json.loads(out)["witness"] == [1, 1, 1]


def test_classify(capsys, tmp_path):
    doc = {"A": {"order": 4, "table": [[0, 1, 2, 3], [1, 0, 1, 0], [2, 3, 0, 1], [3, 2, 3, 2]]},
           "B": "Z2", "alpha": [0, 1, 0, 1], "beta": [0, 1]}
    assert run(capsys, "classify", write(tmp_path / "c.json", doc)) == (0, "E\n", "")
    del doc["beta"]
    code, out, _ = run(capsys, "classify", write(tmp_path / "c2.json", doc), "--json")
    assert json.loads(out)["class"] == "E"


def test_validate_failures(capsys, tmp_path):
    bad = write(tmp_path / "bad.json", {"order": 2, "table": [[0, 1], [0, 0]]})
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1 and "UnitLawViolation" in out
    code, out, _ = run(capsys, "validate", bad, "--json")
    assert json.loads(out)["valid"] is False
    (tmp_path / "junk.json").write_text("not json")
    assert run(capsys, "validate", str(tmp_path / "junk.json"))[0] == 2
    odd = write(tmp_path / "odd.json", {"order": 2, "rows": []})
    assert run(capsys, "validate", odd)[0] == 2
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2


def test_wrong_kind_is_malformed(capsys, action_file):
    assert run(capsys, "extract-action", action_file)[0] == 2


def test_pullback_with_non_hom_fails(capsys, tmp_path, action_file):
    ext = tmp_path / "ext.json"
    run(capsys, "semidirect", action_file, "-o", str(ext))
    doc = {"ext": json.loads(ext.read_text()), "f": {"dom": "OR", "cod": "Z2", "values": [0, 1]}}
    code, _, err = run(capsys, "pullback", write(tmp_path / "pb.json", doc))
    assert code == 1 and "NotAHomomorphism" in err


def test_verify_exit_code_and_report(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--max-order", "1", "-o", str(report))
    assert code == 0
    assert "overall: PASS" in out
    data = json.loads(report.read_text())
    assert data["passed"] is True and data["budget"]["max_order"] == 1


def test_bad_budget_is_malformed(capsys):
    assert run(capsys, "verify", "--max-order", "0")[0] == 2
    assert run(capsys, "enumerate", "--order", "2", "--workers", "0")[0] == 2
