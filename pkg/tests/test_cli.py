import json
import re

import pytest

from eqgen.cli import main, split_question_line


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "--info", "alice", "--count", "3")
    b = run(capsys, "gen", "--info", "alice", "--count", "3")
    assert a == b and a[0] == 0
    assert len(a[1].splitlines()) == 3


def test_gen_depth_zero(capsys):
    code, out, _ = run(capsys, "gen", "--info", "alice", "--m", "0", "--count", "1")
    assert code == 0
    assert re.fullmatch(r"Show that (\w+) ≡ \1\.\n", out)


def test_gen_json_schema(capsys):
    code, out, _ = run(capsys, "gen", "--info", "alice", "--format", "json", "--count", "2", "--tag", "hw1")
    doc = json.loads(out)
    assert set(doc) == {"assignment", "params", "students"}
    assert doc["assignment"] == "hw1"
    (student,) = doc["students"]
    assert set(student) == {"student_id", "seed", "questions"}
    assert re.fullmatch(r"[0-9a-f]{32}", student["seed"])
    for i, q in enumerate(student["questions"]):
        assert set(q) == {"index", "lhs", "rhs", "laws_used"} and q["index"] == i


def test_gen_bad_config_exit_2(capsys, tmp_path):
    assert run(capsys, "gen", "--info", "a", "--stride", "4")[0] == 2
    cfg = tmp_path / "c.json"
    cfg.write_text('{"nonsense": 1}')
    assert run(capsys, "gen", "--info", "a", "--config", str(cfg))[0] == 2


def test_gen_retry_exhausted_exit_3(capsys):
    assert run(capsys, "gen", "--info", "a", "--p0", "0", "--pc", "1/1000", "--m", "1")[0] == 3


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"m": 0, "count": 2}))
    _, out, _ = run(capsys, "gen", "--info", "a", "--config", str(cfg))
    assert len(out.splitlines()) == 2
    _, out, _ = run(capsys, "gen", "--info", "a", "--config", str(cfg), "--count", "1")
    assert len(out.splitlines()) == 1


def _roster(tmp_path, text, name="r.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_batch(capsys, tmp_path):
    roster = _roster(tmp_path, "student_id,display_name\ns1,Ann\ns2,Bo\ns3,\n")
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    for out in (out1, out2):
        assert run(capsys, "batch", "--roster", roster, "--out", str(out), "--tag", "hw", "--count", "2")[0] == 0
    files = sorted(p.name for p in out1.iterdir())
    assert files == ["manifest.json", "s1.txt", "s2.txt", "s3.txt"]
    for name in files:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    texts = [(out1 / f"s{i}.txt").read_text() for i in (1, 2, 3)]
    assert len(set(texts)) == 3
    manifest = json.loads((out1 / "manifest.json").read_text())
    assert manifest["config"]["assignment_tag"] == "hw"
    # the recorded config regenerates the same questions
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(manifest["config"]))
    _, out, _ = run(capsys, "gen", "--info", "s1", "--config", str(cfg))
    assert out == texts[0]


def test_batch_json(capsys, tmp_path):
    roster = _roster(tmp_path, "s1\ns2\n")
    out = tmp_path / "o"
    assert run(capsys, "batch", "--roster", roster, "--out", str(out), "--format", "json")[0] == 0
    doc = json.loads((out / "questions.json").read_text())
    assert [s["student_id"] for s in doc["students"]] == ["s1", "s2"]


@pytest.mark.parametrize("text", ["s1\ns1\n", "s1\n,x\n"])
def test_batch_bad_roster_writes_nothing(capsys, tmp_path, text):
    roster = _roster(tmp_path, text)
    out = tmp_path / "o"
    assert run(capsys, "batch", "--roster", roster, "--out", str(out))[0] == 2
    assert sorted(p.name for p in tmp_path.iterdir()) == ["r.csv"]


def test_verify(capsys):
    assert run(capsys, "verify", "p ∨ ¬p", "T")[:2] == (0, "EQUIVALENT\n")
    code, out, _ = run(capsys, "verify", "p", "q")
    assert code == 1 and out == "NOT EQUIVALENT\nwitness: p=true,q=false\n"
    code, _, err = run(capsys, "verify", "p ∨", "p")
    assert code == 2 and "position 4" in err


def test_analyze(capsys, tmp_path):
    path = tmp_path / "q.txt"
    path.write_text("p ∨ (p ∧ q) == p\np == q\n# comment\nbroken ==\n", encoding="utf-8")
    code, out, err = run(capsys, "analyze", str(path))
    assert code == 0 and "line 4" in err
    head, row = out.splitlines()
    cells = dict(zip(head.split(), row.split()))
    assert cells["1"] == "1" and cells["NEQ"] == "1" and cells["Total"] == "2" and cells["Errors"] == "1"


def test_split_question_line():
    assert split_question_line("Show that p ∨ p ∧ q ≡ p.") == ("p ∨ p ∧ q", "p")
    assert split_question_line("a == b") == ("a ", " b")
    assert split_question_line("  ") is None
    with pytest.raises(ValueError):
        split_question_line("a = b")


def test_laws(capsys):
    code, out, _ = run(capsys, "laws")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 21
    assert lines[10].split()[:2] == ["AbsorptionOr", "Hard"]
