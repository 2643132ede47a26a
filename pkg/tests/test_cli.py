from __future__ import annotations

import json

import jsonschema
import pytest

from rankfix.cli import main, run_cli
from rankfix.report import REPORT_SCHEMA, TOWER_SCHEMA
from rankfix.syntax import parse_file

from conftest import CYCLIC_X


@pytest.fixture
def files(tmp_path):
    paths = {
        "susp": "def a = susp(empty); main = a;",
        "cyclic": CYCLIC_X,
        "bad": "def Y = coprod(Y, empty);",
        "syntax": "def a = susp(empty)\nmain = a;",
        "corpus": "\n".join(f"def S{k} = {'susp(' * k}empty{')' * k};" for k in range(12)),
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / f"{name}.skel"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(args):
    code, report = run_cli(args)
    jsonschema.validate(report, REPORT_SCHEMA)
    json.dumps(report)
    return code, report


def test_rank_ordinal_out(files):
    code, report = run(["rank", "--ordinal-out", files["susp"]])
    assert code == 0 and report["result"] == {"rank": "1"}


def test_rank_cyclic_carries_witness(files):
    code, report = run(["rank", files["cyclic"]])
    assert code == 0 and report["result"]["kind"] == "no_small_rank"
    jsonschema.validate(report["result"]["witness"], TOWER_SCHEMA)


def test_rank_selects_definition(files):
    code, report = run(["rank", files["corpus"], "--def", "S5"])
    assert report["result"]["rank"] == "5"
    code, report = run(["rank", files["corpus"], "--def", "nope"])
    assert code == 1


def test_noetherian_counter_tower_exits_zero(files):
    code, report = run(["noetherian", files["cyclic"]])
    assert code == 0 and report["status"] == "ok"
    assert report["result"]["verdict"] == "counter_tower"
    jsonschema.validate(report["result"]["tower"], TOWER_SCHEMA)
    assert report["result"]["tower"] == {"stem": [], "cycle": [{"def": "X", "pair": ["x", "x"]}]}
    code, report = run(["noetherian", files["susp"]])
    assert report["result"] == {"verdict": "certified"}


def test_construct_writes_file(tmp_path):
    out = tmp_path / "c.skel"
    code, report = run(["construct", "w*2+1", "-o", str(out)])
    assert code == 0
    env = parse_file(out.read_text())
    code, report = run(["rank", "--ordinal-out", str(out)])
    assert report["result"]["rank"] == "w*2 + 1"
    assert len(env.defs) == 1


@pytest.mark.parametrize("flags, expected", [
    (["--stage", "1"], False), (["--stage", "2"], True), (["--stage", "LAMBDA"], True),
    (["--stage", "2", "--bounded"], True), (["--stage", "2", "--via-homs"], True),
])
def test_member(files, flags, expected):
    code, report = run(["member", files["susp"], *flags])
    assert code == 0 and report["result"]["member"] is expected


def test_fixpoint_rank_no_stabilisation():
    code, report = run(["fixpoint", "--universe", "rank", "--schedule", "0..w*2"])
    assert code == 0
    assert report["result"]["verdict"]["kind"] == "no_stabilization"


def test_fixpoint_bounded_with_corpus(files):
    code, report = run(["fixpoint", "--universe", "bounded", "--schedule", "0..w+1",
                        "--corpus", files["corpus"], "--horizon", "8"])
    assert report["result"]["verdict"]["at"] == "w"
    assert report["result"]["lambek_check"] is True


def test_fixpoint_card_and_trunc():
    code, report = run(["fixpoint", "--universe", "card", "--functor", "1+X",
                        "--schedule", "0..w+1", "--horizon", "8"])
    assert report["result"]["verdict"]["value"] == "aleph0"
    code, report = run(["fixpoint", "--universe", "trunc", "--schedule", "0..w"])
    assert report["result"]["verdict"]["value"] == "Cat_w"
    assert report["result"]["direction"] == "terminal"


@pytest.mark.parametrize("args", [
    ["frobnicate"], [], ["rank"], ["rank", "--bogus", "x"],
    ["fixpoint", "--universe", "other", "--schedule", "0"],
    ["check", "--suite", "nope"], ["member", "f", "--stage", "1", "--bounded", "--via-homs"],
])
def test_usage_errors_exit_2(args):
    code, report = run(args)
    assert code == 2 and report["status"] == "error"


def test_evaluation_errors_exit_1(files, tmp_path):
    code, report = run(["rank", files["syntax"]])
    assert code == 1 and report["error"]["position"] == {"line": 2, "column": 1}
    code, report = run(["rank", files["bad"]])
    assert code == 1 and "Y" in report["error"]["message"]
    code, report = run(["rank", str(tmp_path / "missing.skel")])
    assert code == 1
    code, report = run(["construct", "w*"])
    assert code == 1 and "offset" in report["error"]["position"]
    code, report = run(["construct", "w^2"])
    assert code == 1
    code, report = run(["member", files["susp"], "--stage", "w", "--via-homs"])
    assert code == 1
    code, report = run(["fixpoint", "--universe", "card", "--schedule", "0..3"])
    assert code == 1
    code, report = run(["fixpoint", "--universe", "rank", "--schedule", "1..3"])
    assert code == 1


def test_check_is_deterministic():
    a = run(["check", "--suite", "lemma3.4", "--seed", "5", "--cases", "60"])
    b = run(["check", "--suite", "lemma3.4", "--seed", "5", "--cases", "60"])
    assert a == b and a[0] == 0 and a[1]["result"]["passed"]


def test_check_all_small():
    code, report = run(["check", "--suite", "all", "--cases", "30"])
    assert code == 0
    names = {c["name"].split(":")[0] for c in report["result"]["checks"]}
    assert {"lemma2.3", "lemma3.1", "lemma3.4", "prop2.5", "prop3.2", "thm3.7", "ordinals",
            "roundtrip"} <= names


def test_main_prints_json_and_summary(files, capsys):
    assert main(["rank", files["susp"]]) == 0
    out, err = capsys.readouterr()
    assert json.loads(out)["result"]["rank"] == "1"
    assert "rank: 1" in err
