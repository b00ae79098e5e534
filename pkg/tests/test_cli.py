import json
from importlib import resources

import jsonschema
import pytest

from skewloci import selftest
from skewloci.cli import load_schema, main
from skewloci.fields import PrimeField

SCHEMA = load_schema()
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def corpus_path(name):
    return str(resources.files("skewloci") / "corpus" / name)


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def check_report(out):
    report = json.loads(out)
    errors = list(VALIDATOR.iter_errors(report))
    assert not errors, errors[0].message
    return report


def test_degree_example(capsys):
    code, out, _ = run_cli(capsys, "degree", "--n", "5", "--m", "3")
    assert code == 0
    report = check_report(out)
    assert report["result"] == {"degree": 6}
    assert report["command"] == "degree"
    assert report["input"] == {"n": 5, "m": 3}


def test_reports_are_byte_identical(capsys):
    args = ("net", "analyze", corpus_path("net_f7.json"))
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_pfaffian_inline_matrix(capsys):
    doc = json.dumps({
        "field": "F101",
        "matrix": [
            [0, 3, 0, 0],
            [-3, 0, 0, 0],
            [0, 0, 0, 5],
            [0, 0, -5, 0],
        ],
    })
    code, out, _ = run_cli(capsys, "pfaffian", doc)
    assert code == 0
    report = check_report(out)
    assert report["result"] == {"order": 4, "pfaffian": 15, "rank": 4}
    assert report["field"] == "F101"


def test_pfaffian_rational_pairs(capsys):
    vec = ["1/2"] + [0] * 8 + [1, 0, 0, 0, 0, 3]
    doc = json.dumps({"field": "QQ", "pairs": vec})
    code, out, _ = run_cli(capsys, "pfaffian", doc)
    assert code == 0
    report = check_report(out)
    # Pf = p01 p23 p45 - ... = 1/2 * 1 * 3 on a block form
    assert report["result"]["pfaffian"] == "3/2"
    assert report["result"]["order"] == 6
    assert report["field"] == "Q"


def test_classify_rank_four(capsys):
    vec = [0] * 15
    vec[0] = 1
    vec[9] = 1
    doc = json.dumps({"field": "F7", "pairs": vec})
    code, out, _ = run_cli(capsys, "complex", "classify", doc)
    assert code == 0
    report = check_report(out)
    res = report["result"]
    assert res["kind"] == "special-first-type"
    assert res["rank"] == 4
    assert res["pfaffian"] == 0
    assert res["singular_space"]["proj_dim"] == 1
    assert res["singular_space"]["basis"] == [
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ]


def test_pencil_block_corpus(capsys):
    """The shipped block pencil lands in the pairwise skew spanning case."""
    code, out, _ = run_cli(capsys, "pencil", "analyze",
                           corpus_path("block_pencil.json"))
    assert code == 0
    report = check_report(out)
    res = report["result"]
    assert res["verdict"] == "expected-dim-1"
    assert res["configuration"]["case"] == 1
    assert res["configuration"]["span_dim"] == 5
    assert res["configuration"]["pairwise_meets"] == [False, False, False]
    assert len(res["members"]) == 3
    assert all(m["multiplicity"] == 1 for m in res["members"])
    got = {tuple(tuple(row) for row in l["basis"]) for l in res["lines"]}
    e = [[0] * 6 for _ in range(6)]
    for i in range(6):
        e[i][i] = 1
    expect = {
        (tuple(e[0]), tuple(e[1])),
        (tuple(e[2]), tuple(e[3])),
        (tuple(e[4]), tuple(e[5])),
    }
    assert got == expect


def test_net_analyze_small_field(capsys):
    code, out, _ = run_cli(capsys, "net", "analyze", corpus_path("net_f7.json"))
    assert code == 0
    report = check_report(out)
    res = report["result"]
    assert res["type"]["kind"] == "general"
    assert res["cubic"] is not None
    assert res["count"] is not None
    assert res["count"]["fibered"] is True
    assert res["count"]["x_count"] == 8 * res["count"]["c_count"]
    assert res["probe"] is None


def test_net_analyze_large_field_sections(capsys):
    code, out, _ = run_cli(capsys, "net", "analyze",
                           corpus_path("net_f101.json"), "--trials", "5")
    assert code == 0
    report = check_report(out)
    res = report["result"]
    assert res["count"] is None
    assert any("counting" in n for n in res["notes"])
    assert res["probe"] is not None
    assert res["probe"]["trials"] == 5
    assert res["probe"]["max_generic"] <= 6
    assert res["directrix"] is not None
    assert len(res["directrix"]["planes"]) == 2


def test_net_analyze_rank_two_generator(capsys):
    code, out, _ = run_cli(capsys, "net", "analyze",
                           corpus_path("net_type2.json"))
    assert code == 0
    report = check_report(out)
    res = report["result"]
    assert res["type"]["kind"] == "contains-second-type"
    assert res["type"]["witness_kind"] == "generator"
    assert res["directrix"] is None
    assert any("rank-2" in n for n in res["notes"])


def test_fournets_complete(capsys):
    net = selftest.seeded_net(PrimeField(23), 8)
    doc = json.dumps({
        "field": "F23",
        "generators": [[x.v for x in g.coeffs()] for g in net.generators],
    })
    code, out, _ = run_cli(capsys, "net", "fournets", doc, "--trials", "20")
    assert code == 0
    report = check_report(out)
    res = report["result"]
    assert res["complete"] is True
    assert res["torsion_classes_found"] == 4
    assert len(res["companions"]) == 4
    assert all(c["forward_checked"] == 20 for c in res["cross"])
    assert all(c["forward_ok"] and c["backward_ok"] for c in res["cross"])


def test_cohomology_conflict_grid(capsys):
    """The three-lines table renders its one disagreement in place."""
    code, out, _ = run_cli(capsys, "cohomology", "table", "--n", "5", "--m", "2")
    assert code == 0
    report = check_report(out)
    res = report["result"]
    assert res["degree"] == 3
    assert res["conflicts"] == [
        {"i": 3, "twist": -2, "predicted": 1, "oracle": 0}
    ]
    assert res["sv"]["holds"] is True
    grid = "\n".join(res["rendered"])
    assert "1!0" in grid
    assert "conflict at i=3: predicted 1, oracle 0" in grid


def test_cohomology_window_flags(capsys):
    code, out, _ = run_cli(capsys, "cohomology", "table", "--n", "5", "--m", "3",
                           "--from", "-1", "--to", "1")
    assert code == 0
    report = check_report(out)
    assert report["result"]["window"] == [-1, 1]
    assert len(report["result"]["rows"]) == 3


def test_usage_errors(capsys):
    code, _, err = run_cli(capsys, "degree", "--n", "5", "--m", "3",
                           "--seed", "-1")
    assert code == 2
    assert "config" in err

    bad = json.dumps({"field": "F7", "generators": [[0] * 14, [0] * 15]})
    code, _, err = run_cli(capsys, "pencil", "analyze", bad)
    assert code == 2

    doc = json.dumps({"matrix": [[0, 1], [-1, 0]]})
    code, _, err = run_cli(capsys, "pfaffian", doc)
    assert code == 2
    assert "field" in err

    code, _, _ = run_cli(capsys, "no-such-command")
    assert code == 2


def test_precondition_errors(capsys):
    doc = json.dumps({
        "field": "F7",
        "matrix": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
    })
    code, _, err = run_cli(capsys, "pfaffian", doc)
    assert code == 3
    assert json.loads(err)["error"]["type"] == "PreconditionError"

    doc = json.dumps({"field": "F6", "matrix": [[0, 1], [-1, 0]]})
    code, _, err = run_cli(capsys, "pfaffian", doc)
    assert code == 3
    assert "not prime" in json.loads(err)["error"]["message"]


def test_json_out_matches_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "degree", "--n", "4", "--m", "3",
                           "--json-out", str(target))
    assert code == 0
    assert target.read_text() == out


def test_selftest_cli_reports_each_criterion(capsys, monkeypatch):
    def ok():
        return selftest.CriterionResult(1, "stub-pass", True, "ok")

    def bad():
        return selftest.CriterionResult(2, "stub-fail", False, "broken")

    monkeypatch.setattr(selftest, "CRITERIA", (ok,))
    code, out, err = run_cli(capsys, "selftest")
    assert code == 0
    report = check_report(out)
    assert report["result"]["all_passed"] is True
    assert "stub-pass" in err

    monkeypatch.setattr(selftest, "CRITERIA", (ok, bad))
    code, out, err = run_cli(capsys, "selftest")
    assert code == 4
    report = check_report(out)
    assert report["result"]["all_passed"] is False
    assert report["result"]["criteria"][1]["passed"] is False


def test_selftest_backs_the_acceptance_suite():
    """The CLI selftest and the acceptance tests share the criterion set."""
    assert selftest.CRITERIA == (
        selftest.criterion_1, selftest.criterion_2, selftest.criterion_3,
        selftest.criterion_4, selftest.criterion_5, selftest.criterion_6,
        selftest.criterion_7, selftest.criterion_8, selftest.criterion_9,
        selftest.criterion_10, selftest.criterion_11, selftest.criterion_12,
    )
    assert len(selftest.CRITERIA) == 12


def test_corpus_documents_validate():
    names = [
        "block_pencil.json", "net_f7.json", "net_f11.json", "net_f101.json",
        "net_type2.json", "anchor_cubic.json",
    ]
    defs = {"pencil": "pencilInput", "net": "netInput", "cubic": "cubicInput"}
    for name in names:
        doc = json.loads(
            (resources.files("skewloci") / "corpus" / name).read_text()
        )
        sub = dict(SCHEMA["$defs"][defs[doc["kind"]]])
        sub["$defs"] = SCHEMA["$defs"]
        jsonschema.validate(doc, sub)
