import io
import json

import pytest

from surface_actions.cli import main, parse_dataset_tokens, UsageError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text.startswith("{") else text)


def test_validate_ok():
    assert run("validate", "5", "0", "0", "1/5", "3/5", "1/5") == (0, {"valid": True, "genus": 2})
    assert run("validate", "(5,0;(1,5),(3,5),(1,5))") == (0, {"valid": True, "genus": 2})


def test_validate_domain_error():
    code, out = run("validate", "4", "0", "0", "1/2", "1/4")
    assert code == 1
    assert out["error"] == "ConditionViolated" and out["which"] == "iv"


def test_usage_errors():
    assert run("validate", "5", "x")[0] == 2
    assert run("validate", "1/2", "3")[0] == 2
    assert run("no-such-command")[0] == 2
    assert run("rep", "pair", "(6,0;(1,2),(1,3),(1,6))", "(6,0;(1,2),(2,3),(5,6))")[0] == 2
    with pytest.raises(UsageError):
        parse_dataset_tokens(["5"])


def test_json_input(tmp_path):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"n": 6, "g0": 0, "cone": [[1, 2], [1, 3], [1, 6]]}))
    code, out = run("classify", "--json", str(f))
    assert code == 0 and out["kind"] == "Type1" and out["irreducible"]


def test_out_file(tmp_path):
    f = tmp_path / "o.json"
    assert run("--out", str(f), "validate", "3", "0", "1/3", "1/3", "1/3") == (0, "")
    assert json.loads(f.read_text()) == {"valid": True, "genus": 1}


def test_meta_block():
    code, out = run("--meta", "validate", "3", "0", "1/3", "1/3", "1/3")
    assert out["result"] == {"valid": True, "genus": 1}
    assert set(out["meta"]) >= {"version", "python", "argv", "time"}


def test_enumerate_filter():
    code, out = run("enumerate", "5", "2", "--kind", "Type1")
    assert code == 0 and out["count"] == len(out["datasets"]) == 4


def test_realize_and_render(tmp_path):
    svg = tmp_path / "p.svg"
    code, out = run("realize", "5", "0", "1/5", "3/5", "1/5", "--svg", str(svg))
    assert code == 0 and out["sides"] == 10 and out["genus"] == 2
    assert svg.read_text().startswith("<svg")
    code, text = run("render", "(6,0;(1,2),(1,3),(1,6))")
    assert code == 0 and text.count("<path") == 7


def test_fatgraph_command():
    code, out = run("fatgraph", "(6,0;(1,2),(1,3),(1,6))")
    assert code == 0 and out["genus"] == 1 and out["quotient"] == "(6,0;(1,2),(1,3),(1,6))"


def test_normalize_command():
    code, out = run("normalize", "a0", "a1", "a2", "a0^-1", "a1^-1", "a2^-1")
    assert out["canonical"] == "x1 y1 x1^-1 y1^-1"
    assert out["vectors"] == {"x1": [0, -1, -1], "y1": [-1, -1, 0]}


def test_rep_commands():
    code, out = run("rep", "type1", "5", "0", "1/5", "2/5", "2/5")
    assert code == 0 and out["order"] == 5 and out["g"] == 2
    code, out = run("rep", "pair", "(6,0;(1,2),(1,3),(1,6))", "(6,0;(1,2),(2,3),(5,6))", "--rs", "2", "2")
    assert out["images"][3] == "m2 -> -m2"
    code, split = run("rep", "pair", "6", "0", "1/2", "1/3", "1/6", "+", "6", "0", "1/2", "2/3", "5/6",
                      "--rs", "2", "2", "--basis", "split")
    assert split["basis"] == "split" and split["matrix"] != out["matrix"]
    code, out = run("rep", "sum", "(6,0;(1,2),(1,3),(1,6))", "(6,0;(1,2),(2,3),(5,6))")
    assert code == 0 and out["pairs"] == [[3, 3]]


def test_root_commands():
    assert run("root", "check", "(5,0;(1,5),(2,5),(3,5),(4,5))")[1]["indices"] == [3, 4]
    code, out = run("root", "split", "(5,0;(1,5),(2,5),(3,5),(4,5))")
    assert out == {"D1": "(5,0;(1,5),(2,5),(2,5))", "D2": "(5,0;(3,5),(3,5),(4,5))", "rs": [3, 1]}
    code, out = run("root", "rep", "(5,0;(3,5),(3,5),(4,5))")
    assert code == 0 and out["g"] == 3 and out["path"] == ["a0"]
    code, out = run("root", "rep", "(5,0;(1,5),(2,5),(2,5))", "(1,1;)", "--curve", "sep")
    assert code == 0 and out["g"] == 3
    assert run("root", "split", "(5,0;(3,5),(3,5),(4,5))")[1]["error"] == "TooFewConePoints"


def test_reduce_size_and_decompose():
    assert run("reduce-size", "(6,1;(1,2),(1,3),(1,6))")[1] == {"size": 12}
    assert run("reduce-size", "--formula", "6", "2", "3", "2")[1] == {"size": 6 * 13 + 2}
    assert run("reduce-size", "--pair", "(6,0;(1,2),(1,3),(1,6))", "(6,0;(1,2),(2,3),(5,6))",
               "--rs", "2", "2")[1] == {"size": 2}
    code, out = run("decompose", "(6,0;(1,2),(1,2),(1,3),(2,3))")
    assert code == 0 and out["tree"]["node"] == "pair" and len(out["leaves"]) == 2


def test_selftest_reports_each_check():
    code, out = run("selftest")
    assert out["passed"] + out["failed"] == len(out["checks"])
    assert code == (1 if out["failed"] else 0)
