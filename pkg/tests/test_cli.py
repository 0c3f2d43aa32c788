import json
import os

import pytest

from src.app.classify.lists import classify_staircase
from src.app.classify.verdicts import verdict_from_json
from src.app.cli import build_parser, main
from src.app.config.settings import get_settings
from src.app.quiver.partitions import Partition
from src.app.storage.result_cache import ResultCache
from src.app.tau.enumeration import CountsTable, hasse_from_json


QUIVER_DATA = os.path.join(os.path.dirname(__file__), "..", "quiver_data")


def _quiver(name):
    return os.path.join(QUIVER_DATA, name)


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_staircase(capsys):
    code, out, _ = _run(capsys, "construct", "--staircase", "3,3,2")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "8 vertices, 10 arrows, 3 relations"
    assert lines[1] == "dimension 27"


def test_construct_lambda4_json(capsys):
    code, out, _ = _run(capsys, "construct", "--family", "lambda:4", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["vertices"] == 4
    assert doc["dimension"] == 9
    assert len(doc["relations"]) == 1


def test_emitted_quiver_reads_back(capsys, tmp_path):
    path = str(tmp_path / "out" / "square.quiver")
    code, first, _ = _run(capsys, "construct", "--staircase", "2,2", "--emit-quiver", path)
    assert code == 0
    assert os.path.exists(path)
    code, second, _ = _run(capsys, "construct", "--quiver", path)
    assert code == 0
    assert second.splitlines()[:2] == first.splitlines()[:2]


def test_sample_quiver_files(capsys):
    code, out, _ = _run(capsys, "construct", "--quiver", _quiver("lambda4.quiver"))
    assert code == 0
    assert out.splitlines()[1] == "dimension 9"
    code, out, _ = _run(capsys, "construct", "--quiver", _quiver("zero_relation.quiver"))
    assert code == 0
    assert out.splitlines()[1] == "dimension 5"


def test_tits_eval(capsys):
    code, out, _ = _run(capsys, "tits", "--shifted", "6,5", "--eval", "2,1,1,2,3,2,1,2,3,3,3")
    assert code == 0
    assert out.strip() == "8"


def test_tits_positive_and_not(capsys):
    code, out, _ = _run(capsys, "tits", "--staircase", "9")
    assert code == 0
    assert out.strip().splitlines()[-1] == "weakly_positive"
    code, out, _ = _run(capsys, "tits", "--staircase", "2^5")
    assert code == 0
    assert "not_weakly_positive" in out
    assert "certificate " in out


def test_enumerate_rows(capsys):
    code, out, _ = _run(capsys, "enumerate", "--family", "lambda:4")
    assert code == 0
    assert out.strip() == "1 4 10 16 15 | 46"
    code, out, _ = _run(capsys, "enumerate", "--family", "linear_a:3")
    assert out.strip() == "1 3 5 5 | 14"


def test_enumerate_range(capsys):
    code, out, _ = _run(capsys, "enumerate", "--family", "lambda:4..5")
    lines = out.strip().splitlines()
    assert code == 0
    assert len(lines) == 3
    assert lines[1].endswith("| 46")
    assert lines[2].endswith("| 160")


def test_enumerate_writes_the_diagram(capsys, tmp_path):
    path = str(tmp_path / "lambda4.json")
    code, _, _ = _run(capsys, "enumerate", "--family", "lambda:4", "--hasse-out", path)
    assert code == 0
    with open(path, encoding="utf-8") as fh:
        diagram = hasse_from_json(fh.read())
    assert CountsTable.from_diagram(diagram).total == 46


def test_enumerate_verify_recursions(capsys):
    code, out, _ = _run(capsys, "enumerate", "--family", "a1:4", "--verify-recursions")
    assert code == 0
    assert "FAILED" not in out
    assert out.strip().endswith("identities hold")
    code, _, err = _run(capsys, "enumerate", "--family", "d:4", "--verify-recursions")
    assert code == 2
    assert "--verify-recursions" in err


def test_enumerate_cap(capsys):
    code, out, err = _run(capsys, "enumerate", "--family", "lambda:4", "--cap", "5")
    assert code == 3
    assert out == ""
    assert err.startswith("inconclusive: cap")


@pytest.mark.parametrize("argv,expected", [
    (("classify", "--staircase", "3,3,2"), "tau-infinite (staircase exception list)"),
    (("classify", "--staircase", "6,2"), "tau-finite (staircase (n-2,2))"),
    (("classify", "--shifted", "6,3"), "tame concealed (shifted tame concealed list)"),
    (("classify", "--family", "grid:2,4"), "tau-finite (grid (1,k),(2,2),(2,3),(2,4))"),
])
def test_classify(capsys, argv, expected):
    code, out, _ = _run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_classify_quiver_files(capsys):
    code, out, _ = _run(capsys, "classify", "--quiver", _quiver("lambda4.quiver"))
    assert code == 0
    assert out.startswith("tau-finite")
    code, out, _ = _run(capsys, "classify", "--quiver", _quiver("kronecker3.quiver"))
    assert code == 0
    assert out.startswith("inconclusive")


def test_classify_cross_check(capsys):
    code, out, _ = _run(capsys, "classify", "--family", "lambda:4", "--cross-check")
    assert code == 0
    assert "enumeration: 1 4 10 16 15 | 46" in out
    assert out.strip().endswith("agreement: yes")


def test_classify_json(capsys):
    code, out, _ = _run(capsys, "classify", "--staircase", "4,3,1", "--format", "json")
    assert code == 0
    assert verdict_from_json(out) == classify_staircase(Partition((4, 3, 1)))


@pytest.mark.parametrize("argv", [
    ("construct", "--staircase", "3,4"),
    ("construct", "--staircase", "3,0"),
    ("construct", "--staircase", "3,2", "--family", "lambda:4"),
    ("construct",),
    ("tits", "--family", "lambda:4", "--prime", "100"),
    ("enumerate", "--family", "lambda:4", "--cap", "0"),
    ("construct", "--quiver", os.path.join(QUIVER_DATA, "cyclic.quiver")),
    ("construct", "--quiver", os.path.join(QUIVER_DATA, "missing.quiver")),
    ("classify", "--family", "kronecker:3"),
])
def test_bad_input_exits_with_2(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.strip()


def test_cache_hit_is_byte_identical(capsys):
    _, first, _ = _run(capsys, "enumerate", "--family", "lambda:4")
    _, second, _ = _run(capsys, "enumerate", "--family", "lambda:4")
    assert first == second
    assert len(ResultCache(get_settings().cache_dir)) == 1


def test_cache_dir_flag(capsys, tmp_path):
    target = str(tmp_path / "elsewhere")
    _run(capsys, "tits", "--family", "lambda:4", "--cache-dir", target)
    assert len(ResultCache(target)) == 1


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
