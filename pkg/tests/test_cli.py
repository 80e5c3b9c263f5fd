"""Golden tests for the command-line surface: every subcommand has at
least one byte-exact JSON-mode expectation."""

import json

import pytest

from postlattice.cli import main
from postlattice.formula import equivalent, parse, Base
from postlattice.clones import G


GOLDEN = [
    (["--json", "parse", "--formula", "x & (y | z)"],
     '{"formula": "x & (y | z)", "size": 5, "depth": 2, "leaf_count": 3, '
     '"vars": ["x", "y", "z"]}'),
    (["--json", "eval", "--formula", "x -/> y", "--assign", "x=1,y=0"],
     '{"value": 1}'),
    (["--json", "table", "--formula", "(x&y)|(x&z)|(y&z)"],
     '{"vars": ["x", "y", "z"], "table": "00010111"}'),
    (["--json", "id", "--fn", "imp/2:1101"],
     '{"clone": "S0"}'),
    (["--json", "closure", "--fn", "g/3:00011111", "--arity", "2"],
     '{"arity": 2, "count": 3, "functions": [{"table": "0011", "witness": "x1"}, '
     '{"table": "0101", "witness": "x2"}, '
     '{"table": "0111", "witness": "g(x1, x2, x2)"}]}'),
    (["--json", "represent", "--target", "or/2:0111", "--fn", "g/3:00011111"],
     '{"formula": "g(x1, x2, x2)"}'),
    (["--json", "member", "--target", "nimp/2:0010",
      "--fn", "and/2:0001", "--fn", "not/1:10"],
     '{"member": true}'),
    (["--json", "classify-sat", "--fn", "nand/2:1110"],
     '{"classification": "NP-complete"}'),
    (["--json", "depth-reduce", "--formula", "x ^ y", "--mode", "full"],
     '{"formula": "y & !x | !y & x", "mode": "full", "size_in": 3, '
     '"depth_in": 1, "leaf_count": 2, "size_out": 9, "depth_out": 3, '
     '"equivalent": true}'),
    (["--json", "reduce", "--formula", "g(x,y,y)",
      "--from-fn", "g/3:00011111", "--to-fn", "g/3:00011111"],
     '{"formula": "g(g(y & x, g(y, x, x), y), g(g(y, x, x), g(y, x, x), y), x)", '
     '"target": ["g/3:00011111", "and/2:0001"], "extra": "and", '
     '"fresh_vars": [], "depth_in": 1, "depth_out": 3, "size_in": 4, '
     '"size_out": 21, "equivalent": true}'),
    (["--json", "canonical", "--fn", "xor/2:0110", "--fn", "1/0:1"],
     '{"clone": "L", "connectives": ["xor", "1"], "note": "two-way '
     'equivalence; both directions via theorem_reduce"}'),
    (["--json", "verify", "--formula", "x^y", "--formula2", "(x&!y)|(!x&y)"],
     '{"equivalent": true}'),
]


@pytest.mark.parametrize("argv,expected", GOLDEN,
                         ids=[argv[1] for argv, _ in GOLDEN])
def test_golden_json(argv, expected, capsys):
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert out == expected + "\n"


def test_reduce_output_is_equivalent_independently(capsys):
    assert main(["--json", "reduce", "--formula", "g(x,y,y)",
                 "--from-fn", "g/3:00011111", "--to-fn", "g/3:00011111"]) == 0
    payload = json.loads(capsys.readouterr().out)
    base = Base([G])
    assert equivalent(parse("g(x,y,y)", base), parse(payload["formula"], base))


def test_lattice_dot_output(capsys):
    assert main(["lattice", "--max-degree", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph post_lattice {")
    assert '"I2"' in out and out.rstrip().endswith("}")


def test_domain_error_is_single_json_object(capsys):
    assert main(["--json", "parse", "--formula", "x &"]) == 1
    out = capsys.readouterr().out
    payload = json.loads(out)        # exactly one valid JSON document
    assert set(payload) == {"error"}
    assert out.count("\n") == 1


def test_domain_error_text_mode(capsys):
    assert main(["id", "--fn", "bogus/2:00"]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error: ")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_missing_base_is_domain_error(capsys):
    assert main(["--json", "id"]) == 1
    assert "error" in json.loads(capsys.readouterr().out)


def test_base_file_loading(tmp_path, capsys):
    path = tmp_path / "base.txt"
    path.write_text("# majority\nmaj3/3:00010111\n")
    assert main(["--json", "id", "--base", str(path)]) == 0
    assert json.loads(capsys.readouterr().out) == {"clone": "D2"}


def test_seed_flag_accepted(capsys):
    assert main(["--seed", "7", "--json", "id", "--fn", "imp/2:1101"]) == 0
    capsys.readouterr()
