"""CLI subcommands, formats, figures output and exit codes."""

import json

import pytest

from mwb.cartanweyl import WeylWord, affine_sl2_cartan, type_a_cartan
from mwb.cli import main, parse_cartan, parse_word
from mwb.errors import BadInput
from mwb.presets import get_preset


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_parse_word():
    assert parse_word("1,2,1,2") == WeylWord((1, 2, 1, 2))
    assert parse_word("1 2 1") == WeylWord((1, 2, 1))
    with pytest.raises(BadInput):
        parse_word("1,x")
    with pytest.raises(BadInput):
        parse_word("")


def test_parse_cartan():
    assert parse_cartan("a3") == type_a_cartan(3)
    assert parse_cartan("affine-a1") == affine_sl2_cartan()
    assert parse_cartan("d4")[4, 2] == -1
    for bad in ("e6", "a0", "foo"):
        with pytest.raises(BadInput):
            parse_cartan(bad)


def test_mutate_preset(capsys):
    code, data = run_json(capsys, "mutate", "--preset", "a3-bfz", "1")
    assert code == 0
    assert data["variables"][0]["text"] == "(x2 + x3)/x1"
    assert data["variables"][0]["alias"] == "D_{2,3}"
    assert data["applied"] == [1]


def test_mutate_seed_file(capsys, tmp_path):
    path = tmp_path / "seed.json"
    path.write_text(json.dumps(get_preset("kronecker-a1").seed.to_json()))
    code, data = run_json(capsys, "mutate", "--seed", str(path), "1", "2")
    assert code == 0
    assert data["variables"][1]["text"] == "(1 + x1 + x2)/(x1*x2)"


def test_mutate_bad_inputs(capsys):
    assert run(capsys, "mutate", "--preset", "a3-bfz", "4")[0] == 2  # frozen
    assert run(capsys, "mutate", "--preset", "a3-bfz", "9")[0] == 2  # range


def test_explore_text_format(capsys):
    code, out = run(capsys, "explore", "--preset", "kronecker-a1",
                    "--format", "text")
    assert code == 0
    lines = dict(line.split("\t") for line in out.strip().splitlines())
    assert lines["clusters"] == "5" and lines["verdict"] == "finite"


def test_explore_budget_verdict(capsys):
    code, data = run_json(capsys, "explore", "--preset", "kronecker-a2",
                          "--max-seeds", "12")
    assert code == 0 and data["verdict"] == "exceeded-budget"


def test_explore_figures(capsys, tmp_path):
    outdir = tmp_path / "figs"
    code, data = run_json(capsys, "explore", "--preset", "kronecker-a1",
                          "--figures", str(outdir))
    assert code == 0
    png = outdir / "quiver.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    rows = (outdir / "census.csv").read_text().strip().splitlines()
    assert rows[0] == "cluster,size,variables"
    assert sum(1 for r in rows[1:] if r and r[0].isdigit()) == data["clusters"]


def test_seed_from_word_typeA(capsys, tmp_path):
    outdir = tmp_path / "figs"
    code, data = run_json(capsys, "seed-from-word", "--word", "1,2,1,3,2,1",
                          "--figures", str(outdir))
    assert code == 0
    assert set(data["minors"]) == {
        "D_{1,2}", "D_{1,3}", "D_{12,23}", "D_{1,4}", "D_{12,34}", "D_{123,234}"
    }
    assert (outdir / "quiver.png").exists()


def test_seed_from_word_affine(capsys):
    code, data = run_json(capsys, "seed-from-word", "--word", "1,2,1,2",
                          "--cartan", "affine-a1")
    assert code == 0 and "minors" not in data
    assert data["seed"]["quiver"]["frozen"] == [3, 4]


def test_seed_from_word_rejects_nonreduced(capsys):
    assert run(capsys, "seed-from-word", "--word", "1,1")[0] == 2


def test_distinguished_seq(capsys):
    code, data = run_json(capsys, "distinguished-seq", "--word", "1,2,1,2",
                          "--cartan", "affine-a1")
    assert code == 0
    assert data["sequence"] == [1, 2]
    assert data["trace"][0]["old"] == "M[1,1]"
    assert data["final_labels"] == {
        "1": "M[3,3]", "2": "M[4,4]", "3": "M[3,1]", "4": "M[4,2]"
    }


def test_chamber_ansatz_cmd(capsys):
    code, data = run_json(capsys, "chamber-ansatz")
    assert code == 0 and data["all_hold"]
    assert run(capsys, "chamber-ansatz", "--word", "1,2")[0] == 2


def test_quantum_check_cmd(capsys):
    code, data = run_json(capsys, "quantum-check")
    assert code == 0 and data["ok"]


def test_verify_all_cmd(capsys):
    code, data = run_json(capsys, "verify-all")
    assert code == 0 and data["all_ok"]
    assert len(data["checks"]) == 12
    assert all(c["ok"] for c in data["checks"].values())
