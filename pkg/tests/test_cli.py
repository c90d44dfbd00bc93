"""End-to-end command-line runs: exit codes, JSON reports, and file output."""

import json

import pytest

from qcatk import io
from qcatk import simplicial as sx
from qcatk.cats import chain_poset, cyclic_group_category, nerve
from qcatk.cli import main
from qcatk.waldhausen import pointed_sets_waldhausen
from qcatk.zoo import pointed_sets_with_duplicate


@pytest.fixture
def files(tmp_path):
    out = {}

    def save(name, doc):
        p = tmp_path / f"{name}.json"
        p.write_text(io.dumps(doc))
        out[name] = str(p)

    save("d1", io.serialize_sset(sx.delta(1)))
    save("d2", io.serialize_sset(sx.delta(2)))
    save("nz3", io.serialize_sset(nerve(cyclic_group_category(3), 3)))
    save("z3", io.serialize_category(cyclic_group_category(3)))
    save("chain2", io.serialize_category(chain_poset(2)))
    save("ps2", io.serialize_waldhausen(pointed_sets_waldhausen(2, 2)))
    save("dup", io.serialize_exact(pointed_sets_with_duplicate(2, 2)[1]))
    save("bdincl", io.serialize_map(
        sx.delta_inclusion(sx.boundary(2), sx.delta(2), lambda v: v)))
    out["dir"] = tmp_path
    return out


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    payload = captured.out or captured.err
    return code, json.loads(payload)


def test_validate_reports_schema_kind(files, capsys):
    code, rep = _run(capsys, ["validate", files["ps2"]])
    assert code == 0
    assert rep["valid"]
    assert rep["kind"] == "waldhausen"
    assert rep["command"] == "validate"


def test_nerve_and_tau1_round_trip(files, capsys):
    code, rep = _run(capsys, ["nerve", files["z3"], "--dim", "3"])
    assert code == 0
    assert rep["sset"]["generators"] == io.load_path(files["nz3"])["generators"]
    code, rep = _run(capsys, ["tau1", files["nz3"]])
    assert code == 0
    assert len(rep["presentation"]["objects"]) == 1
    assert len(rep["presentation"]["generators"]) == 2


def test_ho_of_a_nerve_recovers_the_category(files, capsys):
    code, rep = _run(capsys, ["ho", files["nz3"]])
    assert code == 0
    assert len(rep["category"]["objects"]) == 1


def test_join_with_associativity_check(files, capsys):
    code, rep = _run(
        capsys,
        ["join", files["d1"], files["d1"], files["d1"], "--check-assoc",
         "--dim", "3"],
    )
    assert code == 0
    assert rep["associative"]


def test_k0_emits_invariant_factors(files, capsys):
    code, rep = _run(capsys, ["k0", files["ps2"]])
    assert code == 0
    assert rep["routes_agree"]
    assert rep["invariant_factors"] == [0]


def test_approx_passes_on_the_skeleton_inclusion(files, capsys):
    code, rep = _run(capsys, ["approx", files["dup"]])
    assert code == 0
    assert rep["applicable"] and rep["conclusion"]["pass"]


def test_lift_prism_failure_sets_the_finding_exit_code(files, capsys):
    code, rep = _run(capsys, ["lift", files["bdincl"], "--shape", "prism"])
    assert code == 1
    assert rep["verdict"] == "fail"


def test_sconstruct_reports_level_counts(files, capsys):
    code, rep = _run(capsys, ["sconstruct", files["ps2"], "--n", "2"])
    assert code == 0
    assert rep["objects"] == 3


def test_budget_exhaustion_exits_two(files, capsys):
    code = main(["k0", files["ps2"], "--budget", "5"])
    captured = capsys.readouterr()
    assert code == 2
    assert "error" in json.loads(captured.err)


def test_dimension_guard_exits_one_with_pointer(files, capsys):
    code = main(["ho", files["nz3"], "--dim", "1"])
    captured = capsys.readouterr()
    assert code == 1
    assert json.loads(captured.err)["pointer"] == "/dim"


def test_missing_file_exits_one(files, capsys):
    code = main(["validate", str(files["dir"] / "absent.json")])
    capsys.readouterr()
    assert code == 1


def test_out_flag_writes_the_report_to_a_file(files, capsys):
    target = files["dir"] / "report.json"
    code = main(["contractible", files["d2"], "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    rep = json.loads(target.read_text())
    assert rep["verdict"].startswith("confirmed")


def test_canonical_form_is_stable_under_validate(files, capsys):
    code, rep = _run(capsys, ["validate", files["bdincl"]])
    assert code == 0
    assert io.canonical(io.load_path(files["bdincl"])) == io.load_path(files["bdincl"])
