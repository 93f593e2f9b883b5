import json

import pytest

from kvwitness.cli import EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH, EXIT_OK, main
from kvwitness.errors import NotContractible, ParseError, SchemaError
from kvwitness.scenario import (
    dump_scenario,
    embedded_scenario_text,
    load_embedded_scenario,
    parse_scenario,
    scenario_from_dict,
    scenario_to_dict,
)


def _embedded_dict():
    return json.loads(embedded_scenario_text())


def test_round_trip_is_stable():
    sc = load_embedded_scenario()
    text = dump_scenario(sc)
    assert parse_scenario(text) == sc
    assert dump_scenario(parse_scenario(text)) == text
    assert text == embedded_scenario_text()


def test_stages_and_names(built):
    assert [label for label, _ in built.stages] == ["P2", "S1", "S2", "V"]
    assert built.surface.rank == 12
    assert built.contraction.target_rank == 1


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_scenario('{\n  "name": "x",\n  "surface": [,]\n}')
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_scenario("   \n")


@pytest.mark.parametrize(
    "mutate,path",
    [
        (lambda d: d.update(extra=1), "$"),
        (lambda d: d["surface"]["curves"][0].update(degree="1"), "$.surface.curves[0].degree"),
        (lambda d: d["surface"]["blowups"][0]["center"].update(Nope=1), "$.surface.blowups[0].center.Nope"),
        (lambda d: d["divisors"]["A"].update(F_a=0.5), "$.divisors.A.F_a"),
        (lambda d: d["relative_boundary"].update(L_ad="3/2"), "$.relative_boundary.L_ad"),
        (lambda d: d.update(contraction="D"), "$.contraction"),
        (lambda d: d["expectations"][0].update(value=1.0), "$.expectations[0].value"),
        (lambda d: d["pencil"].update(cusp_resolution=["q"]), "$.pencil.cusp_resolution"),
        (lambda d: d["witness"].update(ample="Z"), "$.witness.ample"),
    ],
)
def test_schema_errors_carry_paths(mutate, path):
    d = _embedded_dict()
    mutate(d)
    with pytest.raises(SchemaError) as exc:
        scenario_from_dict(d)
    assert exc.value.path == path


def test_not_contractible_scenario():
    d = _embedded_dict()
    d["contraction"] = ["D", "G_1", "G_2", "G_3"]
    sc = scenario_from_dict(d)
    with pytest.raises(NotContractible):
        sc.build()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_verify_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify")
    code2, out2, _ = run(capsys, "verify")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["witness"]["verdict"] == "H1_NONZERO_CERTIFIED"
    assert "." not in json.dumps(rep["witness"]["pullback_B"])  # no floats anywhere


def test_cli_audit_passes(capsys):
    code, out, err = run(capsys, "audit")
    assert code == EXIT_OK, err
    assert json.loads(out)["expectations"]["passed"] is True


def test_cli_audit_mismatch(capsys, tmp_path):
    d = _embedded_dict()
    d["expectations"].append({"path": "witness/chi", "value": "0"})
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(d))
    code, out, err = run(capsys, "verify", "--mode", "audit", "--scenario", str(f))
    assert code == EXIT_MISMATCH
    assert "MISMATCH witness/chi" in err


def test_cli_input_errors(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text("{")
    assert run(capsys, "verify", "--scenario", str(f))[0] == EXIT_INPUT
    assert run(capsys, "verify", "--scenario", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    d = _embedded_dict()
    d["contraction"] = ["D", "G_1", "G_2", "G_3"]
    f.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", "--scenario", str(f))
    assert code == EXIT_INPUT and "NotContractible" in err
    assert run(capsys, "pencil", "--prime", "4")[0] == EXIT_INPUT
    with pytest.raises(SystemExit):
        main(["pencil", "--ext-degree", "0"])


def test_cli_internal_error_exit(capsys, monkeypatch):
    from kvwitness import report
    from kvwitness.errors import InvariantViolation

    def boom(*a, **k):
        raise InvariantViolation("forced")

    monkeypatch.setattr(report, "run_witness_pipeline", boom)
    assert run(capsys, "verify")[0] == EXIT_INTERNAL


def test_cli_other_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "pencil", "-p", "5", "--format", "text")
    assert code == EXIT_OK and "pencil/members/2/0/type = CUSP" in out
    code, out, _ = run(capsys, "dump-lattice", "--stage", "S2")
    assert code == EXIT_OK and json.loads(out)["stage"] == "S2"
    assert run(capsys, "dump-lattice", "--stage", "nope")[0] == EXIT_INPUT
    target = tmp_path / "sc.json"
    assert run(capsys, "export-scenario", "--out", str(target))[0] == EXIT_OK
    assert target.read_text() == embedded_scenario_text()
    code, out, _ = run(capsys, "verify", "--explore")
    hits = json.loads(out)["exploratory"]["certified_candidates"]
    assert {"F_a": "1", "F_b": "-1", "G_3": "1"} in [h["ample"] for h in hits]


def test_scenario_to_dict_omits_defaults():
    d = scenario_to_dict(load_embedded_scenario())
    assert "curve" not in d["surface"]["blowups"][0]
    assert d["surface"]["blowups"][3]["stage"] == "S1"
