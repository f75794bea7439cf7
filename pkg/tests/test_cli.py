import json
import subprocess
import sys
from fractions import Fraction

import pytest

from tropinv import build, green
from tropinv.cli import main
from tropinv.graphs import EdgePoint, dumps


@pytest.fixture
def files(tmp_path):
    paths = {}

    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
        return str(p)

    write("sunset.json", dumps(build("I", (1, 1, 1))))
    write("loop.json", dumps(build("III", (1,))))
    write("typeII.json", dumps(build("II", (1,))))
    write("point.json", dumps(build("trivial")))
    write(
        "disconnected.json",
        json.dumps(
            {
                "vertices": [{"id": "a", "q": 1}, {"id": "b", "q": 1}],
                "edges": [],
            }
        ),
    )
    write("countsII.json", json.dumps({"h": 2, "delta_i": ["1"]}))
    write("countsII_wrong.json", json.dumps({"h": 2, "xi0_fixed": "1"}))
    write("bad.json", "{not json")
    return paths, tmp_path


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def payload(out):
    return json.loads(out)["payload"]


def test_invariants_sunset(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["invariants", paths["sunset.json"]])
    assert code == 0
    body = payload(out)
    assert body["phi"] == "1/9"
    assert body["h"] == 2
    assert body["crosschecks"]["foster_identity"] is True


def test_invariants_point_graph(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["invariants", paths["point.json"]])
    assert code == 0
    assert payload(out)["phi"] == "0"


def test_invariants_disconnected_exit_3(files, capsys):
    paths, _ = files
    code, _, err = run(capsys, ["invariants", paths["disconnected.json"]])
    assert code == 3
    body = json.loads(err)["payload"]
    assert body["error"] == "DisconnectedGraph"
    assert "components" in body["message"]


def test_parse_error_exit_2(files, capsys):
    paths, _ = files
    code, _, err = run(capsys, ["invariants", paths["bad.json"]])
    assert code == 2
    assert json.loads(err)["payload"]["error"] == "ParseError"


def test_green_values(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["green", paths["loop.json"], "--at", "vertex:v", "--at", "vertex:v"])
    assert code == 0
    assert payload(out)["green"] == "1/48"

    code, out, _ = run(capsys, ["green", paths["typeII.json"], "--at", "vertex:a", "--at", "vertex:b"])
    assert code == 0
    assert payload(out)["green"] == "-1/4"


def test_green_unknown_point_exit_3(files, capsys):
    paths, _ = files
    code, _, err = run(capsys, ["green", paths["loop.json"], "--at", "vertex:zz", "--at", "vertex:v"])
    assert code == 3
    assert json.loads(err)["payload"]["error"] == "UnknownPoint"


def test_green_offset_out_of_range_exit_3(files, capsys):
    paths, _ = files
    code, _, err = run(capsys, ["green", paths["loop.json"], "--at", "edge:e1@2", "--at", "vertex:v"])
    assert code == 3
    assert json.loads(err)["payload"]["error"] == "OffsetOutOfRange"


def test_point_syntax_exit_2(files, capsys):
    paths, _ = files
    code, _, err = run(capsys, ["green", paths["loop.json"], "--at", "v", "--at", "vertex:v"])
    assert code == 2


def test_green_offset_measured_from_smaller_endpoint(tmp_path, capsys):
    # stored orientation (b, a); the CLI measures from "a", the smaller id
    text = json.dumps(
        {
            "vertices": [{"id": "a", "q": 1}, {"id": "b", "q": 0}],
            "edges": [
                {"id": "e1", "ends": ["b", "a"], "length": "1"},
                {"id": "e2", "ends": ["b", "b"], "length": "1"},
            ],
        }
    )
    path = tmp_path / "iv_reversed.json"
    path.write_text(text)
    code = main(["green", str(path), "--at", "vertex:a", "--at", "edge:e1@1/4"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0

    from tropinv import at_vertex
    from tropinv.graphs import loads
    from tropinv.rational import format_rational

    # offset 1/4 from "a" is offset 3/4 from the stored first end "b"
    g = loads(text)
    value = green(g, at_vertex("a"), EdgePoint("e1", Fraction(3, 4)))
    assert out["payload"]["green"] == format_rational(value)


def test_potential_diagonal_identity(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["potential", paths["loop.json"], "--at", "vertex:v"])
    assert code == 0
    body = payload(out)
    assert body["potential"] == "1/12"
    assert body["capacity"] == "1/16"
    assert body["green_diagonal"] == "1/48"

    code, out2, _ = run(capsys, ["green", paths["loop.json"], "--at", "vertex:v", "--at", "vertex:v"])
    assert payload(out2)["green"] == body["green_diagonal"]


def test_genus2_command(files, capsys):
    code, out, _ = run(capsys, ["genus2", "I", "2", "3", "5"])
    assert code == 0
    body = payload(out)
    assert body["equal"] is True
    assert body["identities"]["phi_identity"]["holds"] is True
    assert body["rescaled_form"]["equal"] is True

    code, out, _ = run(capsys, ["genus2", "trivial"])
    assert code == 0

    code, _, err = run(capsys, ["genus2", "II", "1", "2"])
    assert code == 2  # arity mismatch


def test_hyperelliptic_command(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["hyperelliptic", paths["typeII.json"], paths["countsII.json"]])
    assert code == 0
    body = payload(out)
    assert body["phi_identity"]["holds"] and body["psi_identity"]["holds"]

    code, _, _ = run(capsys, ["hyperelliptic", paths["typeII.json"], paths["countsII_wrong.json"]])
    assert code == 5


def test_fit_command_deterministic(files, capsys):
    paths, _ = files
    code, out1, _ = run(capsys, ["fit", paths["typeII.json"], "--seed", "7"])
    assert code == 0
    code, out2, _ = run(capsys, ["fit", paths["typeII.json"], "--seed", "7"])
    assert out1 == out2  # byte-identical under a fixed seed
    body = payload(out1)
    assert body["numerator"] == {"1": "1"}
    assert body["denominator"] == {"0": "1"}


def test_oracle_command_with_csv(files, capsys):
    paths, tmp = files
    csv_path = str(tmp / "ladder.csv")
    code, out, _ = run(
        capsys,
        ["oracle", paths["loop.json"], "--orders", "8,16,32,64", "--csv", csv_path],
    )
    assert code == 0
    body = payload(out)
    assert body["within_tolerance"] is True
    lines = open(csv_path).read().strip().splitlines()
    assert lines[0].startswith("quantity,order")
    assert len(lines) == 5


def test_oracle_epsilon_quantity(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["oracle", paths["typeII.json"], "--quantity", "epsilon"])
    assert code == 0
    assert payload(out)["final_error"] == 0.0


def test_oracle_rejects_bad_orders(files, capsys):
    paths, _ = files
    for orders in ("1,4", "abc", ""):
        code, _, err = run(capsys, ["oracle", paths["loop.json"], "--orders", orders])
        assert code == 2


def test_fit_rejects_edgeless_family(files, capsys):
    paths, _ = files
    code, _, err = run(capsys, ["fit", paths["point.json"]])
    assert code == 2
    assert json.loads(err)["payload"]["error"] == "ArityMismatch"


def test_decimal_flag(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["green", paths["typeII.json"], "--at", "vertex:a",
                                "--at", "vertex:b", "--decimal", "6"])
    body = payload(out)
    assert body["green_decimal"] == "-0.25"


def test_module_entry_point(files):
    paths, _ = files
    proc = subprocess.run(
        [sys.executable, "-m", "tropinv", "invariants", paths["sunset.json"]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["phi"] == "1/9"


def test_envelope_shape(files, capsys):
    paths, _ = files
    code, out, _ = run(capsys, ["invariants", paths["sunset.json"]])
    envelope = json.loads(out)
    assert set(envelope) == {"command", "input_digest", "payload", "status"}
    assert envelope["status"] == 0
    assert envelope["command"] == ["invariants", paths["sunset.json"]]
    assert len(envelope["input_digest"]["graph"]) == 64


def test_crosscheck_failure_exit_4(files, capsys, monkeypatch):
    # no real input can trigger an internal crosscheck failure, so inject one
    from tropinv.errors import CrosscheckFailure
    import tropinv.cli as cli

    def boom(g):
        raise CrosscheckFailure("phi paths disagree: injected")

    monkeypatch.setattr(cli.invariants, "report", boom)
    paths, _ = files
    code, _, err = run(capsys, ["invariants", paths["sunset.json"]])
    assert code == 4
    assert json.loads(err)["payload"]["error"] == "CrosscheckFailure"
