import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from wgwa.bands import build_band, detect_band_data, pmodule
from wgwa.classify import Constant, classify_point, heisenberg_catalogue
from wgwa.cli import run
from wgwa.oracle import to_matrices
from wgwa.serialize import (
    SCHEMA,
    SchemaError,
    dumps,
    from_document,
    loads,
    report_doc,
    to_document,
)
from wgwa.strings import BOUNDED, DOUBLE_INFINITE, build_string
from wgwa.universe import Affine, Angle, FinitePoly, PolyIdeal, PowerMap

U7 = FinitePoly(7, (0, 0, 1), (-2, 1))
H4, H2 = PolyIdeal(7, (3, 1)), PolyIdeal(7, (5, 1))
UNIVERSE = ["--fp", "7", "--f", "0,0,1", "--t", "-2,1"]


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------- documents


@pytest.mark.parametrize("u", [U7, PowerMap(3), Affine(Fraction(1, 2), 3)])
def test_universe_round_trip(u):
    doc = to_document(u)
    assert doc["schema"] == SCHEMA and doc["type"] == "universe"
    assert loads(dumps(doc)) == u


def test_string_round_trip():
    for s in (build_string(U7, BOUNDED, [H4, H2]), build_string(U7, DOUBLE_INFINITE, [H2, H4], lo=-1),
              build_string(PowerMap(2), DOUBLE_INFINITE, [Angle(Fraction(1, 2)), Angle(Fraction(1, 4))])):
        again = loads(dumps(to_document(s)))
        assert (again.kind, again.lo, again.ideals, again.universe) == (s.kind, s.lo, s.ideals, s.universe)


def test_band_round_trip():
    u2 = FinitePoly(2, (0, 0, 1), (0, 1))
    frob = detect_band_data(u2, PolyIdeal(2, (1, 1, 1)))
    band = detect_band_data(U7, H2)
    for bm in (build_band(band, pmodule(band, [[3]]), "N"),
               build_band(band, pmodule(band, [[0, 6], [1, 0]]), "M"),
               build_band(frob, pmodule(frob, [[(0, 1)]]), "M")):
        again = loads(dumps(to_document(bm)))
        assert again.describe() == bm.describe()
        assert to_matrices(again) == to_matrices(bm)


def test_finite_module_round_trip():
    fm = to_matrices(build_string(U7, BOUNDED, [H4, H2]))
    assert loads(dumps(to_document(fm))) == fm


def test_report_round_trip():
    body = classify_point(U7, H4).to_dict()
    back = loads(dumps(report_doc("classification", body, U7)))
    assert back["universe"] == U7
    assert back["string_families"] == body["string_families"]
    cat = heisenberg_catalogue(Constant(Fraction(2)), 1).to_dict()
    assert loads(dumps(report_doc("catalogue", cat)))["items"] == cat["items"]
    with pytest.raises(SchemaError):
        report_doc("essay", {})


def test_schema_errors():
    for bad in ("not json", "[]", json.dumps({"schema": "wgwa/0", "type": "universe"}),
                json.dumps({"schema": SCHEMA, "type": "novel"}),
                json.dumps({"schema": SCHEMA, "type": "string", "universe": U7.describe()})):
        with pytest.raises(SchemaError):
            loads(bad)
    doc = to_document(build_band(detect_band_data(U7, H2), pmodule(detect_band_data(U7, H2), [[3]]), "M"))
    doc["cycle"] = ["(h-2)", "(h-3)"]
    with pytest.raises(SchemaError):
        from_document(doc)
    with pytest.raises(SchemaError):
        to_document(object())


# ---------------------------------------------------------------- command line


def test_orbit_command():
    code, out, _ = cli("orbit", *UNIVERSE, "--start", "(h-4)")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA and doc["type"] == "orbit"
    # the start lies on the cycle, so the cycle is listed from the start
    assert doc["cycle"] == ["(h-4)", "(h-2)"] and doc["tail"] == []
    assert loads(out)["universe"] == U7
    code, out, _ = cli("orbit", *UNIVERSE, "--start", "(h-3)")
    assert json.loads(out)["cycle"] == ["(h-2)", "(h-4)"]
    code, text, _ = cli("orbit", *UNIVERSE, "--start", "(h-3)", "--output", "text")
    assert "cycle: (h-2) -> (h-4)" in text


def test_string_dump_then_check(tmp_path):
    dump = tmp_path / "bounded.json"
    code, out, _ = cli("string", *UNIVERSE, "--kind", "bounded", "--window", "(h-4);(h-2)",
                       "--dump", str(dump), "--output", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["simple"] is True and rep["relations"]["ok"]
    code, out, _ = cli("check", "--module", str(dump), "--output", "json")
    assert code == 0
    chk = json.loads(out)
    assert chk["relations"] == {"ok": True, "violations": []}
    assert chk["simple"] is True and chk["dim"] == 2
    code, text, _ = cli("check", "--module", str(dump), "--output", "text")
    assert code == 0 and "relations: ok" in text


def test_check_accepts_string_and_band_documents(tmp_path):
    band = detect_band_data(U7, H2)
    for obj in (build_string(U7, BOUNDED, [H4, H2]), build_band(band, pmodule(band, [[3]]), "N")):
        path = tmp_path / "m.json"
        path.write_text(dumps(to_document(obj)))
        code, out, _ = cli("check", "--module", str(path), "--output", "json")
        assert code == 0 and json.loads(out)["relations"]["ok"]


def test_heisenberg_text():
    code, out, _ = cli("heisenberg", "--f", "const:2", "--zdot", "1")
    assert code == 0
    assert "X acts as c, Y acts as 3/c" in out
    assert out.count("[string]") == 1 and out.count("[family]") == 1
    code, out, _ = cli("heisenberg", "--f", "const:2", "--zdot", "-2")
    assert out.count("[module]") == 1 and out.count("[family]") == 2


def test_other_commands():
    code, out, _ = cli("classify", *UNIVERSE, "--point", "(h-4)")
    assert code == 0 and json.loads(out)["type"] == "classification"
    code, out, _ = cli("band", "--fp", "7", "--f", "0,0,1", "--t", "0,1", "--point", "(h-2)",
                       "--alpha", "0,6;1,0", "--output", "json")
    rep = json.loads(out)
    assert code == 0 and rep["pmodule_simple"] is True and rep["relations"]["ok"]
    code, out, _ = cli("export-dot", "--fp", "5", "--f", "0,0,1", "--t", "0,1", "--seed-point", "(h-4)")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = cli("string", "--power", "2", "--kind", "double_infinite",
                       "--window", "angle:0;angle:1/2;angle:1/4", "--certificate", "distinct:true",
                       "--output", "text")
    assert code == 0 and "simple: True" in out


def test_exit_codes_and_error_documents(tmp_path):
    code, out, err = cli("string", *UNIVERSE, "--kind", "bounded", "--window", "(h-2);(h-4)", "--output", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc == {"schema": SCHEMA, "type": "error", "error": "boundary_condition_failed",
                   "message": doc["message"]}
    code, _, err = cli("band", "--fp", "7", "--f", "0,0,1", "--t", "0,1", "--point", "(h-2)", "--alpha", "0")
    assert code == 1 and "invalid_value" in err
    code, _, err = cli("orbit", "--fp", "6", "--f", "0,0,1", "--t", "0,1", "--start", "(h)")
    assert code == 1 and "non_prime_modulus" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    code, _, err = cli("check", "--module", str(bad))
    assert code == 1 and "schema_error" in err
    # usage errors
    assert cli("orbit", "--start", "(h)")[0] == 2
    assert cli("orbit", "--fp", "7", "--power", "2", "--f", "0,1", "--t", "0,1", "--start", "(h)")[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("classify", *UNIVERSE, "--point", "(h-4)", "--up-depth", "-1")[0] == 2
    assert cli("check", "--module", str(tmp_path / "missing.json"))[0] == 2
    assert cli("string", *UNIVERSE, "--kind", "bounded", "--window", "(h-4);(h-2)", "--certificate", "magic")[0] == 2


def test_output_is_byte_stable():
    argv = ["classify", "--power", "2", "--point", "angle:1/3", "--up-depth", "2"]
    assert cli(*argv) == cli(*argv)
    argv = ["heisenberg", "--f", "power:2", "--zdot", "outside", "--output", "json", "--seed", "4"]
    assert cli(*argv) == cli(*argv)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wgwa", "orbit", *UNIVERSE, "--start", "(h-4)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert set(json.loads(proc.stdout)["cycle"]) == {"(h-2)", "(h-4)"}
