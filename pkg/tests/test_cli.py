"""
Tests for the mfkit command line.
"""

import json

import pytest

from mfkit import catalog, main as cli
from mfkit.catalog import TwoGenParams, fitting_formula_ideal
from mfkit.equiv import ClassificationError
from mfkit.groebner import buchberger
from mfkit.main import main


def _write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.fixture
def phi23_file(tmp_path, capsys):
    path = tmp_path / "phi23.json"
    code = main(["catalog", "--family", "phi", "--params", "i=2,j=3,a=-1,b=-1", "--matrix", "-o", str(path)])
    assert code == 0
    capsys.readouterr()
    return path


@pytest.fixture
def psi23_file(tmp_path):
    psi = catalog.psi_ij(TwoGenParams(2, 3, -1, -1))
    return _write_json(tmp_path / "psi23.json", {"rows": psi.to_text()})


def test_version(capsys):
    """Test --version exits with 0."""
    assert main(["--version"]) == 0
    assert "mfkit v" in capsys.readouterr().out


def test_missing_command_is_usage_error():
    """Test a missing subcommand exits with 2."""
    assert main([]) == 2


def test_gb_unit_ideal(tmp_path, capsys):
    """Test the basis of <Y1, Y1-1> is printed as 1."""
    ideal = tmp_path / "ideal.txt"
    ideal.write_text("# unit ideal\nY1\n\nY1-1\n", encoding="utf-8")
    assert main(["gb", str(ideal)]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_gb_with_explicit_vars(tmp_path, capsys):
    """Test an explicit variable order and a basis with two elements."""
    ideal = tmp_path / "ideal.txt"
    ideal.write_text("Y1+Y2\nY1-Y2\n", encoding="utf-8")
    assert main(["gb", str(ideal), "--vars", "Y1,Y2", "--order", "lex"]) == 0
    assert capsys.readouterr().out.split() == ["Y1", "Y2"]


def test_gb_bad_polynomial(tmp_path):
    """Test a syntax error is an input error."""
    ideal = tmp_path / "ideal.txt"
    ideal.write_text("Y1 +* Y2\n", encoding="utf-8")
    assert main(["gb", str(ideal)]) == 2


def test_fitting(phi23_file, capsys):
    """Test the Fitting ideal of phi_23 matches its closed form."""
    assert main(["fitting", str(phi23_file)]) == 0
    expected = buchberger(fitting_formula_ideal(TwoGenParams(2, 3, -1, -1))).to_lines()
    assert capsys.readouterr().out.split() == expected


def test_equiv_same_matrix(phi23_file, capsys):
    """Test X ~ X exits with 0 and reports the verdict."""
    assert main(["equiv", str(phi23_file), str(phi23_file)]) == 0
    assert json.loads(capsys.readouterr().out)["outcome"] == "equivalent"


def test_equiv_not_equivalent(phi23_file, psi23_file, capsys):
    """Test a negative verdict exits with 1 and carries the certificate."""
    assert main(["equiv", str(phi23_file), str(psi23_file)]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["outcome"] == "not-equivalent"
    assert data["certificate"] == ["1"]


def test_equiv_with_witness(tmp_path, psi23_file, capsys):
    """Test checking an explicit witness for phi^t ~ psi."""
    phi = catalog.phi_ij(TwoGenParams(2, 3, -1, -1))
    rows = phi.to_text()
    phi_t = _write_json(tmp_path / "phit.json", {"rows": [list(r) for r in zip(*rows)]})
    witness = _write_json(
        tmp_path / "w.json", {"vars": [], "U": [["0", "1"], ["-1", "0"]], "V": [["0", "1"], ["-1", "0"]]}
    )
    assert main(["equiv", str(phi_t), str(psi23_file), "--witness", str(witness)]) == 0
    assert json.loads(capsys.readouterr().out)["valid"] is True
    bad = _write_json(tmp_path / "bad.json", {"vars": [], "U": [["1", "0"], ["0", "1"]], "V": [["1", "0"], ["0", "1"]]})
    assert main(["equiv", str(phi_t), str(psi23_file), "--witness", str(bad)]) == 1


def test_equiv_input_errors(tmp_path, phi23_file):
    """Test missing files, bad variables and misplaced flags exit with 2."""
    assert main(["equiv", str(phi23_file), str(tmp_path / "missing.json")]) == 2
    stray = _write_json(tmp_path / "z.json", {"vars": ["Z"], "rows": [["Z"]]})
    assert main(["equiv", str(stray), str(stray)]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert main(["equiv", str(broken), str(broken)]) == 2
    rel = tmp_path / "rel.txt"
    rel.write_text("l^3-1\n", encoding="utf-8")
    assert main(["equiv", str(phi23_file), str(phi23_file), "--relations", str(rel)]) == 2


def _form_files(tmp_path, forms):
    paths = []
    for name, text in zip("abcd", forms):
        path = tmp_path / f"{name}.txt"
        path.write_text(f"# linear form {name}\n{text}\n", encoding="utf-8")
        paths.append(str(path))
    return paths


def test_complete(tmp_path, capsys):
    """Test completing four admissible forms read from files."""
    files = _form_files(tmp_path, ["Y1+Y4", "Y2+Y3", "Y1+e*Y2", "Y3+Y4"])
    assert main(["complete", *files]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["rows"][0] == ["0", "Y1+Y4", "Y2+Y3"]
    assert data["vars"] == ["Y1", "Y2", "Y3", "Y4"]


def test_complete_input_errors(tmp_path):
    """Test dependent forms, missing files and multi-line files exit with 2."""
    dependent = _form_files(tmp_path, ["Y1+Y2", "Y3+Y4", "Y1+e*Y3", "Y2+e*Y4"])
    assert main(["complete", *dependent]) == 2
    files = _form_files(tmp_path, ["Y1+Y4", "Y2+Y3", "Y1+e*Y2", "Y3+Y4"])
    assert main(["complete", *files[:3], str(tmp_path / "missing.txt")]) == 2
    two_lines = tmp_path / "two.txt"
    two_lines.write_text("Y1+Y4\nY2+Y3\n", encoding="utf-8")
    assert main(["complete", str(two_lines), *files[1:]]) == 2


def test_catalog_requires_family():
    """Test the family is a required option."""
    assert main(["catalog", "phi"]) == 2
    assert main(["catalog"]) == 2


def test_catalog_listing(capsys):
    """Test listing a family without parameters."""
    assert main(["catalog", "--family", "theta"]) == 0
    listing = json.loads(capsys.readouterr().out)
    assert len(listing) == 6
    assert listing[0]["name"].startswith("theta(")


def test_catalog_entry_report(capsys):
    """Test the full report of one entry."""
    assert main(["catalog", "--family", "alpha", "--params", "b=-1,c=-1,d=-1,eps=e"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["family"] == "alpha"
    assert report["params"] == {"b": "-1", "c": "-1", "d": "-1", "eps": "e"}
    assert set(report) == {"name", "family", "params", "det_scale", "matrix", "phi", "psi"}


def test_catalog_parameter_errors():
    """Test constraint violations and a raw entry without a case."""
    assert main(["catalog", "--family", "phi", "--params", "i=2,j=2,a=-1,b=-1"]) == 2
    assert main(["catalog", "--family", "alpha", "--params", "b=-1,c=-1,d=-1,eps=1"]) == 2
    assert main(["catalog", "--family", "raw", "--params", "a=-1,b=-1,c=-e,d=-e"]) == 2
    assert main(["catalog", "--family", "alpha", "--params", "b=-1,x=2"]) == 2


def test_catalog_raw_case(capsys):
    """Test a raw D matrix."""
    assert main(["catalog", "--family", "raw", "--case", "D", "--params", "a=-1,b=-1,c=-e,d=-e", "--matrix"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert rows[0] == ["0", "Y1+Y2", "Y3+Y4"]


def test_verify_catalog_reports_failure(monkeypatch, capsys):
    """Test a corrupted entry makes verify-catalog exit with 1."""
    good = catalog.enumerate_two_gen()[0]
    bad = type(good)(good.name, good.family, good.params, good.phi, good.phi)
    monkeypatch.setattr(catalog, "enumerate_all", lambda: [good, bad])
    assert main(["verify-catalog"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["checked"] == 2
    assert report["failed"] == 1


def test_verify_catalog_output_file(monkeypatch, tmp_path):
    """Test writing the report to a file."""
    monkeypatch.setattr(catalog, "enumerate_all", lambda: catalog.enumerate_two_gen()[:3])
    out = tmp_path / "reports" / "catalog.json"
    assert main(["verify-catalog", "-o", str(out)]) == 0
    assert json.loads(out.read_text(encoding="utf-8"))["failed"] == 0


def test_classify_audit_failure_exit_code(monkeypatch):
    """Test a failed rule audit exits with 1."""

    def failing(*args, **kwargs):
        raise ClassificationError("Audit failed")

    monkeypatch.setattr(cli, "classify", failing)
    assert main(["classify", "--generators", "3"]) == 1


def test_config_file_errors(tmp_path):
    """Test invalid configuration files and flag values exit with 2."""
    bad = tmp_path / "bad.yaml"
    bad.write_text("groebner:\n  order: deglex\n", encoding="utf-8")
    assert main(["--config", str(bad), "verify-catalog"]) == 2
    assert main(["classify", "--jobs", "0"]) == 2
    assert main(["fitting", "x.json", "--t", "-1"]) == 2
