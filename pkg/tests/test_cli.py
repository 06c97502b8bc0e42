import io
import json

import pytest

from pencilfree import catalog, cli
from pencilfree.catalog import CATALOG, PencilFile, get_catalog, parse_pencil_file
from pencilfree.cli import main, parse_selection
from pencilfree.errors import (EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_OK, EXIT_VALIDATION, IdentityViolated,
                               ValidationError)
from pencilfree.pencil import MemberLabel, discriminant, validate_pencil
from pencilfree.poly import parse_polynomial


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture(scope="module")
def hesse_report():
    return discriminant(validate_pencil(*get_catalog("hesse").forms()))


# -- pencil files ----------------------------------------------------------


def test_parse_pencil_file():
    pf = parse_pencil_file("# a comment\nf = x^3 - y^3\n\ng = y^3 - z^3  # trailing\nbudget = 50\n")
    assert (pf.f, pf.g, pf.selection) == ("x^3 - y^3", "y^3 - z^3", None)
    assert pf.options == {"budget": "50"}


@pytest.mark.parametrize("text", ["f = x\n", "f = x\ng = y\nfoo = 1\n", "f = x\nf = y\ng = z\n", "f x\ng = y\n"])
def test_bad_pencil_files(text):
    with pytest.raises(ValidationError) as e:
        parse_pencil_file(text)
    assert e.value.code == "BAD_FILE"


def test_catalog_entries_round_trip():
    for name, entry in CATALOG.items():
        again = parse_pencil_file(entry.to_text())
        assert again == entry
    with pytest.raises(ValidationError):
        get_catalog("nope")


def test_conic4pts_passes_through_the_four_points():
    f, g = get_catalog("conic4pts").forms()
    for p in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)):
        assert f.evaluate(p) == 0 and g.evaluate(p) == 0


def test_hesse_generator_is_proportional_to_the_hessian():
    from pencilfree.poly import hessian_det
    f, g = get_catalog("hesse").forms()
    assert hessian_det(f).primitive() == g.primitive()


# -- selections ------------------------------------------------------------


def test_selection_expressions(hesse_report):
    rep = hesse_report
    assert parse_selection("all-singular", rep).k == 4
    assert parse_selection(None, rep).k == 4
    sel = parse_selection("all-singular minus [0:1]", rep)
    assert MemberLabel.at(0, 1) not in sel.labels and sel.k == 3
    sel = parse_selection("[1:0, 0:1] + orbit:2", rep)
    assert sel.k == 4 and sel.labels[2].orbit is not None


@pytest.mark.parametrize("text, code", [
    ("[1:0, 1:0]", "DUPLICATE_LABEL"),
    ("[0:0]", "BAD_SELECTION"),
    ("[1/2:1]", "BAD_SELECTION"),
    ("1:0", "BAD_SELECTION"),
    ("orbit:9", "BAD_SELECTION"),
    ("all-singular minus [1:1]", "BAD_SELECTION"),
    ("all-singular plus [1:1]", "BAD_SELECTION"),
    ("[]", "EMPTY_SELECTION"),
])
def test_bad_selections(hesse_report, text, code):
    with pytest.raises(ValidationError) as e:
        parse_selection(text, hesse_report)
    assert e.value.code == code


# -- commands --------------------------------------------------------------


def test_catalog_command():
    code, out, _ = run("catalog", "fermat3")
    assert code == EXIT_OK
    pf = parse_pencil_file(out)
    assert (pf.f, pf.g) == ("x^3 - y^3", "y^3 - z^3")
    code, out, _ = run("catalog", "hesse")
    assert parse_pencil_file(out).forms() == (parse_polynomial("x^3 + y^3 + z^3"), parse_polynomial("x*y*z"))
    with pytest.raises(SystemExit):
        run("catalog", "nope")


def test_analyze_fermat3(tmp_path):
    path = write(tmp_path, "f3.txt", get_catalog("fermat3").to_text())
    code, out, err = run("analyze", path)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert list(doc) == ["pencil", "discriminant", "selection", "divisor", "freeness", "tjurina", "theorem",
                         "diagnostics"]
    assert doc["pencil"]["n"] == 3 and doc["pencil"]["base_locus_smooth"] is True
    assert doc["discriminant"]["degree"] == 12
    assert [(f["label"], f["multiplicity"]) for f in doc["discriminant"]["factors"]] == \
        [("0:1", 4), ("1:0", 4), ("1:1", 4)]
    assert doc["freeness"]["free"] is True and doc["freeness"]["exponents"] == [4, 4]
    assert doc["tjurina"] == {"tau": 48, "tau_target": 48, "zk_degree": 0}
    th = doc["theorem"]
    assert th["contains_Dsg"] and th["lci_pass"] and th["criterion_consistent"]
    assert "free" in err


def test_analyze_hesse(tmp_path):
    path = write(tmp_path, "h.txt", get_catalog("hesse").to_text())
    code, out, _ = run("analyze", path)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["freeness"]["exponents"] == [4, 7] and doc["tjurina"]["tau"] == 93
    orbit = [f for f in doc["discriminant"]["factors"] if f["kind"] == "orbit"]
    assert len(orbit) == 1 and orbit[0]["degree"] == 2


def test_analyze_selection_flag_and_prime_filter(tmp_path):
    path = write(tmp_path, "f3.txt", "f = x^3 - y^3\ng = y^3 - z^3\n")
    code, out, _ = run("analyze", path, "--selection", "[1:0, 0:1]", "--no-prime-filter")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["freeness"]["free"] is False
    assert doc["tjurina"]["tau"] == 17 and doc["tjurina"]["zk_degree"] == 4
    assert doc["diagnostics"]["prime_filter"] is False
    assert doc["selection"]["expr"] == "[1:0, 0:1]"


def test_numbers_are_exact(tmp_path):
    path = write(tmp_path, "c.txt", get_catalog("conic4pts").to_text())
    _, out, _ = run("analyze", path)

    def walk(v):
        assert not isinstance(v, float)
        if isinstance(v, dict):
            for x in v.values():
                walk(x)
        elif isinstance(v, list):
            for x in v:
                walk(x)

    walk(json.loads(out))


def test_output_is_byte_stable(tmp_path):
    path = write(tmp_path, "c.txt", get_catalog("conic4pts").to_text())
    first = run("analyze", path)[1]
    assert first == run("analyze", path)[1]


def test_discriminant_command(tmp_path):
    path = write(tmp_path, "h.txt", get_catalog("hesse").to_text())
    code, out, _ = run("discriminant", path)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["discriminant"]["degree"] == 12
    assert doc["pencil"]["base_locus_degree"] == 9


@pytest.mark.parametrize("text, needle", [
    ("f = x^2\ng = y^2\n", "NOT_REDUCED"),
    ("f = x^2 + \ng = y^2\n", "PARSE_ERROR"),
    ("f = x\n", "BAD_FILE"),
    ("f = x*y\ng = x*y + x^2\n", "COMMON_COMPONENT"),
])
def test_validation_exit_code(tmp_path, text, needle):
    path = write(tmp_path, "bad.txt", text)
    code, out, err = run("analyze", path)
    assert code == EXIT_VALIDATION and out == ""
    assert needle in err


def test_missing_file_exit_code(tmp_path):
    code, _, err = run("analyze", str(tmp_path / "missing.txt"))
    assert code == EXIT_VALIDATION and "NO_FILE" in err


def test_budget_exit_code(tmp_path):
    path = write(tmp_path, "f4.txt", get_catalog("fermat4").to_text())
    code, out, err = run("analyze", path, "--budget", "1")
    assert code == EXIT_BUDGET and out == ""
    assert "budget" in err


def test_bad_budget_option(tmp_path):
    path = write(tmp_path, "f3.txt", get_catalog("fermat3").to_text())
    assert run("analyze", path, "--budget", "lots")[0] == EXIT_VALIDATION
    assert run("analyze", path, "--budget", "0")[0] == EXIT_VALIDATION


def test_identity_violation_exit_code(tmp_path, monkeypatch):
    path = write(tmp_path, "f3.txt", get_catalog("fermat3").to_text())

    def broken(*args, **kwargs):
        raise IdentityViolated("test", "injected")

    monkeypatch.setattr(cli, "theorem_report", broken)
    code, out, err = run("analyze", path)
    assert code == EXIT_INCONSISTENT and out == ""
    assert "identity" in err


def test_selftest_quick():
    code, _, err = run("selftest", "--quick")
    assert code == EXIT_OK
    assert err.count("[PASS]") == 6 and "all criteria passed" in err


def test_selftest_names_the_broken_row(monkeypatch):
    monkeypatch.setitem(catalog.CATALOG, "fermat3", PencilFile("x^3 - y^3", "y^3 - z^3 + x*y*z", "all-singular"))
    code, _, err = run("selftest", "--quick")
    assert code != EXIT_OK
    assert "criterion  5" in err
