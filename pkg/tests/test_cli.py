import io

import pytest

from polysym import __version__, cli
from polysym.qseries import TruncationSpec, from_json, from_text
from polysym.reference import ORBIT_SERIES_Q10


def run(*argv):
    out = io.StringIO()
    rc = cli.run(list(argv), out=out)
    return rc, out.getvalue()


def test_series_text():
    rc, out = run("series", "--class", "asym", "--tmax", "6", "--qmax", "7", "--format", "text")
    assert rc == 0
    assert out == "8*t^5*q^4 + 8*t^5*q^5 + 32*t^6*q^5 + 24*t^6*q^6 + 16*t^6*q^7\n"


def test_series_matches_reference_coefficients():
    _, out = run("series", "--class", "asym", "--qmax", "10", "--tmax", "11")
    spec = TruncationSpec.of("tq", 10, t=11)
    assert from_text(out.strip(), spec) == from_text(ORBIT_SERIES_Q10["asym"], spec)


def test_series_json_roundtrip():
    _, text = run("series", "--class", "Fv", "--qmax", "8", "--format", "json")
    s = from_json(text)
    _, plain = run("series", "--class", "Fv", "--qmax", "8")
    assert s.to_text() + "\n" == plain


def test_series_csv():
    _, out = run("series", "--class", "P", "--qmax", "3", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "x,y,q,coeff"
    assert "1,1,1,1" in lines


def test_series_alt_vars():
    rc, out = run("series", "--class", "C", "--qmax", "2", "--vars", "xyq")
    assert rc == 0 and out.startswith("x*y*q")


def test_table_area():
    rc, out = run("table", "--by", "area", "--max", "10")
    assert rc == 0
    assert out.splitlines()[-1] == "10,9312,0,208,2380,52,32,1211,6,2,8952"
    _, oracle = run("table", "--by", "area", "--max", "10", "--source", "oracle")
    assert out == oracle


def test_table_perimeter_threads(monkeypatch):
    _, one = run("table", "--by", "perimeter", "--max", "16")
    monkeypatch.setenv("POLYSYM_THREADS", "3")
    _, three = run("table", "--by", "perimeter", "--max", "16")
    assert one == three


@pytest.mark.parametrize("argv", [
    ("series", "--class", "Fr", "--qmax", "0"),
    ("series", "--class", "nope", "--qmax", "3"),
    ("series", "--class", "Fr", "--qmax", "3", "--vars", "xyq"),
    ("table", "--by", "area", "--max", "30", "--source", "oracle"),
    ("table", "--by", "volume", "--max", "3"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_bad_threads(monkeypatch):
    monkeypatch.setenv("POLYSYM_THREADS", "zero")
    assert run("table", "--by", "area", "--max", "4")[0] == 2


def test_verify_quick():
    rc, out = run("verify", "--level", "quick")
    assert rc == 0
    assert out.endswith("all checks passed\n")
    assert "FAIL" not in out


def test_verify_reports_first_difference(monkeypatch):
    from polysym import checks
    bad = checks.Mismatch("X", "t^2*q", 1, 2)
    monkeypatch.setattr(checks, "checks_for", lambda level: [checks.Check("broken", lambda: bad)])
    rc, out = run("verify")
    assert rc == 1
    assert "FAIL broken" in out
    assert "first difference: (X, t^2*q, 1, 2)" in out


def test_version():
    assert run("version") == (0, f"polysym {__version__}\n")


def test_deterministic():
    a = run("series", "--class", "Fd1d2", "--qmax", "12")
    b = run("series", "--class", "Fd1d2", "--qmax", "12")
    assert a == b
