import json

import pytest

from gridlab.cli import main, run_sweep
from gridlab.errors import UnknownSuite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def h1a(tmp_path, capsys):
    path = tmp_path / "h.json"
    code, _ = run(capsys, "construct", "--family", "1a", "--p", "5", "--out", str(path))
    assert code == 0
    return str(path)


def test_construct_output(capsys, tmp_path):
    code, data = run_json(capsys, "construct", "--family", "1a", "--p", "3")
    assert code == 0
    assert data["family"] == "1a"
    assert data["sx"] == 2 and data["sy"] == 2
    assert data["bidegree"] == [1, 1]
    assert data["poly"]["field"] == {"kind": "prime", "p": 3}


def test_gridcheck_grid_free(capsys, h1a):
    code, data = run_json(
        capsys, "gridcheck", "--input", h1a, "--p", "5", "--s", "2", "--t", "2"
    )
    assert code == 0
    assert data["grid_free"] is True


def test_gridcheck_witness_exit_1(capsys, tmp_path):
    # a rank-2 bilinear form on P^2 x P^2 has (2,2)-grids
    from gridlab.fields import QQ
    from gridlab.poly import BiHomPoly, MultiPoly
    from gridlab.hypersurfaces import Hypersurface

    vars = ("x0", "x1", "x2", "y0", "y1", "y2")
    H = Hypersurface(
        BiHomPoly(MultiPoly.parse(QQ, vars, "x0*y0 + x1*y1"), vars[:3], vars[3:])
    )
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(H.to_json()))
    code, data = run_json(
        capsys, "gridcheck", "--input", str(path), "--p", "5", "--s", "2", "--t", "2"
    )
    assert code == 1
    assert data["grid_free"] is False
    assert len(data["witness"]["S"]) == 2
    assert len(data["witness"]["T"]) == 2


def test_edges_report(capsys, h1a):
    code, data = run_json(
        capsys, "edges", "--input", h1a, "--p", "5", "--s", "2", "--t", "2"
    )
    assert code == 0
    assert data["m"] == 120
    assert data["n"] == 50


def test_curves_moura_golden(capsys):
    code, out = run(capsys, "curves", "moura", "--d1", "3", "--d2", "2")
    assert code == 0
    assert out == '{"max": 5}\n'


def test_curves_imult(capsys, tmp_path):
    from gridlab.fields import QQ
    from gridlab.poly import MultiPoly

    Y3 = ("y0", "y1", "y2")
    conic = tmp_path / "conic.json"
    line = tmp_path / "line.json"
    conic.write_text(json.dumps(MultiPoly.parse(QQ, Y3, "y1**2 - y0*y2").to_json()))
    line.write_text(json.dumps(MultiPoly.parse(QQ, Y3, "y2").to_json()))
    code, data = run_json(
        capsys,
        "curves", "imult", "--f", str(conic), "--g", str(line), "--point", "1:0:0",
    )
    assert code == 0
    assert data["multiplicity"] == 2


def test_curves_common(capsys, tmp_path):
    from gridlab.fields import QQ
    from gridlab.poly import MultiPoly

    Y3 = ("y0", "y1", "y2")
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(
        json.dumps(MultiPoly.parse(QQ, Y3, "(y0 + y1)*(y1 - y2)").to_json())
    )
    b.write_text(
        json.dumps(MultiPoly.parse(QQ, Y3, "(y0 + y1)*(y0 + 2*y2)").to_json())
    )
    code, data = run_json(
        capsys, "curves", "common", "--h1", str(a), "--h2", str(b), "--u", "1:0:0"
    )
    assert code == 0
    assert data["shares_component"] is True
    assert data["M"] == 10 and data["N"] == 6


def test_s1_classify_and_reduce(capsys, tmp_path):
    from gridlab.fields import QQ
    from gridlab.poly import MultiPoly

    V4 = ("x0", "x1", "y0", "y1")
    f = tmp_path / "F.json"
    f.write_text(
        json.dumps(MultiPoly.parse(QQ, V4, "y0*(x0*y1 - x1*y0)**2").to_json())
    )
    code, data = run_json(capsys, "s1", "classify", "--poly", str(f), "--t", "3")
    assert code == 0
    assert data["M"] == 2 and data["grid_free"] is True

    code, data = run_json(capsys, "s1", "reduce", "--poly", str(f))
    assert code == 0
    assert data["bidegree"] == [1, 2]

    code, data = run_json(
        capsys, "s1", "classify", "--poly", str(f), "--t", "2", "--exclude-y", "0:1"
    )
    assert code == 0
    assert data["M"] == 1 and data["grid_free"] is True


def test_cremona_apply_golden(capsys, h1a, tmp_path):
    from gridlab.fields import QQ
    from gridlab.poly import BiHomPoly, MultiPoly
    from gridlab.hypersurfaces import Hypersurface

    vars = ("x0", "x1", "x2", "y0", "y1", "y2")
    H0 = Hypersurface(
        BiHomPoly(
            MultiPoly.parse(QQ, vars, "x0*y0 + x1*y1 + x2*y2"), vars[:3], vars[3:]
        )
    )
    path = tmp_path / "h0.json"
    path.write_text(json.dumps(H0.to_json()))
    code, data = run_json(
        capsys, "cremona", "apply", "--sigma", "quadratic", "--input", str(path)
    )
    assert code == 0
    got = Hypersurface.from_json(data)
    expected = MultiPoly.parse(
        QQ, vars, "x0*y1*y2 + x1*y0*y2 + x2*y0*y1"
    ).monic()
    assert got.form.poly == expected
    assert data["bidegree"] == [1, 2]


def test_cremona_nagata(capsys, tmp_path):
    from gridlab.fields import QQ
    from gridlab.poly import MultiPoly

    vars = ("x1", "x2", "x3")
    delta = tmp_path / "delta.json"
    delta.write_text(
        json.dumps(MultiPoly.parse(QQ, vars, "x1**2 - x2*x3").to_json())
    )
    code, data = run_json(
        capsys, "cremona", "apply", "--sigma", "nagata", "--input", str(delta)
    )
    assert code == 0
    got = MultiPoly.from_json(data)
    assert got == MultiPoly.parse(QQ, tuple(got.vars), "x1**2 - x2*x3")


def test_sweep_empty_primes(capsys):
    code, data = run_json(capsys, "sweep", "--primes", "")
    assert code == 0
    assert data["all_pass"] is True
    assert data["results"] == []


def test_sweep_records_bad_characteristic():
    report = run_sweep("default", [2])
    by_name = {r["check"]: r for r in report["results"]}
    assert "BadCharacteristic" in by_name["family-1b"].get("error", "")
    assert not report["all_pass"]


def test_sweep_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_sweep("nope", [5])


def test_sweep_unknown_suite_exit_2(capsys):
    code, _ = run(capsys, "sweep", "--suite", "nope", "--primes", "5")
    assert code == 2


def test_malformed_json_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run(
        capsys, "gridcheck", "--input", str(bad), "--p", "5", "--s", "2", "--t", "2"
    )
    assert code == 2


def test_usage_error_exit_2(capsys):
    assert main(["gridcheck"]) == 2
    assert main(["construct", "--family", "9z", "--p", "5"]) == 2


def test_byte_identical_output(capsys, h1a):
    _, out1 = run(capsys, "edges", "--input", h1a, "--p", "5", "--s", "2", "--t", "2")
    _, out2 = run(
        capsys,
        "--threads", "4",
        "edges", "--input", h1a, "--p", "5", "--s", "2", "--t", "2",
    )
    assert out1 == out2
