import json
import math
import os
import subprocess

import numpy as np
import pytest

import lagrtori

CLI = os.environ.get("LAGRTORI_CLI")
SCHEMA = os.environ.get("LAGRTORI_SCHEMA")


def test_version():
    assert lagrtori.__version__.count(".") == 2


def test_bs_count():
    r = lagrtori.bs_count(3)
    assert r["results"]["count"] == 1
    assert r["results"]["fibers"] == [[[1, 3], [1, 3]]]
    assert r["results"]["match"]
    assert lagrtori.bs_count(2, closed=True)["results"]["count"] == 6
    assert lagrtori.bs_count(1)["results"]["count"] == 0


def test_errors_carry_codes():
    with pytest.raises(lagrtori.LagrtoriError) as info:
        lagrtori.bs_count(0)
    assert info.value.code == "PreconditionFailed"


def test_fiber_geometry():
    p1, p2 = lagrtori.fiber_periods(0.2, 0.3)
    assert abs(p1 - 0.2) < 1e-6 and abs(p2 - 0.3) < 1e-6
    assert lagrtori.maslov_d1(0.2, 0.3) == 1
    assert abs(lagrtori.ks_determinant(0.25, 0.25) - 1.0) < 1e-6


def test_symbol_flow_is_unitary():
    a = np.array([[1, 2, 0], [2, 1, 0], [0, 0, 0]], dtype=complex)
    u = lagrtori.symbol_flow(a, 0.7)
    assert np.allclose(u @ u.conj().T, np.eye(3), atol=1e-12)
    z = np.array([math.sqrt(0.2), math.sqrt(0.3), math.sqrt(0.5)], dtype=complex)
    m0, m1 = lagrtori.moment_map(lagrtori.symbol_flow(a, math.pi / 4) @ z)
    assert abs(m0 - 0.3) < 1e-9 and abs(m1 - 0.2) < 1e-9
    with pytest.raises(lagrtori.LagrtoriError):
        lagrtori.symbol_flow(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], dtype=complex), 1.0)


def test_chekanov():
    assert lagrtori.classify_type(0.5, 1.0) == "ChekanovType"
    assert lagrtori.classify_type(2.0, 1.0) == "CliffordType"
    assert lagrtori.classify_type(1.0, 1.0) == "Boundary"
    p_orbit, p_section = lagrtori.chekanov_periods(0.5, 1.0, 0.25)
    assert abs(p_orbit - 0.25) < 1e-6
    _, other = lagrtori.chekanov_periods(0.5, 1.0, 0.25, seed=7)
    assert min(abs(p_section - other), 1 - abs(p_section - other)) < 2e-6


def test_enc():
    assert lagrtori.enc_verdict(1, 3, 1, 3) == "Monotone"
    assert lagrtori.enc_verdict(1, 5, 1, 5) == "Displaceable"
    r = lagrtori.enc_report(5)
    assert r["results"]["monotone_points"] == [[[1, 3], [1, 3]]]


def test_scan_single_point():
    r = lagrtori.chekanov_scan(1.0, 0.5, 0.5, 0.1, 0.0, 0.0, 0.1, cert_grid=16)
    assert len(r["results"]["rows"]) == 1
    assert r["results"]["summary"]["certificates"]["all"]


def test_plot_markers():
    assert lagrtori.plot_svg(6).count('class="interior"') == 10
    assert lagrtori.plot_svg(3).count('class="interior"') == 1


@pytest.mark.skipif(not (CLI and SCHEMA), reason="CLI or schema path not configured")
@pytest.mark.parametrize(
    "args",
    [
        ["bs-count", "--level", "4"],
        ["bs-count", "--level", "2", "--closed"],
        ["enc-report", "--grid", "4"],
        ["chekanov-scan", "--a-min", "0.4", "--a-max", "0.4", "--delta-min", "0", "--delta-max", "0",
         "--cert-grid", "16"],
    ],
)
def test_cli_reports_match_schema(args):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.load(open(SCHEMA))
    out = subprocess.run([CLI] + args, check=True, capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)


@pytest.mark.skipif(not (CLI and SCHEMA), reason="CLI or schema path not configured")
def test_plot_report_matches_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.load(open(SCHEMA))
    target = tmp_path / "t.svg"
    out = subprocess.run([CLI, "plot", "--level", "6", "--out", str(target)], check=True, capture_output=True,
                         text=True).stdout
    report = json.loads(out)
    jsonschema.validate(report, schema)
    assert report["results"]["interior_markers"] == 10
    assert target.read_text().count('class="interior"') == 10
