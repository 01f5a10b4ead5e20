import json
import math

import pytest

from primelens import report
from primelens.report import ReportInputError, RunManifest, build_report, load_csv

MERTENS_CSV = """n,product,corrected,delta,bound,entropy,loglog,ratio,scaled
100,0.22857142857142856,0.24239331,0.013821881428571436,0.11,1.4759065198095778,1.5271796258079011,0.9664262768230691,1.0526103282258494
10000,0.1203171755676459,0.12064879446523765,0.00033161889759175436,0.0101,2.1176229383581804,2.2203268063678463,0.9537438057698923,1.1081571041742326
"""

def _write(tmp_path, name, body):
    p = tmp_path / name
    p.write_text(body)
    return p


def test_load_csv_classification(tmp_path):
    p = _write(tmp_path, "m.csv", MERTENS_CSV)
    section, rows = load_csv(p)
    assert section == "mertens"
    assert rows[0]["n"] == 100
    assert rows[0]["delta"] == pytest.approx(0.013821881428571436)


def test_load_csv_names_offending_column(tmp_path):
    bad = MERTENS_CSV.replace("corrected", "fixed")
    p = _write(tmp_path, "bad.csv", bad)
    with pytest.raises(ReportInputError) as err:
        load_csv(p)
    assert "fixed" in str(err.value) and "corrected" in str(err.value)
    assert "bad.csv" in str(err.value)


def test_load_csv_empty_file(tmp_path):
    p = _write(tmp_path, "empty.csv", "")
    with pytest.raises(ReportInputError):
        load_csv(p)


def test_build_report_mertens_only(tmp_path):
    p = _write(tmp_path, "m.csv", MERTENS_CSV)
    out = tmp_path / "rep"
    summary = build_report([p], out)
    assert (out / "entropy_vs_loglog.dat").exists()
    lines = (out / "entropy_vs_loglog.dat").read_text().splitlines()
    assert len(lines) == 2
    x, y = lines[0].split()
    assert int(x) == 100 and float(y) == pytest.approx(0.9664262768230691)
    names = {c["name"] for c in summary["checks"]}
    assert "mertens_delta_within_bound" in names
    flag = summary["flags"]["mertens_paper_constant"]
    assert flag["reproduced"] is False
    assert flag["claimed_scaled_constant"] == 0.9
    assert summary["schema_version"] == 1
    on_disk = json.loads((out / "summary.json").read_text())
    assert on_disk == summary


def test_build_report_empty_inputs(tmp_path):
    summary = build_report([], tmp_path / "rep")
    assert summary["sections"] == {}
    assert summary["checks"] == []
    assert summary["all_passed"] is True


def test_build_report_deterministic_bytes(tmp_path):
    p = _write(tmp_path, "m.csv", MERTENS_CSV)
    build_report([p], tmp_path / "a")
    build_report([p], tmp_path / "b")
    assert (tmp_path / "a" / "summary.json").read_bytes() == \
        (tmp_path / "b" / "summary.json").read_bytes()


def test_pnt_checks_even_decades(tmp_path):
    body = (
        "N,pi,bits_per_prime,ln_N,harmonic,k_proxy,info_I\n"
        "100,25,4.0,4.6,5.1,1.1512925464970229,99.0\n"
        "1000,168,5.9,6.9,7.4,1.160502718929145,999.0\n"
        "10000,1229,8.1,9.2,9.7,1.1319508317158728,9999.0\n"
        "1000000,78498,12.7,13.8,14.3,1.0844899823713,999999.0\n"
    )
    p = _write(tmp_path, "p.csv", body)
    summary = build_report([p], tmp_path / "rep")
    checks = {c["name"]: c for c in summary["checks"]}
    assert checks["pnt_ratio_at_1e6"]["pass"] is True
    assert checks["pnt_ratio_decreasing_even_decades"]["pass"] is True
    # the 10^3 bump keeps the all-rows version honest
    assert checks["pnt_ratio_decreasing_all_rows"]["pass"] is False


def test_manifest_round_trip(tmp_path):
    data = _write(tmp_path, "x.csv", "n,p_n,p_next,gap\n1,2,3,1\n")
    man = RunManifest(subcommand="primes", flags={"limit": 10}, seed=None,
                      artifact_version="0.1.0",
                      input_digests={}, output_paths=[str(data)],
                      duration_seconds=0.5)
    path = tmp_path / "run.manifest.json"
    man.write(path)
    payload = json.loads(path.read_text())
    assert payload["subcommand"] == "primes"
    assert payload["output_paths"] == [str(data)]
    assert RunManifest.digest(data) == RunManifest.digest(data)
