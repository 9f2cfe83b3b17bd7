import json

import pytest

from kummer_cert.cli import EXIT_INVALID, EXIT_NOT_FOUND, EXIT_OK, EXIT_VERIFY, main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_info(capsys):
    rc, out, err = run(capsys, "info")
    info = json.loads(out)
    assert rc == EXIT_OK
    assert info["splitting_degree"] == 4
    assert len(info["weierstrass_points"]) == 6
    assert "k7b" in err


def test_count_and_zeta(capsys):
    rc, out, _ = run(capsys, "count", "--curve", "k11a", "--m", "1,2,3")
    assert rc == EXIT_OK
    assert [row["N"] for row in json.loads(out)["counts"]] == [8, 118, 1208]
    rc, out, _ = run(capsys, "zeta", "--p", "7", "--f", "1,0,0,0,0,1")
    z = json.loads(out)
    assert rc == EXIT_OK and z["jacobian_order"] == 50 and z["supersingular"]


def test_jac_enumerate(capsys):
    rc, out, _ = run(capsys, "jac", "enumerate", "--samples", "50")
    stats = json.loads(out)
    assert rc == EXIT_OK
    assert stats["cardinality"] == 50 and stats["match"]


def test_certify_then_verify(capsys, tmp_path):
    path = tmp_path / "c.jsonl"
    rc, _, _ = run(capsys, "certify", "--x", "0,1,1;1,1", "--out", str(path))
    assert rc == EXIT_OK
    lines = path.read_text().splitlines()
    assert json.loads(lines[0])["kind"] == "header"
    assert json.loads(lines[1])["n"] == 5
    rc, out, _ = run(capsys, "verify", str(path))
    result = json.loads(out)
    assert rc == EXIT_OK and result["passed"] and result["roundtrip"]

    cert = json.loads(lines[1])
    cert["n"] = 6
    path.write_text(lines[0] + "\n" + json.dumps(cert) + "\n")
    rc, _, err = run(capsys, "verify", str(path))
    assert rc == EXIT_VERIFY and "verification failed" in err


def test_kummer_certify(capsys):
    rc, out, err = run(capsys, "kummer", "certify", "--x", "1,1;")
    obj = json.loads(out.splitlines()[1])
    assert rc == EXIT_OK and obj["exceptional"] and "exceptional point" in err
    rc, out, _ = run(capsys, "kummer", "certify", "--x", "0,1,1;1,1")
    obj = json.loads(out.splitlines()[1])
    assert rc == EXIT_OK and obj["sigma_check"] == obj["two_torsion_check"] == "pass"


def test_cover_writes_artifacts(capsys, tmp_path):
    rc, _, err = run(capsys, "cover", "--out-dir", str(tmp_path))
    assert rc == EXIT_OK and "certified 50/50" in err
    report = json.loads((tmp_path / "cover_k7a_m1_n5.json").read_text())
    assert report["total"] == 50 and report["all_certificates_pass"]
    lines = (tmp_path / "cover_k7a_m1_n5.jsonl").read_text().splitlines()
    assert len(lines) == 51
    assert "wall_time" in json.loads((tmp_path / "cover_k7a_m1_n5.meta.json").read_text())


@pytest.mark.parametrize(
    "argv,code",
    [
        (["certify", "--x", "0,1;2"], EXIT_INVALID),
        (["certify", "--x", "1;", "--n", "3"], EXIT_INVALID),
        (["info", "--p", "5", "--f", "1,0,0,0,0,1"], EXIT_INVALID),
        (["info", "--curve", "k7b"], EXIT_INVALID),
        (["verify", "/nonexistent/file.jsonl"], EXIT_INVALID),
        (["certify", "--x", "0,1,1;1,1", "--n", "1", "--relaxed"], EXIT_NOT_FOUND),
        (["info", "--threads", "0"], EXIT_INVALID),
    ],
)
def test_exit_codes(capsys, argv, code):
    rc, _, err = run(capsys, *argv)
    assert rc == code
    assert err


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("KUMMER_THREADS", "zero")
    rc, _, err = run(capsys, "info")
    assert rc == EXIT_INVALID and "KUMMER_THREADS" in err
