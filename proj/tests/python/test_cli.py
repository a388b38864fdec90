"""End-to-end checks of the command-line tool named by $MACCSIM_CLI."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("MACCSIM_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="MACCSIM_CLI not set")


def run(*args, cwd, expect=0):
    proc = subprocess.run([CLI, *args], cwd=cwd, capture_output=True, text=True)
    assert proc.returncode == expect, proc.stderr + proc.stdout
    return proc.stdout


def test_construct_verify_roundtrip(tmp_path):
    run("construct-pda", "--family", "mn", "--K", "3", "--t", "2", cwd=tmp_path)
    pda = json.loads((tmp_path / "pda_mn_K3_t2.json").read_text())
    assert pda["entries"][0] == ["*", "*", 1]
    out = run("verify-pda", "pda_mn_K3_t2.json", "--t", "2", "--L", "2", cwd=tmp_path)
    assert "C5: pass" in out


def test_verify_rejects_broken_array(tmp_path):
    run("construct-pda", "--family", "mn", "--K", "3", "--t", "2", cwd=tmp_path)
    path = tmp_path / "pda_mn_K3_t2.json"
    pda = json.loads(path.read_text())
    pda["entries"][0][0] = 1
    path.write_text(json.dumps(pda))
    out = run("verify-pda", "pda_mn_K3_t2.json", cwd=tmp_path, expect=1)
    assert "FAIL" in out


def test_verify_all_star_vacuous(tmp_path):
    path = tmp_path / "allstar.json"
    path.write_text(json.dumps({
        "rows": 3, "cols": 3, "Z": 3, "S": 0,
        "entries": [["*", "*", "*"]] * 3,
    }))
    out = run("verify-pda", "allstar.json", cwd=tmp_path)
    assert "C3: pass" in out


def test_build_and_simulate_hybrid(tmp_path):
    run("build-scheme", "--kind", "hybrid", "5", "3", "2", "2", "15", cwd=tmp_path)
    out = run("simulate", "scheme_hybrid_5x3_L2_t2_N15.json", "--demand", "all-distinct",
              cwd=tmp_path)
    assert "load 3" in out and "decode ok" in out
    report = json.loads(
        (tmp_path / "report_scheme_hybrid_5x3_L2_t2_N15_all-distinct.json").read_text())
    assert report["load"] == {"num": 3, "den": 1}
    assert report["total_messages"] == 405
    assert report["all_decoded"]


def test_partition_family_and_seeded_demand(tmp_path):
    run("construct-pda", "--family", "partition", "--q", "3", "--z", "2", "--m", "2",
        cwd=tmp_path)
    out = run("verify-pda", "pda_partition_q3_z2_m2.json", cwd=tmp_path)
    assert "C1: pass" in out
    run("build-scheme", "--kind", "grouping", "4", "4", "2", "1", "16", cwd=tmp_path)
    out = run("simulate", "scheme_grouping_4x4_L2_t1_N16.json", "--demand", "seed:7",
              cwd=tmp_path)
    assert "decode ok" in out


def test_infeasible_parameters_name_the_precondition(tmp_path):
    proc = subprocess.run(
        [CLI, "build-scheme", "--kind", "grouping", "5", "4", "2", "1", "20"],
        cwd=tmp_path, capture_output=True, text=True)
    assert proc.returncode != 0
    assert "divide" in proc.stderr


def test_tradeoff_csv(tmp_path):
    run("tradeoff", "12", "8", "2", "96", "--kinds", "baseline,grouping,hybrid", cwd=tmp_path)
    rows = (tmp_path / "tradeoff_12x8_L2_N96.csv").read_text().splitlines()
    assert rows[0] == "memory_ratio_num,memory_ratio_den,load_num,load_den,scheme,t"
    schemes = {row.split(",")[4] for row in rows[1:]}
    assert schemes == {"baseline", "grouping", "hybrid"}
    assert not any("." in row for row in rows)


def test_out_dir_env(tmp_path):
    target = tmp_path / "artifacts"
    target.mkdir()
    env = dict(os.environ, MACCSIM_OUT_DIR=str(target))
    proc = subprocess.run([CLI, "construct-pda", "--family", "mn", "--K", "4", "--t", "2"],
                          cwd=tmp_path, capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert (target / "pda_mn_K4_t2.json").exists()
