import json
import subprocess
import sys

import pytest

from verklebench import gas
from verklebench.bench import generate_dataset


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "verklebench", *args],
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture(scope="module")
def verkle_artifacts(tmp_path_factory):
    """One CLI-built tree plus an honest proof, shared across cases."""
    work = tmp_path_factory.mktemp("cli")
    build = run_cli("--seed", "7", "build", "--kind", "verkle",
                    "--input", "generated:8", "--out", str(work / "t.json"))
    assert build.returncode == 0, build.stderr
    root = build.stdout.strip().splitlines()[-1]
    member = generate_dataset(8, 7)[2].hex()
    prove = run_cli("prove", "--tree", str(work / "t.json"), "--key", member,
                    "--encoding", "compact", "--out", str(work / "p.bin"))
    assert prove.returncode == 0, prove.stderr
    value = prove.stdout.strip().splitlines()[-1]
    return {"dir": work, "root": root, "member": member, "value": value}


def test_verify_honest_proof(verkle_artifacts):
    a = verkle_artifacts
    res = run_cli("--seed", "7", "verify", "--root", a["root"],
                  "--key", a["member"], "--value", a["value"],
                  "--proof", str(a["dir"] / "p.bin"))
    assert res.returncode == 0, res.stderr
    assert "verified" in res.stdout


def test_verify_flipped_value_exits_1(verkle_artifacts):
    a = verkle_artifacts
    flipped = format(int(a["value"], 16) ^ 1, "064x")
    res = run_cli("--seed", "7", "verify", "--root", a["root"],
                  "--key", a["member"], "--value", flipped,
                  "--proof", str(a["dir"] / "p.bin"))
    assert res.returncode == 1
    assert "not verified" in res.stdout


def test_verify_malformed_proof_exits_2(verkle_artifacts):
    a = verkle_artifacts
    bad = a["dir"] / "bad.bin"
    bad.write_bytes((a["dir"] / "p.bin").read_bytes()[:50])
    res = run_cli("--seed", "7", "verify", "--root", a["root"],
                  "--key", a["member"], "--value", a["value"],
                  "--proof", str(bad))
    assert res.returncode == 2


def test_word_encoding_round_trip(verkle_artifacts):
    a = verkle_artifacts
    prove = run_cli("prove", "--tree", str(a["dir"] / "t.json"),
                    "--key", a["member"], "--encoding", "word",
                    "--out", str(a["dir"] / "pw.bin"))
    assert prove.returncode == 0
    assert (a["dir"] / "pw.bin").stat().st_size == 288
    res = run_cli("--seed", "7", "verify", "--root", a["root"],
                  "--key", a["member"], "--value", a["value"],
                  "--proof", str(a["dir"] / "pw.bin"))
    assert res.returncode == 0


def test_unknown_flag_exits_2():
    res = run_cli("verify", "--no-such-flag")
    assert res.returncode == 2
    assert "usage" in (res.stderr + res.stdout).lower()


def test_prove_rejects_nonmember(verkle_artifacts):
    a = verkle_artifacts
    res = run_cli("prove", "--tree", str(a["dir"] / "t.json"),
                  "--key", "deadbeef", "--out", str(a["dir"] / "x.bin"))
    assert res.returncode == 2
    assert "not a member" in res.stderr


def test_prove_rejects_stale_tree_file(verkle_artifacts, tmp_path):
    a = verkle_artifacts
    doc = json.loads((a["dir"] / "t.json").read_text())
    doc["root"] = "11" + doc["root"][2:]
    stale = tmp_path / "stale.json"
    stale.write_text(json.dumps(doc))
    res = run_cli("prove", "--tree", str(stale), "--key", a["member"],
                  "--out", str(tmp_path / "x.bin"))
    assert res.returncode == 2
    assert "mismatch" in res.stderr


def test_missing_proof_file_exits_3(verkle_artifacts):
    a = verkle_artifacts
    res = run_cli("--seed", "7", "verify", "--root", a["root"],
                  "--key", a["member"], "--value", a["value"],
                  "--proof", str(a["dir"] / "nope.bin"))
    assert res.returncode == 3


def test_merkle_cli_round_trip(tmp_path):
    build = run_cli("build", "--kind", "merkle", "--input", "generated:16",
                    "--out", str(tmp_path / "m.json"))
    assert build.returncode == 0
    root = build.stdout.strip().splitlines()[-1]
    member = generate_dataset(16, 0)[9].hex()
    prove = run_cli("prove", "--tree", str(tmp_path / "m.json"),
                    "--key", member, "--out", str(tmp_path / "mp.bin"))
    assert prove.returncode == 0
    assert (tmp_path / "mp.bin").stat().st_size == 128
    good = run_cli("verify", "--kind", "merkle", "--root", root,
                   "--key", member, "--proof", str(tmp_path / "mp.bin"))
    assert good.returncode == 0
    bad = run_cli("verify", "--kind", "merkle", "--root", root,
                  "--key", "deadbeef", "--proof", str(tmp_path / "mp.bin"))
    assert bad.returncode == 1


def test_setup_file_flows_through_build_and_verify(tmp_path):
    assert run_cli("setup", "--seed", "9", "--max-degree", "255",
                   "--out", str(tmp_path / "s.bin")).returncode == 0
    build = run_cli("build", "--kind", "verkle", "--input", "generated:8",
                    "--setup", str(tmp_path / "s.bin"),
                    "--out", str(tmp_path / "t.json"))
    assert build.returncode == 0
    root = build.stdout.strip().splitlines()[-1]
    member = generate_dataset(8, 0)[0].hex()
    prove = run_cli("prove", "--tree", str(tmp_path / "t.json"),
                    "--key", member, "--out", str(tmp_path / "p.bin"))
    assert prove.returncode == 0
    value = prove.stdout.strip().splitlines()[-1]
    res = run_cli("verify", "--root", root, "--key", member,
                  "--value", value, "--proof", str(tmp_path / "p.bin"),
                  "--setup", str(tmp_path / "s.bin"))
    assert res.returncode == 0


def test_crossover_matches_library(tmp_path):
    out = tmp_path / "xo.csv"
    res = run_cli("crossover", "--min", "8", "--max", "1048576",
                  "--out", str(out))
    assert res.returncode == 0
    expect = gas.comparison_to_csv(gas.crossover_series(8, 2 ** 20))
    assert out.read_text() == expect


def test_crossover_honors_params_file(tmp_path):
    params = tmp_path / "p.txt"
    params.write_text("merkle_intercept = 44300\n")
    res = run_cli("--params", str(params), "crossover",
                  "--min", "8", "--max", "8", "--format", "json")
    assert res.returncode == 0
    row = json.loads(res.stdout)[0]
    assert row["merkle_total_gas"] == 3 * 1342 + 44300


def test_bench_cli_with_config(tmp_path):
    cfg = tmp_path / "bench.json"
    report = tmp_path / "rep.csv"
    cfg.write_text(json.dumps({
        "capacities": [8], "samples_per_capacity": 2, "seed": 12,
        "output_path": str(report), "output_format": "csv"}))
    res = run_cli("bench", "--config", str(cfg))
    assert res.returncode == 0, res.stderr
    lines = report.read_text().splitlines()
    assert lines[0].startswith("structure,capacity,levels")
    assert len(lines) == 3
    assert lines[1].startswith("merkle,8,3,")
    assert lines[2].startswith("verkle,8,2,")


def test_bench_cli_bad_config_exits_2(tmp_path):
    cfg = tmp_path / "bench.json"
    cfg.write_text('{"capacities": [8, 4]}')
    res = run_cli("bench", "--config", str(cfg))
    assert res.returncode == 2
