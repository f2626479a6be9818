"""End-to-end run of the gstate binary: exit codes and output shapes."""
import json
import os
import subprocess
import sys
import tempfile

BIN = os.environ["GSTATE_BIN"]


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def check(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)


with tempfile.TemporaryDirectory() as tmp:
    k6 = os.path.join(tmp, "k6.json")
    r = run("construct", "--family", "complete", "--n", "6", "--out", k6)
    check(r.returncode == 0, "construct complete")
    a = json.loads(run("prob", "--graph", k6, "--engine", "complete-fast", "--x", "101010").stdout)
    b = json.loads(run("prob", "--graph", k6, "--engine", "oracle", "--x", "101010").stdout)
    check(abs(a["p"] - b["p"]) < 1e-12, "complete-fast vs oracle")

    c40 = os.path.join(tmp, "c40.json")
    check(run("construct", "--family", "cycle", "--n", "40", "--out", c40).returncode == 0, "construct cycle")
    check(run("prob", "--graph", c40, "--engine", "rankdp", "--x", "0" * 40).returncode == 0, "rankdp on C_40")
    check(run("prob", "--graph", c40, "--engine", "oracle", "--x", "0" * 40).returncode == 2, "oracle limit")
    check(run("prob", "--graph", c40, "--engine", "complete-fast", "--x", "0" * 40).returncode == 2,
          "complete-fast precondition")

    check(run("verify", "duality", "--m", "4").returncode == 0, "duality m=4")
    check(run("verify", "duality", "--m", "2").returncode == 2, "duality m=2")
    check(run("verify", "lc", "--random", "20", "--n", "6", "--seed", "1").returncode == 0, "verify lc")
    check(run("construct", "--family", "double-torus", "--m", "3", "--k", "4").returncode == 2, "double-torus k=4")

    scan = run("phase-scan", "--n", "9", "--no-timing")
    check(scan.returncode == 0 and scan.stdout.startswith("k,n,family,width,exact,runtime_ms\n"), "phase-scan")
    check(scan.stdout == run("phase-scan", "--n", "9", "--no-timing").stdout, "phase-scan determinism")

print("cli smoke ok")
