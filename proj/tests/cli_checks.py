"""End-to-end checks of the hypermeasure executable: outputs and exit codes."""

import json
import os
import subprocess
import sys
import tempfile

EXE = sys.argv[1]
failures = 0


def run(*args, env=None):
    p = subprocess.run([EXE, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def check(name, cond, info=""):
    global failures
    print(("ok   " if cond else "FAIL ") + name + ("" if cond else "  " + info))
    if not cond:
        failures += 1


rc, out, _ = run("poly", "1", "3", "1", "--format", "text")
check("poly 1 3 1", rc == 0 and out.strip() == "1 + 2z", out)

rc, _, err = run("poly", "2", "4", "3")
check("poly 2 4 3 exits 2", rc == 2, err)

rc, out, _ = run("denom", "1", "3", "1")
check("denom 1 3 1 is 1", rc == 0 and json.loads(out)["D"] == "1", out)

rc, out, _ = run("numerator", "1", "3", "1", "--d", "1")
check("numerator 1 3 1 d=1 is 1", rc == 0 and json.loads(out)["N"] == "1", out)

rc, out, _ = run("measure", "128", "125", "1", "3", "--verify", "1e12")
j = json.loads(out) if rc in (0, 4) else {}
check("measure 128/125 valid and verified",
      rc == 0 and j["valid"] and j["verification"]["all_pass"] and j["kappa"] < 2.5, out[:400])

rc, out, _ = run("measure", "3", "1", "1", "3")
check("invalid measure still exits 0", rc == 0 and json.loads(out)["valid"] is False, out[:400])

rc, _, err = run("measure", "2", "3", "1", "3")
check("measure hypothesis violation exits 2", rc == 2, err)

rc, out, _ = run("measure", "8+sqrt(-3)", "8-sqrt(-3)", "1", "3", "--format", "tsv")
rows = dict(line.split("\t", 1) for line in out.splitlines())
check("unit case in tsv", rc == 0 and rows.get("case") == "unit" and rows.get("d") == "-12", out[:400])

rc, out, _ = run("constants", "9", "--d", "2")
check("constants 9 --d 2 takes the baker path", rc == 0 and json.loads(out)["path"] == "baker", out[:400])

rc, out, _ = run("constants", "4", "--spot-check")
check("constants 4 --spot-check", rc == 0 and json.loads(out)["pass"], out)

with tempfile.TemporaryDirectory() as tmp:
    cert = os.path.join(tmp, "c4.json")
    rc, out, _ = run("constants", "4", "--r-max", "2000", "--out", cert)
    j = json.loads(out) if rc == 0 else {}
    check("constants 4 --r-max 2000", rc == 0 and j["cn"] >= 1 and j["log_dn"] > 0, out[:400])
    rc, out, _ = run("measure", "9", "8", "1", "4", "--constants", cert)
    check("measure from a certificate", rc == 0 and json.loads(out)["diagnostics"]["constants"]["source"] == "cert",
          out[:400])

    env = dict(os.environ, HYPERMEASURE_CACHE_DIR=tmp)
    rc1, out1, _ = run("denom", "1", "5", "40", env=env)
    rc2, out2, _ = run("denom", "1", "5", "40", env=env)
    check("denominator cache round trip",
          rc1 == rc2 == 0 and out1 == out2 and os.path.exists(os.path.join(tmp, "denominators.hmd")))

rc, out, _ = run("theta", "5", "1000")
check("theta 5 1000", rc == 0 and set(json.loads(out)["theta"]) == {"1", "2", "3", "4"}, out)

rc, out, _ = run("bands", "3", "--x-max", "5000")
check("bands csv", rc == 0 and out.startswith("n,band_index,x_lo,x_hi,eps_lb,eps_ub"), out[:200])

rc, out, _ = run("tables")
check("tables prints the golden csv", rc == 0 and out.startswith("n,C1n,"), out[:200])

rc, out, _ = run("verify", "lemmas", "--r-max", "10")
check("verify lemmas", rc == 0 and json.loads(out)["pass"], out[:400])

rc, _, _ = run("verify", "nothing")
check("unknown suite exits 2", rc == 2)

rc, _, _ = run("frobnicate")
check("unknown command exits 2", rc == 2)

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
