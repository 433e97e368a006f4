"""End-to-end checks of the bicrit command line tool.

Usage: python3 cli_test.py BICRIT GOLDEN_DIR
"""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
GOLDEN = Path(sys.argv[2])
failures = []


def run(*args, expect=0):
    p = subprocess.run([BIN, *map(str, args)], capture_output=True, text=True)
    if p.returncode != expect:
        failures.append(f"{' '.join(map(str, args))}: exit {p.returncode}, wanted {expect}\n{p.stderr}")
    return p


def js(*args):
    return json.loads(run(*args).stdout)


def c(v):
    return complex(v[0], v[1])


def check(cond, what):
    if not cond:
        failures.append(what)


def f_eval(n, a, b, cc, d, z):
    return (a * z**n + b) / (cc * z**n + d)


# invariants of (2 z^2 + 1)/(z^2 + 1): X = bc/(ad - bc) = 1
inv = js("invariants", "--n", 2, "--coeffs", "2,1,1,1")
check(abs(c(inv["X"]) - 1) < 1e-12, f"X of 2,1,1,1: {inv['X']}")
check(abs(c(inv["Y"]) - (c(inv["Y1"]) + c(inv["Y2"]))) < 1e-9, "Y = Y1 + Y2")
check(abs(c(inv["Y"]) - 9) < 1e-12, f"Y of 2,1,1,1: {inv['Y']}")

# complex input forms
inv2 = js("invariants", "--n", 3, "--coeffs", "1+2i,0.5,-1i,2")
a, b, cc, d = 1 + 2j, 0.5, -1j, 2
check(abs(c(inv2["X"]) - b * cc / (a * d - b * cc)) < 1e-12, "complex coefficient parsing")

# reconstruct then invariants is the identity
for n, X, Y in [(2, "0.3", "1.2"), (3, "-0.4+0.2i", "2-1i"), (5, "1e-3", "0.7")]:
    rec = js("reconstruct", "--n", n, "--X", X, "--Y", Y)
    coeffs = ",".join(f"{c(rec[k]).real}{c(rec[k]).imag:+}i" for k in "abcd")
    back = js("invariants", "--n", n, "--coeffs", coeffs)
    want_X = complex(X.replace("i", "j")) if "i" in X else complex(float(X))
    want_Y = complex(Y.replace("i", "j")) if "i" in Y else complex(float(Y))
    check(abs(c(back["X"]) - want_X) < 1e-9, f"round trip X for {n},{X},{Y}")
    check(abs(c(back["Y"]) - want_Y) < 1e-9, f"round trip Y for {n},{X},{Y}")

# spectrum: fixed points are fixed, multipliers sum to sigma_1, indices sum to 1
spec = js("spectrum", "--n", 3, "--coeffs", "1+1i,0.5,0.3,2")
a, b, cc, d = 1 + 1j, 0.5, 0.3, 2
for z in spec["fixed_points"]:
    if z is not None:
        z = c(z)
        check(abs(f_eval(3, a, b, cc, d, z) - z) < 1e-9 * max(1, abs(z)), f"fixed point {z}")
mult = [c(m) for m in spec["multipliers"]]
check(len(mult) == 4, "n+1 multipliers")
check(abs(sum(mult) - c(spec["sigma"][0])) < 1e-8, "sigma_1 = sum of multipliers")
check(abs(sum(1 / (1 - m) for m in mult) - 1) < 1e-8, "holomorphic index formula")
check(abs(sum(c(i) for i in spec["indices"] if i is not None) - 1) < 1e-8, "indices sum to 1")

# pk-table against the tables produced by the sympy oracle
for n in range(2, 9):
    out = run("pk-table", "--n", n).stdout
    gold = (GOLDEN / f"pk_n{n}.txt").read_text()
    check(out.strip() == gold.strip(), f"pk-table n={n} differs from golden")

# per1: the CSV polynomial evaluated at X matches the --X form
rows = run("per1", "--n", 4, "--lambda", "0.5+0.25i").stdout.strip().splitlines()
check(rows[0] == "power,re,im", "per1 CSV header")
coef = [complex(float(r.split(",")[1]), float(r.split(",")[2])) for r in rows[1:]]
check(len(coef) == 5, "per1 polynomial has degree n")
X = 0.3 - 0.1j
val = sum(k * X**i for i, k in enumerate(coef))
p1 = js("per1", "--n", 4, "--lambda", "0.5+0.25i", "--X", "0.3-0.1i")
check(abs(c(p1["Y"]) - val) < 1e-12 * max(1, abs(val)), "per1 CSV vs --X")

# classify spot checks
check(js("classify", "--n", 2, "--X", 0, "--Y", 0)["locus"] == "Connected", "z^2 connected")
check(js("classify", "--n", 2, "--X", 0, "--Y", 1)["locus"] == "HyperbolicShift", "shift locus sample")
check(js("classify", "--n", 2, "--X", 0.2, "--Y", 1, "--max-iter-hyperbolic", 3)["locus"] in
      ("Undetermined", "Connected", "HyperbolicShift"), "budget flag accepted")

# phi: large alpha is close to (2n/alpha)^2
ph = js("phi", "--n", 2, "--alpha", 500)
check(abs(c(ph["phi"]) - (4 / 500) ** 2) / (4 / 500) ** 2 < 4 / 500, f"phi at alpha=500: {ph['phi']}")

# symmetry locus residual |Y^2 - 4 X^(n-1) (X+1)^(n+1)|
sym = js("symmetry", "--n", 2, "--X", 1, "--Y", 9)
check(abs(sym["residual"] - 49) < 1e-12 and sym["component"] == "None", "symmetry off the locus")
sym = js("symmetry", "--n", 3, "--X", 1, "--Y", -8)
check(sym["residual"] == 0 and sym["component"] == "Minus", "symmetry minus branch")

# error handling
p = run("phi", "--n", 2, "--alpha", 0, expect=1)
check(json.loads(p.stderr)["error"] == "ZeroAlpha", "domain error JSON")
p = run("classify", "--n", 2, expect=2)
check("error" in json.loads(p.stderr), "usage error JSON")
run("no-such-command", expect=2)
run("invariants", "--n", 2, "--coeffs", "1,0,0", expect=2)

# render writes PGM, metadata and PNG; output does not depend on --seed or threads
with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    job = tmp / "m.job"
    job.write_text("kind=multibrot\nn=3\ncenter=0,0\nwidth=3\nheight=3\npixels=32x24\n")
    r1 = js("--seed", 1, "render", "--job", job, "--out", tmp / "a", "--threads", 1, "--png", "--csv")
    js("--seed", 99, "render", "--job", job, "--out", tmp / "b", "--threads", 3)
    pgm_a = (tmp / "a.pgm").read_bytes()
    check(pgm_a.startswith(b"P5\n32 24\n255\n"), "PGM header")
    check(len(pgm_a) == len(b"P5\n32 24\n255\n") + 32 * 24, "PGM size")
    check(pgm_a == (tmp / "b.pgm").read_bytes(), "render reproducible across seeds and threads")
    check((tmp / "a.png").read_bytes()[1:4] == b"PNG", "PNG signature")
    check((tmp / "a.csv").read_text().splitlines()[0] == "row,col,label,score", "label CSV header")
    meta = (tmp / "a.meta").read_text()
    blob = subprocess.run(["git", "hash-object", "--stdin"], input=meta.split("--- job\n", 1)[1],
                          capture_output=True, text=True)
    if blob.returncode == 0:
        check(f"content_hash={blob.stdout.strip()}" in meta, "metadata hash is the git blob id of the job")
    check(f"content_hash={r1['content_hash']}" in meta, "render JSON reports the metadata hash")
    check((r1["width"], r1["height"], r1["threads"]) == (32, 24, 1), "render JSON summary")

    # petals CSV
    run("petals", "--n", 2, "--depth", 1, "--spacing", 0.01, "--out", tmp / "p.csv")
    lines = (tmp / "p.csv").read_text().splitlines()
    check(lines[0] == "curve_index,re,im", "petal CSV header")
    check({l.split(",")[0] for l in lines[1:]} == {"0", "1"}, "petal CSV curve indices")

    run("render", "--job", tmp / "missing.job", "--out", tmp / "x", expect=2)
    bad = tmp / "bad.job"
    bad.write_text("kind=multibrot\nwidth=-1\n")
    run("render", "--job", bad, "--out", tmp / "x", expect=1)

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("all CLI checks passed")
