"""Compare the compiled and pure-Python kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload runs under both implementations (switched with
``icl.kernels.select``); results are checked equal before timings are
reported.  Caches are cleared between runs.
"""
import argparse
import json
import random
import statistics
import sys
import time

from icl import kernels
from icl import groebner as gb_mod
from icl import rlr2
from icl.groebner import Ideal
from icl.monomial import MonomialIdeal, monomial_closure_power
from icl.poly import Ring


def _clear():
    gb_mod._CACHE.clear()
    rlr2._CLOSURE_CACHE.clear()
    rlr2._CLOSED_CACHE.clear()


def wl_cyclic5():
    R = Ring(tuple("abcde"))
    I = Ideal.parse(R, "a+b+c+d+e, a*b+b*c+c*d+d*e+e*a, a*b*c+b*c*d+c*d*e+d*e*a+e*a*b,"
                       "a*b*c*d+b*c*d*e+c*d*e*a+d*e*a*b+e*a*b*c, a*b*c*d*e-1")
    return [str(g) for g in I.groebner()]


def wl_katsura4_mod_p():
    R = Ring.from_text("u0,u1,u2,u3,u4/Fp:32003")
    I = Ideal.parse(R, "u0+2*u1+2*u2+2*u3+2*u4-1, u0^2+2*u1^2+2*u2^2+2*u3^2+2*u4^2-u0,"
                       "2*u0*u1+2*u1*u2+2*u2*u3+2*u3*u4-u1, u1^2+2*u0*u2+2*u1*u3+2*u2*u4-u2,"
                       "2*u1*u2+2*u0*u3+2*u1*u4-u3")
    return [str(g) for g in I.groebner()]


def wl_monomial_closures():
    rng = random.Random(7)
    out = []
    for _ in range(60):
        d = rng.choice([2, 3])
        gens = [tuple(rng.randint(0, 6) for _ in range(d)) for _ in range(rng.randint(2, 5))]
        for i in range(d):
            v = [0] * d
            v[i] = rng.randint(1, 6)
            gens.append(tuple(v))
        out.append(monomial_closure_power(MonomialIdeal(gens), 2).gens)
    return out


def wl_rlr2_closures():
    R = Ring(("x", "y"))
    out = []
    for a in range(2, 7):
        for b in range(2, 7):
            I = Ideal.parse(R, f"x^{a}+y^{b}, x^{a - 1}*y, x*y^{b - 1}")
            out.append(rlr2.integral_closure_2d(I).to_strings())
    return out


WORKLOADS = {
    "gb-cyclic5-Q": wl_cyclic5,
    "gb-katsura4-Fp": wl_katsura4_mod_p,
    "monomial-closure-x60": wl_monomial_closures,
    "rlr2-closure-x25": wl_rlr2_closures,
}


def run(repeat):
    impls = kernels.available()
    rows = []
    for name, fn in WORKLOADS.items():
        times = {}
        results = {}
        for impl in impls:
            kernels.select(impl)
            ts = []
            for _ in range(repeat):
                _clear()
                t0 = time.perf_counter()
                results[impl] = fn()
                ts.append(time.perf_counter() - t0)
            times[impl] = statistics.median(ts)
        same = len({json.dumps(r, default=str) for r in results.values()}) == 1
        row = {"workload": name, "agree": same, **{f"{k}_s": round(v, 4) for k, v in times.items()}}
        if "cython" in times:
            row["speedup"] = round(times["python"] / times["cython"], 2)
        rows.append(row)
    kernels.select(impls[0])
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    ns = ap.parse_args(argv)
    rows = run(ns.repeat)
    if ns.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        if "cython" not in kernels.available():
            print("compiled kernels unavailable; timing the Python fallback only")
        for r in rows:
            cols = "  ".join(f"{k}={v}" for k, v in r.items() if k != "workload")
            print(f"{r['workload']:<24} {cols}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
