"""End-to-end acceptance run: nine checks, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or ``python -m tests.test_acceptance``.
"""
import itertools
import json
import random
import subprocess
import sys
import time

import pytest

from icl.bourbaki import (
    FModule,
    bourbaki_invariants,
    direct_sum,
    generic_bourbaki_ideal,
    is_contracted_module,
    is_integrally_closed_module,
    order_module,
)
from icl.cli import main
from icl.groebner import Ideal, ideal_equal
from icl.monomial import MonomialIdeal, is_monomial_closed, monomial_closure_power, oracle_closure
from icl.poly import Ring
from icl.rlr2 import integral_closure_2d, is_contracted, is_contracted_direct, is_integrally_closed_2d, order_local
from icl.verify import PASS, random_primary_ideal, verify_itoh, verify_product_closure, verify_specialization

from .suites import MODULE_SUITE, NOT_CLOSED_MODULE

RING = Ring(("x", "y"))
RESULTS = []


def report(number, title, ok, seconds, detail=""):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'} {title} ({seconds:.1f}s)"
    if detail:
        line += f" {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def random_monomial_ideal(rng):
    d = rng.choice((2, 3))
    gens = [tuple(rng.randint(0, 6) for _ in range(d)) for _ in range(rng.randint(1, 4))]
    gens = [g for g in gens if any(g)] or [tuple(rng.randint(1, 6) for _ in range(d))]
    return MonomialIdeal(gens)


def primary_staircases(max_exp):
    # nonincreasing heights h(0) >= ... >= h(max_exp - 1) with h(0) >= 1; h(max_exp) = 0
    for h in itertools.combinations_with_replacement(range(max_exp, -1, -1), max_exp):
        if h[0] == 0:
            continue
        yield MonomialIdeal([(i, hi) for i, hi in enumerate(h)] + [(max_exp, 0)])


def test_criterion_1_monomial_oracle():
    start = time.perf_counter()
    rng = random.Random(20240601)
    bad = []
    for _ in range(200):
        ideal = random_monomial_ideal(rng)
        if monomial_closure_power(ideal, 1) != oracle_closure(ideal, 1, kmax=24):
            bad.append(ideal.gens)
    elapsed = time.perf_counter() - start
    report(1, "closure of 200 random monomial ideals matches the integer oracle",
           not bad and elapsed < 60, elapsed, f"mismatches={len(bad)}")


def test_criterion_2_itoh():
    start = time.perf_counter()
    cases = [([a, b], 4) for a in range(1, 6) for b in range(1, 6)]
    cases += [([a, b, c], 2) for a in range(1, 4) for b in range(1, 4) for c in range(1, 4)]
    failures = [e for e, n in cases if verify_itoh(e, n).verdict != PASS]
    elapsed = time.perf_counter() - start
    report(2, f"powers of {len(cases)} monomial complete intersections meet their closures correctly",
           not failures and elapsed < 300, elapsed, f"failures={failures}")


def test_criterion_3_exhaustive_2d():
    start = time.perf_counter()
    count = 0
    bad = []
    for mono in primary_staircases(6):
        count += 1
        ideal = mono.to_ideal()
        if is_integrally_closed_2d(ideal) != is_monomial_closed(mono):
            bad.append(("closed", mono.gens))
        elif not ideal_equal(integral_closure_2d(ideal), monomial_closure_power(mono, 1).to_ideal()):
            bad.append(("closure", mono.gens))
    elapsed = time.perf_counter() - start
    report(3, f"transform tree agrees with the Newton polygon on all {count} primary monomial ideals",
           not bad and count == 923, elapsed, f"mismatches={len(bad)}")


def test_criterion_4_contractedness():
    start = time.perf_counter()
    rng = random.Random(4)
    bad = []
    for _ in range(50):
        ideal = random_primary_ideal(RING, rng, max_exp=5)
        numeric = is_contracted(ideal)
        if not (numeric == is_contracted_direct(ideal, seed=0) == is_contracted_direct(ideal, seed=1)):
            bad.append(str(ideal))
    elapsed = time.perf_counter() - start
    report(4, "numeric contractedness matches the direct check under two pivots on 50 ideals",
           not bad, elapsed, f"mismatches={len(bad)}")


def test_criterion_5_products():
    start = time.perf_counter()
    rep = verify_product_closure(50, seed=0)
    elapsed = time.perf_counter() - start
    report(5, "products of closures are closed for 50 random pairs",
           rep.verdict == PASS and len(rep.details) == 50, elapsed)


def test_criterion_6_bourbaki():
    start = time.perf_counter()
    problems = []
    for name, cols in MODULE_SUITE.items():
        M = FModule.parse(RING, cols)
        contracted = is_contracted_module(M)
        paths = ["iterated", "minors"] + (["fitting"] if contracted else [])
        tuples = set()
        for path in paths:
            for seed in (0, 1):
                B = generic_bourbaki_ideal(M, seed=seed, path=path).ideal
                tuples.add(bourbaki_invariants(B, seed=seed))
                o_ideal = 0 if B.is_unit() else order_local(B)
                if o_ideal != order_module(M):
                    problems.append((name, path, seed, "order"))
                if contracted and not (B.is_unit() or is_contracted(B)):
                    problems.append((name, path, seed, "contracted"))
        if len(tuples) != 1:
            problems.append((name, "tuples", sorted(tuples)))
    elapsed = time.perf_counter() - start
    report(6, f"Bourbaki invariants on the {len(MODULE_SUITE)}-module suite",
           not problems, elapsed, f"problems={problems}")


SPECIALIZATION = ["x^2, y^2", "x^2, x*y, y^2", "x^3, x^2*y, x*y^2, y^3", "x^2, y^3"]


def test_criterion_7_specialization():
    start = time.perf_counter()
    bad = []
    for text in SPECIALIZATION:
        ideal = Ideal.parse(RING, text)
        rep = verify_specialization(ideal, seeds=(0, 1), cap=6)
        caps_ok = rep.caps == {"reduction_cap": 6, "degree_bound": order_local(ideal) + 6}
        if rep.verdict != PASS or not caps_ok:
            bad.append((text, rep.verdict, rep.caps))
    elapsed = time.perf_counter() - start
    report(7, "specialization of closures for the four test ideals", not bad, elapsed, f"bad={bad}")


def test_criterion_8_module_closedness():
    start = time.perf_counter()
    m = Ideal.maximal(RING)
    closed_sum = direct_sum(integral_closure_2d(Ideal.parse(RING, "x^3, y^2")),
                            integral_closure_2d(Ideal.parse(RING, "x^2 + y^3, x*y")))
    cases = [
        ("m+m", direct_sum(m, m), True),
        ("closed sum", closed_sum, True),
        ("not closed", FModule.parse(RING, NOT_CLOSED_MODULE), False),
    ]
    bad = []
    for name, M, expected in cases:
        got = {is_integrally_closed_module(M, seed=s) for s in (0, 1)}
        if got != {expected}:
            bad.append((name, sorted(got)))
    elapsed = time.perf_counter() - start
    report(8, "module closedness through Bourbaki ideals", not bad, elapsed, f"bad={bad}")


DETERMINISM = [
    ["closure", "--ideal", "x^3,y^2", "--json"],
    ["ideal", "tree", "--ideal", "x^2+y^3,x*y", "--json", "--seed", "3"],
    ["generic", "--ideal", "x^2,x*y,y^2", "--json", "--seed", "11"],
    ["multiplicity", "--ideal", "x^3+y^4,x^2*y", "--json", "--seed", "2"],
    ["module", "bourbaki", "--module", '[["x","0"],["y","0"],["0","x"],["0","y"]]', "--json", "--seed", "5"],
    ["module", "is-closed", "--module", json.dumps(NOT_CLOSED_MODULE), "--json", "--seed", "1"],
    ["verify", "itoh", "--exponents", "2,3", "--nmax", "3", "--json"],
    ["verify", "specialize", "--ideal", "x^2,y^3", "--json", "--seed", "4"],
    ["verify", "product", "--count", "5", "--json", "--seed", "9"],
    ["verify", "radical", "--ideal", "x^2,x*y,y^2", "--json", "--seed", "6"],
]


def _in_process(argv, capsys):
    code = main(list(argv))
    return code, capsys.readouterr().out


def _subprocess(argv):
    proc = subprocess.run([sys.executable, "-m", "icl.cli", *argv], capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout


def test_criterion_9_determinism(capsys):
    start = time.perf_counter()
    bad = []
    for argv in DETERMINISM:
        runs = [_in_process(argv, capsys), _in_process(argv, capsys)]
        if argv is DETERMINISM[0] or argv is DETERMINISM[-1]:
            runs += [_subprocess(argv), _subprocess(argv)]
        if len(set(runs)) != 1 or not runs[0][1]:
            bad.append(argv[:2])
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        report(9, f"byte-identical JSON for {len(DETERMINISM)} CLI invocations run twice",
               not bad, elapsed, f"unstable={bad}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
