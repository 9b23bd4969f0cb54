"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``python tests/test_acceptance.py`` for just the summary lines.
"""

import subprocess
import sys
import time
from fractions import Fraction

import pytest

from periodic_sums import catalog as cat
from periodic_sums import verify
from periodic_sums.expr import detect_period, evaluate, parse
from periodic_sums.special import gauss_fractional_harmonic
from periodic_sums.sums import brute_S_p, brute_T, fact1_index

# independent references (mpmath, 30 digits)
H_QUARTER = 0.34976213152526745
H_THREE_QUARTERS = 0.82468811844839402
CATALAN_MP = 0.91596559417721901505


def report(number, title, ok, detail):
    print(f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    return ok


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def suite_line(res, elapsed, budget=None):
    text = f"max err {res.max_err:.2e} (tol {res.tolerance:.0e}), {res.cases} cases, {elapsed:.2f}s"
    return text if budget is None else f"{text} of {budget:g}s"


def check_delta():
    res, dt = timed(verify.suite_delta)
    ok = res.passed and res.max_err <= 1e-12 and dt < 1.0
    return report(1, "forward differences", ok, suite_line(res, dt, 1))


def check_index():
    res, dt = timed(verify.suite_index)
    # spot check, exact arithmetic
    f = lambda k: Fraction(1, k + 1)  # noqa: E731
    spot = brute_S_p(f, 5, 3, 42) == brute_T(f, 5, 3, fact1_index(42, 3, 5))
    ok = res.passed and res.max_err == 0 and spot and dt < 1.0
    return report(2, "index conversion S_p <-> T_p", ok, suite_line(res, dt, 1))


def check_antidiff():
    res, dt = timed(verify.suite_antidiff)
    ok = res.passed and dt < 5.0
    return report(3, "anti-difference formula vs brute force", ok, suite_line(res, dt, 5))


def check_closed():
    res, dt = timed(verify.suite_closed)
    entries = {e.id: e for e in cat.all_entries()}
    variants = (
        set(entries["log3"].variants) == {"trig"}
        and set(entries["harmonic4"].variants) == {"pre_multiplication", "by_parts"}
    )
    ok = res.passed and variants
    return report(4, "worked-example closed forms", ok, suite_line(res, dt))


def check_genfun():
    res, dt = timed(verify.suite_genfun)
    return report(5, "generating-function forms", res.passed, suite_line(res, dt))


def check_extensions():
    res, dt = timed(verify.suite_extensions)
    return report(6, "equivalent extension conditions q=2, q=3", res.passed, suite_line(res, dt))


def check_catalan():
    res, dt = timed(verify.suite_catalan)
    direct = abs(cat.catalan_series(100_000) - CATALAN_MP)
    ok = res.passed and direct <= 1e-8 and dt < 1.0
    return report(7, "Catalan constant", ok, suite_line(res, dt, 1))


def check_binomial():
    res, dt = timed(verify.suite_binomial)
    spot = cat.binomial_progression_brute(1, 3, 1, "recip") == Fraction(1, 2)
    return report(8, "binomial sums over residue classes", res.passed and spot, suite_line(res, dt))


def check_gauss():
    res, dt = timed(verify.suite_gauss, q_max=12)
    spot = max(
        abs(gauss_fractional_harmonic(1, 4) - H_QUARTER),
        abs(gauss_fractional_harmonic(3, 4) - H_THREE_QUARTERS),
    )
    ok = res.passed and spot <= 1e-10
    return report(9, "Gauss formula sweep and identities", ok, suite_line(res, dt) + f", mpmath spot {spot:.1e}")


def check_parser():
    res, dt = timed(verify.suite_parser)
    expected = {"sin(k*pi/2)": (4, [0, 1, 0, -1]), "cos(2*k*pi/3)": (3, [1, -0.5, -0.5]), "(-1)^k": (2, [1, -1])}
    spot = all(
        detect_period(src) == q
        and all(abs(evaluate(parse(src), k) - v) <= 1e-12 for k, v in enumerate(vals))
        for src, (q, vals) in expected.items()
    )
    return report(10, "weight expressions and periods", res.passed and spot, suite_line(res, dt))


def check_cli():
    cmd = [sys.executable, "-m", "periodic_sums", "verify", "--format", "json"]
    start = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True)
    dt = time.perf_counter() - start
    second = subprocess.run(cmd, capture_output=True)
    same = first.stdout == second.stdout and bool(first.stdout)
    ok = first.returncode == 0 and second.returncode == 0 and same and dt < 60
    detail = f"exit {first.returncode}/{second.returncode}, identical={same}, {dt:.1f}s of 60s"
    return report(11, "verify CLI", ok, detail)


CRITERIA = [
    check_delta, check_index, check_antidiff, check_closed, check_genfun, check_extensions,
    check_catalan, check_binomial, check_gauss, check_parser, check_cli,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.__name__[6:] for c in CRITERIA])
def test_criterion(criterion, capsys):
    ok = criterion()
    with capsys.disabled():
        sys.stdout.write("\n" + capsys.readouterr().out)
    assert ok


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
