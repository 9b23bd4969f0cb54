"""Verification suites: every identity checked against an independent route.

Each suite returns a SuiteResult. ``run_suites`` is what ``periodic-sums
verify`` executes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import catalog as cat
from . import genfun as gf
from .expr import detect_period, evaluate, parse
from .errors import InconsistencyError
from .periodic import SINE_QUARTER, IndicatorMethod, indicator
from .special import (
    LN2,
    duplication_residual,
    gauss_fractional_harmonic,
    harmonic,
    harmonic_series,
    multiplication_residual,
    sine_product,
    trig_sums,
)
from .sums import (
    active_terms,
    brute_S,
    brute_S_p_table,
    brute_S_table,
    brute_T_table,
    check_prop3,
    check_prop4,
    fact1_index,
    middle_alternating_identity,
    s_p_from_anti,
)


@dataclass
class SuiteResult:
    name: str
    description: str
    passed: bool
    max_err: float
    tolerance: float
    cases: int
    worst: str = ""

    def as_row(self):
        return {
            "suite": self.name,
            "description": self.description,
            "passed": self.passed,
            "max_err": self.max_err,
            "tolerance": self.tolerance,
            "cases": self.cases,
            "worst": self.worst,
        }


class _Tracker:
    """Collects scaled errors; reports the first failure, else the worst case."""

    def __init__(self, tol):
        self.tol = tol
        self.max_err = 0.0
        self.worst = ""
        self.first_failure = ""
        self.cases = 0

    @property
    def failed(self):
        return bool(self.first_failure)

    def _record(self, e, case):
        self.cases += 1
        if e > self.max_err or not self.worst:
            self.max_err = max(self.max_err, e)
            self.worst = case
        if e > self.tol and not self.first_failure:
            self.first_failure = case

    def err(self, value, reference, case, relative_above=1.0):
        e = float(abs(value - reference)) / max(relative_above, abs(reference))
        self._record(e, case)
        return e

    def rel(self, value, reference, case):
        """Strictly relative error (absolute when the reference is zero)."""
        scale = abs(reference) if reference != 0 else 1.0
        self._record(float(abs(value - reference)) / scale, case)

    def check(self, ok, case):
        self.cases += 1
        if not ok and not self.first_failure:
            self.first_failure = case

    def merge(self, other):
        self.cases += other.cases
        if other.first_failure and not self.first_failure:
            self.first_failure = other.first_failure

    def result(self, name, description):
        return SuiteResult(
            name,
            description,
            not self.failed,
            self.max_err,
            self.tol,
            self.cases,
            self.first_failure or self.worst,
        )


def _families():
    return cat.all_entries()


# 1 -------------------------------------------------------------------------

def suite_delta(tol=1e-12, n_max=200):
    t = _Tracker(tol)
    for e in _families():
        S = brute_S_table(e.f, e.weight, n_max + 1)
        for n in range(n_max + 1):
            t.err(S[n + 1] - S[n], e.weight(n) * e.f(n), f"{e.id} S n={n}")
        for p in range(e.q):
            T = brute_T_table(e.f, e.q, p, n_max + 1)
            for n in range(n_max + 1):
                t.err(T[n + 1] - T[n], e.f(e.q * n + p), f"{e.id} T_{p} n={n}")
    return t.result("delta", "forward differences of S and T_p recover the summands")


# 2 -------------------------------------------------------------------------

RATIONAL_FAMILIES = {
    "poly": lambda k: k * k - 3 * k + 1,
    "alt-cubic": lambda k: (-1) ** k * k**3,
    "recip": lambda k: Fraction(1, k + 1),
}


def suite_index(tol=0.0, n_max=200, q_range=range(2, 7)):
    t = _Tracker(tol)
    for name, f in RATIONAL_FAMILIES.items():
        for q in q_range:
            for p in range(q):
                Sp = brute_S_p_table(f, q, p, q * n_max)
                T = brute_T_table(f, q, p, n_max)
                for n in range(n_max + 1):
                    t.err(Sp[n], T[fact1_index(n, p, q)], f"{name} q={q} p={p} S_p({n})")
                    t.err(Sp[q * n], T[n], f"{name} q={q} p={p} T_p({n})")
    return t.result("index", "S_p(n) = T_p(floor((n-p-1)/q)+1) and T_p(n) = S_p(qn), exact")


# 3 -------------------------------------------------------------------------

def suite_antidiff(tol=1e-10, n_max=300):
    t = _Tracker(tol)
    for e in _families():
        fam = e.family
        for p in range(e.q):
            Sp = brute_S_p_table(e.f, e.q, p, n_max)
            for n in range(n_max + 1):
                t.err(s_p_from_anti(fam, p, n), Sp[n], f"{e.id} p={p} n={n}")
                t.check(active_terms(e.q, p, n) == 1, f"{e.id} p={p} n={n} active terms")
    return t.result("antidiff", "S_p(n) from the anti-difference equals the brute-force S_p(n)")


# 4 -------------------------------------------------------------------------

_CLOSED_IDS = ("log3", "log4", "recip4", "harmonic4", "alt-harmonic")


def suite_closed(tol=1e-9, mutual_tol=1e-10, n_max=300, perturb=0.0):
    t = _Tracker(tol)
    mutual = _Tracker(mutual_tol)
    for eid in _CLOSED_IDS:
        e = cat.get_entry(eid)
        S = brute_S_table(e.f, e.weight, n_max)
        start = 1 if eid in ("log3", "alt-harmonic") else 0
        forms = {"closed": e.closed_S, **e.variants}
        for n in range(start, n_max + 1):
            values = {name: fn(n) + perturb for name, fn in forms.items()}
            for name, v in values.items():
                t.err(v, S[n], f"{eid} {name} n={n}")
            for name, v in values.items():
                if name != "closed":
                    mutual.err(v, values["closed"], f"{eid} {name} vs closed n={n}")
    t.merge(mutual)
    return t.result("closed", "closed forms of the worked examples against brute-force S(n)")


# 5 -------------------------------------------------------------------------

def suite_genfun(tol=1e-10, N=64, qs=(2, 3, 4, 5)):
    t = _Tracker(tol)
    for e in _families():
        F = gf.series_from_sequence(e.f, N)
        for q in qs:
            for p in range(q):
                a = gf.gf_S_p_dft(F, q, p)
                b = gf.gf_S_p_decimate(F, q, p)
                direct = gf.direct_S_p(e.f, q, p, N)
                for n in range(N):
                    case = f"{e.id} q={q} p={p} n={n}"
                    t.err(a[n], direct[n], case + " dft")
                    t.err(b[n], direct[n], case + " decimate")
                    t.err(a[n], b[n], case + " dft/decimate")
    # coefficient of z^2 in the two specialised displays, exactly
    recip = gf.series_from_sequence(lambda n: 1.0 / (n + 1), N)
    c = gf.gf_sine_quarter(recip)[2]
    t.check(c == 0.5, f"sin-weighted 1/(n+1): z^2 coefficient {c}")
    alt = gf.series_from_sequence(lambda k: 0.0 if k == 0 else 1.0 / k, N)
    c = gf.gf_alternating(alt)[2]
    t.check(c == -1, f"alternating 1/k: z^2 coefficient {c}")
    return t.result("genfun", "both generating-function forms against the directly summed S_p(n)")


# 6 -------------------------------------------------------------------------

def _perturbed(t_plus, at):
    return lambda x: t_plus(x) + (1.0 if Fraction(x) == at else 0.0)


def log3_t0_plus(x):
    return cat.entry_log3().t_plus(0, Fraction(x))


LOG3_EXTENSION_CONSTANT = math.log(2 * math.pi / 3**1.5)


def suite_extensions(tol=1e-10, N=100):
    t = _Tracker(tol)
    alt = cat.entry_alt_harmonic()
    c1, c2, c3, const = check_prop3(cat.alt_harmonic_t0_plus, alt.f, N, tol)
    t.check(c1 and c2 and c3, "alt-harmonic: conditions (i)-(iii)")
    if const is not None:
        t.err(const, -LN2, "alt-harmonic constant vs -ln 2")
    bad = check_prop3(_perturbed(cat.alt_harmonic_t0_plus, Fraction(5, 2)), alt.f, N, tol)
    t.check(bad[:3] == (False, False, False), "alt-harmonic perturbed at 5/2")

    log3 = cat.entry_log3()
    c1, c2, c3, const = check_prop4(log3_t0_plus, log3.f, N, tol)
    t.check(c1 and c2 and c3, "log3: conditions (i)-(iii)")
    if const is not None:
        t.err(const, LOG3_EXTENSION_CONSTANT, "log3 constant vs log(2 pi / 3^(3/2))")
    bad = check_prop4(_perturbed(log3_t0_plus, Fraction(7, 3)), log3.f, N, tol)
    t.check(bad[:3] == (False, False, False), "log3 perturbed at 7/3")
    return t.result("extensions", "equivalent conditions on T_0^+ for q = 2 and q = 3")


# 7 -------------------------------------------------------------------------

CATALAN_REPORTED = 0.915965594


def suite_catalan(tol=1e-8, brute_tol=1e-10, K=100_000):
    t = _Tracker(tol)
    g = cat.catalan_series(K)
    t.err(g, CATALAN_REPORTED, f"catalan_series({K}) vs 0.915965594", relative_above=1.0)
    b = _Tracker(brute_tol)
    f = cat.entry_inverse_square4().f
    b.err(brute_S(f, SINE_QUARTER, 4 * K), g, f"brute S({4 * K}) vs catalan_series({K})")
    t.merge(b)
    return t.result("catalan", "partial sums converge to Catalan's constant")


# 8 -------------------------------------------------------------------------

def suite_binomial(tol=1e-9, m_max=30, q_max=8):
    t = _Tracker(tol)
    rel = t.rel

    for m in range(m_max + 1):
        for q in range(2, q_max + 1):
            row = 0.0
            for p in range(q):
                for h in cat.H_CHOICES:
                    closed = cat.binomial_progression_sum(m, q, p, h)
                    rel(closed, cat.binomial_progression_brute(m, q, p, h), f"m={m} q={q} p={p} h={h}")
                    if h == "one":
                        row += closed
            rel(row, 2**m, f"m={m} q={q} row partition")
        rel(cat.binomial_intro_formula(m), cat.binomial_progression_brute(m, 3, 1, "recip"), f"intro m={m}")
    return t.result("binomial", "binomial sums over residue classes against enumeration")


# 9 -------------------------------------------------------------------------

def suite_gauss(tol=1e-10, q_max=12):
    t = _Tracker(tol)
    sym = _Tracker(1e-12)
    for q in range(2, q_max + 1):
        s = sine_product(q)
        sym.err(s, q * 2.0 ** (1 - q), f"sine product q={q}", relative_above=0.0)
        for p in range(1, q):
            z = Fraction(p, q)
            g = gauss_fractional_harmonic(p, q)
            t.err(g, harmonic(z), f"gauss {p}/{q} vs digamma")
            t.err(g, harmonic_series(z), f"gauss {p}/{q} vs series")
            sym.err(gauss_fractional_harmonic(p, q, "full"), g, f"full form {p}/{q}")
            t.err(gauss_fractional_harmonic(p, q, "product"), g, f"product form {p}/{q}")
            a, b, c = trig_sums(p, q)
            t.err(a, 0.0, f"sin sum {p}/{q}")
            t.err(b, -1.0, f"cos sum {p}/{q}")
            t.err(c, -q / 2 * math.cos(p * math.pi / q) / math.sin(p * math.pi / q), f"j sin sum {p}/{q}")
    for i in range(100):
        x = 0.5 * i
        t.err(duplication_residual(x), 0.0, f"duplication x={x}")
        t.err(multiplication_residual(x, 4), 0.0, f"multiplication x={x}")
    t.merge(sym)
    return t.result("gauss", "fractional harmonic numbers and the supporting trigonometric identities")


# 10 ------------------------------------------------------------------------

EXAMPLE_WEIGHTS = {
    "sin(k*pi/2)": (4, (0, 1, 0, -1)),
    "cos(2*k*pi/3)": (3, (1, -0.5, -0.5)),
    "(-1)^k": (2, (1, -1)),
}


def suite_parser(tol=1e-12):
    t = _Tracker(tol)
    for src, (q, period) in EXAMPLE_WEIGHTS.items():
        tree = parse(src)
        for k in range(3 * q):
            t.err(evaluate(tree, k), period[k % q], f"{src} at k={k}")
        found = detect_period(tree)
        t.check(found == q, f"{src}: period {found}, expected {q}")
    return t.result("parser", "the example weights parse, evaluate and report their periods")


# extra ---------------------------------------------------------------------

def suite_identities(tol=1e-12):
    t = _Tracker(tol)
    for n in range(0, 60):
        try:
            middle_alternating_identity(lambda k: Fraction(1, k + 1), n)
            t.check(True, f"middle n={n}")
        except InconsistencyError:
            t.check(False, f"middle n={n}")
    for n in range(0, 60):
        lhs, a, b = cat.alternating_harmonic_tail(n)
        t.err(lhs, a, f"H_2n - H_n vs alternating n={n}")
        t.err(lhs, b, f"H_2n - H_n vs tail n={n}")
    for z in (Fraction(1, 2), 2.5 + 0.5j, -1.75, 7):
        for n in range(12):
            try:
                cat.alternating_binomial_prefix(z, n)
                cat.odd_binomial_prefix(z, n)
                t.check(True, f"binomial prefixes z={z} n={n}")
            except InconsistencyError:
                t.check(False, f"binomial prefixes z={z} n={n}")
    for n in range(0, 101):
        t.err(indicator(n, 2, IndicatorMethod.ROOTS_OF_UNITY), indicator(n, 2), f"g_0 n={n}")
    return t.result("identities", "side identities: middle alternating sum, H_2n - H_n, binomial prefixes")


SUITES = {
    "delta": suite_delta,
    "index": suite_index,
    "antidiff": suite_antidiff,
    "closed": suite_closed,
    "genfun": suite_genfun,
    "extensions": suite_extensions,
    "catalan": suite_catalan,
    "binomial": suite_binomial,
    "gauss": suite_gauss,
    "parser": suite_parser,
    "identities": suite_identities,
}


def run_suites(names=None, tol=None, q_max=12, perturb=False):
    """Run the named suites (all by default) in a fixed order."""
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    results = []
    for name in SUITES:
        if name not in names:
            continue
        kwargs = {}
        if tol is not None:
            kwargs["tol"] = tol
        if name == "gauss":
            kwargs["q_max"] = q_max
        if name == "closed" and perturb:
            kwargs["perturb"] = 1e-6
        results.append(SUITES[name](**kwargs))
    return results
