"""Brute-force indefinite sums and the conversions between S_p and T_p.

Notation follows the module docs of the package:

    S(n)   = sum_{k<n} g(k) f(k)           (g q-periodic)
    S_p(n) = sum_{k<n} g_0(k-p) f(k)
    T_p(n) = sum_{k<n} f(q k + p)

An anti-difference ``t_plus(p, x)`` extends T_p to the rationals
D_p = {(m - p)/q : m in N}; x is passed as a ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Optional

from .errors import InconsistencyError, ParameterError, UnsupportedFamilyError
from .periodic import PeriodicWeight, indicator

DEFAULT_TOL = 1e-10


def total(values):
    """Sum a sequence of numbers.

    ints and Fractions are summed exactly; anything else goes through
    math.fsum (real and imaginary parts separately), which is correctly
    rounded and so at least as good as Kahan summation.
    """
    values = list(values)
    if all(isinstance(v, Rational) for v in values):
        return sum(values, 0)
    if any(isinstance(v, complex) for v in values):
        return complex(
            math.fsum(complex(v).real for v in values),
            math.fsum(complex(v).imag for v in values),
        )
    return math.fsum(values)


def _scaled_error(value, reference):
    """Absolute error, made relative when |reference| > 1."""
    err = abs(value - reference)
    return err / max(1.0, abs(reference))


def close(value, reference, tol: float = DEFAULT_TOL) -> bool:
    return _scaled_error(value, reference) <= tol


def _check_residue(p, q):
    if not isinstance(q, int) or q < 2:
        raise ParameterError(f"modulus q must be an integer >= 2, got {q!r}")
    if not isinstance(p, int) or not 0 <= p < q:
        raise ParameterError(f"p must satisfy 0 <= p < {q}, got {p!r}")


def _check_n(n):
    if n < 0:
        raise ParameterError(f"n must be non-negative, got {n}")


@dataclass(frozen=True)
class SequenceFamily:
    """A sequence f on N with an optional anti-difference for modulus q."""

    name: str
    f: Callable
    q: int = 2
    anti_difference: Optional[Callable] = None

    def t_plus(self, p: int, x):
        if self.anti_difference is None:
            raise UnsupportedFamilyError(f"family {self.name!r} has no anti-difference")
        return self.anti_difference(p, Fraction(x))


@dataclass
class VerificationReport:
    n_max: int
    max_abs_err: float
    max_rel_err: float
    worst_n: int
    tolerance: float
    passed: bool
    label: str = ""
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "label": self.label,
            "n_max": self.n_max,
            "max_abs_err": self.max_abs_err,
            "max_rel_err": self.max_rel_err,
            "worst_n": self.worst_n,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def compare(candidate, reference, ns, tol: float = DEFAULT_TOL, label: str = "") -> VerificationReport:
    """Compare two callables over ``ns``; pass/fail uses the scaled error."""
    max_abs = max_rel = 0.0
    worst_n, worst_scaled = None, -1.0
    n_max = 0
    for n in ns:
        a, b = candidate(n), reference(n)
        err = float(abs(a - b))
        rel = err / abs(b) if b != 0 else (0.0 if err == 0 else math.inf)
        scaled = _scaled_error(a, b)
        max_abs = max(max_abs, err)
        max_rel = max(max_rel, rel)
        if scaled > worst_scaled:
            worst_scaled, worst_n = scaled, n
        n_max = max(n_max, n)
    return VerificationReport(
        n_max=n_max,
        max_abs_err=max_abs,
        max_rel_err=max_rel,
        worst_n=worst_n,
        tolerance=tol,
        passed=worst_scaled <= tol,
        label=label,
    )


# -- brute-force oracles -----------------------------------------------------

def brute_S(f, w: PeriodicWeight, n: int):
    _check_n(n)
    return total(w(k) * f(k) for k in range(n))


def brute_T(f, q: int, p: int, n: int):
    _check_residue(p, q)
    _check_n(n)
    return total(f(q * k + p) for k in range(n))


def brute_S_p(f, q: int, p: int, n: int):
    _check_residue(p, q)
    _check_n(n)
    return total(f(k) for k in range(p, n, q))


def prefix_sums(terms, n: int) -> list:
    """[sum_{k<m} terms(k) for m in 0..n]; exact for rational terms."""
    out = [0]
    acc = 0
    for k in range(n):
        acc = acc + terms(k)
        out.append(acc)
    return out


def brute_S_table(f, w: PeriodicWeight, n: int) -> list:
    return prefix_sums(lambda k: w(k) * f(k), n)


def brute_T_table(f, q: int, p: int, n: int) -> list:
    _check_residue(p, q)
    return prefix_sums(lambda k: f(q * k + p), n)


def brute_S_p_table(f, q: int, p: int, n: int) -> list:
    _check_residue(p, q)
    return prefix_sums(lambda k: f(k) if (k - p) % q == 0 else 0, n)


def forward_difference(h, n: int):
    return h(n + 1) - h(n)


# -- conversion formulas -----------------------------------------------------

def fact1_index(n: int, p: int, q: int) -> int:
    """The m with S_p(n) = T_p(m), namely floor((n - p - 1)/q) + 1."""
    _check_residue(p, q)
    _check_n(n)
    return (n - p - 1) // q + 1


def _anti_terms(q, p, n):
    """(indicator, x) pairs of sum_k g_0(n+k-p) T_p^+((n+k-p)/q), k < q.

    Summands with n+k-p < 0 vanish (q cannot divide them) and are dropped,
    so the extension is only consulted at non-negative points of D_p.
    """
    out = []
    for k in range(q):
        m = n + k - p
        if m < 0:
            continue
        out.append((indicator(m, q), Fraction(m, q)))
    return out


def s_p_from_anti(fam: SequenceFamily, p: int, n: int, q: int = None):
    """S_p(n) through the anti-difference: sum_k g_0(n+k-p) T_p^+((n+k-p)/q)."""
    q = fam.q if q is None else q
    _check_residue(p, q)
    _check_n(n)
    if fam.anti_difference is None:
        raise UnsupportedFamilyError(f"family {fam.name!r} has no anti-difference")
    # every nonneg point of D_p is evaluated; g_0 zeroes all but one
    return total(g * fam.t_plus(p, x) for g, x in _anti_terms(q, p, n))


def active_terms(q: int, p: int, n: int) -> int:
    """How many summands of the anti-difference formula have g_0 = 1."""
    _check_residue(p, q)
    return sum(indicator(n + k - p, q) for k in range(q))


def t_from_s_p(f, q: int, p: int, n: int):
    """T_p(n) computed as S_p(q n)."""
    return brute_S_p(f, q, p, q * n)


def weighted_sum_from_anti(w: PeriodicWeight, t_plus, n: int, f_name: str = "family"):
    """S(n) = sum_p g(p) S_p(n), each S_p from the anti-difference ``t_plus``.

    ``t_plus`` is either a SequenceFamily or a mapping p -> callable(x);
    residues with g(p) == 0 are skipped and need no anti-difference.
    """
    q = w.q
    parts = []
    for p, gp in enumerate(w.values):
        if gp == 0:
            continue
        if isinstance(t_plus, SequenceFamily):
            if t_plus.q != q:
                raise UnsupportedFamilyError(
                    f"family {t_plus.name!r} targets q={t_plus.q}, weight has q={q}"
                )
            fam = t_plus
        else:
            try:
                tp = t_plus[p]
            except (KeyError, IndexError):
                tp = None
            if tp is None:
                raise UnsupportedFamilyError(f"no anti-difference for residue {p} of {f_name!r}")
            fam = SequenceFamily(f_name, None, q, lambda _p, x, tp=tp: tp(x))
        parts.append(gp * s_p_from_anti(fam, p, n, q=q))
    return total(parts)


# -- alternating sums (q = 2) ------------------------------------------------

def half(n):
    return Fraction(n, 2)


def alternating_sum_closed(t0_plus, s_f, n: int):
    """sum_{k<n} (-1)^k f(k) from T_0^+ at n/2, (n+1)/2 and S_f(n)."""
    _check_n(n)
    a, b = t0_plus(Fraction(n, 2)), t0_plus(Fraction(n + 1, 2))
    sign = 1 if n % 2 == 0 else -1
    return (a + b - s_f(n)) + sign * (a - b)


def _is_constant(values, scales, tol):
    base = values[0]
    for v, s in zip(values, scales):
        if abs(v - base) > tol * max(1.0, s):
            return False
    return True


def _matches(lhs, rhs, tol):
    return all(abs(a - b) <= tol * max(1.0, abs(b)) for a, b in zip(lhs, rhs))


def check_prop3(t0_plus, f, N: int, tol: float = DEFAULT_TOL):
    """Evaluate the three equivalent conditions on a q = 2 extension T_0^+.

    (i)   T_0^+(n/2) + T_0^+((n+1)/2) - S_f(n) is constant,  n = 0..N
    (ii)  T_0^+(n/2 + 1) - T_0^+(n/2) = f(n) for odd n <= N
    (iii) T_0^+(n + 1/2) - T_1(n) is constant,              n = 0..N

    Returns (i, ii, iii, constant) with constant = value of (i) or None.
    """
    s_f = prefix_sums(f, N + 1)
    t1 = prefix_sums(lambda k: f(2 * k + 1), N + 1)

    c1, sc1 = [], []
    for n in range(N + 1):
        a, b = t0_plus(Fraction(n, 2)), t0_plus(Fraction(n + 1, 2))
        c1.append(a + b - s_f[n])
        sc1.append(abs(a) + abs(b) + abs(s_f[n]))
    cond1 = _is_constant(c1, sc1, tol)

    odd = range(1, N + 1, 2)
    lhs = [t0_plus(Fraction(n, 2) + 1) - t0_plus(Fraction(n, 2)) for n in odd]
    cond2 = _matches(lhs, [f(n) for n in odd], tol)

    c3, sc3 = [], []
    for n in range(N + 1):
        a = t0_plus(n + Fraction(1, 2))
        c3.append(a - t1[n])
        sc3.append(abs(a) + abs(t1[n]))
    cond3 = _is_constant(c3, sc3, tol)

    return cond1, cond2, cond3, (c1[0] if cond1 else None)


def check_prop4(t0_plus, f, N: int, tol: float = DEFAULT_TOL):
    """The q = 3 analogue of ``check_prop3``.

    (i)   sum_{j<3} T_0^+((n+j)/3) - S_f(n) is constant
    (ii)  T_0^+(n+1+p/3) - T_0^+(n+p/3) = f(3n+p) for p in {1, 2}
    (iii) T_0^+(n+p/3) - T_p(n) is constant for each p in {1, 2}
    """
    s_f = prefix_sums(f, N + 1)

    c1, sc1 = [], []
    for n in range(N + 1):
        vals = [t0_plus(Fraction(n + j, 3)) for j in range(3)]
        c1.append(sum(vals) - s_f[n])
        sc1.append(sum(abs(v) for v in vals) + abs(s_f[n]))
    cond1 = _is_constant(c1, sc1, tol)

    cond2 = True
    cond3 = True
    for p in (1, 2):
        xs = [n + Fraction(p, 3) for n in range(N + 1)]
        lhs = [t0_plus(x + 1) - t0_plus(x) for x in xs]
        cond2 &= _matches(lhs, [f(3 * n + p) for n in range(N + 1)], tol)
        tp = prefix_sums(lambda k, p=p: f(3 * k + p), N + 1)
        c3 = [t0_plus(x) - tp[n] for n, x in enumerate(xs)]
        sc3 = [abs(t0_plus(x)) + abs(tp[n]) for n, x in enumerate(xs)]
        cond3 &= _is_constant(c3, sc3, tol)

    return cond1, cond2, cond3, (c1[0] if cond1 else None)


def middle_alternating_identity(f, n: int, tol: float = 1e-12):
    """sum_{k=0}^{2n} (-1)^k f(k), checked against T_0(n+1) - T_1(n)."""
    _check_n(n)
    lhs = total((1 if k % 2 == 0 else -1) * f(k) for k in range(2 * n + 1))
    rhs = brute_T(f, 2, 0, n + 1) - brute_T(f, 2, 1, n)
    if not close(lhs, rhs, tol):
        raise InconsistencyError(f"alternating sum {lhs} != T_0(n+1) - T_1(n) = {rhs}")
    return lhs
