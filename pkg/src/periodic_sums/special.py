"""Log-gamma, digamma, harmonic numbers and the classical identities around them.

log_gamma uses Stirling's series after shifting the argument up to
Re z >= 15 with the recurrence Gamma(z+1) = z Gamma(z). digamma and
trigamma shift the same way and use their asymptotic expansions; arguments
left of Re z = 1/2 go through the reflection formulas first.

Real arguments give float results, complex arguments give complex results.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Complex, Integral, Rational, Real

from .errors import DomainError, ParameterError

EULER_GAMMA = 0.57721566490153286060651209008240243
LN2 = math.log(2.0)

# B_2, B_4, ..., B_20
_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
)
_STIRLING = tuple(float(b / ((2 * k) * (2 * k - 1))) for k, b in enumerate(_BERNOULLI, 1))
_PSI_ASYMP = tuple(float(b / (2 * k)) for k, b in enumerate(_BERNOULLI, 1))
_PSI1_ASYMP = tuple(float(b) for b in _BERNOULLI)

_SHIFT_TO = 15.0
_POLE_GUARD = 1e-9


def _coerce(z):
    """Return (value, is_real) with Fractions and ints turned into floats."""
    if isinstance(z, Real):
        return float(z), True
    if isinstance(z, Complex):
        z = complex(z)
        return z, False
    raise TypeError(f"expected a number, got {type(z).__name__}")


def is_nonpositive_integer(z) -> bool:
    if isinstance(z, Integral):
        return z <= 0
    if isinstance(z, Rational):
        return z.denominator == 1 and z <= 0
    z = complex(z)
    if abs(z.imag) > _POLE_GUARD:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= _POLE_GUARD


def _poles_check(z, what):
    if is_nonpositive_integer(z):
        raise DomainError(f"{what} has a pole at {z}")


def log_gamma(z):
    """Principal branch of log Gamma(z) (the branch continuous from z > 0)."""
    _poles_check(z, "log_gamma")
    w, real = _coerce(z)
    if real and w < 0:
        # Gamma(x) may be negative here; continue through the complex path
        w, real = complex(w), False
    shift = 0.0 if real else 0j
    if real:
        prod = 1.0
        while w < _SHIFT_TO:
            prod *= w
            w += 1.0
        shift = math.log(prod)
    else:
        # individual logs keep the branch continuous; a product would wrap
        while w.real < _SHIFT_TO:
            shift += cmath.log(w)
            w += 1.0
    log = math.log if real else cmath.log
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0.0
    power = inv
    for c in _STIRLING:
        series += c * power
        power *= inv2
    return (w - 0.5) * log(w) - w + 0.5 * math.log(2 * math.pi) + series - shift


def gamma(z):
    if isinstance(z, Real) and z > 0:
        return math.exp(log_gamma(z))
    return cmath.exp(log_gamma(z))


def _reduce(w):
    """w minus the nearest integer: exact, and keeps pi*w accurate near poles."""
    return w - round(w.real)


def _cot_pi(w, real):
    r = math.pi * _reduce(w)
    if real:
        return math.cos(r) / math.sin(r)
    return cmath.cos(r) / cmath.sin(r)


def digamma(z):
    _poles_check(z, "digamma")
    w, real = _coerce(z)
    if w.real < 0.5:
        return digamma(1 - w) - math.pi * _cot_pi(w, real)
    shift = 0.0
    while w.real < _SHIFT_TO:
        shift += 1.0 / w
        w += 1.0
    log = math.log if real else cmath.log
    inv2 = 1.0 / (w * w)
    series = 0.0
    power = inv2
    for c in _PSI_ASYMP:
        series += c * power
        power *= inv2
    return log(w) - 0.5 / w - series - shift


def trigamma(z):
    _poles_check(z, "trigamma")
    w, real = _coerce(z)
    if w.real < 0.5:
        r = math.pi * _reduce(w)
        s = math.sin(r) if real else cmath.sin(r)
        return -trigamma(1 - w) + (math.pi / s) ** 2
    shift = 0.0
    while w.real < _SHIFT_TO:
        shift += 1.0 / (w * w)
        w += 1.0
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0.0
    power = inv * inv2
    for c in _PSI1_ASYMP:
        series += c * power
        power *= inv2
    return inv + 0.5 * inv2 + series + shift


def harmonic(z):
    """H_z = sum_{n>=1} (1/n - 1/(n+z)), computed as digamma(z+1) + gamma."""
    if is_nonpositive_integer(z + 1):
        raise DomainError(f"harmonic number has a pole at {z}")
    return digamma(z + 1) + EULER_GAMMA


def harmonic_series(z, terms: int = 2000):
    """H_z from the defining series, truncated after ``terms`` and tail-corrected.

    The tail sum_{n>N} (1/n - 1/(n+z)) is psi(N+1+z) - psi(N+1), taken from
    the first four terms of the asymptotic expansion of psi. Kept separate
    from ``harmonic`` so it can serve as an independent check.
    """
    if is_nonpositive_integer(z + 1):
        raise DomainError(f"harmonic number has a pole at {z}")
    w, real = _coerce(z)
    log = math.log if real else cmath.log

    def psi_tail(x):
        x2 = x * x
        return log(x) - 0.5 / x - 1 / (12 * x2) + 1 / (120 * x2 * x2) - 1 / (252 * x2 * x2 * x2)

    parts = [1.0 / n - 1.0 / (n + w) for n in range(1, terms + 1)]
    if real:
        head = math.fsum(parts)
    else:
        head = complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
    return head + psi_tail(terms + 1 + w) - psi_tail(terms + 1.0)


def _check_fraction_args(p, q):
    if not isinstance(q, int) or q < 2:
        raise ParameterError(f"q must be an integer >= 2, got {q!r}")
    if not isinstance(p, int) or not 1 <= p <= q - 1:
        raise ParameterError(f"p must satisfy 1 <= p <= q-1, got p={p!r}, q={q}")


def _cot(x):
    return math.cos(x) / math.sin(x)


def gauss_fractional_harmonic(p: int, q: int, form: str = "half") -> float:
    """H_{p/q} from logs, a cotangent and cosine-weighted log-sines.

    ``form`` selects one of three algebraically equal expressions:

    half     q/p - ln(2q) - (pi/2) cot(p pi/q)
               + 2 sum_{j=1}^{floor((q-1)/2)} cos(2 j p pi/q) ln sin(j pi/q)
    full     same, with the symmetric sum over all j = 1..q-1 taken once
    product  q/p - q ln 2 - (pi/2) cot(p pi/q) - ln prod_j sin(j pi/q)
               + sum_{j=1}^{q-1} cos(2 j p pi/q) ln sin(j pi/q)
    """
    _check_fraction_args(p, q)
    head = q / p - 0.5 * math.pi * _cot(p * math.pi / q)

    def term(j):
        return math.cos(2 * math.pi * ((j * p) % q) / q) * math.log(math.sin(j * math.pi / q))

    if form == "half":
        terms = [head, -math.log(2 * q)]
        terms += [2 * term(j) for j in range(1, (q - 1) // 2 + 1)]
    elif form == "full":
        terms = [head, -math.log(2 * q)]
        terms += [term(j) for j in range(1, q)]
    elif form == "product":
        terms = [head, -q * LN2, -math.log(sine_product(q))]
        terms += [term(j) for j in range(1, q)]
    else:
        raise ParameterError(f"unknown form {form!r}")
    return math.fsum(terms)


def duplication_residual(x):
    """2 H_x - (H_{x/2} + H_{(x-1)/2} + 2 ln 2); zero wherever defined."""
    return 2 * harmonic(x) - (harmonic(x / 2) + harmonic((x - 1) / 2) + 2 * LN2)


def multiplication_residual(x, m: int = 4):
    """m H_x - sum_{j<m} H_{(x-j)/m} - m ln m; zero wherever defined."""
    if not isinstance(m, int) or m < 2:
        raise ParameterError(f"m must be an integer >= 2, got {m!r}")
    parts = [m * harmonic(x), -m * math.log(m)]
    parts += [-harmonic((x - j) / m) for j in range(m)]
    if isinstance(x, Real):
        return math.fsum(parts)
    return sum(parts)


def sine_product(q: int) -> float:
    """prod_{j=1}^{q-1} sin(j pi / q), which equals q 2^(1-q)."""
    if not isinstance(q, int) or q < 2:
        raise ParameterError(f"q must be an integer >= 2, got {q!r}")
    return math.prod(math.sin(j * math.pi / q) for j in range(1, q))


def trig_sums(p: int, q: int):
    """(sum sin(2jp pi/q), sum cos(2jp pi/q), sum j sin(2jp pi/q)) over j = 1..q-1.

    Expected values: (0, -1, -(q/2) cot(p pi/q)).
    """
    _check_fraction_args(p, q)
    angles = [2 * math.pi * ((j * p) % q) / q for j in range(1, q)]
    s = math.fsum(math.sin(a) for a in angles)
    c = math.fsum(math.cos(a) for a in angles)
    js = math.fsum(j * math.sin(a) for j, a in enumerate(angles, 1))
    return s, c, js


def binomial(z, k: int):
    """Generalized binomial coefficient C(z, k) = z (z-1) ... (z-k+1) / k!.

    Exact for int and Fraction z; float or complex otherwise.
    """
    if k < 0:
        return 0
    if isinstance(z, Integral) and z >= 0:
        return math.comb(z, k)
    if isinstance(z, Rational):
        num = Fraction(1)
        for j in range(k):
            num *= z - j
        return num / math.factorial(k)
    out = 1.0
    for j in range(k):
        out *= (z - j) / (j + 1)
    return out
