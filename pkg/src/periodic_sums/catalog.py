"""Catalog of concrete sequence families with known anti-differences.

Each entry bundles f, an extension ``t_plus(p, x)`` of T_p to
D_p = {(m - p)/q}, the weight g of the worked example and, where one is
known, a closed form for S(n) = sum_{k<n} g(k) f(k).

Families whose example sums start at k = 1 store f(0) = 0 so the generic
engine needs no special case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .errors import DomainError, InconsistencyError, ParameterError
from .periodic import ALTERNATING, COSINE_THIRD, SINE_QUARTER, PeriodicWeight
from .special import LN2, binomial, harmonic, log_gamma, trigamma
from .sums import SequenceFamily, brute_T, total, weighted_sum_from_anti

LN3 = math.log(3.0)
LN4 = math.log(4.0)
SQRT3_2 = math.sqrt(3.0) / 2

# exact values of cos/sin at multiples of pi/2 and 2 pi/3
_COS_QUARTER = (1, 0, -1, 0)
_SIN_QUARTER = (0, 1, 0, -1)
_COS_THIRD = (1.0, -0.5, -0.5)
_SIN_THIRD = (0.0, SQRT3_2, -SQRT3_2)


def cos_quarter(n):
    return _COS_QUARTER[n % 4]


def sin_quarter(n):
    return _SIN_QUARTER[n % 4]


def cos_third(n):
    return _COS_THIRD[n % 3]


def sin_third(n):
    return _SIN_THIRD[n % 3]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    q: int
    f: Callable
    t_plus: Callable
    weight: PeriodicWeight
    closed_S: Optional[Callable] = None
    variants: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)
    description: str = ""

    @property
    def family(self) -> SequenceFamily:
        return SequenceFamily(self.id, self.f, self.q, self.t_plus)

    def closed(self, n: int):
        if self.closed_S is None:
            raise DomainError(f"no closed form for S(n) in family {self.id!r}")
        return self.closed_S(n)


def _require_positive(n, name):
    if n < 1:
        raise DomainError(f"closed form of {name} is defined for n >= 1, got {n}")


def _step_extension(f, q):
    """T_p^+(x) = T_p(ceil x): a valid (if arbitrary) extension to D_p."""

    @lru_cache(maxsize=None)
    def t(p, m):
        return brute_T(f, q, p, m)

    def t_plus(p, x):
        return t(p, math.ceil(x))

    return t_plus


# -- q = 3: cos(2 k pi / 3) log k --------------------------------------------

def _log_or_zero(k):
    return 0.0 if k == 0 else math.log(k)


def _log3_t_plus(p, x):
    if p == 0:
        return 0.0 if x == 0 else float(x - 1) * LN3 + log_gamma(x)
    return float(x) * LN3 + log_gamma(x + Fraction(p, 3)) - log_gamma(Fraction(p, 3))


def log3_example_T(p, n):
    """sum_{k=1}^{n-1} log(3k + p) = log(3^(n-1) Gamma(n + p/3) / Gamma(1 + p/3)).

    The worked example indexes these sums from k = 1, one term short of
    T_p for p in {1, 2}.
    """
    _require_positive(n, "log3 T_p")
    return (n - 1) * LN3 + log_gamma(n + Fraction(p, 3)) - log_gamma(1 + Fraction(p, 3))


def _log3_closed(n):
    _require_positive(n, "log3")
    terms = [0.25 * math.log(4 * math.pi**2 / 27)]
    for j in range(3):
        terms.append(cos_third(n + j) * (j * LN3 / 3 + log_gamma(Fraction(n + j, 3))))
    return math.fsum(terms)


def _log3_closed_trig(n):
    _require_positive(n, "log3")
    a = (n - 1.5) * LN3 + 3 * log_gamma(Fraction(n, 3)) - math.log(2 * math.pi) - log_gamma(n)
    b = LN3 / 3 + log_gamma(Fraction(n + 2, 3)) - log_gamma(Fraction(n + 1, 3))
    return math.fsum([
        math.log(math.sqrt(2 * math.pi) / 3**0.75),
        0.5 * cos_third(n) * a,
        SQRT3_2 * sin_third(n) * b,
    ])


def entry_log3() -> CatalogEntry:
    return CatalogEntry(
        id="log3",
        q=3,
        f=_log_or_zero,
        t_plus=_log3_t_plus,
        weight=COSINE_THIRD,
        closed_S=_log3_closed,
        variants={"trig": _log3_closed_trig},
        extras={"example_T": log3_example_T},
        description="sum_{k=1}^{n-1} cos(2k pi/3) log k",
    )


# -- q = 4: sin(k pi / 2) log(k + 1) -----------------------------------------

def _log4_f(n):
    return math.log(n + 1)


def _log4_t_plus(p, x):
    a = Fraction(p + 1, 4)
    return float(x) * LN4 + log_gamma(x + a) - log_gamma(a)


def _log4_closed(n):
    return math.fsum([
        math.log(2 / math.sqrt(math.pi)),
        cos_quarter(n) * (log_gamma(Fraction(n + 2, 4)) - LN2 - log_gamma(Fraction(n + 4, 4))),
        sin_quarter(n) * (log_gamma(Fraction(n + 1, 4)) - LN2 - log_gamma(Fraction(n + 3, 4))),
    ])


def entry_log4() -> CatalogEntry:
    return CatalogEntry(
        id="log4",
        q=4,
        f=_log4_f,
        t_plus=_log4_t_plus,
        weight=SINE_QUARTER,
        closed_S=_log4_closed,
        description="sum_{k<n} sin(k pi/2) log(k+1)",
    )


# -- q = 4: sin(k pi / 2) / (k + 1) ------------------------------------------

def _recip_f(n):
    return 1.0 / (n + 1)


def _recip4_t_plus(p, x):
    a = Fraction(p + 1, 4) - 1
    return 0.25 * (harmonic(x + a) - harmonic(a))


def _recip4_closed(n):
    return math.fsum([
        0.25 * LN4,
        0.25 * cos_quarter(n) * (harmonic(Fraction(n - 2, 4)) - harmonic(Fraction(n, 4))),
        0.25 * sin_quarter(n) * (harmonic(Fraction(n - 3, 4)) - harmonic(Fraction(n - 1, 4))),
    ])


def entry_recip4() -> CatalogEntry:
    return CatalogEntry(
        id="recip4",
        q=4,
        f=_recip_f,
        t_plus=_recip4_t_plus,
        weight=SINE_QUARTER,
        closed_S=_recip4_closed,
        description="sum_{k<n} sin(k pi/2) / (k+1)",
    )


# -- q = 4: sin(k pi / 2) H_k ------------------------------------------------

@lru_cache(maxsize=4096)
def _harmonic_int(n):
    return harmonic(n)


def _h4(n, j):
    return harmonic(Fraction(n - j, 4))


def _harmonic4_closed(n):
    return math.fsum([
        (math.pi - 2 * LN2) / 8,
        -0.25 * cos_quarter(n) * (_h4(n, 1) + _h4(n, 2) + 4 * LN2),
        -0.25 * sin_quarter(n) * (_h4(n, 2) + _h4(n, 3) + 4 * LN2),
    ])


def _harmonic4_closed_pre(n):
    """Form before the multiplication formula removes H_n."""
    hn = _harmonic_int(n)
    return math.fsum([
        (math.pi - 2 * LN2) / 8,
        cos_quarter(n) / 8 * (_h4(n, 0) - _h4(n, 1) - _h4(n, 2) + _h4(n, 3) - 4 * hn),
        sin_quarter(n) / 8 * (_h4(n, 0) + _h4(n, 1) - _h4(n, 2) - _h4(n, 3) - 4 * hn),
    ])


_SHIFTED_SINE = PeriodicWeight([math.sin(k * math.pi / 2 + 3 * math.pi / 4) for k in range(4)])


def _harmonic4_by_parts(n):
    """Summation by parts, with the 1/(k+1) sum done by the recip4 anti-difference."""
    rest = weighted_sum_from_anti(_SHIFTED_SINE, entry_recip4().family, n)
    s = math.sin(n * math.pi / 2 + math.pi / 4)
    return (-s * _harmonic_int(n) + rest) / math.sqrt(2)


def entry_harmonic4() -> CatalogEntry:
    f = _harmonic_int
    return CatalogEntry(
        id="harmonic4",
        q=4,
        f=f,
        t_plus=_step_extension(f, 4),
        weight=SINE_QUARTER,
        closed_S=_harmonic4_closed,
        variants={"pre_multiplication": _harmonic4_closed_pre, "by_parts": _harmonic4_by_parts},
        description="sum_{k<n} sin(k pi/2) H_k",
    )


# -- q = 2: (-1)^k / k -------------------------------------------------------

def _recip_or_zero(k):
    return 0.0 if k == 0 else 1.0 / k


def alt_harmonic_t0_plus(x):
    x = Fraction(x)
    return 0.0 if x == 0 else 0.5 * harmonic(x - 1)


def _alt_t_plus(p, x):
    if p == 0:
        return alt_harmonic_t0_plus(x)
    half = Fraction(1, 2)
    return 0.5 * (harmonic(x - half) - harmonic(-half))


def alt_harmonic_s_f(n):
    """S_f(n) = sum_{k<n} f(k) = H_{n-1} (and 0 at n = 0)."""
    return 0.0 if n == 0 else _harmonic_int(n - 1)


def _alt_closed(n):
    _require_positive(n, "alt-harmonic")
    sign = 1 if n % 2 == 0 else -1
    return -LN2 + 0.5 * sign * (harmonic(Fraction(n - 2, 2)) - harmonic(Fraction(n - 1, 2)))


def _alt_closed_from_extension(n):
    from .sums import alternating_sum_closed

    return alternating_sum_closed(alt_harmonic_t0_plus, alt_harmonic_s_f, n)


def alternating_harmonic_tail(n):
    """(H_{2n} - H_n, sum_{k=1}^{2n} (-1)^(k+1)/k, sum_{k=1}^n 1/(n+k))."""
    lhs = _harmonic_int(2 * n) - _harmonic_int(n)
    alt = total((1 if k % 2 else -1) / k for k in range(1, 2 * n + 1))
    tail = total(1.0 / (n + k) for k in range(1, n + 1))
    return lhs, alt, tail


def entry_alt_harmonic() -> CatalogEntry:
    return CatalogEntry(
        id="alt-harmonic",
        q=2,
        f=_recip_or_zero,
        t_plus=_alt_t_plus,
        weight=ALTERNATING,
        closed_S=_alt_closed,
        variants={"from_extension": _alt_closed_from_extension},
        extras={"tail": alternating_harmonic_tail},
        description="sum_{k=1}^{n-1} (-1)^k / k",
    )


# -- q = 4: sin(k pi / 2) / k^2 ----------------------------------------------

def _inv_square(k):
    return 0.0 if k == 0 else 1.0 / (k * k)


_ZETA2 = math.pi**2 / 6


def _inv_square_t_plus(p, x):
    if p == 0:
        return 0.0 if x == 0 else (_ZETA2 - trigamma(x)) / 16
    a = Fraction(p, 4)
    return (trigamma(a) - trigamma(x + a)) / 16


def catalan_series(K: int) -> float:
    """sum_{k<K} (1/(4k+1)^2 - 1/(4k+3)^2), increasing to Catalan's constant."""
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    return math.fsum(1.0 / (4 * k + 1) ** 2 - 1.0 / (4 * k + 3) ** 2 for k in range(K))


CATALAN = 0.915965594177219015054603514932384110774


def entry_inverse_square4() -> CatalogEntry:
    return CatalogEntry(
        id="inv-square4",
        q=4,
        f=_inv_square,
        t_plus=_inv_square_t_plus,
        weight=SINE_QUARTER,
        extras={"catalan_series": catalan_series},
        description="sum_{k=1}^{n-1} sin(k pi/2) / k^2 (no finite-n closed form)",
    )


# -- binomial sums over residue classes --------------------------------------

H_CHOICES = ("one", "recip")


def _h(kind):
    if kind == "one":
        return lambda k: 1
    if kind == "recip":
        return lambda k: Fraction(1, k + 1)
    raise ParameterError(f"h must be one of {H_CHOICES}, got {kind!r}")


def _cos_pi(a, q):
    """cos(a pi / q) for integer a, with the exact zeros kept exact."""
    a %= 2 * q
    if 2 * a == q or 2 * a == 3 * q:
        return 0.0
    return math.cos(a * math.pi / q)


def binomial_progression_sum(m: int, q: int, p: int, h: str = "one") -> float:
    """sum_k C(m, qk+p) h(qk+p) for h(k) = 1 or 1/(k+1), via a q-term cosine sum."""
    if m < 0 or not 0 <= p < q:
        raise ParameterError(f"need m >= 0 and 0 <= p < q, got m={m}, q={q}, p={p}")
    _h(h)
    if h == "one":
        terms = [_cos_pi(j * (m - 2 * p), q) * _cos_pi(j, q) ** m for j in range(q)]
        return 2.0**m / q * math.fsum(terms)
    terms = []
    for j in range(q):
        terms.append(2.0 ** (m + 1) * _cos_pi(j * (m - 2 * p - 1), q) * _cos_pi(j, q) ** (m + 1))
        terms.append(-_cos_pi(2 * j * (p + 1), q))
    return math.fsum(terms) / (q * (m + 1))


def binomial_progression_brute(m: int, q: int, p: int, h: str = "one"):
    """Exact value of sum_k C(m, qk+p) h(qk+p) by enumeration."""
    hk = _h(h)
    return sum((math.comb(m, k) * hk(k) for k in range(p, m + 1, q)), Fraction(0))


def binomial_intro_formula(m: int) -> float:
    """sum_k C(m, 3k+1)/(3k+2) = (2^(m+2) - 3 cos(m pi/3) - cos(5 m pi/3)) / (6(m+1))."""
    return (2.0 ** (m + 2) - 3 * _cos_pi(m, 3) - _cos_pi(5 * m, 3)) / (6 * (m + 1))


def _relative_mismatch(a, b):
    return abs(a - b) / max(1.0, abs(b))


def alternating_binomial_prefix(z, n: int, tol: float = 1e-9):
    """sum_{k=0}^n (-1)^k C(z, k), checked against (-1)^n C(z-1, n)."""
    lhs = sum((-1) ** k * binomial(z, k) for k in range(n + 1))
    rhs = (-1) ** n * binomial(z - 1, n)
    if _relative_mismatch(lhs, rhs) > tol:
        raise InconsistencyError(f"alternating binomial prefix {lhs} != {rhs}")
    return lhs


def odd_binomial_prefix(z, n: int, tol: float = 1e-9):
    """sum_{k<n} C(z, 2k+1), checked against (1/2) sum_{k<=2n} C(z,k) - (1/2) C(z-1, 2n)."""
    lhs = sum(binomial(z, 2 * k + 1) for k in range(n))
    rhs = sum(binomial(z, k) for k in range(2 * n + 1)) / 2 - binomial(z - 1, 2 * n) / 2
    if _relative_mismatch(lhs, rhs) > tol:
        raise InconsistencyError(f"odd binomial prefix {lhs} != {rhs}")
    return lhs


def entry_binomial(m: int = 12, q: int = 3, p: int = 1, h: str = "recip") -> CatalogEntry:
    """f(k) = C(m, k) h(k) weighted by the indicator of k = p (mod q).

    S(n) reaches the progression sum once n > m; there is no closed form
    for smaller n.
    """
    hk = _h(h)

    def f(k):
        return math.comb(m, k) * hk(k)

    return CatalogEntry(
        id="binomial",
        q=q,
        f=f,
        t_plus=_step_extension(f, q),
        weight=PeriodicWeight.indicator_basis(p, q),
        extras={"limit": lambda: binomial_progression_sum(m, q, p, h), "params": (m, q, p, h)},
        description=f"sum_k C({m}, {q}k+{p}) h({q}k+{p}), h = {h}",
    )


_BUILDERS = {
    "log3": entry_log3,
    "log4": entry_log4,
    "recip4": entry_recip4,
    "harmonic4": entry_harmonic4,
    "alt-harmonic": entry_alt_harmonic,
    "inv-square4": entry_inverse_square4,
    "binomial": entry_binomial,
}

CATALOG_IDS = tuple(_BUILDERS)


def get_entry(entry_id: str) -> CatalogEntry:
    try:
        return _BUILDERS[entry_id]()
    except KeyError:
        raise ParameterError(
            f"unknown family {entry_id!r}; choose from {', '.join(CATALOG_IDS)}"
        ) from None


def all_entries() -> list:
    return [build() for build in _BUILDERS.values()]
