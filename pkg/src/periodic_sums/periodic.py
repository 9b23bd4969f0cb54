"""Periodic weights and the residue-class indicator g_0.

All integer division and modulus here is floored (Python's ``//`` and ``%``),
so negative arguments land in the residue class {0, ..., q-1}.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError


class IndicatorMethod(enum.Enum):
    FLOOR = "floor"
    ROOTS_OF_UNITY = "roots-of-unity"
    COSINE_SPLIT = "cosine-split"


def _check_modulus(q):
    if not isinstance(q, int) or q < 2:
        raise ParameterError(f"modulus q must be an integer >= 2, got {q!r}")


def omega(q: int) -> complex:
    """Primitive q-th root of unity exp(2*pi*i/q)."""
    return cmath.exp(2j * math.pi / q)


def unit_root_power(q: int, m: int) -> complex:
    """omega(q)**m, reduced mod q first so large exponents lose no accuracy."""
    r = m % q
    if r == 0:
        return 1 + 0j
    if 2 * r == q:
        return -1 + 0j
    if 4 * r == q:
        return 1j
    if 4 * r == 3 * q:
        return -1j
    return cmath.exp(2j * math.pi * r / q)


def indicator(n: int, q: int, method: IndicatorMethod = IndicatorMethod.FLOOR):
    """Return g_0(n): 1 when q divides n, else 0.

    FLOOR is exact and returns an int. The two trigonometric methods return
    the raw float so callers can see rounding noise (within ~1e-15).
    """
    _check_modulus(q)
    method = IndicatorMethod(method)
    if method is IndicatorMethod.FLOOR:
        return n // q - (n - 1) // q
    if method is IndicatorMethod.ROOTS_OF_UNITY:
        # (1/q) sum_j omega^(jn); the imaginary parts cancel in exact arithmetic
        total = math.fsum(math.cos(2 * math.pi * ((j * n) % q) / q) for j in range(q))
        return total / q
    # 1/q + ((-1)^n + (-1)^(n+q)) / (2q) + (2/q) sum_{j <= (q-1)//2} cos(2 pi j n / q)
    sign = 1 if n % 2 == 0 else -1
    sign_q = sign if q % 2 == 0 else -sign
    terms = [1.0 / q, (sign + sign_q) / (2 * q)]
    terms.extend(
        2.0 / q * math.cos(2 * math.pi * ((j * n) % q) / q)
        for j in range(1, (q - 1) // 2 + 1)
    )
    return math.fsum(terms)


@dataclass(frozen=True)
class PeriodicWeight:
    """A q-periodic weight g, stored as one period (g(0), ..., g(q-1))."""

    values: tuple

    def __init__(self, values: Sequence):
        values = tuple(values)
        _check_modulus(len(values))
        object.__setattr__(self, "values", values)

    @property
    def q(self) -> int:
        return len(self.values)

    def __call__(self, n: int):
        return self.values[n % self.q]

    def __len__(self):
        return self.q

    @classmethod
    def from_function(cls, g, q: int) -> "PeriodicWeight":
        _check_modulus(q)
        return cls([g(p) for p in range(q)])

    @classmethod
    def constant(cls, c, q: int = 2) -> "PeriodicWeight":
        _check_modulus(q)
        return cls([c] * q)

    @classmethod
    def indicator_basis(cls, p: int, q: int) -> "PeriodicWeight":
        """The weight g_p(n) = g_0(n - p)."""
        _check_modulus(q)
        if not 0 <= p < q:
            raise ParameterError(f"p must satisfy 0 <= p < {q}, got {p}")
        return cls([1 if r == p else 0 for r in range(q)])

    def lift(self, multiple: int) -> "PeriodicWeight":
        """Same weight viewed with period q * multiple."""
        return PeriodicWeight(self.values * multiple)

    def __str__(self):
        return "[" + ", ".join(str(v) for v in self.values) + "]"


# The weights used throughout the worked examples, with exact periods.
ALTERNATING = PeriodicWeight([1, -1])
SINE_QUARTER = PeriodicWeight([0, 1, 0, -1])  # sin(k pi / 2)
COSINE_THIRD = PeriodicWeight([1, -0.5, -0.5])  # cos(2 k pi / 3)


def weight_eval(w: PeriodicWeight, n: int):
    return w(n)


def basis_decompose(w: PeriodicWeight) -> list:
    """Coefficients of w in the indicator basis g_0(n - p), p = 0..q-1.

    These are just the period values; ``reconstruct`` rebuilds g(n) from them.
    """
    return list(w.values)


def reconstruct(coefficients: Sequence, n: int):
    """Evaluate sum_p c_p g_0(n - p)."""
    q = len(coefficients)
    return sum(c * indicator(n - p, q) for p, c in enumerate(coefficients))
