"""Truncated power series and the generating functions of S_p and S.

A TruncatedSeries keeps the first N coefficients of a formal power series.
Binary operations truncate to the shorter order.
"""

from __future__ import annotations

import numpy as np

from .errors import InconsistencyError, ParameterError
from .periodic import PeriodicWeight, unit_root_power

MAX_ORDER = 4096


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(arr)):
            raise ParameterError("series coefficients must be finite")
        arr.setflags(write=False)
        self.coeffs = arr

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return self.order

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        return f"TruncatedSeries({self.coeffs.tolist()!r})"

    def _pair(self, other):
        n = min(self.order, other.order)
        return self.coeffs[:n], other.coeffs[:n]

    def __add__(self, other):
        a, b = self._pair(other)
        return TruncatedSeries(a + b)

    def __sub__(self, other):
        a, b = self._pair(other)
        return TruncatedSeries(a - b)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b = self._pair(other)
            return TruncatedSeries(np.convolve(a, b)[: len(a)])
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by z**k, keeping the order."""
        out = np.zeros(self.order, dtype=complex)
        if k < self.order:
            out[k:] = self.coeffs[: self.order - k]
        return TruncatedSeries(out)

    def real(self, tol: float = 1e-10) -> np.ndarray:
        """Real parts, after checking the imaginary residue is at most ``tol``."""
        residue = float(np.max(np.abs(self.coeffs.imag), initial=0.0))
        if residue > tol:
            raise InconsistencyError(f"imaginary residue {residue:.3e} exceeds {tol:.1e}")
        return self.coeffs.real.copy()

    def max_abs_diff(self, other) -> float:
        a, b = self._pair(other)
        return float(np.max(np.abs(a - b), initial=0.0))

    @classmethod
    def zeros(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order, dtype=complex))


def _check_order(N):
    if not isinstance(N, int) or N < 1 or N > MAX_ORDER:
        raise ParameterError(f"series order must be in 1..{MAX_ORDER}, got {N!r}")


def _check_residue(p, q):
    if not isinstance(q, int) or q < 2 or not 0 <= p < q:
        raise ParameterError(f"need q >= 2 and 0 <= p < q, got q={q!r}, p={p!r}")


def series_from_sequence(f, N: int) -> TruncatedSeries:
    _check_order(N)
    return TruncatedSeries([complex(f(n)) for n in range(N)])


def prefix_transform(F: TruncatedSeries) -> TruncatedSeries:
    """Multiply by 1/(1-z), i.e. replace coefficients by running sums."""
    return TruncatedSeries(np.cumsum(F.coeffs))


def scale_argument(F: TruncatedSeries, c) -> TruncatedSeries:
    """F(c z): coefficient n is multiplied by c**n."""
    return TruncatedSeries(F.coeffs * np.power(complex(c), np.arange(F.order)))


def rotate_argument(F: TruncatedSeries, q: int, k: int) -> TruncatedSeries:
    """F(omega**k z) with omega = exp(2 pi i / q)."""
    _check_residue(k, q)
    powers = np.array([unit_root_power(q, k * n) for n in range(F.order)])
    return TruncatedSeries(F.coeffs * powers)


def decimate(F: TruncatedSeries, q: int, p: int) -> TruncatedSeries:
    """F_p, the series with coefficients F[q n + p] (as far as F reaches)."""
    _check_residue(p, q)
    return TruncatedSeries(F.coeffs[p::q])


def residue_filter(F: TruncatedSeries, q: int, p: int) -> TruncatedSeries:
    """(1/q) sum_k omega^(-kp) F(omega^k z): keeps only the terms z^n with n = p mod q."""
    _check_residue(p, q)
    acc = np.zeros(F.order, dtype=complex)
    for k in range(q):
        acc += unit_root_power(q, -k * p) * rotate_argument(F, q, k).coeffs
    return TruncatedSeries(acc / q)


def gf_S_p_dft(F: TruncatedSeries, q: int, p: int) -> TruncatedSeries:
    """Generating function of (S_p(n)) as z/(q(1-z)) sum_k omega^(-kp) F(omega^k z)."""
    return prefix_transform(residue_filter(F, q, p).shift(1))


def gf_S_p_decimate(F: TruncatedSeries, q: int, p: int) -> TruncatedSeries:
    """Generating function of (S_p(n)) as z^(p+1) F_p(z^q) / (1-z)."""
    _check_residue(p, q)
    Fp = decimate(F, q, p)
    out = np.zeros(F.order, dtype=complex)
    for n, c in enumerate(Fp.coeffs):
        idx = q * n + p + 1
        if idx >= F.order:
            break
        out[idx] = c
    return prefix_transform(TruncatedSeries(out))


def gf_weighted(F: TruncatedSeries, w: PeriodicWeight) -> TruncatedSeries:
    """Generating function of (S(n)) for a periodic weight w: sum_p g(p) GF(S_p)."""
    acc = TruncatedSeries.zeros(F.order)
    for p, gp in enumerate(w.values):
        if gp != 0:
            acc = acc + complex(gp) * gf_S_p_dft(F, w.q, p)
    return acc


# Specialized closed forms for the common weights.

def gf_alternating(F: TruncatedSeries) -> TruncatedSeries:
    """(-1)^k weight: z/(1-z) F(-z)."""
    return prefix_transform(scale_argument(F, -1).shift(1))


def gf_sine_quarter(F: TruncatedSeries) -> TruncatedSeries:
    """sin(k pi/2) weight: i z/(2(1-z)) (F(-iz) - F(iz))."""
    diff = scale_argument(F, -1j) - scale_argument(F, 1j)
    return prefix_transform((0.5j * diff).shift(1))


def gf_cosine_third(F: TruncatedSeries) -> TruncatedSeries:
    """cos(2k pi/3) weight: z/(2(1-z)) (F(omega z) + F(omega^-1 z))."""
    total = rotate_argument(F, 3, 1) + rotate_argument(F, 3, 2)
    return prefix_transform((0.5 * total).shift(1))


def direct_S_p(f, q: int, p: int, N: int) -> np.ndarray:
    """(S_p(n))_{n<N} by direct accumulation."""
    _check_residue(p, q)
    out = np.zeros(N, dtype=complex)
    acc = 0j
    for n in range(1, N):
        k = n - 1
        if k % q == p:
            acc += f(k)
        out[n] = acc
    return out
