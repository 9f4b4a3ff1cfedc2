"""Dense polynomials and truncated Maclaurin series.

Coefficients may be ``complex`` (float mode) or ``fractions.Fraction``
(exact-rational mode); every operation keeps whichever scalar type it is
given.  Series arithmetic truncates to the smaller order of its operands.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import TruncationError
from .scalars import Scalar

_TRIM_REL = 1e-10


def _is_exact(coeffs) -> bool:
    return any(isinstance(c, Fraction) for c in coeffs)


def _trim(coeffs: list, tol: Optional[float]) -> list:
    """Drop trailing coefficients that are (numerically) zero."""
    if not coeffs:
        return coeffs
    if _is_exact(coeffs):
        cut = 0
    else:
        if tol is None:
            scale = max(abs(c) for c in coeffs)
            tol = _TRIM_REL * scale
        cut = tol
    n = len(coeffs)
    while n > 0 and abs(coeffs[n - 1]) <= cut:
        n -= 1
    return coeffs[:n]


class Polynomial:
    """Polynomial in one variable; ``coeffs[k]`` multiplies ``z**k``.

    Trailing coefficients below a scale-relative threshold are dropped at
    construction, so ``degree`` is the exact degree (-1 for the zero
    polynomial).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar], trim: bool = True,
                 trim_tol: Optional[float] = None):
        cs = list(coeffs)
        if trim:
            cs = _trim(cs, trim_tol)
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: Scalar) -> Scalar:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "Polynomial(%r)" % (list(self.coeffs),)

    def as_series(self, order: int) -> "TruncatedSeries":
        """Promote to a truncated series of the given order."""
        zero = self.coeffs[0] * 0 if self.coeffs else 0
        cs = list(self.coeffs[: order + 1])
        cs += [zero] * (order + 1 - len(cs))
        return TruncatedSeries(cs)


class TruncatedSeries:
    """Maclaurin coefficients c_0..c_N of a function analytic at z = 0.

    ``order`` is the truncation order N; nothing is asserted about terms
    beyond it.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar]):
        if len(coeffs) == 0:
            raise ValueError("a truncated series needs at least the constant term")
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: Scalar) -> Scalar:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative, truncated at order N-1."""
        if self.order == 0:
            raise TruncationError("cannot differentiate an order-0 series")
        return TruncatedSeries(
            [i * self.coeffs[i] for i in range(1, self.order + 1)])

    def __repr__(self) -> str:
        return "TruncatedSeries(%r)" % (list(self.coeffs),)


def binomial_series(omega: Scalar, order: int) -> TruncatedSeries:
    """Maclaurin series of (1-z)^omega through the given order.

    The coefficient of z^i is (-1)^i falling(omega, i) / i!.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = omega * 0 + 1
    out = [c]
    for i in range(1, order + 1):
        c = c * (omega - (i - 1)) * -1 / i
        out.append(c)
    return TruncatedSeries(out)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at min(N_a, N_b)."""
    n = min(a.order, b.order)
    ca, cb = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        acc = ca[0] * cb[k]
        for i in range(1, k + 1):
            acc = acc + ca[i] * cb[k - i]
        out.append(acc)
    return TruncatedSeries(out)


def poly_mul_series(p: Polynomial, s: TruncatedSeries) -> TruncatedSeries:
    """Product of a polynomial with a series, truncated at the series order."""
    return series_mul(p.as_series(s.order), s)


def series_order(s: TruncatedSeries, tol: float) -> Optional[int]:
    """Index of the first coefficient with |c_n| > tol.

    Returns None when every retained coefficient is below tol (the order of
    the underlying function exceeds the truncation order N).
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    for n, c in enumerate(s.coeffs):
        if abs(c) > tol:
            return n
    return None


def apply_d_omega(s: TruncatedSeries, omega: Scalar) -> TruncatedSeries:
    """Apply (1-z)^{omega+1} d/dz (1-z)^{-omega} to a series.

    The result is truncated at N-1.  This operator annihilates
    (1-z)^omega and maps a degree-rho combination one step down.
    """
    n = s.order
    if n == 0:
        raise TruncationError("apply_d_omega needs truncation order >= 1")
    inner = series_mul(binomial_series(-omega, n), s)
    return series_mul(binomial_series(omega + 1, n - 1), inner.derivative())


def poly_eval(p: Polynomial, z: Scalar) -> Scalar:
    """Horner evaluation of a polynomial."""
    return p(z)


def series_eval(s: TruncatedSeries, z: Scalar) -> Scalar:
    """Horner evaluation of the truncated series (meaningful for |z| < 1)."""
    return s(z)
