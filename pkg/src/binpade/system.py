"""Construction of the Pade system for binomial functions (1-z)^w.

Given exponents omega_0..omega_M (no two differing by an integer) and degrees
rho_0..rho_M, there is a unique family of polynomials H_m of exact degree
rho_m such that

    G(z) = sum_m H_m(z) (1-z)^{omega_m}

has a zero of order exactly sigma - 1 at z = 0, normalized so that the
leading series coefficient is 1/(sigma-1)!, where sigma = sum(rho_m + 1).

This module builds the H_m three independent ways (an explicit sum over
(z-1)^r, a terminating hypergeometric sum, and a gamma-ratio sum), builds the
remainder G two ways (its Maclaurin series directly, and by multiplying the
approximants with binomial series), and provides a brute-force oracle that
recovers everything from the defining sigma x sigma linear system.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ConditioningWarning, InstanceError, SingularSystemError
from .scalars import Scalar, binomial, log_gamma, rising_factorial, sin_pi
from .series import (
    Polynomial,
    TruncatedSeries,
    binomial_series,
    poly_mul_series,
    series_mul,
)

_INT_DIFF_TOL = 1e-9
_CONDITIONING_SIGMA = 40

OmegaInput = Union[int, float, complex, Fraction, str]


def sigma(rho: Sequence[int]) -> int:
    """Total coefficient count sum(rho_m + 1); the remainder vanishes to order sigma-1."""
    return sum(r + 1 for r in rho)


def _parse_omega(value: OmegaInput, mode: str):
    if mode == "exact":
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        if isinstance(value, float) and value.is_integer():
            return Fraction(int(value))
        raise InstanceError(
            "exact mode needs rational omega entries, got %r" % (value,))
    if isinstance(value, str):
        return complex(Fraction(value))
    return complex(value)


@dataclass(frozen=True)
class ProblemInstance:
    """The pair (omega vector, degree vector) defining one Pade system.

    omega entries are complex in float mode, Fraction in exact mode (rational
    strings like "1/3" are accepted and parsed).  Validity requires all
    omega distinct with no pairwise difference an integer, and rho_m >= 0.
    """

    omega: tuple
    rho: tuple
    mode: str = "float"

    def __init__(self, omega: Sequence[OmegaInput], rho: Sequence[int],
                 mode: str = "float"):
        if mode not in ("float", "exact"):
            raise InstanceError("mode must be 'float' or 'exact', got %r" % (mode,))
        om = tuple(_parse_omega(w, mode) for w in omega)
        rh = tuple(int(r) for r in rho)
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "rho", rh)
        object.__setattr__(self, "mode", mode)
        self._validate()

    def _validate(self):
        if len(self.omega) == 0 or len(self.omega) != len(self.rho):
            raise InstanceError(
                "omega and rho must be nonempty and of equal length")
        if any(r < 0 for r in self.rho):
            raise InstanceError("all degrees rho_m must be nonnegative")
        if self.mode == "float":
            for w in self.omega:
                if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                    raise InstanceError("omega entries must be finite")
        for i in range(len(self.omega)):
            for j in range(i + 1, len(self.omega)):
                d = self.omega[i] - self.omega[j]
                if self.mode == "exact":
                    if d.denominator == 1:
                        raise InstanceError(
                            "omega_%d - omega_%d = %s is an integer" % (i, j, d))
                else:
                    if (abs(d.imag) < _INT_DIFF_TOL
                            and abs(d.real - round(d.real)) < _INT_DIFF_TOL):
                        raise InstanceError(
                            "omega_%d - omega_%d = %r is (numerically) an integer"
                            % (i, j, d))
        if self.mode == "float" and self.sigma > _CONDITIONING_SIGMA:
            warnings.warn(
                "sigma = %d > %d: factorial ratios span many orders of "
                "magnitude; float-mode results may lose accuracy"
                % (self.sigma, _CONDITIONING_SIGMA),
                ConditioningWarning,
                stacklevel=3,
            )

    @property
    def M(self) -> int:
        return len(self.omega) - 1

    @property
    def sigma(self) -> int:
        return sigma(self.rho)

    @property
    def rho_factorial(self) -> int:
        out = 1
        for r in self.rho:
            out *= math.factorial(r)
        return out

    def one(self):
        """Multiplicative unit of the coefficient ring for this mode."""
        return Fraction(1) if self.mode == "exact" else complex(1.0)

    def replace(self, omega=None, rho=None) -> "ProblemInstance":
        return ProblemInstance(
            self.omega if omega is None else omega,
            self.rho if rho is None else rho,
            self.mode,
        )


@dataclass(frozen=True)
class PadeSystem:
    """An assembled system: the M+1 approximant polynomials plus metadata."""

    instance: ProblemInstance
    H: tuple
    sigma: int
    source: str = "explicit"  # explicit | hypergeometric | gamma-form | oracle

    def remainder(self, order: Optional[int] = None) -> TruncatedSeries:
        """Series of sum_m H_m (1-z)^{omega_m} through the given order."""
        n = default_truncation(self.instance) if order is None else order
        return _combine(self.instance, self.H, n)


def default_truncation(inst: ProblemInstance) -> int:
    """Default series truncation: sigma + 16 leaves the vanishing stretch
    plus a healthy tail of nonzero terms visible."""
    return inst.sigma + 16


def base_case(omega0: OmegaInput, rho0: int,
              mode: Optional[str] = None) -> PadeSystem:
    """The single-exponent system: H_0 = z^rho0 / rho0!.

    The remainder is then z^rho0 (1-z)^{omega0} / rho0!.
    """
    if mode is None:
        mode = "exact" if isinstance(omega0, (Fraction, str)) else "float"
    inst = ProblemInstance([omega0], [rho0], mode)
    fact = math.factorial(rho0)
    lead = Fraction(1, fact) if mode == "exact" else complex(1.0 / fact)
    zero = lead * 0
    coeffs = [zero] * rho0 + [lead]
    return PadeSystem(inst, (Polynomial(coeffs),), inst.sigma, "explicit")


def _add_shifted_power(coeffs: list, scale, r: int) -> None:
    # accumulate scale * (z-1)^r into a monomial-basis coefficient list,
    # using exact integer binomials for the expansion
    for j in range(r + 1):
        term = binomial(r, j) * scale
        if (r - j) % 2:
            term = -term
        coeffs[j] = coeffs[j] + term


def approximant_explicit(inst: ProblemInstance, m: int) -> Polynomial:
    """H_m as the explicit sum over powers of (z-1).

    H_m(z) = (1/rho_m!) sum_r (z-1)^r C(rho_m, r)
             / prod_{k != m} rising(omega_k - omega_m - r, rho_k + 1).
    """
    om, rho = inst.omega, inst.rho
    rm = rho[m]
    one = inst.one()
    zero = one * 0
    coeffs = [zero] * (rm + 1)
    fact = math.factorial(rm)
    try:
        for r in range(rm + 1):
            denom = one * fact
            for k in range(inst.M + 1):
                if k != m:
                    denom = denom * rising_factorial(om[k] - om[m] - r, rho[k] + 1)
            _add_shifted_power(coeffs, binomial(rm, r) / denom, r)
    except ZeroDivisionError as exc:
        raise InstanceError(
            "zero rising-factorial denominator: an omega difference is an "
            "integer") from exc
    return Polynomial(coeffs)


def approximant_hypergeometric(inst: ProblemInstance, m: int) -> Polynomial:
    """H_m as a scaled terminating hypergeometric sum in powers of (1-z).

    The numerator parameters are omega_m - omega_k - rho_k (one of which is
    -rho_m, so the sum stops after rho_m + 1 terms); the denominator
    parameters are 1 + omega_m - omega_k for k != m.
    """
    om, rho = inst.omega, inst.rho
    rm = rho[m]
    one = inst.one()
    try:
        pref = one / math.factorial(rm)
        for k in range(inst.M + 1):
            if k != m:
                pref = pref / rising_factorial(om[k] - om[m], rho[k] + 1)
        a = [om[m] - om[k] - rho[k] for k in range(inst.M + 1)]
        b = [1 + om[m] - om[k] for k in range(inst.M + 1) if k != m]
        zero = one * 0
        coeffs = [zero] * (rm + 1)
        term = one  # ratio of rising factorials at n, divided by n!
        for n in range(rm + 1):
            if n > 0:
                for ai in a:
                    term = term * (ai + n - 1)
                for bi in b:
                    term = term / (bi + n - 1)
                term = term / n
            # (1-z)^n expands with alternating signs
            for j in range(n + 1):
                t = binomial(n, j) * (pref * term)
                if j % 2:
                    t = -t
                coeffs[j] = coeffs[j] + t
    except ZeroDivisionError as exc:
        raise InstanceError(
            "zero rising-factorial denominator: an omega difference is an "
            "integer") from exc
    return Polynomial(coeffs)


def _gamma_ratio_coefficient(W: complex, rho_k: int, r: int) -> complex:
    # the three-case coefficient C_{m,k,r} for k != m
    if rho_k < r:
        lg = (log_gamma(r + 1) - log_gamma(r + 1 - W)
              + log_gamma(r - rho_k - W) - log_gamma(r - rho_k + 1))
        val = cmath.exp(lg) / binomial(r, rho_k)
        return -val if (rho_k + 1) % 2 else val
    lg = (log_gamma(r + 1) - log_gamma(r + 1 - W)
          + log_gamma(rho_k - r + 1) - log_gamma(rho_k - r + 1 + W))
    val = binomial(rho_k, r) * cmath.exp(lg) * math.pi / sin_pi(W)
    return -val if r % 2 else val


def approximant_gamma_form(inst: ProblemInstance, m: int) -> Polynomial:
    """H_m as a sum of gamma-function ratios (float mode only).

    H_m(z) = (1 / prod rho_k!) sum_r (z-1)^r prod_k C_{m,k,r}, where
    C_{m,m,r} is a plain binomial and the off-diagonal coefficients are
    gamma ratios with a pi/sin(pi W) reflection factor when rho_k >= r.
    """
    if inst.mode == "exact":
        raise ValueError(
            "the gamma-ratio form needs float mode (gamma of irrational "
            "arguments is not expressible in rational arithmetic)")
    om, rho = inst.omega, inst.rho
    rm = rho[m]
    coeffs = [0j] * (rm + 1)
    rho_fact = inst.rho_factorial
    for r in range(rm + 1):
        prod = complex(binomial(rm, r))  # the k = m factor
        for k in range(inst.M + 1):
            if k != m:
                prod *= _gamma_ratio_coefficient(om[k] - om[m], rho[k], r)
        _add_shifted_power(coeffs, prod / rho_fact, r)
    return Polynomial(coeffs)


def remainder_series(inst: ProblemInstance, order: Optional[int] = None
                     ) -> TruncatedSeries:
    """Maclaurin series of the remainder G through the given order.

    The coefficient of z^n is g_n / n! with

        g_n = (-1)^n sum_m (1/rho_m!) sum_r C(rho_m, r) (-1)^r
              falling(omega_m + r, n)
              / prod_{k != m} rising(omega_k - omega_m - r, rho_k + 1);

    g_n vanishes for n <= sigma-2 and g_{sigma-1} = 1, so c_{sigma-1}
    equals 1/(sigma-1)!.
    """
    n_max = default_truncation(inst) if order is None else order
    if n_max < inst.sigma - 1:
        raise ValueError(
            "truncation order %d does not reach the first nonzero "
            "coefficient at sigma-1 = %d" % (n_max, inst.sigma - 1))
    om, rho = inst.omega, inst.rho
    one = inst.one()
    weights = []  # per (m, r): C(rho_m, r) (-1)^r / (rho_m! * denom)
    falling = []  # running falling(omega_m + r, n)
    try:
        for m in range(inst.M + 1):
            fm = math.factorial(rho[m])
            for r in range(rho[m] + 1):
                denom = one * fm
                for k in range(inst.M + 1):
                    if k != m:
                        denom = denom * rising_factorial(
                            om[k] - om[m] - r, rho[k] + 1)
                w = binomial(rho[m], r) / denom
                weights.append(-w if r % 2 else w)
                falling.append((om[m] + r, one))
    except ZeroDivisionError as exc:
        raise InstanceError(
            "zero rising-factorial denominator: an omega difference is an "
            "integer") from exc
    coeffs = []
    n_fact = 1
    for n in range(n_max + 1):
        if n > 0:
            n_fact *= n
            falling = [(x, f * (x - (n - 1))) for x, f in falling]
        g = one * 0
        for w, (_, f) in zip(weights, falling):
            g = g + w * f
        if n % 2:
            g = -g
        coeffs.append(g / n_fact)
    return TruncatedSeries(coeffs)


def _combine(inst: ProblemInstance, polys, order: int) -> TruncatedSeries:
    zero = inst.one() * 0
    total = TruncatedSeries([zero] * (order + 1))
    for m in range(inst.M + 1):
        total = total + poly_mul_series(
            polys[m], binomial_series(inst.omega[m], order))
    return total


def remainder_from_approximants(inst: ProblemInstance,
                                order: Optional[int] = None
                                ) -> TruncatedSeries:
    """Series of sum_m H_m(z) (1-z)^{omega_m} using the explicit H_m."""
    n = default_truncation(inst) if order is None else order
    polys = [approximant_explicit(inst, m) for m in range(inst.M + 1)]
    return _combine(inst, polys, n)


def solve_pivoted(matrix, rhs):
    """Dense linear solve by Gaussian elimination with partial pivoting.

    Generic over the scalar type: complex rows use magnitude pivoting with a
    relative breakdown threshold, Fraction rows use exact nonzero pivoting.

    Raises
    ------
    SingularSystemError
        If no acceptable pivot is available in some column.
    """
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    exact = any(isinstance(x, Fraction) for row in a for x in row)
    scale = None
    if not exact:
        scale = max((abs(x) for row in a for x in row), default=0.0)
        if scale == 0.0:
            raise SingularSystemError("zero matrix")
    for col in range(n):
        piv_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        piv = a[piv_row][col]
        if (exact and piv == 0) or (not exact and abs(piv) <= 1e-13 * scale):
            raise SingularSystemError(
                "elimination breakdown in column %d (pivot %r)" % (col, piv))
        a[col], a[piv_row] = a[piv_row], a[col]
        for r in range(col + 1, n):
            f = a[r][col] / piv
            if (exact and f == 0) or (not exact and f == 0):
                continue
            for c in range(col, n + 1):
                a[r][c] = a[r][c] - f * a[col][c]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = a[i][n]
        for j in range(i + 1, n):
            acc = acc - a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x


def oracle_linear_solve(inst: ProblemInstance,
                        order: Optional[int] = None) -> PadeSystem:
    """Recover the full system from the defining sigma x sigma linear solve.

    Unknowns are all coefficients of all H_m; equations force the series
    coefficients of sum_m H_m (1-z)^{omega_m} to vanish through z^{sigma-2}
    and the z^{sigma-1} coefficient to equal 1/(sigma-1)!.  This is the
    brute-force cross-check for the closed forms; ``order`` is accepted for
    interface symmetry but the solve itself only ever needs sigma rows.
    """
    s = inst.sigma
    om, rho = inst.omega, inst.rho
    one = inst.one()
    zero = one * 0
    bin_series = [binomial_series(w, s - 1).coeffs for w in om]
    cols = [(m, i) for m in range(inst.M + 1) for i in range(rho[m] + 1)]
    matrix = []
    for j in range(s):
        row = []
        for (m, i) in cols:
            row.append(bin_series[m][j - i] if 0 <= j - i else zero)
        matrix.append(row)
    rhs = [zero] * s
    if inst.mode == "exact":
        rhs[s - 1] = Fraction(1, math.factorial(s - 1))
    else:
        rhs[s - 1] = complex(1.0 / math.factorial(s - 1))
    x = solve_pivoted(matrix, rhs)
    polys = []
    pos = 0
    for m in range(inst.M + 1):
        polys.append(Polynomial(x[pos:pos + rho[m] + 1]))
        pos += rho[m] + 1
    return PadeSystem(inst, tuple(polys), s, "oracle")


def pade_system(inst: ProblemInstance, source: str = "explicit",
                order: Optional[int] = None) -> PadeSystem:
    """Assemble a PadeSystem via the chosen route."""
    builders = {
        "explicit": approximant_explicit,
        "hypergeometric": approximant_hypergeometric,
        "gamma-form": approximant_gamma_form,
    }
    if source == "oracle":
        return oracle_linear_solve(inst, order)
    if source not in builders:
        raise ValueError("unknown source %r" % (source,))
    polys = tuple(builders[source](inst, m) for m in range(inst.M + 1))
    return PadeSystem(inst, polys, inst.sigma, source)


def _max_coeff_dev(p: Polynomial, q: Polynomial) -> float:
    n = max(len(p.coeffs), len(q.coeffs))
    dev = 0.0
    for i in range(n):
        a = p.coeffs[i] if i < len(p.coeffs) else 0
        b = q.coeffs[i] if i < len(q.coeffs) else 0
        dev = max(dev, float(abs(a - b)))
    return dev


def check_symmetries(inst: ProblemInstance, alpha: Scalar,
                     perm: Sequence[int],
                     order: Optional[int] = None) -> dict:
    """Measure the permutation and shift symmetries of the system.

    Returns a dict of residuals:

    - ``permutation``: max coefficient deviation between H_m for the
      original ordering and H_{perm^{-1}(m)} for the permuted ordering;
    - ``shift_H``: max deviation between H_m for omega and for alpha+omega
      (the approximants are shift-invariant);
    - ``shift_G``: max series coefficient deviation between
      (1-z)^alpha G(omega) and G(alpha+omega) through the truncation order.
    """
    n = default_truncation(inst) if order is None else order
    perm = tuple(perm)
    if sorted(perm) != list(range(inst.M + 1)):
        raise ValueError("perm must be a permutation of 0..M")
    base = [approximant_explicit(inst, m) for m in range(inst.M + 1)]

    inst_p = inst.replace(
        omega=tuple(inst.omega[p] for p in perm),
        rho=tuple(inst.rho[p] for p in perm),
    )
    permuted = [approximant_explicit(inst_p, m) for m in range(inst.M + 1)]
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    dev_perm = max(
        _max_coeff_dev(base[m], permuted[inv[m]]) for m in range(inst.M + 1))

    if inst.mode == "exact" and not isinstance(alpha, Fraction):
        alpha = Fraction(alpha)
    inst_s = inst.replace(omega=tuple(w + alpha for w in inst.omega))
    shifted = [approximant_explicit(inst_s, m) for m in range(inst.M + 1)]
    dev_shift_h = max(
        _max_coeff_dev(base[m], shifted[m]) for m in range(inst.M + 1))

    g = remainder_from_approximants(inst, n)
    g_shifted = remainder_from_approximants(inst_s, n)
    lhs = series_mul(binomial_series(alpha + inst.one() * 0, n), g)
    dev_shift_g = max(
        float(abs(a - b)) for a, b in zip(lhs.coeffs, g_shifted.coeffs))

    return {
        "permutation": dev_perm,
        "shift_H": dev_shift_h,
        "shift_G": dev_shift_g,
    }


def polynomial_gcd(polys: Sequence[Polynomial]) -> Polynomial:
    """Exact gcd of Fraction-coefficient polynomials (monic normalization).

    A degree-0 result certifies that the inputs have no common root.
    """
    def euclid(a: list, b: list) -> list:
        while any(c != 0 for c in b):
            # a mod b
            a = list(a)
            db = len(b) - 1
            while len(a) - 1 >= db and any(c != 0 for c in a):
                if a[-1] == 0:
                    a.pop()
                    continue
                f = a[-1] / b[-1]
                off = len(a) - 1 - db
                for i in range(db + 1):
                    a[off + i] -= f * b[i]
                a.pop()
            if not a:
                a = [Fraction(0)]
            a, b = b, a
        return a

    acc = None
    for p in polys:
        cs = [Fraction(c) for c in p.coeffs] or [Fraction(0)]
        acc = cs if acc is None else euclid(acc, cs)
    while len(acc) > 1 and acc[-1] == 0:
        acc.pop()
    if acc[-1] != 0:
        acc = [c / acc[-1] for c in acc]
    return Polynomial(acc)
