"""Perfect-system criterion: shifted-degree approximant matrices.

For integer shift vectors eps_0..eps_M (each rho + eps_k coordinatewise
nonnegative), form the (M+1) x (M+1) matrix whose (k, m) entry is the
approximant H_m for the degree vector rho + eps_k.  When the maximum
permutation sum S of the shift matrix is attained by a unique permutation
and the minimum row sum T satisfies T + M = S, the determinant collapses to
a single monomial C z^(sigma(rho) + T - 1) with C independent of z.

``determinant_test`` measures this empirically: it evaluates the polynomial
matrix at sigma + S + 1 points, takes numeric determinants, interpolates the
coefficient vector, and reports whether a single monomial survives.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import InstanceError, SizeError
from .series import Polynomial
from .system import ProblemInstance, approximant_explicit, sigma

_MAX_DIMENSION = 10  # brute-force permutation bound: 10! ~ 3.6e6


def _scan_permutations(eps) -> Tuple[int, list]:
    n = len(eps)
    if n > _MAX_DIMENSION:
        raise SizeError(
            "permutation enumeration is limited to M+1 <= %d, got %d"
            % (_MAX_DIMENSION, n))
    best = None
    achievers: list = []
    for perm in itertools.permutations(range(n)):
        total = sum(eps[i][perm[i]] for i in range(n))
        if best is None or total > best:
            best = total
            achievers = [perm]
        elif total == best and len(achievers) < 2:
            achievers.append(perm)
    return best, achievers


def compute_S_and_alpha(eps) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Maximum permutation sum S and the maximizing permutation.

    Exhaustive search over all (M+1)! permutations; ties are decided on
    exact integers.  Returns (S, alpha) with alpha None when the maximizer
    is not unique.
    """
    best, achievers = _scan_permutations(eps)
    return best, achievers[0] if len(achievers) == 1 else None


def compute_T(eps) -> int:
    """Minimum row sum of the shift matrix."""
    return min(sum(row) for row in eps)


@dataclass(frozen=True)
class EpsilonFamily:
    """M+1 integer shift vectors with their derived quantities.

    ``alpha`` is the unique maximizing permutation or None on a tie;
    ``hypothesis_satisfied`` records (alpha unique) and (T + M == S).
    """

    eps: tuple
    S: int = 0
    T: int = 0
    alpha: Optional[Tuple[int, ...]] = None
    hypothesis_satisfied: bool = False

    def __init__(self, eps: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in eps)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InstanceError(
                "need M+1 shift vectors of length M+1, got %r" % (rows,))
        s, achievers = _scan_permutations(rows)
        alpha = achievers[0] if len(achievers) == 1 else None
        t = compute_T(rows)
        m = n - 1
        object.__setattr__(self, "eps", rows)
        object.__setattr__(self, "S", s)
        object.__setattr__(self, "T", t)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "hypothesis_satisfied",
                           alpha is not None and t + m == s)

    @property
    def M(self) -> int:
        return len(self.eps) - 1

    def tie_witnesses(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Two distinct permutations achieving S, when alpha is not unique."""
        _, achievers = _scan_permutations(self.eps)
        if len(achievers) >= 2:
            return achievers[0], achievers[1]
        return None


def identity_family(M: int) -> EpsilonFamily:
    """eps_k = e_k: the classical choice with T = 1, S = M + 1."""
    return EpsilonFamily(
        [[1 if j == k else 0 for j in range(M + 1)] for k in range(M + 1)])


def jager_family(M: int, subsets: Sequence[Sequence[int]]) -> EpsilonFamily:
    """eps_k = e_k + sum_{i in I_k} e_i with I_k a subset of {0..k-1}."""
    rows = []
    for k in range(M + 1):
        row = [0] * (M + 1)
        row[k] = 1
        for i in subsets[k]:
            if not 0 <= i < k:
                raise InstanceError(
                    "subset entries for row %d must lie in 0..%d" % (k, k - 1))
            row[i] += 1
        rows.append(row)
    return EpsilonFamily(rows)


def hypothesis_report(fam: EpsilonFamily) -> dict:
    """S, T, the maximizing permutation (or tie witnesses), and the verdict."""
    report = {
        "S": fam.S,
        "T": fam.T,
        "alpha": list(fam.alpha) if fam.alpha is not None else None,
        "tie": None,
        "T_plus_M_equals_S": fam.T + fam.M == fam.S,
        "satisfied": fam.hypothesis_satisfied,
    }
    if fam.alpha is None:
        a, b = fam.tie_witnesses()
        report["tie"] = [list(a), list(b)]
    return report


def _det_generic(matrix):
    """Determinant by elimination, generic over complex/Fraction scalars."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    exact = any(isinstance(x, Fraction) for row in a for x in row)
    det = Fraction(1) if exact else complex(1.0)
    for col in range(n):
        piv_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        piv = a[piv_row][col]
        if piv == 0:
            return det * 0
        if piv_row != col:
            a[col], a[piv_row] = a[piv_row], a[col]
            det = -det
        det = det * piv
        for r in range(col + 1, n):
            f = a[r][col] / piv
            for c in range(col + 1, n):
                a[r][c] = a[r][c] - f * a[col][c]
    return det


def _interpolate_exact(points, values):
    # Vandermonde solve over Fractions
    from .system import solve_pivoted

    n = len(points)
    matrix = [[p ** k for k in range(n)] for p in points]
    return solve_pivoted(matrix, list(values))


def _interpolate_circle(values, radius: float):
    # equispaced points on a circle: inverse DFT, rescaled by radius powers
    import cmath

    p = len(values)
    coeffs = []
    for k in range(p):
        acc = 0.0j
        for j, v in enumerate(values):
            acc += v * cmath.exp(-2j * math.pi * j * k / p)
        coeffs.append(acc / (p * radius ** k))
    return coeffs


def determinant_test(inst: ProblemInstance, fam: EpsilonFamily,
                     tol: float = 1e-7) -> dict:
    """Measure whether the shifted-system determinant is a single monomial.

    Evaluates det[H_m(z; rho + eps_k)] at sigma + S + 1 distinct points
    (the unit circle in float mode, rationals in exact mode), interpolates
    the coefficients, and reports

    - ``is_monomial``: every coefficient except the largest is below
      tol * |largest|,
    - ``exponent`` and ``C``: position and value of the surviving term,
    - ``residual``: largest off-monomial coefficient ratio.

    The unit circle keeps |det| at its natural scale; a smaller radius r
    shrinks the sampled values by r^exponent and amplifies the relative
    cancellation noise of the determinant evaluation accordingly.
    """
    if fam.M != inst.M:
        raise InstanceError(
            "shift family dimension %d does not match instance M = %d"
            % (fam.M, inst.M))
    rows = []
    for eps_k in fam.eps:
        shifted = tuple(r + e for r, e in zip(inst.rho, eps_k))
        if any(r < 0 for r in shifted):
            raise InstanceError(
                "rho + eps = %r has a negative coordinate" % (shifted,))
        inst_k = inst.replace(rho=shifted)
        rows.append([approximant_explicit(inst_k, m)
                     for m in range(inst.M + 1)])

    n_points = sigma(inst.rho) + fam.S + 1
    if inst.mode == "exact":
        points = [Fraction(j + 1, 2 * n_points) for j in range(n_points)]
        values = [
            _det_generic([[poly(p) for poly in row] for row in rows])
            for p in points
        ]
        coeffs = _interpolate_exact(points, values)
        maxabs = max(abs(c) for c in coeffs)
        if maxabs == 0:
            return {"is_monomial": False, "exponent": None, "C": None,
                    "residual": 0.0}
    else:
        radius = 1.0
        points = [radius * complex(math.cos(2 * math.pi * j / n_points),
                                   math.sin(2 * math.pi * j / n_points))
                  for j in range(n_points)]
        values = [
            _det_generic([[poly(p) for poly in row] for row in rows])
            for p in points
        ]
        coeffs = _interpolate_circle(values, radius)
        maxabs = max(abs(c) for c in coeffs)
        # identically-zero determinant: everything at numerical noise level
        entry_scale = max(
            (abs(c) for row in rows for poly in row for c in poly.coeffs),
            default=0.0)
        floor = (math.factorial(inst.M + 1)
                 * max(entry_scale, 1.0) ** (inst.M + 1) * 1e-12)
        if maxabs < floor:
            return {"is_monomial": False, "exponent": None, "C": None,
                    "residual": 0.0}
    k_star = max(range(len(coeffs)), key=lambda k: abs(coeffs[k]))
    residual = 0.0
    for k, c in enumerate(coeffs):
        if k != k_star:
            residual = max(residual, float(abs(c) / maxabs))
    return {
        "is_monomial": residual <= tol,
        "exponent": k_star,
        "C": coeffs[k_star],
        "residual": residual,
    }


def sweep_random_families(inst: ProblemInstance, bound: int, count: int,
                          seed: int = 0, tol: float = 1e-7) -> list:
    """Empirical search tool: sample shift families with coordinates in
    [-bound, bound] (subject to rho + eps >= 0) and record, per family,
    the hypothesis verdict and the measured determinant shape.

    Purely exploratory; no property is asserted about the results.
    """
    import random

    rng = random.Random(seed)
    n = inst.M + 1
    records = []
    for _ in range(count):
        rows = []
        for _k in range(n):
            row = [rng.randint(max(-bound, -inst.rho[j]), bound)
                   for j in range(n)]
            rows.append(row)
        fam = EpsilonFamily(rows)
        result = determinant_test(inst, fam, tol)
        records.append({
            "eps": fam.eps,
            "S": fam.S,
            "T": fam.T,
            "hypothesis_satisfied": fam.hypothesis_satisfied,
            "is_monomial": result["is_monomial"],
            "exponent": result["exponent"],
            "residual": result["residual"],
        })
    return records
