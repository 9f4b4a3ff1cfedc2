"""Shared test utilities: seeded instance generation and deviation metrics.

Float-mode instance draws keep every pairwise omega difference at least
``margin`` away from the integers (the closed forms divide by rising
factorials that vanish there) and cap sigma at 10: the defining linear
system and the (sigma-1)!-amplified normalization checks lose roughly a
digit per unit of sigma beyond that in double precision.
"""

from __future__ import annotations

import random
from fractions import Fraction

from binpade import ProblemInstance

SIGMA_CAP = 10


def draw_omega(rng: random.Random, count: int, margin: float = 0.15,
               box: float = 2.0) -> list:
    while True:
        om = [complex(rng.uniform(-box, box), rng.uniform(-1.0, 1.0))
              for _ in range(count)]
        ok = True
        for i in range(count):
            for j in range(i + 1, count):
                d = om[i] - om[j]
                if abs(d.imag) < margin and abs(d.real - round(d.real)) < margin:
                    ok = False
        if ok:
            return om


def draw_rho(rng: random.Random, M: int, rho_max: int = 4,
             sigma_cap: int = SIGMA_CAP) -> list:
    while True:
        rho = [rng.randint(0, rho_max) for _ in range(M + 1)]
        if sum(r + 1 for r in rho) <= sigma_cap:
            return rho


def draw_instance(rng: random.Random, M: int | None = None,
                  rho_max: int = 4, sigma_cap: int = SIGMA_CAP,
                  rho=None) -> ProblemInstance:
    if M is None:
        M = rng.choice([0, 1, 2, 3])
    if rho is None:
        rho = draw_rho(rng, M, rho_max, sigma_cap)
    return ProblemInstance(draw_omega(rng, M + 1), rho, "float")


def draw_increasing_instance(rng: random.Random, M: int, rho=None,
                             min_gap: float = 0.2, max_gap: float = 1.4,
                             sigma_cap: int = SIGMA_CAP) -> ProblemInstance:
    """Instance with real parts increasing by a non-integer gap, for the
    real-integral forms (integrability guard wants positive increments)."""
    while True:
        om = [complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.3, 0.3))]
        for _ in range(M):
            om.append(om[-1] + complex(rng.uniform(min_gap, max_gap),
                                       rng.uniform(-0.3, 0.3)))
        ok = True
        for i in range(M + 1):
            for j in range(i + 1, M + 1):
                d = om[i] - om[j]
                if abs(d.imag) < 0.1 and abs(d.real - round(d.real)) < 0.1:
                    ok = False
        if ok:
            break
    if rho is None:
        rho = draw_rho(rng, M, 2, sigma_cap)
    return ProblemInstance(om, rho, "float")


def draw_exact_instance(rng: random.Random, M: int, rho_max: int = 3,
                        sigma_cap: int = 40) -> ProblemInstance:
    """Random rational omega with pairwise non-integer differences."""
    while True:
        om = [Fraction(rng.randint(-12, 12), rng.choice([5, 7, 11, 13]))
              for _ in range(M + 1)]
        if all((om[i] - om[j]).denominator != 1
               for i in range(M + 1) for j in range(i + 1, M + 1)):
            break
    rho = draw_rho(rng, M, rho_max, sigma_cap)
    return ProblemInstance(om, rho, "exact")


def pad(coeffs, n):
    cs = list(coeffs)
    return cs + [0] * (n - len(cs))


def max_abs_dev(a, b) -> float:
    n = max(len(a), len(b))
    return max(float(abs(x - y)) for x, y in zip(pad(a, n), pad(b, n)))


def rel_system_dev(polys_a, polys_b) -> float:
    """Max coefficient deviation across a system, relative to the largest
    coefficient magnitude in either system."""
    scale = max(
        float(abs(c)) for polys in (polys_a, polys_b)
        for p in polys for c in p.coeffs)
    dev = max(max_abs_dev(p.coeffs, q.coeffs)
              for p, q in zip(polys_a, polys_b))
    return dev / scale
