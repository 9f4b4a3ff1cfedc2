"""Numerical verification of the integral representations.

Four independent integral forms are evaluated here and compared (by the
tests and the verify command) against the series and closed forms:

- the big-contour form of the remainder (one circle enclosing every
  pole omega_m + r of the integrand),
- the small-circle form of each approximant (circles isolating the pole
  cluster of a single exponent),
- the torus principal-value form of each approximant (one unit circle per
  other exponent, angles in (-pi, pi)),
- the real iterated/simplex integral of the remainder and its unit-cube
  substitution (tensor Gauss-Legendre for M <= 2, Monte Carlo beyond).

Every operation evaluates at its configured node count and again at double
the nodes; if the two disagree beyond ``rtol`` it raises ConvergenceError
instead of returning a silently wrong number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import (
    ConvergenceError,
    DomainError,
    PoleSeparationError,
    SizeError,
)
from .scalars import sin_pi
from .system import ProblemInstance


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts, contour geometry, and sampling parameters.

    ``circle_radius=None`` computes the big-contour radius from the
    instance (max |omega_m + r| + 2, comfortably enclosing every pole).
    ``rtol``/``atol`` gate the node-doubling stability check.
    """

    contour_nodes: int = 2048
    circle_radius: Optional[float] = None
    gauss_nodes_per_dim: int = 64
    mc_samples: int = 1_000_000
    seed: int = 20210521
    rtol: float = 1e-4
    atol: float = 1e-14


DEFAULT_CONFIG = QuadratureConfig()


def _poles(inst: ProblemInstance) -> list:
    return [complex(inst.omega[m]) + r
            for m in range(inst.M + 1) for r in range(inst.rho[m] + 1)]


def auto_radius(inst: ProblemInstance) -> float:
    """Big-contour radius enclosing all poles with margin 2."""
    return max(abs(p) for p in _poles(inst)) + 2.0


def _check_doubling(coarse: complex, fine: complex, cfg: QuadratureConfig,
                    what: str) -> complex:
    if abs(fine - coarse) > cfg.rtol * abs(fine) + cfg.atol:
        raise ConvergenceError(
            "%s changed by %.3e under node doubling (rtol %.1e)"
            % (what, abs(fine - coarse), cfg.rtol))
    return fine


def _falling_products(xi: np.ndarray, inst: ProblemInstance) -> np.ndarray:
    # prod_k falling(xi - omega_k, rho_k + 1), vectorized over nodes
    out = np.ones_like(xi)
    for m in range(inst.M + 1):
        w = complex(inst.omega[m])
        for j in range(inst.rho[m] + 1):
            out = out * (xi - (w + j))
    return out


def _circle_integral(inst: ProblemInstance, z: complex, center: complex,
                     radius: float, nodes: int, omega_shift: complex
                     ) -> complex:
    # (1/2 pi i) contour integral of (1-z)^(xi - omega_shift) / prod falling
    # over the circle; the trapezoid weight xi'/(2 pi i) reduces to
    # (xi - center)/nodes
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    offs = radius * np.exp(1j * theta)
    xi = center + offs
    log1z = np.log(complex(1.0) - complex(z))  # principal branch
    f = np.exp((xi - omega_shift) * log1z) / _falling_products(xi, inst)
    val = np.sum(f * offs) / nodes
    return complex(val)


def _sign_sigma(inst: ProblemInstance) -> float:
    return -1.0 if (inst.sigma - 1) % 2 else 1.0


def _reject_cut(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise DomainError(
            "z = %r lies on the branch cut [1, inf)" % (z,))
    return z


def remainder_contour(inst: ProblemInstance, z: complex,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Remainder G(z) as a single contour integral on a large circle.

    Integrand: (-1)^(sigma-1) (1-z)^xi / prod_k falling(xi-omega_k, rho_k+1),
    with the circle enclosing all sigma poles omega_m + r.
    """
    z = _reject_cut(z)
    radius = cfg.circle_radius
    if radius is None:
        radius = auto_radius(inst)
    else:
        worst = max(abs(p) for p in _poles(inst))
        if radius <= worst + 1.0:
            raise ValueError(
                "circle_radius %.3g too small: poles reach |xi| = %.3g"
                % (radius, worst))
    sign = _sign_sigma(inst)
    coarse = sign * _circle_integral(inst, z, 0.0, radius, cfg.contour_nodes, 0.0)
    fine = sign * _circle_integral(inst, z, 0.0, radius, 2 * cfg.contour_nodes, 0.0)
    return _check_doubling(coarse, fine, cfg, "remainder contour integral")


def approximant_contour(inst: ProblemInstance, m: int, z: complex,
                        cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """H_m(z) as a sum of small-circle integrals around the poles omega_m + r.

    Each circle's radius is a quarter of the distance from its pole to the
    nearest other pole, keeping every other pole well outside.
    """
    z = _reject_cut(z)
    poles = _poles(inst)
    mine = [complex(inst.omega[m]) + r for r in range(inst.rho[m] + 1)]
    sign = _sign_sigma(inst)
    w_m = complex(inst.omega[m])
    total_coarse = 0.0j
    total_fine = 0.0j
    for p in mine:
        others = [q for q in poles if q != p]
        if others:
            gap = min(abs(p - q) for q in others)
            radius = gap / 4.0
            if radius < 1e-8 * (1.0 + abs(p)):
                raise PoleSeparationError(
                    "pole %r is only %.3e away from its nearest neighbour"
                    % (p, gap))
        else:
            radius = 1.0  # a lone pole needs no isolation
        total_coarse += _circle_integral(inst, z, p, radius,
                                         cfg.contour_nodes, w_m)
        total_fine += _circle_integral(inst, z, p, radius,
                                       2 * cfg.contour_nodes, w_m)
    return _check_doubling(sign * total_coarse, sign * total_fine, cfg,
                           "approximant contour integral")


def _torus_value(inst: ProblemInstance, m: int, z: complex, nodes: int
                 ) -> complex:
    om = [complex(w) for w in inst.omega]
    rho = inst.rho
    others = [k for k in range(inst.M + 1) if k != m]
    h = 2.0 * np.pi / nodes
    theta = -np.pi + (np.arange(nodes) + 0.5) * h  # strictly inside (-pi, pi)
    t = np.exp(1j * theta)
    # per-circle factor: t^omega_k (1+t)^rho_k t^(-omega_m-1) * i t (measure)
    factors = []
    for k in others:
        f = (np.exp(1j * theta * (om[k] - om[m] - 1.0))
             * (1.0 + t) ** rho[k] * 1j * t)
        factors.append(f)
    sgn = -1.0 if inst.M % 2 else 1.0
    y = sgn * (1.0 - complex(z))
    if inst.M == 1:
        integrand = factors[0] * (1.0 - y / t) ** rho[m]
        total = np.sum(integrand)
    else:  # M == 2: row-by-row to keep memory flat
        f0, f1 = factors
        total = 0.0j
        for i in range(nodes):
            tm = t[i] * t
            integrand = f0[i] * f1 * (1.0 - y / tm) ** rho[m]
            total += np.sum(integrand)
    q = complex(1.0)
    for k in others:
        q = q / (2j * sin_pi(om[k] - om[m]))
    return q / inst.rho_factorial * (h ** inst.M) * complex(total)


def approximant_torus(inst: ProblemInstance, m: int, z: complex,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """H_m(z) as the principal-value integral over M unit circles.

    Each circle variable t_k (k != m) is parameterized by an angle in
    (-pi, pi) and the complex powers t_k^w are taken as exp(i theta w),
    matching the principal-value prescription.  Tensor-product trapezoid on
    the offset angular grid; supported for M in {1, 2}.
    """
    if inst.M < 1:
        raise DomainError("the torus form needs M >= 1")
    if inst.M > 2:
        raise SizeError(
            "tensor-product torus quadrature is limited to M <= 2 "
            "(node count grows as nodes**M)")
    coarse = _torus_value(inst, m, z, cfg.contour_nodes)
    fine = _torus_value(inst, m, z, 2 * cfg.contour_nodes)
    return _check_doubling(coarse, fine, cfg, "torus integral")


def _require_real_unit(z) -> float:
    z = complex(z)
    if z.imag != 0.0 or not (0.0 < z.real < 1.0):
        raise DomainError("this form is evaluated for real z in (0, 1), got %r" % (z,))
    return z.real


def _check_increments(inst: ProblemInstance) -> None:
    for h in range(1, inst.M + 1):
        d = complex(inst.omega[h]) - complex(inst.omega[h - 1])
        if not d.real > 0.0:
            raise DomainError(
                "integrability guard: Re(omega_%d - omega_%d) = %.3g must be "
                "positive for the real-integral forms" % (h, h - 1, d.real))


def _gauss(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _iterated_value(inst: ProblemInstance, z: float, n: int) -> complex:
    om = [complex(w) for w in inst.omega]
    rho = inst.rho
    x, w = _gauss(n)
    pref = np.exp(om[0] * math.log1p(-z)) / inst.rho_factorial
    if inst.M == 1:
        t1 = 0.5 * z * (x + 1.0)
        wt = 0.5 * z * w
        g = (t1 ** rho[1]
             * ((z - t1) / (1.0 - t1)) ** rho[0]
             * np.exp((om[1] - om[0] - 1.0) * np.log(1.0 - t1)))
        return complex(pref * np.sum(wt * g))
    # M == 2, nested simplex 0 <= t2 <= t1 <= z
    t1 = 0.5 * z * (x + 1.0)
    w1 = 0.5 * z * w
    total = 0.0j
    for i in range(n):
        a = t1[i]
        t2 = 0.5 * a * (x + 1.0)
        w2 = 0.5 * a * w
        g = (t2 ** rho[2]
             * ((z - a) / (1.0 - a)) ** rho[0]
             * ((a - t2) / (1.0 - t2)) ** rho[1]
             * np.exp((om[1] - om[0] - 1.0) * np.log(1.0 - a))
             * np.exp((om[2] - om[1] - 1.0) * np.log(1.0 - t2)))
        total += w1[i] * np.sum(w2 * g)
    return complex(pref * total)


def remainder_iterated(inst: ProblemInstance, z: complex,
                       cfg: QuadratureConfig = DEFAULT_CONFIG) -> complex:
    """Remainder G(z) as the nested real integral over the simplex
    0 <= t_M <= ... <= t_1 <= z (supported for M in {1, 2}).
    """
    if inst.M not in (1, 2):
        raise DomainError("the iterated real form is implemented for M in {1, 2}")
    zr = _require_real_unit(z)
    _check_increments(inst)
    n = cfg.gauss_nodes_per_dim
    coarse = _iterated_value(inst, zr, n)
    fine = _iterated_value(inst, zr, 2 * n)
    return _check_doubling(coarse, fine, cfg, "iterated simplex integral")


def _cube_integrand(inst: ProblemInstance, z: float, u: np.ndarray
                    ) -> np.ndarray:
    # u has shape (samples, M); returns the integrand without the
    # z^(sigma-1) (1-z)^omega_0 / rho! prefactor
    om = [complex(w) for w in inst.omega]
    rho = inst.rho
    M = inst.M
    U = np.cumprod(u, axis=1)
    out = np.ones(u.shape[0], dtype=complex)
    for h in range(1, M + 1):
        Uh = U[:, h - 1]
        # U_M^{-1} cancels one power of U_M: exponent 1+rho_h except rho_M
        expo = rho[h] if h == M else 1 + rho[h]
        out = out * Uh ** expo
        out = out * ((1.0 - u[:, h - 1]) / (1.0 - z * Uh)) ** rho[h - 1]
        out = out * np.exp((om[h] - om[h - 1] - 1.0) * np.log(1.0 - z * Uh))
    return out


def _cube_gauss(inst: ProblemInstance, z: float, n: int) -> complex:
    x, w = _gauss(n)
    u1 = 0.5 * (x + 1.0)
    w1 = 0.5 * w
    if inst.M == 1:
        pts = u1.reshape(-1, 1)
        wts = w1
    else:
        a, b = np.meshgrid(u1, u1, indexing="ij")
        pts = np.column_stack([a.ravel(), b.ravel()])
        wts = np.outer(w1, w1).ravel()
    vals = _cube_integrand(inst, z, pts)
    return complex(np.sum(wts * vals))


def remainder_cube(inst: ProblemInstance, z: complex,
                   cfg: QuadratureConfig = DEFAULT_CONFIG,
                   with_stderr: bool = False):
    """Remainder G(z) as an integral over the unit cube [0,1]^M.

    Tensor Gauss-Legendre for M <= 2; seeded Monte Carlo with a reported
    standard error for M >= 3 (pass ``with_stderr=True`` to receive the
    pair ``(value, stderr)``; the Gauss path reports ``stderr=None``).
    """
    if inst.M < 1:
        raise DomainError("the cube form needs M >= 1")
    zr = _require_real_unit(z)
    _check_increments(inst)
    pref = (zr ** (inst.sigma - 1)
            * np.exp(complex(inst.omega[0]) * math.log1p(-zr))
            / inst.rho_factorial)
    if inst.M <= 2:
        n = cfg.gauss_nodes_per_dim
        coarse = pref * _cube_gauss(inst, zr, n)
        fine = pref * _cube_gauss(inst, zr, 2 * n)
        val = _check_doubling(complex(coarse), complex(fine), cfg,
                              "cube integral")
        return (val, None) if with_stderr else val
    rng = np.random.default_rng(cfg.seed)
    u = rng.random((cfg.mc_samples, inst.M))
    vals = _cube_integrand(inst, zr, u)
    mean = np.mean(vals)
    var = (np.var(vals.real) + np.var(vals.imag)) / cfg.mc_samples
    val = complex(pref * mean)
    stderr = abs(pref) * math.sqrt(var)
    return (val, stderr) if with_stderr else val
