"""Integral representations against the series and closed forms."""

import dataclasses
import math
import random

import pytest

from binpade import (
    ConvergenceError,
    DomainError,
    PoleSeparationError,
    ProblemInstance,
    QuadratureConfig,
    SizeError,
    approximant_contour,
    approximant_explicit,
    approximant_torus,
    auto_radius,
    poly_eval,
    remainder_contour,
    remainder_cube,
    remainder_iterated,
    remainder_series,
    rising_factorial,
    series_eval,
)
from helpers import draw_increasing_instance, draw_instance

PROBES = (0.1, 0.3, 0.5, 0.7)


def long_series(inst):
    # enough tail that the series is a 1e-8-grade reference even at z = 0.7
    return remainder_series(inst, inst.sigma + 80)


class TestRemainderContour:
    def test_matches_series_at_probes(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        g = long_series(inst)
        for z in PROBES:
            ref = series_eval(g, z)
            val = remainder_contour(inst, z)
            assert abs(val - ref) / abs(ref) <= 1e-6

    def test_random_instances_all_probes(self):
        rng = random.Random(41)
        for _ in range(4):
            inst = draw_instance(rng, sigma_cap=7)
            g = long_series(inst)
            for z in PROBES:
                ref = series_eval(g, z)
                val = remainder_contour(inst, z)
                assert abs(val - ref) / abs(ref) <= 1e-6

    def test_zero_at_origin_when_sigma_past_one(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        assert abs(remainder_contour(inst, 0.0)) <= 1e-12

    def test_m0_golden_value(self):
        inst = ProblemInstance([2.0], [1], "float")
        assert remainder_contour(inst, 0.5) == pytest.approx(0.125, rel=1e-10)

    def test_radius_invariance(self):
        inst = ProblemInstance([0.3 + 0.2j, 1.1 - 0.5j], [1, 2], "float")
        v1 = remainder_contour(inst, 0.3)
        bigger = QuadratureConfig(circle_radius=1.5 * auto_radius(inst))
        v2 = remainder_contour(inst, 0.3, bigger)
        assert abs(v1 - v2) / abs(v1) <= 1e-8

    def test_branch_cut_rejected(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        for z in (1.0, 1.5, 2.0 + 0j):
            with pytest.raises(DomainError):
                remainder_contour(inst, z)

    def test_undersized_radius_rejected(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        with pytest.raises(ValueError):
            remainder_contour(inst, 0.3, QuadratureConfig(circle_radius=1.0))

    def test_complex_probe_point(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        g = long_series(inst)
        z = 0.2 + 0.3j
        ref = series_eval(g, z)
        val = remainder_contour(inst, z)
        assert abs(val - ref) / abs(ref) <= 1e-8


class TestApproximantContour:
    def test_matches_polynomial(self):
        rng = random.Random(42)
        for _ in range(4):
            inst = draw_instance(rng, sigma_cap=7)
            for m in range(inst.M + 1):
                ref = poly_eval(approximant_explicit(inst, m), 0.5)
                val = approximant_contour(inst, m, 0.5)
                assert abs(val - ref) / abs(ref) <= 1e-6

    def test_m0_base_case_value(self):
        inst = ProblemInstance([0.6 - 0.9j], [2], "float")
        val = approximant_contour(inst, 0, 0.25)
        assert val == pytest.approx(0.25 ** 2 / 2, rel=1e-10)

    def test_near_one_only_constant_term_survives(self):
        # at z = 1 exactly, H_m(1) collapses to the r = 0 term
        # (1/rho_m!) prod_{k != m} 1/rising(omega_k - omega_m, rho_k + 1);
        # the contour form needs z off the cut so it is checked just inside
        inst = ProblemInstance([0.2 + 0.3j, 1.0 - 0.4j], [2, 1], "float")
        for m in range(2):
            H = approximant_explicit(inst, m)
            r0 = 1.0 / math.factorial(inst.rho[m])
            for k in range(2):
                if k != m:
                    r0 /= rising_factorial(
                        inst.omega[k] - inst.omega[m], inst.rho[k] + 1)
            assert abs(poly_eval(H, 1.0) - r0) <= 1e-12 * abs(r0)
            val = approximant_contour(inst, m, 0.999)
            assert abs(val - poly_eval(H, 0.999)) <= 1e-6 * abs(poly_eval(H, 0.999))

    def test_pole_separation_error(self):
        # valid instance (difference 1e-8 is non-integer at tol 1e-9) whose
        # pole clusters nearly collide
        inst = ProblemInstance([0.0, 1e-8], [0, 0], "float")
        with pytest.raises(PoleSeparationError):
            approximant_contour(inst, 0, 0.5)


class TestApproximantTorus:
    def test_m1_matches_polynomial(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        for m in range(2):
            ref = poly_eval(approximant_explicit(inst, m), 0.5)
            val = approximant_torus(inst, m, 0.5)
            assert abs(val - ref) / abs(ref) <= 1e-5

    def test_m2_matches_polynomial(self):
        inst = ProblemInstance([0.1 + 0.2j, 0.75, 1.4 - 0.3j], [1, 1, 0],
                               "float")
        cfg = QuadratureConfig(contour_nodes=512)
        for m in range(3):
            ref = poly_eval(approximant_explicit(inst, m), 0.5)
            val = approximant_torus(inst, m, 0.5, cfg)
            assert abs(val - ref) / abs(ref) <= 1e-4

    def test_sum_reconstructs_remainder(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        z = 0.5
        total = sum(
            approximant_torus(inst, m, z) * (1 - z) ** complex(inst.omega[m])
            for m in range(2))
        ref = series_eval(long_series(inst), z)
        assert abs(total - ref) / abs(ref) <= 1e-4

    def test_m0_rejected(self):
        inst = ProblemInstance([0.5], [1], "float")
        with pytest.raises(DomainError):
            approximant_torus(inst, 0, 0.5)

    def test_m3_unsupported(self):
        inst = ProblemInstance([0.1, 0.45, 0.8 + 0.5j, 1.2 - 0.7j],
                               [0, 0, 0, 0], "float")
        with pytest.raises(SizeError):
            approximant_torus(inst, 0, 0.5)

    def test_node_doubling_instability_raises(self):
        inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
        starved = QuadratureConfig(contour_nodes=4, rtol=1e-12)
        with pytest.raises(ConvergenceError):
            approximant_torus(inst, 0, 0.5, starved)


class TestRealIntegralForms:
    def test_iterated_m1_matches_series(self):
        inst = ProblemInstance([0.0, 1.5], [1, 1], "float")
        ref = series_eval(long_series(inst), 0.4)
        val = remainder_iterated(inst, 0.4)
        assert abs(val - ref) / abs(ref) <= 1e-6

    def test_iterated_rho_zero_single_integral(self):
        inst = ProblemInstance([0.0, 2.5], [0, 0], "float")
        ref = series_eval(long_series(inst), 0.5)
        val = remainder_iterated(inst, 0.5)
        assert abs(val - ref) / abs(ref) <= 1e-6

    def test_cube_agrees_with_iterated(self):
        rng = random.Random(43)
        for M in (1, 2):
            inst = draw_increasing_instance(rng, M, sigma_cap=8)
            vi = remainder_iterated(inst, 0.4)
            vc = remainder_cube(inst, 0.4)
            assert abs(vi - vc) / abs(vc) <= 1e-6

    def test_cube_m2_matches_series(self):
        inst = ProblemInstance([0.2, 1.0 + 0.4j, 2.3], [1, 1, 1], "float")
        ref = series_eval(long_series(inst), 0.4)
        val = remainder_cube(inst, 0.4)
        assert abs(val - ref) / abs(ref) <= 1e-5

    def test_cube_m3_monte_carlo_within_three_stderr(self):
        inst = ProblemInstance([0.1, 0.8, 1.7, 2.9], [1, 0, 1, 0], "float")
        cfg = QuadratureConfig(mc_samples=400_000, seed=5)
        val, err = remainder_cube(inst, 0.4, cfg, with_stderr=True)
        ref = series_eval(long_series(inst), 0.4)
        assert err is not None and err > 0
        assert abs(val - ref) <= 3 * err

    def test_monte_carlo_deterministic_for_fixed_seed(self):
        inst = ProblemInstance([0.1, 0.8, 1.7, 2.9], [1, 0, 1, 0], "float")
        cfg = QuadratureConfig(mc_samples=50_000, seed=9)
        assert remainder_cube(inst, 0.4, cfg) == remainder_cube(inst, 0.4, cfg)

    def test_small_z_normalization_limit(self):
        inst = ProblemInstance([0.0, 1.5], [1, 1], "float")
        z = 1e-3
        val = remainder_iterated(inst, z)
        lim = val / z ** (inst.sigma - 1)
        expect = 1 / math.factorial(inst.sigma - 1)
        # the limit carries an O(z) correction
        assert abs(lim - expect) / expect <= 5e-3

    def test_integrability_guard(self):
        inst = ProblemInstance([1.5, 0.0], [1, 1], "float")  # decreasing
        with pytest.raises(DomainError):
            remainder_iterated(inst, 0.4)
        with pytest.raises(DomainError):
            remainder_cube(inst, 0.4)

    def test_z_domain_guard(self):
        inst = ProblemInstance([0.0, 1.5], [1, 1], "float")
        for z in (0.0, 1.0, -0.3, 0.4 + 0.1j):
            with pytest.raises(DomainError):
                remainder_iterated(inst, z)


def test_all_forms_agree_at_probe_set():
    # one instance, every applicable form, the standard probe points
    inst = ProblemInstance([0.1, 0.9], [1, 1], "float")
    g = long_series(inst)
    H = [approximant_explicit(inst, m) for m in range(2)]
    for z in PROBES:
        ref = series_eval(g, z)
        assert abs(remainder_contour(inst, z) - ref) / abs(ref) <= 1e-6
        assert abs(remainder_iterated(inst, z) - ref) / abs(ref) <= 1e-6
        assert abs(remainder_cube(inst, z) - ref) / abs(ref) <= 1e-6
        combo = sum(
            approximant_contour(inst, m, z) * (1 - z) ** complex(inst.omega[m])
            for m in range(2))
        assert abs(combo - ref) / abs(ref) <= 1e-5
        for m in range(2):
            hm = poly_eval(H[m], z)
            assert abs(approximant_torus(inst, m, z) - hm) / abs(hm) <= 1e-4


def test_doubling_check_uses_config_tolerance():
    inst = ProblemInstance([0.0, 0.5], [1, 1], "float")
    loose = dataclasses.replace(QuadratureConfig(contour_nodes=4), rtol=10.0)
    # with an absurdly loose gate even 4 nodes "converge"; the value is junk
    # but no exception is raised
    approximant_torus(inst, 0, 0.5, loose)
