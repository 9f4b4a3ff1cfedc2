"""Command-line front end.

Subcommands:

- ``compute``: emit the approximant coefficients and the remainder series
  for an instance document.
- ``verify``: run every applicable cross-check (closed forms against the
  linear-solve oracle and each other, vanishing order, series identity,
  degree-reduction operator, symmetries, quadrature forms) and emit a
  machine-readable report.  Exit 0 iff everything passed.
- ``perfect``: evaluate the shift-family hypotheses and the determinant
  monomiality test.
- ``quad``: probe one integral form at a point.

Exit codes: 0 success, 1 verification failure, 2 input error.  The env var
``PADE_LOG`` in {quiet, info, debug} controls diagnostic verbosity on
stderr; the JSON written to stdout (or ``--output``) is byte-identical
across runs for a fixed input and seed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from .document import InstanceDocument, VerificationReport
from .errors import InstanceError, PadeError
from .perfection import EpsilonFamily, determinant_test, hypothesis_report
from .quadrature import (
    QuadratureConfig,
    approximant_contour,
    approximant_torus,
    remainder_contour,
    remainder_cube,
    remainder_iterated,
)
from .series import apply_d_omega, poly_eval, series_eval, series_order
from .system import (
    ProblemInstance,
    approximant_explicit,
    approximant_gamma_form,
    approximant_hypergeometric,
    check_symmetries,
    default_truncation,
    oracle_linear_solve,
    polynomial_gcd,
    remainder_from_approximants,
    remainder_series,
)

log = logging.getLogger("binpade")

_PROBE_POINTS = (0.1, 0.3, 0.5, 0.7)


def _encode_scalar(value, mode: str):
    if mode == "exact":
        return str(Fraction(value))
    z = complex(value)
    return [z.real, z.imag]


def _encode_coeffs(coeffs, mode: str):
    return [_encode_scalar(c, mode) for c in coeffs]


def _parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise InstanceError(
            "cannot parse %r as a complex literal like '0.3+0.1i'" % (text,)
        ) from exc


def _rel_dev_polys(a, b) -> float:
    """Max coefficient deviation between two polynomial lists, relative to
    the largest coefficient magnitude across both systems."""
    scale = 0.0
    dev = 0.0
    for p, q in zip(a, b):
        n = max(len(p.coeffs), len(q.coeffs))
        for i in range(n):
            x = p.coeffs[i] if i < len(p.coeffs) else 0
            y = q.coeffs[i] if i < len(q.coeffs) else 0
            scale = max(scale, float(abs(x)), float(abs(y)))
            dev = max(dev, float(abs(x - y)))
    return dev / scale if scale > 0 else dev


def run_verification(inst: ProblemInstance,
                     truncation: Optional[int] = None,
                     tol: Optional[float] = None,
                     cfg: QuadratureConfig = QuadratureConfig()
                     ) -> VerificationReport:
    """Run the full cross-check suite on one instance.

    ``tol`` overrides the closed-form comparison tolerance (default 1e-8);
    the remaining thresholds are fixed properties of each check.
    """
    report = VerificationReport()
    n = default_truncation(inst) if truncation is None else truncation
    h_tol = 1e-8 if tol is None else tol
    s = inst.sigma

    def timed(name, fn):
        t0 = time.perf_counter()
        try:
            fn()
        except PadeError as exc:
            report.add(name, "fail", note="%s: %s" % (type(exc).__name__, exc))
        log.info("check %-28s %.3f s", name, time.perf_counter() - t0)

    if inst.mode == "float" and s > 40:
        report.warnings.append(
            "sigma = %d > 40: float-mode results may lose accuracy to "
            "factorial-ratio cancellation" % s)

    explicit = [approximant_explicit(inst, m) for m in range(inst.M + 1)]

    def closed_vs_oracle():
        oracle = oracle_linear_solve(inst).H
        dev = _rel_dev_polys(explicit, oracle)
        report.add("closed-form-vs-oracle", "pass" if dev <= h_tol else "fail", dev)

    timed("closed-form-vs-oracle", closed_vs_oracle)

    def vs_hypergeometric():
        hyp = [approximant_hypergeometric(inst, m) for m in range(inst.M + 1)]
        dev = _rel_dev_polys(explicit, hyp)
        report.add("explicit-vs-hypergeometric",
                   "pass" if dev <= h_tol else "fail", dev)

    timed("explicit-vs-hypergeometric", vs_hypergeometric)

    if inst.mode == "float":
        def vs_gamma():
            gam = [approximant_gamma_form(inst, m) for m in range(inst.M + 1)]
            dev = _rel_dev_polys(explicit, gam)
            report.add("explicit-vs-gamma-form",
                       "pass" if dev <= h_tol else "fail", dev)

        timed("explicit-vs-gamma-form", vs_gamma)
    else:
        report.add("explicit-vs-gamma-form", "skipped",
                   note="gamma form needs float mode")

    def degrees():
        bad = [m for m in range(inst.M + 1)
               if explicit[m].degree != inst.rho[m]]
        report.add("degree-exactness", "pass" if not bad else "fail",
                   note="" if not bad else "wrong degree at m=%r" % bad)

    timed("degree-exactness", degrees)

    g_from_h = remainder_from_approximants(inst, n)
    g_direct = remainder_series(inst, n)

    def vanishing():
        scale = max(float(abs(c)) for c in g_from_h.coeffs)
        order = series_order(g_from_h, 1e-9 * scale)
        ok = order == s - 1
        report.add("vanishing-order", "pass" if ok else "fail",
                   note="measured order %r, expected %d" % (order, s - 1))
        resid = float(abs(g_from_h.coeffs[s - 1] * math.factorial(s - 1) - 1))
        report.add("normalization", "pass" if resid <= 1e-9 else "fail", resid)

    timed("vanishing-order", vanishing)

    def series_identity():
        dev = max(float(abs(a - b))
                  for a, b in zip(g_direct.coeffs, g_from_h.coeffs))
        report.add("series-identity", "pass" if dev <= 1e-9 else "fail", dev)

    timed("series-identity", series_identity)

    def d_omega():
        lhs = apply_d_omega(g_direct, inst.omega[0])
        if inst.rho[0] > 0:
            reduced = inst.replace(
                omega=(inst.omega[0] + 1,) + inst.omega[1:],
                rho=(inst.rho[0] - 1,) + inst.rho[1:])
            branch = "d-omega-step"
        elif inst.M >= 1:
            reduced = inst.replace(omega=inst.omega[1:], rho=inst.rho[1:])
            branch = "d-omega-drop"
        else:
            report.add("d-omega-step", "skipped",
                       note="M=0 with rho_0=0 leaves nothing to reduce")
            return
        rhs = remainder_series(reduced, n - 1)
        dev = max(float(abs(a - b))
                  for a, b in zip(lhs.coeffs, rhs.coeffs))
        report.add(branch, "pass" if dev <= 1e-8 else "fail", dev)

    timed("d-omega", d_omega)

    def symmetry():
        perm = tuple(range(1, inst.M + 1)) + (0,)  # rotation
        alpha = Fraction(1) if inst.mode == "exact" else 1.0
        res = check_symmetries(inst, alpha, perm, n)
        dev = max(res.values())
        report.add("symmetry", "pass" if dev <= 1e-10 else "fail", dev,
                   note="permutation %.2e, shift_H %.2e, shift_G %.2e"
                        % (res["permutation"], res["shift_H"], res["shift_G"]))

    timed("symmetry", symmetry)

    if inst.mode == "exact":
        def gcd_check():
            g = polynomial_gcd(explicit)
            ok = g.degree == 0 and g.coeffs[0] != 0
            report.add("no-common-root-gcd", "pass" if ok else "fail",
                       note="gcd degree %d" % g.degree)

        timed("no-common-root-gcd", gcd_check)
    else:
        report.add("no-common-root-gcd", "skipped", note="exact mode only")

    if inst.mode != "float":
        report.add("quadrature", "skipped", note="float mode only")
        return report
    if inst.M > 2:
        report.add("quadrature", "skipped", note="quadrature checks run for M <= 2")
        return report

    g_long = remainder_series(inst, s + 64)

    def contour_remainder():
        dev = 0.0
        for z in _PROBE_POINTS:
            ref = series_eval(g_long, z)
            val = remainder_contour(inst, z, cfg)
            dev = max(dev, abs(val - ref) / abs(ref))
        report.add("contour-remainder", "pass" if dev <= 1e-6 else "fail", dev)

    timed("contour-remainder", contour_remainder)

    def contour_approximant():
        dev = 0.0
        for m in range(inst.M + 1):
            ref = poly_eval(explicit[m], 0.5)
            val = approximant_contour(inst, m, 0.5, cfg)
            dev = max(dev, abs(val - ref) / abs(ref))
        report.add("contour-approximant", "pass" if dev <= 1e-6 else "fail", dev)

    timed("contour-approximant", contour_approximant)

    if inst.M >= 1:
        def torus():
            nodes = min(cfg.contour_nodes, 2048 if inst.M == 1 else 512)
            tcfg = dataclasses.replace(cfg, contour_nodes=nodes)
            dev = 0.0
            for m in range(inst.M + 1):
                ref = poly_eval(explicit[m], 0.5)
                val = approximant_torus(inst, m, 0.5, tcfg)
                dev = max(dev, abs(val - ref) / abs(ref))
            report.add("torus-approximant", "pass" if dev <= 1e-4 else "fail", dev)

        timed("torus-approximant", torus)

        increments_ok = all(
            (complex(inst.omega[h]) - complex(inst.omega[h - 1])).real > 0
            for h in range(1, inst.M + 1))
        if increments_ok:
            def real_integrals():
                z = 0.4
                ref = series_eval(g_long, z)
                vi = remainder_iterated(inst, z, cfg)
                vc = remainder_cube(inst, z, cfg)
                dev = max(abs(vi - ref) / abs(ref), abs(vc - vi) / abs(ref))
                report.add("iterated-and-cube",
                           "pass" if dev <= 1e-6 else "fail", dev)

            timed("iterated-and-cube", real_integrals)
        else:
            report.add("iterated-and-cube", "skipped",
                       note="needs Re(omega_h - omega_{h-1}) > 0 along the "
                            "given ordering")
    else:
        report.add("torus-approximant", "skipped", note="needs M >= 1")
        report.add("iterated-and-cube", "skipped", note="needs M >= 1")

    return report


def _load_document(args) -> InstanceDocument:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InstanceError("cannot read %s: %s" % (args.input, exc)) from exc
    doc = InstanceDocument.from_json(text)
    if getattr(args, "mode", None):
        doc.mode = args.mode
    return doc


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    doc = _load_document(args)
    inst = doc.instance()
    n = doc.truncation(args.truncation)
    n = default_truncation(inst) if n is None else n
    polys = [approximant_explicit(inst, m) for m in range(inst.M + 1)]
    g = remainder_series(inst, n)
    _emit(args, {
        "mode": inst.mode,
        "sigma": inst.sigma,
        "truncation": n,
        "H": [_encode_coeffs(p.coeffs, inst.mode) for p in polys],
        "G": _encode_coeffs(g.coeffs, inst.mode),
    })
    return 0


def cmd_verify(args) -> int:
    doc = _load_document(args)
    inst = doc.instance()
    cfg = doc.quadrature_config(args.seed)
    report = run_verification(inst, doc.truncation(args.truncation),
                              doc.tolerance(args.tol), cfg)
    _emit(args, report.to_dict())
    if not report.passed:
        worst = report.worst_residual()
        print("verification FAILED%s" %
              ("" if worst is None else " (worst residual %.3e)" % worst),
              file=sys.stderr)
        return 1
    return 0


def cmd_perfect(args) -> int:
    doc = _load_document(args)
    if doc.epsilon is None:
        raise InstanceError("the 'perfect' command needs an 'epsilon' field")
    inst = doc.instance()
    fam = EpsilonFamily(doc.epsilon)
    tol = doc.tolerance(args.tol)
    det = determinant_test(inst, fam, 1e-7 if tol is None else tol)
    payload = hypothesis_report(fam)
    payload["determinant"] = {
        "is_monomial": det["is_monomial"],
        "exponent": det["exponent"],
        "C": None if det["C"] is None else _encode_scalar(det["C"], inst.mode),
        "residual": det["residual"],
    }
    expected = inst.sigma + fam.T - 1
    payload["expected_exponent"] = expected if fam.hypothesis_satisfied else None
    _emit(args, payload)
    if fam.hypothesis_satisfied and (
            not det["is_monomial"] or det["exponent"] != expected):
        print("perfect-system check FAILED: hypotheses hold but the "
              "determinant is not the predicted monomial", file=sys.stderr)
        return 1
    return 0


def cmd_quad(args) -> int:
    doc = _load_document(args)
    inst = doc.instance()
    if inst.mode != "float":
        raise InstanceError("quadrature probes need a float-mode document")
    cfg = doc.quadrature_config(args.seed)
    z = _parse_complex(args.probe)
    stderr = None
    if args.form == "contour":
        value = remainder_contour(inst, z, cfg)
    elif args.form == "approximant-contour":
        value = approximant_contour(inst, args.index, z, cfg)
    elif args.form == "torus":
        value = approximant_torus(inst, args.index, z, cfg)
    elif args.form == "iterated":
        value = remainder_iterated(inst, z, cfg)
    else:  # cube
        value, stderr = remainder_cube(inst, z, cfg, with_stderr=True)
    payload = {
        "form": args.form,
        "z": [z.real, z.imag],
        "value": [value.real, value.imag],
    }
    if args.form in ("torus", "approximant-contour"):
        payload["index"] = args.index
    if stderr is not None:
        payload["stderr"] = stderr
    _emit(args, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binpade",
        description="Multidimensional Pade approximants of binomial "
                    "functions: compute, cross-verify, and test "
                    "perfect-system determinants.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True,
                       help="instance document (JSON); '-' for stdin")
        p.add_argument("--output", help="write the result here instead of stdout")
        p.add_argument("--truncation", type=int,
                       help="series truncation order override")
        p.add_argument("--tol", type=float, help="tolerance override")
        p.add_argument("--seed", type=int, help="quadrature RNG seed override")
        p.add_argument("--mode", choices=("float", "exact"),
                       help="override the document's mode field")

    p = sub.add_parser("compute", help="emit approximants and remainder series")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run the full cross-check suite")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("perfect", help="shift-family determinant test")
    common(p)
    p.set_defaults(func=cmd_perfect)

    p = sub.add_parser("quad", help="probe one integral form at a point")
    common(p)
    p.add_argument("--probe", required=True,
                   help="evaluation point, a complex literal like '0.3+0.1i'")
    p.add_argument("--form", default="contour",
                   choices=("contour", "approximant-contour", "torus",
                            "iterated", "cube"))
    p.add_argument("--index", type=int, default=0,
                   help="approximant index m for the torus/small-circle forms")
    p.set_defaults(func=cmd_quad)
    return parser


def _init_logging() -> None:
    level = {"quiet": logging.ERROR, "info": logging.INFO,
             "debug": logging.DEBUG}.get(
        os.environ.get("PADE_LOG", ""), logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _init_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except PadeError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
