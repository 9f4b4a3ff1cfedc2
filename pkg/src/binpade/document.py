"""Instance documents and verification reports (the file formats of the CLI).

An instance document is a JSON object:

    {
      "omega": [0, "1/3", [0.2, 0.1]],   # number | "p/q" string | [re, im]
      "rho": [1, 1, 2],
      "mode": "float",                    # or "exact"
      "options": {"truncation": 24, "tol": 1e-8,
                  "quadrature": {"contour_nodes": 2048, "seed": 7}},
      "epsilon": [[1,0,0],[0,1,0],[0,0,1]]   # optional, for `perfect`
    }

Exact mode requires every omega entry to be an integer or a rational
string.  Float mode accepts all three spellings; rational strings are
parsed to the nearest double with a warning.  Documents round-trip
losslessly through ``to_json``/``from_json``.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InstanceError
from .quadrature import QuadratureConfig
from .system import ProblemInstance

log = logging.getLogger("binpade")


def _check_omega_entry(entry, index: int, mode: str):
    if isinstance(entry, bool):
        raise InstanceError("omega[%d]: booleans are not numbers" % index)
    if isinstance(entry, (int, float)):
        return entry
    if isinstance(entry, str):
        try:
            Fraction(entry)
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(
                "omega[%d]: %r is not a rational p/q string" % (index, entry)
            ) from exc
        return entry
    if isinstance(entry, (list, tuple)):
        if mode == "exact":
            raise InstanceError(
                "omega[%d]: [re, im] pairs are not representable in exact "
                "mode" % index)
        if len(entry) != 2 or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool)
                for x in entry):
            raise InstanceError(
                "omega[%d]: a pair must be two numbers [re, im]" % index)
        return tuple(entry)
    raise InstanceError(
        "omega[%d]: unsupported entry %r (use a number, a rational string, "
        "or an [re, im] pair)" % (index, entry))


@dataclass
class InstanceDocument:
    """Parsed instance file: raw omega spellings plus options."""

    omega: tuple
    rho: tuple
    mode: str = "float"
    options: dict = field(default_factory=dict)
    epsilon: Optional[tuple] = None

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceDocument":
        if not isinstance(data, dict):
            raise InstanceError("document must be a JSON object")
        unknown = set(data) - {"omega", "rho", "mode", "options", "epsilon"}
        if unknown:
            raise InstanceError("unknown document fields: %s"
                                % ", ".join(sorted(unknown)))
        try:
            omega_raw = data["omega"]
            rho_raw = data["rho"]
        except KeyError as exc:
            raise InstanceError("document needs field %s" % exc) from exc
        mode = data.get("mode", "float")
        if mode not in ("float", "exact"):
            raise InstanceError("mode must be 'float' or 'exact', got %r" % (mode,))
        if not isinstance(omega_raw, list) or not isinstance(rho_raw, list):
            raise InstanceError("omega and rho must be lists")
        if len(omega_raw) != len(rho_raw):
            raise InstanceError(
                "omega has %d entries but rho has %d"
                % (len(omega_raw), len(rho_raw)))
        omega = tuple(_check_omega_entry(w, i, mode)
                      for i, w in enumerate(omega_raw))
        rho = []
        for i, r in enumerate(rho_raw):
            if not isinstance(r, int) or isinstance(r, bool) or r < 0:
                raise InstanceError(
                    "rho[%d]: need a nonnegative integer, got %r" % (i, r))
            rho.append(r)
        options = data.get("options", {})
        if not isinstance(options, dict):
            raise InstanceError("options must be an object")
        epsilon = data.get("epsilon")
        if epsilon is not None:
            if (not isinstance(epsilon, list)
                    or any(not isinstance(row, list) for row in epsilon)):
                raise InstanceError("epsilon must be a list of integer rows")
            epsilon = tuple(tuple(int(x) for x in row) for row in epsilon)
        return cls(omega, tuple(rho), mode, dict(options), epsilon)

    @classmethod
    def from_json(cls, text: str) -> "InstanceDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError("invalid JSON at line %d column %d: %s"
                                % (exc.lineno, exc.colno, exc.msg)) from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {
            "omega": [list(w) if isinstance(w, tuple) else w
                      for w in self.omega],
            "rho": list(self.rho),
            "mode": self.mode,
        }
        if self.options:
            out["options"] = self.options
        if self.epsilon is not None:
            out["epsilon"] = [list(row) for row in self.epsilon]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def instance(self) -> ProblemInstance:
        entries = []
        for w in self.omega:
            if self.mode == "float" and isinstance(w, str):
                warnings.warn(
                    "rational string %r parsed to the nearest double in "
                    "float mode" % (w,))
                entries.append(float(Fraction(w)))
            elif isinstance(w, tuple):
                entries.append(complex(w[0], w[1]))
            else:
                entries.append(w)
        return ProblemInstance(entries, self.rho, self.mode)

    def truncation(self, override: Optional[int] = None) -> Optional[int]:
        if override is not None:
            return override
        value = self.options.get("truncation")
        return None if value is None else int(value)

    def tolerance(self, override: Optional[float] = None) -> Optional[float]:
        if override is not None:
            return override
        value = self.options.get("tol")
        return None if value is None else float(value)

    def quadrature_config(self, seed: Optional[int] = None) -> QuadratureConfig:
        raw = dict(self.options.get("quadrature", {}))
        known = {f.name for f in dataclasses.fields(QuadratureConfig)}
        unknown = set(raw) - known
        if unknown:
            raise InstanceError("unknown quadrature options: %s"
                                % ", ".join(sorted(unknown)))
        if seed is not None:
            raw["seed"] = seed
        return QuadratureConfig(**raw)


@dataclass
class CheckResult:
    """One verification check: name, pass/fail/skipped, measured residual."""

    name: str
    status: str  # pass | fail | skipped
    residual: Optional[float] = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.residual is not None:
            out["residual"] = self.residual
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    """Outcome of a verification run; deterministic for a fixed document.

    Wall-clock timings are logged at info level rather than embedded here,
    so the serialized report is byte-identical across runs.
    """

    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def add(self, name: str, status: str, residual: Optional[float] = None,
            note: str = "") -> None:
        self.checks.append(CheckResult(name, status, residual, note))

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def worst_residual(self) -> Optional[float]:
        failing = [c.residual for c in self.checks
                   if c.status == "fail" and c.residual is not None]
        return max(failing) if failing else None

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
