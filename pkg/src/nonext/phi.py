"""Candidate normalizing functions phi(q) and their validation.

The entropy family ``(1 - sum p_i^q) / phi(q)`` is well behaved when phi

  (i)   is positive for q > 1 and negative for q < 1,
  (ii)  is differentiable in q,
  (iii) has derivative tending to 1 as q -> 1,
  (iv)  vanishes at q = 1 and nowhere else.

These are limit statements, so :func:`validate_phi` checks them on a
finite q grid with tolerances.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import BadGridError, InvalidQError, NonFinitePhiError, UnknownPhiError

LN2 = math.log(2.0)

DERIVATIVE_TOL = 1e-3
ZERO_TOL = 1e-9


def validate_q(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or q <= 0.0:
        raise InvalidQError(f"q must be finite and > 0, got {q!r}")
    return q


@dataclass(frozen=True)
class PhiSpec:
    name: str
    eval: Callable[[float], float]
    analytic_derivative: Optional[Callable[[float], float]] = None

    def __call__(self, q: float) -> float:
        return self.eval(q)


def _tsallis(q):
    return q - 1.0


def _cubic(q):
    return (q - 1.0) * (q * q + 1.0) / 2.0


def _cubic_prime(q):
    return (3.0 * q * q - 2.0 * q + 1.0) / 2.0


def _havrda_charvat(q):
    # 1 - 2^(1-q) without cancellation near q = 1
    return -math.expm1((1.0 - q) * LN2)


def _havrda_charvat_prime(q):
    return LN2 * math.exp((1.0 - q) * LN2)


_BUILTINS = {
    "tsallis": PhiSpec("tsallis", _tsallis, lambda q: 1.0),
    "cubic": PhiSpec("cubic", _cubic, _cubic_prime),
    "havrda_charvat": PhiSpec("havrda_charvat", _havrda_charvat, _havrda_charvat_prime),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin_phi(name: str) -> PhiSpec:
    """Look up one of ``tsallis`` (q-1), ``cubic`` ((q-1)(q^2+1)/2) or
    ``havrda_charvat`` (1 - 2^(1-q))."""
    try:
        return _BUILTINS[name]
    except KeyError:
        raise UnknownPhiError(
            f"unknown phi {name!r}; expected one of {', '.join(BUILTIN_NAMES)}"
        ) from None


def poly_phi(coeffs: Sequence[float], name: Optional[str] = None) -> PhiSpec:
    """phi(q) = (q - 1) * P(q), P given by ascending coefficients ``c0 + c1 q + ...``.

    The factor (q - 1) makes phi(1) = 0 by construction.
    """
    c = tuple(float(x) for x in coeffs)
    if not c:
        raise ValueError("polynomial needs at least one coefficient")
    if not all(math.isfinite(x) for x in c):
        raise NonFinitePhiError(f"non-finite polynomial coefficient in {c}")
    dc = tuple(k * c[k] for k in range(1, len(c)))

    def horner(cs, q):
        acc = 0.0
        for x in reversed(cs):
            acc = acc * q + x
        return acc

    def f(q):
        return (q - 1.0) * horner(c, q)

    def fprime(q):
        return horner(c, q) + (q - 1.0) * horner(dc, q)

    label = name or "poly(" + ",".join(repr(x) for x in c) + ")"
    return PhiSpec(label, f, fprime)


def _checked(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise NonFinitePhiError(f"{what} is not finite: {value!r}")
    return value


def default_step(q: float) -> float:
    return 1e-6 * max(1.0, abs(q))


def central_difference(spec: PhiSpec, q: float, h: Optional[float] = None) -> float:
    h = default_step(q) if h is None else h
    if q - h <= 0.0:
        raise InvalidQError(f"step {h} leaves the domain q > 0 at q={q}")
    return _checked((spec.eval(q + h) - spec.eval(q - h)) / (2.0 * h), f"phi'({q})")


def phi_derivative(spec: PhiSpec, q: float, h: Optional[float] = None) -> float:
    """Analytic derivative when the PhiSpec carries one, else a central difference."""
    q = validate_q(q)
    if spec.analytic_derivative is not None:
        return _checked(spec.analytic_derivative(q), f"phi'({q})")
    return central_difference(spec, q, h)


@functools.lru_cache(maxsize=128)
def derivative_at_one(spec: PhiSpec) -> float:
    return phi_derivative(spec, 1.0)


# -- validation ---------------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    witnesses: tuple[float, ...] = ()
    measured: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PhiValidationReport:
    phi: str
    condition_i: ConditionResult
    condition_ii: ConditionResult
    condition_iii: ConditionResult
    condition_iv: ConditionResult
    grid: tuple[float, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions().values())

    def conditions(self) -> dict[str, ConditionResult]:
        return {
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "condition_iv": self.condition_iv,
        }

    def to_dict(self) -> dict:
        out = {"phi": self.phi, "passed": self.passed}
        for key, c in self.conditions().items():
            out[key] = {
                "passed": c.passed,
                "witnesses": list(c.witnesses),
                "measured": dict(c.measured),
            }
        out["grid"] = list(self.grid)
        return out


def default_grid() -> tuple[float, ...]:
    near = [1.0 + s * 10.0 ** -k for k in range(1, 7) for s in (-1.0, 1.0)]
    far = np.logspace(-2, 1, 50).tolist()
    return tuple(sorted(set(near + far)))


def _check_grid(grid: Sequence[float]) -> tuple[float, ...]:
    g = tuple(sorted(set(float(q) for q in grid)))
    if not g or any(not math.isfinite(q) or q <= 0.0 for q in g):
        raise BadGridError("grid must contain finite q > 0 only")
    if not any(q < 1.0 for q in g) or not any(q > 1.0 for q in g):
        raise BadGridError("grid must cover both q < 1 and q > 1")
    if not any(0.0 < 1.0 - q <= 1e-3 for q in g) or not any(0.0 < q - 1.0 <= 1e-3 for q in g):
        raise BadGridError("grid must approach q = 1 from both sides (within 1e-3)")
    return g


def validate_phi(
    spec: PhiSpec,
    q_grid: Optional[Sequence[float]] = None,
    tol: float = DERIVATIVE_TOL,
    zero_tol: float = ZERO_TOL,
) -> PhiValidationReport:
    """Check conditions (i)-(iv) numerically on ``q_grid``.

    ``tol`` governs the derivative checks (ii) and (iii); ``zero_tol``
    governs (iv).
    """
    grid = _check_grid(default_grid() if q_grid is None else q_grid)
    off_one = [q for q in grid if q != 1.0]
    values = {q: spec.eval(q) for q in off_one}

    # (i) sign pattern
    bad_sign = tuple(
        q for q in off_one
        if not math.isfinite(values[q]) or (values[q] <= 0.0 if q > 1.0 else values[q] >= 0.0)
    )
    cond_i = ConditionResult(not bad_sign, bad_sign, {"violations": len(bad_sign)})

    # (ii) finite, step-stable derivative estimates
    unstable, worst = [], 0.0
    for q in grid:
        h = min(default_step(q), q / 2.0)
        try:
            d1 = central_difference(spec, q, h)
            d2 = central_difference(spec, q, h / 10.0)
        except NonFinitePhiError:
            unstable.append(q)
            continue
        forward = (spec.eval(q + h) - spec.eval(q)) / h
        backward = (spec.eval(q) - spec.eval(q - h)) / h
        # step-size agreement, plus one-sided agreement to catch kinks at q itself
        gap = max(abs(d1 - d2), abs(forward - backward)) / max(1.0, abs(d1))
        worst = max(worst, gap)
        if gap > tol:
            unstable.append(q)
    cond_ii = ConditionResult(not unstable, tuple(unstable), {"max_relative_step_gap": worst})

    # (iii) derivative limit at 1, read off the grid points closest to 1 on each side
    below = max(q for q in grid if q < 1.0)
    above = min(q for q in grid if q > 1.0)
    d_below = phi_derivative(spec, below)
    d_above = phi_derivative(spec, above)
    limit = 0.5 * (d_below + d_above)
    cond_iii = ConditionResult(
        abs(d_below - 1.0) <= tol and abs(d_above - 1.0) <= tol,
        (below, above),
        {"derivative_limit": limit, "derivative_below": d_below, "derivative_above": d_above},
    )

    # (iv) phi(1) = 0 and nonzero elsewhere
    at_one = spec.eval(1.0)
    vanishing = tuple(q for q in off_one if not abs(values[q]) > zero_tol)
    cond_iv = ConditionResult(
        math.isfinite(at_one) and abs(at_one) <= zero_tol and not vanishing,
        vanishing,
        {"phi_at_1": at_one, "min_abs_phi_off_1": min(abs(values[q]) for q in off_one)},
    )
    return PhiValidationReport(spec.name, cond_i, cond_ii, cond_iii, cond_iv, grid)


@functools.lru_cache(maxsize=128)
def sign_condition_holds(spec: PhiSpec) -> bool:
    """Condition (i) on the default grid; cached per spec."""
    return validate_phi(spec).condition_i.passed
