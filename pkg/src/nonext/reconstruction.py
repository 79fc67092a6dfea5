"""Rebuild S_q from uniform-distribution values alone.

For a rational point ``p_i = m_i / M`` the grouping identity applied to the
uniform distribution on M cells gives

    f_q(M) = S_q(p) + sum_i p_i^q f_q(m_i),

where ``f_q(n)`` is the entropy of the uniform distribution on n outcomes.
:func:`reconstruct_rational` evaluates ``S_q(p)`` from that relation without
ever calling the closed form on ``p`` itself, which makes it an independent
oracle for :func:`nonext.entropy.generalized_entropy`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from .axioms import CheckReport
from .distributions import Distribution, rational_approx
from .entropy import generalized_entropy, uniform_entropy
from .errors import NegativeWeightError, ZeroSizeError
from .phi import PhiSpec, validate_q

RATIONAL_ABS_TOL = 1e-10


@dataclass(frozen=True)
class RationalDistribution:
    """Multiplicities ``m_i``; the distribution is ``m_i / sum(m)``."""

    m: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        if any(x < 0 for x in m):
            raise NegativeWeightError(f"negative multiplicity in {m}")
        if sum(m) < 1:
            raise ZeroSizeError("multiplicities must sum to at least 1")
        object.__setattr__(self, "m", m)

    @property
    def M(self) -> int:
        return sum(self.m)

    def positive(self) -> tuple[int, ...]:
        """Multiplicities with zeros dropped (an impossible outcome adds no entropy)."""
        return tuple(x for x in self.m if x > 0)

    def to_distribution(self) -> Distribution:
        M = self.M
        return Distribution(tuple(x / M for x in self.m))


def check_functional_equation(
    m: int, n: int, q: float, phi: PhiSpec, tol: float = 1e-12
) -> CheckReport:
    """``f_q(mn) = f_q(n) + n^(1-q) f_q(m)`` with relative tolerance ``tol``."""
    q = validate_q(q)
    if m < 1 or n < 1:
        raise ZeroSizeError(f"m and n must be >= 1, got {m}, {n}")
    lhs = uniform_entropy(m * n, q, phi)
    rhs = uniform_entropy(n, q, phi) + math.exp((1.0 - q) * math.log(n)) * uniform_entropy(m, q, phi)
    return CheckReport(
        "functional_equation",
        abs(lhs - rhs),
        tol * max(1.0, abs(lhs)),
        abs(lhs - rhs) <= tol * max(1.0, abs(lhs)),
        {"m": m, "n": n, "q": q, "phi": phi.name, "lhs": lhs, "rhs": rhs},
    )


def uniform_ratio(n: int, q: float, phi: PhiSpec) -> float:
    """``f_q(n) / (1 - n^(1-q))``; independent of n and equal to ``1/phi(q)``."""
    q = validate_q(q)
    return uniform_entropy(n, q, phi) / -math.expm1((1.0 - q) * math.log(n))


def reconstruct_rational(rd: RationalDistribution, q: float, phi: PhiSpec) -> float:
    """``f_q(M) - sum_i p_i^q f_q(m_i)`` over the positive multiplicities."""
    q = validate_q(q)
    m = rd.positive()
    M = sum(m)
    log_m = math.log(M)
    terms = [
        math.exp(q * (math.log(mi) - log_m)) * uniform_entropy(mi, q, phi) for mi in m
    ]
    return uniform_entropy(M, q, phi) - math.fsum(terms)


def proof_identity_residual(rd: RationalDistribution, q: float) -> float:
    """Relative gap in ``sum_i p_i^q m_i^(1-q) = M^(1-q)``."""
    q = validate_q(q)
    m = rd.positive()
    M = sum(m)
    log_m = math.log(M)
    lhs = math.fsum(
        math.exp(q * (math.log(mi) - log_m) + (1.0 - q) * math.log(mi)) for mi in m
    )
    rhs = math.exp((1.0 - q) * log_m)
    return abs(lhs - rhs) / abs(rhs)


def local_lipschitz(
    d: Distribution, q: float, phi: PhiSpec, rng: np.random.Generator, h: float = 1e-6
) -> float:
    """Estimate of the entropy's gradient norm at ``d`` along the simplex.

    Central differences along ``2n`` random unit directions tangent to the
    face spanned by the support of ``d``; max directional slope times sqrt(2).
    """
    p = np.array(d.p)
    support = np.flatnonzero(p > 0)
    if support.size < 2:
        # a vertex: no move stays inside its face
        return 0.0
    step = h * min(1.0, float(p[support].min()))
    best = 0.0
    for _ in range(2 * d.n):
        v = np.zeros(d.n)
        v[support] = rng.standard_normal(support.size)
        v[support] -= v[support].mean()
        norm = np.linalg.norm(v)
        if norm == 0.0:
            continue
        v /= norm
        t = step / max(1.0, float(np.abs(v).max()))
        lo, hi = p - t * v, p + t * v
        if lo.min() < 0.0 or hi.min() < 0.0:
            continue
        s_hi = generalized_entropy(tuple((hi / hi.sum()).tolist()), q, phi)
        s_lo = generalized_entropy(tuple((lo / lo.sum()).tolist()), q, phi)
        best = max(best, abs(s_hi - s_lo) / (2.0 * t))
    return best * math.sqrt(2.0)


def uniqueness_check(
    d: Distribution, q: float, phi: PhiSpec, denominator: int, seed: int = 42
) -> CheckReport:
    """Compare the closed form at ``d`` with the reconstruction at its rational approximation.

    Passes when the gap is within ``L * n / M + 1e-10`` for a sampled local
    Lipschitz bound ``L``.
    """
    q = validate_q(q)
    m = rational_approx(d, denominator)
    rd = RationalDistribution(m)
    rebuilt = reconstruct_rational(rd, q, phi)
    closed = generalized_entropy(d, q, phi)
    L = local_lipschitz(d, q, phi, np.random.default_rng(seed))
    tol = L * d.n / rd.M + RATIONAL_ABS_TOL
    residual = abs(rebuilt - closed)
    return CheckReport(
        "uniqueness",
        residual,
        tol,
        residual <= tol,
        {"q": q, "phi": phi.name, "p": list(d.p), "m": list(m), "M": rd.M,
         "reconstructed": rebuilt, "closed_form": closed, "lipschitz": L},
        seed=seed,
    )
