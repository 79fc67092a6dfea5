"""Entropy functionals of the phi-parameterized nonextensive family.

All kernels skip zero-probability entries (``0^q = 0`` for q > 0), sum with
:func:`math.fsum` (exactly rounded, hence order independent), and evaluate
the numerator ``1 - sum p_i^q`` as ``sum (p_i - p_i^q)``.  On the simplex the
two agree; the second form is a sum of same-signed terms
``-p_i * expm1((q - 1) ln p_i)`` and stays accurate as q -> 1.
"""
from __future__ import annotations

import math
from typing import Sequence, Union

from .distributions import Distribution
from .errors import PhiDerivativeZeroError, PhiZeroError, ZeroSizeError
from .phi import PhiSpec, builtin_phi, derivative_at_one, validate_q

Q_SWITCH = 1e-8
DERIVATIVE_FLOOR = 1e-12

DistLike = Union[Distribution, Sequence[float]]


def _support(d: DistLike) -> tuple[float, ...]:
    if not isinstance(d, Distribution):
        d = Distribution(tuple(d))
    return d.support


def _near_one(q: float) -> bool:
    return abs(q - 1.0) < Q_SWITCH


def _shannon(p):
    return -math.fsum(x * math.log(x) for x in p)


def _deficit(p, qm1):
    return -math.fsum(x * math.expm1(qm1 * math.log(x)) for x in p)


def _power_sum(p, q):
    return math.fsum(math.exp(q * math.log(x)) for x in p)


def power_sum(d: DistLike, q: float) -> float:
    """``sum p_i^q`` over the support, each power as ``exp(q ln p_i)``."""
    return _power_sum(_support(d), validate_q(q))


def deficit(d: DistLike, q: float) -> float:
    """``1 - sum p_i^q`` evaluated without cancellation."""
    return _deficit(_support(d), validate_q(q) - 1.0)


def shannon(d: DistLike) -> float:
    """``-sum p_i ln p_i`` in nats."""
    return _shannon(_support(d))


def tsallis(d: DistLike, q: float) -> float:
    """Original Tsallis entropy ``(1 - sum p_i^q) / (q - 1)``."""
    q = validate_q(q)
    p = _support(d)
    if q == 1.0:
        return _shannon(p)
    qm1 = q - 1.0
    if _near_one(q):
        # per-term ratio keeps the window smooth down to denormal q - 1
        return -math.fsum(x * (math.expm1(qm1 * math.log(x)) / qm1) for x in p)
    return _deficit(p, qm1) / qm1


def normalized_tsallis(d: DistLike, q: float) -> float:
    """Tsallis entropy divided by the escort normalizer ``sum p_j^q``."""
    q = validate_q(q)
    p = _support(d)
    if q == 1.0:
        return _shannon(p)
    return tsallis(p, q) / _power_sum(p, q)


def _limit_scale(phi: PhiSpec) -> float:
    slope = derivative_at_one(phi)
    if abs(slope) < DERIVATIVE_FLOOR:
        raise PhiDerivativeZeroError(f"phi'(1) = {slope!r} for {phi.name}; no finite q -> 1 limit")
    return slope


def _phi_value(phi: PhiSpec, q: float) -> float:
    value = phi.eval(q)
    if value == 0.0 or not math.isfinite(value):
        raise PhiZeroError(f"{phi.name}: phi({q!r}) = {value!r}")
    return value


def generalized_entropy(d: DistLike, q: float, phi: PhiSpec) -> float:
    """``(1 - sum p_i^q) / phi(q)``; near q = 1 the l'Hopital value ``S_1 / phi'(1)``."""
    q = validate_q(q)
    p = _support(d)
    if _near_one(q):
        return _shannon(p) / _limit_scale(phi)
    return _deficit(p, q - 1.0) / _phi_value(phi, q)


def uniform_entropy(n: int, q: float, phi: PhiSpec) -> float:
    """Entropy of the uniform distribution on ``n`` outcomes, ``(1 - n^(1-q)) / phi(q)``."""
    q = validate_q(q)
    if n < 1:
        raise ZeroSizeError(f"n must be >= 1, got {n}")
    if _near_one(q):
        return math.log(n) / _limit_scale(phi)
    return -math.expm1((1.0 - q) * math.log(n)) / _phi_value(phi, q)


def havrda_charvat(d: DistLike, q: float) -> float:
    """``(1 - sum p_i^q) / (1 - 2^(1-q))``; base-2 Shannon entropy at q = 1."""
    return generalized_entropy(d, q, builtin_phi("havrda_charvat"))
