"""Numerical checkers for the generalized Shannon-Khinchin axioms.

Every checker returns a :class:`CheckReport`.  Identity checkers take a
*relative* tolerance ``tol``; the report stores the absolute tolerance
actually applied, ``tol * max(1, |LHS|)``, so that ``passed`` is always
``residual <= report.tol``.

Continuity in (p, q) has no checker of its own: finite sampling cannot
falsify it.  The q-sweep in :mod:`nonext.cli` is its executable surrogate.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .distributions import Distribution, ProductSystem, Refinement, expand
from .entropy import generalized_entropy, shannon, uniform_entropy
from .phi import DERIVATIVE_TOL, PhiSpec, derivative_at_one, sign_condition_holds, validate_q

IDENTITY_RTOL = 1e-12
SYMMETRY_TOL = 1e-14


@dataclass(frozen=True)
class CheckReport:
    name: str
    residual: float
    tol: float
    passed: bool
    witness: dict = field(default_factory=dict)
    seed: Optional[int] = None
    applicable: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _report(name, residual, tol, witness, **kw) -> CheckReport:
    return CheckReport(name, residual, tol, residual <= tol, witness, **kw)


def check_shannon_additivity(
    r: Refinement, q: float, phi: PhiSpec, tol: float = IDENTITY_RTOL
) -> CheckReport:
    """Grouping identity ``S(p_ij) = S(p_i) + sum_i p_i^q S(p_ij / p_i)``.

    At q = 1 the weights are p_i and this is ordinary Shannon additivity.
    Blocks with zero marginal contribute nothing.
    """
    q = validate_q(q)
    lhs = generalized_entropy(r.flatten(), q, phi)
    terms = []
    for block in r.blocks:
        pi = math.fsum(block)
        if pi <= 0.0:
            continue
        cond = tuple(x / pi for x in block)
        terms.append(math.exp(q * math.log(pi)) * generalized_entropy(cond, q, phi))
    rhs = generalized_entropy(r.marginals, q, phi) + math.fsum(terms)
    return _report(
        "shannon_additivity",
        abs(lhs - rhs),
        tol * max(1.0, abs(lhs)),
        {"q": q, "phi": phi.name, "blocks": [list(b) for b in r.blocks], "lhs": lhs, "rhs": rhs},
    )


def check_pseudoadditivity(
    s: ProductSystem, q: float, phi: PhiSpec, tol: float = IDENTITY_RTOL
) -> CheckReport:
    """``S(A,B) = S(A) + S(B) - phi(q) S(A) S(B)`` for independent A, B."""
    q = validate_q(q)
    sa = generalized_entropy(s.a, q, phi)
    sb = generalized_entropy(s.b, q, phi)
    lhs = generalized_entropy(s.joint, q, phi)
    rhs = sa + sb - phi.eval(q) * sa * sb
    return _report(
        "pseudoadditivity",
        abs(lhs - rhs),
        tol * max(1.0, abs(lhs)),
        {"q": q, "phi": phi.name, "a": list(s.a.p), "b": list(s.b.p), "lhs": lhs, "rhs": rhs},
    )


def check_maximality(
    d: Distribution, q: float, phi: PhiSpec, tol: float = IDENTITY_RTOL
) -> CheckReport:
    """``S(d) <= S(uniform(n))``.

    Only meaningful when phi has the sign pattern of condition (i); otherwise
    the report is marked inapplicable and does not pass.
    """
    q = validate_q(q)
    witness = {"q": q, "phi": phi.name, "p": list(d.p)}
    sign_ok = sign_condition_holds(phi) and (q == 1.0 or (phi.eval(q) > 0.0) == (q > 1.0))
    if not sign_ok:
        return CheckReport(
            "maximality", math.nan, tol, False, witness, applicable=False,
            note=f"{phi.name} violates the sign condition (i); maximality does not apply",
        )
    s = generalized_entropy(d, q, phi)
    fmax = uniform_entropy(d.n, q, phi)
    witness.update(entropy=s, uniform_entropy=fmax)
    return _report("maximality", max(0.0, s - fmax), tol * max(1.0, abs(fmax)), witness)


def check_expandability(
    d: Distribution, q: float, phi: PhiSpec, tol: float = IDENTITY_RTOL
) -> CheckReport:
    """``S(p_1, ..., p_n, 0) = S(p_1, ..., p_n)``; expected residual exactly 0."""
    q = validate_q(q)
    base = generalized_entropy(d, q, phi)
    expanded = generalized_entropy(expand(d), q, phi)
    return _report(
        "expandability",
        abs(expanded - base),
        tol * max(1.0, abs(base)),
        {"q": q, "phi": phi.name, "p": list(d.p), "entropy": base},
    )


def check_shannon_limit(d: Distribution, phi: PhiSpec, k_max: int = 8, k_min: int = 2) -> CheckReport:
    """Approach q -> 1 along ``1 +/- 10^-k`` and compare with ``S_1 / phi'(1)``.

    Passes when the residuals are non-increasing in k and the last one is at
    most ``10 * 10^-k_max * S_1 + 1e-12``.  When phi'(1) != 1 the limit is the
    rescaled Shannon entropy and the note says the strict limit axiom fails.
    """
    slope = derivative_at_one(phi)
    target = shannon(d) / slope
    residuals = []
    for k in range(k_min, k_max + 1):
        delta = 10.0 ** -k
        r = max(abs(generalized_entropy(d, 1.0 + s * delta, phi) - target) for s in (-1.0, 1.0))
        residuals.append(r)
    finite = all(math.isfinite(r) for r in residuals)
    monotone = all(b <= a for a, b in zip(residuals, residuals[1:]))
    tol = 10.0 * 10.0 ** -k_max * abs(shannon(d)) + 1e-12
    final = residuals[-1]
    strict = abs(slope - 1.0) <= DERIVATIVE_TOL
    note = "" if strict else (
        f"phi'(1) = {slope!r}: the q -> 1 limit is S_1/phi'(1), not S_1; strict limit axiom fails"
    )
    return CheckReport(
        "shannon_limit",
        final,
        tol,
        finite and monotone and final <= tol,
        {"phi": phi.name, "p": list(d.p), "limit": target, "residuals": residuals,
         "k": list(range(k_min, k_max + 1)), "monotone": monotone, "strict": strict},
        note=note,
    )


def check_symmetry(
    d: Distribution,
    q: float,
    phi: PhiSpec,
    n_perms: int = 16,
    seed: int = 42,
    tol: float = SYMMETRY_TOL,
) -> CheckReport:
    """Entropy is invariant under permutations: the reversal plus ``n_perms`` random ones."""
    q = validate_q(q)
    rng = np.random.default_rng(seed)
    base = generalized_entropy(d, q, phi)
    perms = [tuple(reversed(d.p))]
    perms += [tuple(d.p[i] for i in rng.permutation(d.n)) for _ in range(n_perms)]
    worst, worst_perm = 0.0, perms[0]
    for p in perms:
        r = abs(generalized_entropy(p, q, phi) - base)
        if r > worst:
            worst, worst_perm = r, p
    return _report(
        "symmetry", worst, tol,
        {"q": q, "phi": phi.name, "p": list(d.p), "worst_permutation": list(worst_perm)},
        seed=seed,
    )
