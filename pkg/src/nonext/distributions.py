"""Finite probability distributions, refinements and independent products.

A :class:`Distribution` is a point of the simplex
``{(p_1, ..., p_n) | p_i >= 0, sum p_i = 1}``.  All containers here are
frozen and store plain tuples of floats, so derived objects never alias
their inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DenominatorTooSmallError,
    NegativeWeightError,
    NonFiniteInputError,
    NotNormalizedError,
    ZeroMarginalError,
    ZeroSizeError,
    ZeroTotalMassError,
)

SIMPLEX_TOL = 1e-9


def _as_floats(values: Iterable[float]) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    for v in out:
        if not math.isfinite(v):
            raise NonFiniteInputError(f"non-finite probability value {v!r}")
        if v < 0.0:
            raise NegativeWeightError(f"negative weight {v!r}")
    return out


@dataclass(frozen=True)
class Distribution:
    """Probability vector on ``n >= 1`` outcomes."""

    p: tuple[float, ...]

    def __post_init__(self):
        p = _as_floats(self.p)
        if not p:
            raise ZeroSizeError("a distribution needs at least one outcome")
        total = math.fsum(p)
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise NotNormalizedError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "p", p)

    def __len__(self) -> int:
        return len(self.p)

    def __iter__(self):
        return iter(self.p)

    def __getitem__(self, i):
        return self.p[i]

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def support(self) -> tuple[float, ...]:
        """Strictly positive entries, in order."""
        return tuple(x for x in self.p if x > 0.0)

    def to_array(self) -> np.ndarray:
        return np.array(self.p, dtype=float)


@dataclass(frozen=True)
class Refinement:
    """Two-level grouping ``{p_ij}`` whose block sums are the marginals ``p_i``."""

    blocks: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ZeroSizeError("a refinement needs at least one block")
        blocks = tuple(_as_floats(b) for b in self.blocks)
        if any(len(b) == 0 for b in blocks):
            raise ZeroSizeError("every block needs at least one entry")
        total = math.fsum(x for b in blocks for x in b)
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise NotNormalizedError(f"refinement mass is {total!r}, not 1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def marginals(self) -> Distribution:
        return Distribution(tuple(math.fsum(b) for b in self.blocks))

    def flatten(self) -> Distribution:
        """The fine-grained distribution ``(p_11, ..., p_n m_n)``."""
        return Distribution(tuple(x for b in self.blocks for x in b))


@dataclass(frozen=True)
class ProductSystem:
    """Joint distribution of two independent systems, stored row-major."""

    a: Distribution
    b: Distribution
    joint: Distribution

    def rows(self) -> Refinement:
        """The joint viewed as a refinement with one block per outcome of ``a``."""
        m = self.b.n
        return Refinement(
            tuple(self.joint.p[i * m:(i + 1) * m] for i in range(self.a.n))
        )


def new_distribution(weights: Sequence[float], normalize: bool = False) -> Distribution:
    """Build a distribution from raw weights.

    With ``normalize`` each weight is divided by the total; otherwise the
    weights must already sum to one within ``SIMPLEX_TOL``.
    """
    w = _as_floats(weights)
    if not w:
        raise ZeroSizeError("weights must be nonempty")
    if normalize:
        total = math.fsum(w)
        if total == 0.0:
            raise ZeroTotalMassError("all weights are zero")
        w = tuple(x / total for x in w)
    return Distribution(w)


def uniform(n: int) -> Distribution:
    if n < 1:
        raise ZeroSizeError(f"uniform distribution needs n >= 1, got {n}")
    return Distribution((1.0 / n,) * n)


def product(a: Distribution, b: Distribution) -> ProductSystem:
    joint = tuple(ai * bj for ai in a.p for bj in b.p)
    return ProductSystem(a, b, Distribution(joint))


def refine(marginal_block_probs: Sequence[Sequence[float]]) -> Refinement:
    return Refinement(tuple(tuple(b) for b in marginal_block_probs))


def conditional(r: Refinement, i: int) -> Distribution:
    """Block ``i`` (0-based) rescaled by its marginal ``p_i``."""
    block = r.blocks[i]
    pi = math.fsum(block)
    if pi <= 0.0:
        raise ZeroMarginalError(f"block {i} has zero marginal probability")
    return Distribution(tuple(x / pi for x in block))


def expand(d: Distribution) -> Distribution:
    """Append an impossible outcome."""
    return Distribution(d.p + (0.0,))


def rational_approx(d: Distribution, denominator: int) -> tuple[int, ...]:
    """Integer weights ``m_i`` with ``sum m_i == denominator`` and ``m_i/M ~ p_i``.

    Largest-remainder apportionment; ties go to the lower index.  The
    max-norm error ``|m_i/M - p_i|`` is at most ``1/M``.
    """
    M = int(denominator)
    n = d.n
    if M < n:
        raise DenominatorTooSmallError(f"denominator {M} smaller than size {n}")
    total = math.fsum(d.p)
    quotas = [x / total * M for x in d.p]
    m = [math.floor(x) for x in quotas]
    short = M - sum(m)
    order = sorted(range(n), key=lambda i: (-(quotas[i] - m[i]), i))
    if short >= 0:
        for i in order[:short]:
            m[i] += 1
    else:
        # only reachable through rounding of quotas just above an integer
        for i in reversed(order):
            if short == 0:
                break
            if m[i] > 0:
                m[i] -= 1
                short += 1
    return tuple(m)


# -- random generation ------------------------------------------------------

def random_distribution(n: int, rng: np.random.Generator) -> Distribution:
    """Flat Dirichlet draw via normalized exponential spacings."""
    if n < 1:
        raise ZeroSizeError(f"n must be >= 1, got {n}")
    e = rng.standard_exponential(n)
    return Distribution(tuple((e / e.sum()).tolist()))


def random_refinement(block_sizes: Sequence[int], rng: np.random.Generator) -> Refinement:
    flat = random_distribution(sum(block_sizes), rng).p
    blocks, start = [], 0
    for size in block_sizes:
        blocks.append(flat[start:start + size])
        start += size
    return Refinement(tuple(blocks))


def split_refinement(d: Distribution, rng: np.random.Generator, max_parts: int = 3) -> Refinement:
    """Refine ``d`` by splitting each outcome into 1..max_parts random pieces."""
    blocks = []
    for pi in d.p:
        k = int(rng.integers(1, max_parts + 1))
        w = rng.standard_exponential(k)
        blocks.append(tuple((pi * w / w.sum()).tolist()))
    return Refinement(tuple(blocks))
