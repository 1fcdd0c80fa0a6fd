"""Two-component Bernoulli mixtures S = I*X + (1-I)*Y with P(I = 1) = q.

The mixture CDF is the convex combination q*F + (1-q)*G.  For a pair of
exact piecewise components the mixture is itself piecewise, so direct
inversion of the CDF stays exact; for parametric pairs the leftmost
crossing of the level p is bracketed and bisected in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distributions import (
    DomainError,
    Distribution,
    ExtendedReal,
    Piecewise,
    RealLike,
    as_fraction,
)

__all__ = [
    "MixtureSpec",
    "mixture_cdf",
    "mixture_cdf_left_limit",
    "merged_distribution",
    "direct_quantile",
    "numeric_quantile",
    "sample",
    "DIRECT_BISECTION_TOL",
]

#: Width of the bracketing interval at which parametric direct inversion stops.
DIRECT_BISECTION_TOL = 1e-12


@dataclass(frozen=True)
class MixtureSpec:
    """Mixing weight q plus the two component distributions."""

    q: Fraction
    x: Distribution
    y: Distribution

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", as_fraction(self.q))
        if not 0 <= self.q <= 1:
            raise DomainError(f"mixing weight must lie in [0, 1], got {self.q}")

    @property
    def is_exact(self) -> bool:
        """True when both components are exact piecewise distributions."""
        return self.x.is_exact and self.y.is_exact

    @property
    def is_parametric_pair(self) -> bool:
        return not self.x.is_exact and not self.y.is_exact

    def swapped(self) -> "MixtureSpec":
        """The same mixture with the component roles exchanged."""
        return MixtureSpec(1 - self.q, self.y, self.x)


def mixture_cdf(m: MixtureSpec, x: RealLike) -> ExtendedReal:
    """q*F(x) + (1-q)*G(x); exact when both components are piecewise."""
    return m.q * m.x.cdf(x) + (1 - m.q) * m.y.cdf(x)


def mixture_cdf_left_limit(m: MixtureSpec, x: RealLike) -> ExtendedReal:
    return m.q * m.x.cdf_left_limit(x) + (1 - m.q) * m.y.cdf_left_limit(x)


def merged_distribution(m: MixtureSpec) -> Piecewise:
    """The mixture of two piecewise components as a single exact ``Piecewise``.

    Coincident atoms merge into one atom with the scaled masses summed, and
    overlapping segments are split on each other's endpoints so the result
    satisfies the disjoint-interior invariant.
    """
    if not m.is_exact:
        raise ValueError("merged_distribution needs two piecewise components")
    if m.q == 1:
        return Piecewise(m.x.atoms, m.x.segments)
    if m.q == 0:
        return Piecewise(m.y.atoms, m.y.segments)

    atoms: dict[Fraction, Fraction] = {}
    for weight, comp in ((m.q, m.x), (1 - m.q, m.y)):
        for loc, mass in comp.atoms:
            atoms[loc] = atoms.get(loc, Fraction(0)) + weight * mass

    scaled = [
        (left, right, weight * rise)
        for weight, comp in ((m.q, m.x), (1 - m.q, m.y))
        for left, right, rise in comp.segments
    ]
    cuts = sorted({e for left, right, _ in scaled for e in (left, right)})
    segments = []
    for lo, hi in zip(cuts, cuts[1:]):
        rise = sum(
            (h * (hi - lo) / (r - l) for l, r, h in scaled if l <= lo and hi <= r),
            Fraction(0),
        )
        if rise:
            segments.append((lo, hi, rise))
    return Piecewise(sorted(atoms.items()), segments)


def direct_quantile(m: MixtureSpec, p: RealLike) -> ExtendedReal:
    """inf {x : mixture_cdf(m, x) >= p} by direct inversion of the mixture CDF.

    Exact for piecewise pairs (via the merged distribution); for parametric
    pairs the leftmost crossing is found by monotone bracketing and bisection
    to width ``DIRECT_BISECTION_TOL``.  Mixed piecewise/parametric pairs are
    rejected; route those through the grid oracle instead.
    """
    p = as_fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"direct inversion needs 0 < p < 1, got {p}")
    if m.q == 1:
        return m.x.quantile(p)
    if m.q == 0:
        return m.y.quantile(p)
    if m.is_exact:
        return merged_distribution(m).quantile(p)
    if not m.is_parametric_pair:
        raise ValueError(
            "direct inversion supports piecewise or parametric pairs, not mixed ones"
        )
    return numeric_quantile(m, p)


def numeric_quantile(m: MixtureSpec, p: RealLike) -> float:
    """Smallest x with F_S(x) >= p by monotone bracketing and bisection.

    Works for any component pair (the CDFs only need to be evaluable), at
    float precision ``DIRECT_BISECTION_TOL``; the exact merged route is
    preferable whenever both components are piecewise.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"numeric inversion needs 0 < p < 1, got {p}")
    q = float(m.q)

    def reached(x: float) -> bool:
        return q * float(m.x.cdf(x)) + (1.0 - q) * float(m.y.cdf(x)) >= p

    qx = float(m.x.quantile(p))
    qy = float(m.y.quantile(p))
    lo, hi = min(qx, qy), max(qx, qy)
    if lo == hi:
        return hi
    # F_S(hi) >= q*p + (1-q)*p = p, so hi is always a valid upper end; the
    # lower end only needs pushing left when a plateau puts the crossing
    # at or below min(qx, qy).
    step = max(1.0, hi - lo)
    for _ in range(200):
        if not reached(lo):
            break
        hi = lo
        lo -= step
        step *= 2.0
    else:
        raise ArithmeticError("could not bracket the mixture quantile from below")
    while hi - lo > DIRECT_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if reached(mid):
            hi = mid
        else:
            lo = mid
    return hi


def sample(m: MixtureSpec, n: int, seed: int) -> np.ndarray:
    """n draws of S: the indicator I ~ Bernoulli(q) picks X or Y per draw.

    The seed fixes three independent substreams (indicator, X, Y), so equal
    seeds reproduce the output exactly.
    """
    if n < 0:
        raise DomainError(f"sample count must be nonnegative, got {n}")
    root = np.random.default_rng(seed)
    g_ind, g_x, g_y = root.spawn(3)
    take_x = g_ind.random(n) < float(m.q)
    out = np.empty(n, dtype=float)
    n_x = int(take_x.sum())
    if n_x:
        out[take_x] = m.x.sample(n_x, g_x)
    if n - n_x:
        out[~take_x] = m.y.sample(n - n_x, g_y)
    return out
