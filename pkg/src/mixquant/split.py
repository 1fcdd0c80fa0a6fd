"""Mixture quantiles through an optimal split of the level p.

Writing the target level as p = q*alpha + (1-q)*beta, the mixture quantile
at p equals

    s_p = max{ Qx(alpha*), Qy(beta*) },

where alpha* is the infimum of the alpha in the feasible range whose split
satisfies the ordering Qx(alpha) >= Qy(beta(alpha)), and beta* is the
matching beta.  The ordering predicate is monotone in alpha (Qx rises while
Qy(beta(alpha)) falls), so the infimum is found exactly for piecewise pairs
by walking the affine stretches of both generalized inverses, and by
bisection for parametric components.

When the ordering holds nowhere on the feasible range the split clamps to
the upper end alpha_max; the reported solution is flagged and the max
formula still returns the correct quantile.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .distributions import (
    DomainError,
    ExtendedReal,
    Piecewise,
    RealLike,
    as_fraction,
)
from .mixture import MixtureSpec

__all__ = [
    "SplitPoint",
    "QuantileSolution",
    "ATTAIN_TOL",
    "BISECTION_WIDTH",
    "BISECTION_MAX_ITER",
    "feasible_alpha_range",
    "ordering_predicate",
    "optimal_split",
    "split_quantile",
]

#: Absolute tolerance for deciding which component attains the max when any
#: component is parametric (exact pairs compare exactly).
ATTAIN_TOL = 1e-9

#: Bisection stops once the bracket on alpha is narrower than this.
BISECTION_WIDTH = 1e-14
BISECTION_MAX_ITER = 200


@dataclass(frozen=True, slots=True)
class SplitPoint:
    """A feasible split p = q*alpha + (1-q)*beta."""

    alpha: Fraction | float
    beta: Fraction | float


@dataclass(frozen=True, slots=True)
class QuantileSolution:
    """Mixture quantile with the split that produced it.

    ``x_attains``/``y_attains`` record which component quantile reaches the
    max; ``clamped`` marks instances where the ordering held nowhere and the
    split fell back to the top of the feasible range.
    """

    s_p: ExtendedReal
    alpha_star: Fraction | float
    beta_star: Fraction | float
    x_attains: bool
    y_attains: bool
    clamped: bool


def feasible_alpha_range(q: RealLike, p: RealLike) -> tuple[Fraction, Fraction]:
    """Closed range of alpha with both alpha and beta(alpha) inside [0, 1]."""
    q = as_fraction(q)
    p = as_fraction(p)
    if not 0 < q < 1:
        raise DomainError(f"mixing weight must lie strictly in (0, 1), got {q}")
    if not 0 < p < 1:
        raise DomainError(f"level must lie strictly in (0, 1), got {p}")
    alpha_min = max(Fraction(0), (p - (1 - q)) / q)
    alpha_max = min(Fraction(1), p / q)
    return alpha_min, alpha_max


def _beta_of(q: Fraction, p: Fraction, alpha):
    return (p - q * alpha) / (1 - q)


def ordering_predicate(m: MixtureSpec, p: RealLike, alpha: RealLike) -> bool:
    """Whether Qx(alpha) >= Qy(beta) for the split beta = (p - q*alpha)/(1-q).

    Levels of 0 send the corresponding quantile to -inf, so the predicate
    holds trivially at beta = 0 and fails at alpha = 0 unless beta hits 0 too.
    """
    p = as_fraction(p)
    alpha_min, alpha_max = feasible_alpha_range(m.q, p)
    alpha = as_fraction(alpha)
    if not alpha_min <= alpha <= alpha_max:
        raise DomainError(
            f"alpha must lie in the feasible range [{alpha_min}, {alpha_max}], got {alpha}"
        )
    beta = _beta_of(m.q, p, alpha)
    return m.x.quantile(alpha) >= m.y.quantile(beta)


def optimal_split(m: MixtureSpec, p: RealLike) -> SplitPoint:
    """The split at the infimum alpha satisfying the ordering (clamped if none)."""
    alpha, beta, _ = _solve_split(m, as_fraction(p))
    return SplitPoint(alpha, beta)


def split_quantile(m: MixtureSpec, p: RealLike) -> QuantileSolution:
    """Mixture quantile via the optimal split; exact for piecewise pairs.

    Degenerate weights bypass the split: q = 1 returns the X quantile with
    alpha* = p and q = 0 the Y quantile with beta* = p.
    """
    p = as_fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"level must lie strictly in (0, 1), got {p}")
    if m.q == 1:
        s = m.x.quantile(p)
        return QuantileSolution(s, p, p, True, False, False)
    if m.q == 0:
        s = m.y.quantile(p)
        return QuantileSolution(s, p, p, False, True, False)

    alpha, beta, clamped = _solve_split(m, p)
    qx = m.x.quantile(alpha)
    qy = m.y.quantile(beta)
    s_p = max(qx, qy)
    if m.is_exact:
        x_attains = qx == s_p
        y_attains = qy == s_p
    else:
        x_attains = _close(qx, s_p)
        y_attains = _close(qy, s_p)
    return QuantileSolution(s_p, alpha, beta, x_attains, y_attains, clamped)


def _close(a: ExtendedReal, b: ExtendedReal) -> bool:
    if a == b:
        return True
    try:
        return abs(float(a) - float(b)) <= ATTAIN_TOL
    except OverflowError:
        return False


def _solve_split(m: MixtureSpec, p: Fraction):
    """Returns (alpha*, beta*, clamped) for 0 < q < 1."""
    if m.is_exact:
        return _solve_split_exact(m, p)
    return _solve_split_numeric(m, p)


# -- exact path ----------------------------------------------------------------


def _level_cuts(d: Piecewise) -> list[Fraction]:
    """All level boundaries of the generalized inverse, including 0 and 1."""
    cuts = [Fraction(0)]
    cuts.extend(piece.lev_hi for piece in d.quantile_pieces())
    return cuts


def _piece_at(d: Piecewise, level: Fraction):
    """The affine stretch whose half-open level range contains ``level``."""
    pieces = d.quantile_pieces()
    idx = bisect.bisect_left([piece.lev_hi for piece in pieces], level)
    return pieces[idx]


def _solve_split_exact(m: MixtureSpec, p: Fraction):
    q = m.q
    alpha_min, alpha_max = feasible_alpha_range(q, p)

    def beta_of(alpha: Fraction) -> Fraction:
        return (p - q * alpha) / (1 - q)

    def holds(alpha: Fraction) -> bool:
        return m.x.quantile(alpha) >= m.y.quantile(beta_of(alpha))

    # Candidate levels where either generalized inverse changes its affine
    # stretch; between consecutive candidates both sides are affine in alpha.
    candidates = {alpha_min, alpha_max}
    for cut in _level_cuts(m.x):
        if alpha_min <= cut <= alpha_max:
            candidates.add(cut)
    for cut in _level_cuts(m.y):
        alpha = (p - (1 - q) * cut) / q
        if alpha_min <= alpha <= alpha_max:
            candidates.add(alpha)
    grid = sorted(candidates)

    # The predicate is monotone (false then true), so binary-search the grid
    # for the first candidate where it holds.
    lo, hi = 0, len(grid)
    while lo < hi:
        mid = (lo + hi) // 2
        if holds(grid[mid]):
            hi = mid
        else:
            lo = mid + 1
    if lo == len(grid):
        # Ordering holds nowhere on the feasible range: clamp to the top.
        return alpha_max, beta_of(alpha_max), True
    if lo == 0:
        return grid[0], beta_of(grid[0]), False

    a_lo, a_hi = grid[lo - 1], grid[lo]
    alpha = _refine_cell(m, p, a_lo, a_hi)
    return alpha, beta_of(alpha), False


def _refine_cell(m: MixtureSpec, p: Fraction, a_lo: Fraction, a_hi: Fraction) -> Fraction:
    """Infimum of the ordering set inside the cell (a_lo, a_hi].

    Both inverses are affine on the open cell, so the difference
    d(alpha) = Qx(alpha) - Qy(beta(alpha)) is affine and nondecreasing; the
    infimum is a_lo when d >= 0 throughout, the interior root when d crosses
    zero inside, and a_hi otherwise (where the predicate holds by the jump).
    """
    q = m.q
    mid = (a_lo + a_hi) / 2
    x_int, x_slope = _piece_at(m.x, mid).as_affine()
    beta_mid = (p - q * mid) / (1 - q)
    y_int, y_slope = _piece_at(m.y, beta_mid).as_affine()
    # Qy(beta(alpha)) = y_int + y_slope*(p - q*alpha)/(1-q)
    d_int = x_int - y_int - y_slope * p / (1 - q)
    d_slope = x_slope + y_slope * q / (1 - q)
    if d_int + d_slope * a_lo >= 0:
        return a_lo
    if d_slope > 0:
        root = -d_int / d_slope
        if root < a_hi:
            return root
    return a_hi


# -- numeric path ----------------------------------------------------------------


def _solve_split_numeric(m: MixtureSpec, p: Fraction):
    q = m.q
    alpha_min, alpha_max = feasible_alpha_range(q, p)

    def beta_of(alpha):
        # float alphas near the range ends can push this epsilon outside [0, 1]
        return min(max((p - q * as_fraction(alpha)) / (1 - q), Fraction(0)), Fraction(1))

    def holds(alpha) -> bool:
        return m.x.quantile(alpha) >= m.y.quantile(beta_of(alpha))

    if holds(alpha_min):
        return alpha_min, beta_of(alpha_min), False
    if not holds(alpha_max):
        return alpha_max, beta_of(alpha_max), True
    lo, hi = float(alpha_min), float(alpha_max)
    for _ in range(BISECTION_MAX_ITER):
        if hi - lo <= BISECTION_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if holds(mid):
            hi = mid
        else:
            lo = mid
    alpha = hi
    return alpha, float(beta_of(alpha)), False
