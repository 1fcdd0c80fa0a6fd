"""One-dimensional distributions with exact generalized inverses.

Two families live here.  ``Piecewise`` represents a finite mix of point
masses (atoms) and uniform linear stretches (segments) with all arithmetic
done in ``fractions.Fraction``, so every query below is decided exactly.
The parametric classes (``Uniform``, ``Normal``, ``Exponential``,
``LogNormal``) work in floating point and answer the structural queries
(continuity, left flatness) from family metadata instead of numerics.

The generalized inverse follows the convention

    quantile(p) = inf {x : F(x) >= p},   inf(empty) = +inf,  inf(R) = -inf,

so ``quantile(0)`` is ``-inf`` for every distribution and ``quantile(1)``
is the essential supremum when finite and ``+inf`` otherwise.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.special import ndtr, ndtri

__all__ = [
    "NEG_INF",
    "POS_INF",
    "ExtendedReal",
    "RealLike",
    "DomainError",
    "as_fraction",
    "QuantilePiece",
    "Distribution",
    "Piecewise",
    "Parametric",
    "Uniform",
    "Normal",
    "Exponential",
    "LogNormal",
]

NEG_INF = float("-inf")
POS_INF = float("inf")

# Exact values are Fractions; infinities (and every parametric value) are
# floats.  Fraction/float comparisons are exact in Python, so mixing the two
# keeps the extended order total.
ExtendedReal = Union[Fraction, float]
RealLike = Union[int, float, str, Fraction]


class DomainError(ValueError):
    """A probability level or argument lies outside its allowed range."""


def as_fraction(value: RealLike) -> Fraction:
    """Coerce to an exact rational; floats convert by their binary value."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float) and not math.isfinite(value):
        raise DomainError(f"cannot coerce non-finite value {value!r} to a rational")
    return Fraction(value)


@dataclass(frozen=True, slots=True)
class QuantilePiece:
    """One stretch of a generalized inverse.

    Maps levels in ``(lev_lo, lev_hi]`` affinely onto ``[x_left, x_right]``.
    Atoms appear as constant pieces with ``x_left == x_right``.
    """

    lev_lo: Fraction
    lev_hi: Fraction
    x_left: Fraction
    x_right: Fraction

    def value_at(self, p: Fraction) -> Fraction:
        if self.x_left == self.x_right:
            return self.x_left
        scale = (self.x_right - self.x_left) / (self.lev_hi - self.lev_lo)
        return self.x_left + (p - self.lev_lo) * scale

    def as_affine(self) -> tuple[Fraction, Fraction]:
        """Intercept/slope pair so that value(t) = intercept + slope * t."""
        if self.x_left == self.x_right:
            return self.x_left, Fraction(0)
        slope = (self.x_right - self.x_left) / (self.lev_hi - self.lev_lo)
        return self.x_left - slope * self.lev_lo, slope


class Distribution:
    """Interface shared by the exact piecewise class and parametric families."""

    #: True when cdf/quantile work in exact rational arithmetic.
    is_exact: bool = False

    def cdf(self, x: RealLike) -> ExtendedReal:
        raise NotImplementedError

    def cdf_left_limit(self, x: RealLike) -> ExtendedReal:
        raise NotImplementedError

    def quantile(self, p: RealLike) -> ExtendedReal:
        raise NotImplementedError

    def is_continuous_at(self, x: RealLike) -> bool:
        raise NotImplementedError

    def flat_left_of(self, x: RealLike) -> tuple[bool, ExtendedReal | None]:
        """Whether some z < x has F(z) = F(x-); returns a witness z when true."""
        raise NotImplementedError

    def support_bounds(self) -> tuple[ExtendedReal, ExtendedReal]:
        raise NotImplementedError

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError


class Piecewise(Distribution):
    """Finite mixture of atoms and uniform segments, exact end to end.

    Parameters
    ----------
    atoms:
        Iterable of ``(location, mass)`` pairs, all masses positive and the
        locations distinct.
    segments:
        Iterable of ``(left, right, rise)`` triples describing a linear CDF
        climb of ``rise`` over ``[left, right]``; interiors must be pairwise
        disjoint (touching endpoints are fine, and an atom may sit anywhere,
        including inside a segment).

    The atom masses plus segment rises must sum to exactly 1.
    """

    is_exact = True

    __slots__ = (
        "atoms",
        "segments",
        "_atom_mass",
        "_crit",
        "_f_minus",
        "_f_plus",
        "_gap_density",
        "_pieces",
        "_piece_lev_his",
    )

    def __init__(
        self,
        atoms: Iterable[tuple[RealLike, RealLike]] = (),
        segments: Iterable[tuple[RealLike, RealLike, RealLike]] = (),
    ) -> None:
        self.atoms: tuple[tuple[Fraction, Fraction], ...] = tuple(
            sorted((as_fraction(a), as_fraction(m)) for a, m in atoms)
        )
        self.segments: tuple[tuple[Fraction, Fraction, Fraction], ...] = tuple(
            sorted((as_fraction(l), as_fraction(r), as_fraction(h)) for l, r, h in segments)
        )
        self._validate()
        self._precompute()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def point_mass(cls, location: RealLike) -> "Piecewise":
        """Unit mass at a single point."""
        return cls(atoms=[(location, 1)])

    @classmethod
    def uniform(cls, left: RealLike, right: RealLike) -> "Piecewise":
        """Uniform mass on ``[left, right]`` as a single exact segment."""
        return cls(segments=[(left, right, 1)])

    @classmethod
    def empirical(cls, points: Sequence[RealLike]) -> "Piecewise":
        """Equal atoms at the given points (duplicates merge their mass)."""
        if not points:
            raise ValueError("empirical distribution needs at least one point")
        share = Fraction(1, len(points))
        masses: dict[Fraction, Fraction] = {}
        for pt in points:
            loc = as_fraction(pt)
            masses[loc] = masses.get(loc, Fraction(0)) + share
        return cls(atoms=sorted(masses.items()))

    # -- validation / precomputation ------------------------------------------

    def _validate(self) -> None:
        for i, (loc, mass) in enumerate(self.atoms):
            if mass <= 0:
                raise ValueError(f"atom mass at {loc} must be positive, got {mass}")
            if i and loc == self.atoms[i - 1][0]:
                raise ValueError(f"duplicate atom location {loc}")
        for i, (left, right, rise) in enumerate(self.segments):
            if not left < right:
                raise ValueError(f"segment [{left}, {right}] must have left < right")
            if rise <= 0:
                raise ValueError(f"segment rise over [{left}, {right}] must be positive")
            if i and self.segments[i - 1][1] > left:
                raise ValueError("segment interiors must be pairwise disjoint")
        total = sum((m for _, m in self.atoms), Fraction(0)) + sum(
            (h for _, _, h in self.segments), Fraction(0)
        )
        if total != 1:
            raise ValueError(f"atom masses plus segment rises must equal 1, got {total}")

    def _precompute(self) -> None:
        self._atom_mass = {loc: mass for loc, mass in self.atoms}
        crit = sorted(
            {loc for loc, _ in self.atoms}
            | {s[0] for s in self.segments}
            | {s[1] for s in self.segments}
        )
        self._crit = crit

        # Density of the unique segment covering each open gap (crit[i], crit[i+1]).
        density = [Fraction(0)] * (len(crit) - 1) if len(crit) > 1 else []
        for left, right, rise in self.segments:
            d = rise / (right - left)
            lo = bisect.bisect_left(crit, left)
            hi = bisect.bisect_left(crit, right)
            for j in range(lo, hi):
                density[j] = d
        self._gap_density = density

        f_minus: list[Fraction] = []
        f_plus: list[Fraction] = []
        pieces: list[QuantilePiece] = []
        cum = Fraction(0)
        for i, x in enumerate(crit):
            f_minus.append(cum)
            mass = self._atom_mass.get(x, Fraction(0))
            if mass:
                pieces.append(QuantilePiece(cum, cum + mass, x, x))
                cum += mass
            f_plus.append(cum)
            if i + 1 < len(crit) and density[i]:
                gap_rise = density[i] * (crit[i + 1] - x)
                pieces.append(QuantilePiece(cum, cum + gap_rise, x, crit[i + 1]))
                cum += gap_rise
        self._f_minus = f_minus
        self._f_plus = f_plus
        self._pieces = pieces
        self._piece_lev_his = [piece.lev_hi for piece in pieces]

    # -- queries ---------------------------------------------------------------

    def cdf(self, x: RealLike) -> Fraction:
        x = as_fraction(x)
        crit = self._crit
        if x < crit[0]:
            return Fraction(0)
        j = bisect.bisect_right(crit, x) - 1
        base = self._f_plus[j]
        if x == crit[j] or j + 1 >= len(crit):
            return base
        return base + self._gap_density[j] * (x - crit[j])

    def cdf_left_limit(self, x: RealLike) -> Fraction:
        x = as_fraction(x)
        crit = self._crit
        if x < crit[0]:
            return Fraction(0)
        j = bisect.bisect_right(crit, x) - 1
        if x == crit[j]:
            return self._f_minus[j]
        if j + 1 >= len(crit):
            return self._f_plus[j]
        return self._f_plus[j] + self._gap_density[j] * (x - crit[j])

    def quantile(self, p: RealLike) -> ExtendedReal:
        p = as_fraction(p)
        if p < 0 or p > 1:
            raise DomainError(f"quantile level must lie in [0, 1], got {p}")
        if p == 0:
            return NEG_INF
        idx = bisect.bisect_left(self._piece_lev_his, p)
        return self._pieces[idx].value_at(p)

    def is_continuous_at(self, x: RealLike) -> bool:
        return as_fraction(x) not in self._atom_mass

    def flat_left_of(self, x: RealLike) -> tuple[bool, Fraction | None]:
        x = as_fraction(x)
        nearest: Fraction | None = None
        for left, right, _ in self.segments:
            if left < x <= right:
                return False, None
            if right < x and (nearest is None or right > nearest):
                nearest = right
        for loc in self._atom_mass:
            if loc < x and (nearest is None or loc > nearest):
                nearest = loc
        witness = x - 1 if nearest is None else (nearest + x) / 2
        return True, witness

    def support_bounds(self) -> tuple[Fraction, Fraction]:
        return self._crit[0], self._crit[-1]

    def quantile_pieces(self) -> tuple[QuantilePiece, ...]:
        """The affine stretches of the generalized inverse, in level order."""
        return tuple(self._pieces)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        weights = np.array(
            [float(piece.lev_hi - piece.lev_lo) for piece in self._pieces]
        )
        weights /= weights.sum()
        lefts = np.array([float(piece.x_left) for piece in self._pieces])
        widths = np.array(
            [float(piece.x_right - piece.x_left) for piece in self._pieces]
        )
        idx = rng.choice(len(self._pieces), size=n, p=weights)
        return lefts[idx] + rng.random(n) * widths[idx]

    def __repr__(self) -> str:
        parts = []
        if self.atoms:
            parts.append(f"atoms={[(str(a), str(m)) for a, m in self.atoms]}")
        if self.segments:
            parts.append(
                f"segments={[(str(l), str(r), str(h)) for l, r, h in self.segments]}"
            )
        return f"Piecewise({', '.join(parts)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Piecewise):
            return NotImplemented
        return self.atoms == other.atoms and self.segments == other.segments

    def __hash__(self) -> int:
        return hash((self.atoms, self.segments))


class Parametric(Distribution):
    """Continuous parametric family; strictly increasing inside its support.

    Structural queries are answered from the support bounds: the CDF is flat
    to the left of x exactly when x sits at or below the lower support bound
    or strictly above the upper one.
    """

    is_exact = False
    strictly_increasing = True

    def _cdf(self, x: float) -> float:
        raise NotImplementedError

    def _quantile_inner(self, p: float) -> float:
        raise NotImplementedError

    def cdf(self, x: RealLike) -> float:
        return self._cdf(float(x))

    def cdf_left_limit(self, x: RealLike) -> float:
        return self._cdf(float(x))

    def quantile(self, p: RealLike) -> float:
        p = float(p)
        if p < 0.0 or p > 1.0:
            raise DomainError(f"quantile level must lie in [0, 1], got {p}")
        if p == 0.0:
            return NEG_INF
        if p == 1.0:
            return float(self.support_bounds()[1])
        return self._quantile_inner(p)

    def is_continuous_at(self, x: RealLike) -> bool:
        return True

    def flat_left_of(self, x: RealLike) -> tuple[bool, float | None]:
        if not self.strictly_increasing:
            raise NotImplementedError(
                "flatness detection needs a strictly increasing family"
            )
        lo, hi = self.support_bounds()
        x = float(x)
        if x <= lo:
            return True, x - 1.0
        if x > hi:
            return True, (hi + x) / 2.0
        return False, None


@dataclass(frozen=True)
class Uniform(Parametric):
    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f"uniform needs a < b, got [{self.a}, {self.b}]")

    def _cdf(self, x: float) -> float:
        if x <= self.a:
            return 0.0
        if x >= self.b:
            return 1.0
        return (x - self.a) / (self.b - self.a)

    def _quantile_inner(self, p: float) -> float:
        return self.a + (self.b - self.a) * p

    def support_bounds(self) -> tuple[float, float]:
        return self.a, self.b

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self.a, self.b, size=n)


@dataclass(frozen=True)
class Normal(Parametric):
    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ValueError(f"normal needs sigma > 0, got {self.sigma}")

    def _cdf(self, x: float) -> float:
        return float(ndtr((x - self.mu) / self.sigma))

    def _quantile_inner(self, p: float) -> float:
        return self.mu + self.sigma * float(ndtri(p))

    def support_bounds(self) -> tuple[float, float]:
        return NEG_INF, POS_INF

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.normal(self.mu, self.sigma, size=n)


@dataclass(frozen=True)
class Exponential(Parametric):
    rate: float

    def __post_init__(self) -> None:
        if not self.rate > 0:
            raise ValueError(f"exponential needs rate > 0, got {self.rate}")

    def _cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return -math.expm1(-self.rate * x)

    def _quantile_inner(self, p: float) -> float:
        return -math.log1p(-p) / self.rate

    def support_bounds(self) -> tuple[float, float]:
        return 0.0, POS_INF

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.exponential(1.0 / self.rate, size=n)


@dataclass(frozen=True)
class LogNormal(Parametric):
    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ValueError(f"lognormal needs sigma > 0, got {self.sigma}")

    def _cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return float(ndtr((math.log(x) - self.mu) / self.sigma))

    def _quantile_inner(self, p: float) -> float:
        return math.exp(self.mu + self.sigma * float(ndtri(p)))

    def support_bounds(self) -> tuple[float, float]:
        return 0.0, POS_INF

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.lognormal(self.mu, self.sigma, size=n)
