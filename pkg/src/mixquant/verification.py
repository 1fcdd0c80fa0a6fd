"""Independent oracles and randomized cross-checking for mixture quantiles.

Three oracles answer the same question by different routes: direct CDF
inversion (exact for piecewise pairs), a dense-grid scan of the mixture CDF
evaluated by an independent vectorized code path, and a Monte Carlo order
statistic.  ``cross_check`` runs an instance through the split construction
and every applicable oracle, classifies it, verifies the cell relations,
and checks the structural invariants (sandwich, split identity, bracketing,
swap symmetry).

``generate_instance`` produces deterministic piecewise instances from a
(seed, index) pair, deliberately biased toward shared breakpoints, atoms on
segment boundaries, and levels hitting the mixture CDF's plateau edges so
that every feasible cell of the case table shows up in bulk runs.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import ndtr

from .classify import ClassificationReport, InternalContradictionError, classify
from .distributions import (
    DomainError,
    Distribution,
    ExtendedReal,
    Exponential,
    LogNormal,
    Normal,
    Piecewise,
    Uniform,
    as_fraction,
)
from .mixture import MixtureSpec, direct_quantile, merged_distribution, mixture_cdf, \
    mixture_cdf_left_limit, sample
from .split import QuantileSolution, split_quantile

__all__ = [
    "PARAMETRIC_AGREE_TOL",
    "GRID_FLOAT_SLACK",
    "GridOracleConfig",
    "InstanceGenConfig",
    "CheckReport",
    "SuiteResult",
    "grid_oracle_quantile",
    "monte_carlo_quantile",
    "generate_instance",
    "cross_check",
    "run_suite",
]

#: Split path and direct inversion must agree to this for parametric pairs.
PARAMETRIC_AGREE_TOL = 1e-9

#: Slack added to grid comparisons to absorb float CDF evaluation error.
GRID_FLOAT_SLACK = 1e-9


@dataclass(frozen=True, slots=True)
class GridOracleConfig:
    """Uniform evaluation grid for the scan oracle."""

    lo: float
    hi: float
    steps: int = 1_000_000

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"grid needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.steps < 2:
            raise ValueError(f"grid needs at least 2 steps, got {self.steps}")

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.steps - 1)

    @classmethod
    def from_mixture(
        cls, m: MixtureSpec, steps: int = 1_000_000, pad: float = 1.0
    ) -> "GridOracleConfig":
        """Support hull of both components, padded one unit on each side.

        Unbounded supports fall back to extreme component quantiles.
        """
        los, his = [], []
        for comp in (m.x, m.y):
            lo, hi = comp.support_bounds()
            los.append(float(lo) if math.isfinite(float(lo)) else float(comp.quantile(1e-7)))
            his.append(float(hi) if math.isfinite(float(hi)) else float(comp.quantile(1 - 1e-7)))
        return cls(min(los) - pad, max(his) + pad, steps)


def _cdf_grid(d: Distribution, xs: np.ndarray) -> np.ndarray:
    """Vectorized CDF on a grid; independent of the class's own query path."""
    if isinstance(d, Piecewise):
        out = np.zeros_like(xs)
        for loc, mass in d.atoms:
            out += float(mass) * (xs >= float(loc))
        for left, right, rise in d.segments:
            left_f, right_f = float(left), float(right)
            out += float(rise) * np.clip((xs - left_f) / (right_f - left_f), 0.0, 1.0)
        return out
    if isinstance(d, Uniform):
        return np.clip((xs - d.a) / (d.b - d.a), 0.0, 1.0)
    if isinstance(d, Normal):
        return ndtr((xs - d.mu) / d.sigma)
    if isinstance(d, Exponential):
        return np.where(xs > 0.0, -np.expm1(-d.rate * np.maximum(xs, 0.0)), 0.0)
    if isinstance(d, LogNormal):
        safe = np.where(xs > 0.0, xs, 1.0)
        return np.where(xs > 0.0, ndtr((np.log(safe) - d.mu) / d.sigma), 0.0)
    raise ValueError(f"no grid CDF for distribution type {type(d).__name__}")


def grid_oracle_quantile(m: MixtureSpec, p, cfg: GridOracleConfig) -> float:
    """Smallest grid point whose mixture CDF reaches p.

    Sits within one grid step above the true quantile whenever the grid
    covers it.  Raises if no grid point reaches the level.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"grid oracle needs 0 < p < 1, got {p}")
    xs = np.linspace(cfg.lo, cfg.hi, cfg.steps)
    q = float(m.q)
    fs = q * _cdf_grid(m.x, xs) + (1.0 - q) * _cdf_grid(m.y, xs)
    hits = fs >= p - GRID_FLOAT_SLACK
    idx = int(np.argmax(hits))
    if not hits[idx]:
        raise ArithmeticError(
            f"mixture CDF never reaches {p} on [{cfg.lo}, {cfg.hi}]"
        )
    return float(xs[idx])


def monte_carlo_quantile(m: MixtureSpec, p, n: int, seed: int) -> float:
    """Order statistic of rank ceil(n*p) among n seeded draws of the mixture."""
    p = as_fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"Monte Carlo oracle needs 0 < p < 1, got {p}")
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")
    rank = math.ceil(n * p)
    draws = sample(m, n, seed)
    return float(np.partition(draws, rank - 1)[rank - 1])


# -- randomized instances --------------------------------------------------------


@dataclass(frozen=True)
class InstanceGenConfig:
    """Knobs for the deterministic piecewise instance generator."""

    seed: int = 0
    max_atoms: int = 3
    max_segments: int = 2
    q_grid: tuple = (
        Fraction(1, 4),
        Fraction(1, 3),
        Fraction(1, 2),
        Fraction(3, 5),
        Fraction(3, 4),
    )
    p_grid: tuple = tuple(Fraction(k, 20) for k in range(1, 20))
    allow_coincident_breakpoints: bool = True

    def __post_init__(self) -> None:
        if self.max_atoms < 0 or self.max_segments < 0:
            raise ValueError("feature caps must be nonnegative")
        if self.max_atoms + self.max_segments == 0:
            raise ValueError("at least one feature type must be allowed")
        for level in tuple(self.q_grid) + tuple(self.p_grid):
            if not 0 < as_fraction(level) < 1:
                raise ValueError(f"grid level {level} must lie strictly in (0, 1)")


def _random_component(
    rng: np.random.Generator, cfg: InstanceGenConfig, offset: Fraction
) -> Piecewise:
    """One piecewise distribution over a half-integer lattice (plus offset).

    Segments occupy distinct unit cells so interiors never overlap; atoms
    favor segment endpoints and midpoints, which is what produces the
    jump-with-mass-below and jump-inside-plateau geometries.
    """
    cells = [int(c) - 2 for c in rng.permutation(5)]
    n_seg = int(rng.integers(0, cfg.max_segments + 1))
    segments: list[tuple[Fraction, Fraction]] = []
    for i in range(n_seg):
        base = Fraction(cells[i]) + offset
        shift = Fraction(1, 4) if rng.random() < 0.3 else Fraction(0)
        width = (Fraction(1, 2), Fraction(3, 4), Fraction(1))[int(rng.integers(0, 3))]
        width = min(width, 1 - shift)
        segments.append((base + shift, base + shift + width))

    candidates = {Fraction(k, 2) + offset for k in range(-4, 7)}
    for left, right in segments:
        candidates |= {left, right, (left + right) / 2}
    ordered = sorted(candidates)
    lo_atoms = 1 if n_seg == 0 else 0
    n_atoms = int(rng.integers(lo_atoms, cfg.max_atoms + 1))
    picks = rng.choice(len(ordered), size=min(n_atoms, len(ordered)), replace=False)
    atoms = [ordered[int(i)] for i in picks]

    n_feat = len(atoms) + len(segments)
    weights = [int(w) for w in rng.integers(1, 5, size=n_feat)]
    total = sum(weights)
    atom_list = [(loc, Fraction(w, total)) for loc, w in zip(atoms, weights)]
    seg_list = [
        (left, right, Fraction(w, total))
        for (left, right), w in zip(segments, weights[len(atoms):])
    ]
    return Piecewise(atom_list, seg_list)


def _choose_level(
    rng: np.random.Generator, m: MixtureSpec, cfg: InstanceGenConfig
) -> Fraction:
    """A level in (0, 1), biased toward the mixture CDF's own critical levels."""
    pieces = merged_distribution(m).quantile_pieces()
    boundary = sorted(
        {lev for piece in pieces for lev in (piece.lev_lo, piece.lev_hi) if 0 < lev < 1}
    )
    jump_mids = [
        (piece.lev_lo + piece.lev_hi) / 2
        for piece in pieces
        if piece.x_left == piece.x_right
    ]
    roll = rng.random()
    if roll < 0.40 and boundary:
        return boundary[int(rng.integers(len(boundary)))]
    if roll < 0.62 and jump_mids:
        return jump_mids[int(rng.integers(len(jump_mids)))]
    return as_fraction(cfg.p_grid[int(rng.integers(len(cfg.p_grid)))])


def _coordinated_pair(
    rng: np.random.Generator,
) -> tuple[Piecewise, Piecewise, Fraction]:
    """A pair sharing one atom location t, with controlled left geometry.

    At least one component gets a segment running into t, so the shared jump
    never sits on a double plateau.  Pairs like this are what populate the
    cells where both CDFs jump at the quantile; the caller aims p at the
    joint jump to land there.
    """
    t = Fraction(int(rng.integers(-2, 3)))
    if rng.random() < 0.5:
        t += Fraction(1, 2)
    pattern = int(rng.integers(0, 3))

    def build(abuts: bool) -> Piecewise:
        atoms = [t]
        segments = []
        if abuts:
            segments.append((t - 1, t))
        elif rng.random() < 0.6:
            atoms.append(t - Fraction(3, 2))
        if rng.random() < 0.5:
            atoms.append(t + Fraction(1, 2) + Fraction(int(rng.integers(0, 2)), 2))
        if rng.random() < 0.35:
            segments.append((t + 1, t + 2))
        weights = [int(w) for w in rng.integers(1, 5, size=len(atoms) + len(segments))]
        total = sum(weights)
        return Piecewise(
            [(loc, Fraction(w, total)) for loc, w in zip(atoms, weights)],
            [
                (left, right, Fraction(w, total))
                for (left, right), w in zip(segments, weights[len(atoms):])
            ],
        )

    return build(pattern in (0, 2)), build(pattern in (1, 2)), t


def _shares_double_plateau_atom(x: Piecewise, y: Piecewise) -> bool:
    """True when some location is an atom of both and flat to the left of both.

    At such a point both component CDFs jump off a plateau together.  If the
    mixture quantile lands there, neither side of the case table applies (the
    case analysis has no feasible cell for it), so the generator refuses to
    emit this geometry.  One side having a segment running into the shared
    atom is enough to clear it.
    """
    shared = {loc for loc, _ in x.atoms} & {loc for loc, _ in y.atoms}
    return any(x.flat_left_of(t)[0] and y.flat_left_of(t)[0] for t in shared)


def generate_instance(cfg: InstanceGenConfig, index: int) -> tuple[MixtureSpec, Fraction]:
    """Deterministic piecewise instance number ``index`` under ``cfg``.

    Each index draws from an independent substream of (seed, index), so
    instances are reproducible individually and order-independent.  Pairs
    whose shared atoms sit on simultaneous plateaus are redrawn; after too
    many rejections the second component is shifted off the lattice, which
    removes coincidences entirely.
    """
    rng = np.random.default_rng([cfg.seed, index])
    if cfg.allow_coincident_breakpoints and rng.random() < 0.18:
        for attempt in range(16):
            x, y, t = _coordinated_pair(rng)
            if not _shares_double_plateau_atom(x, y):
                q = as_fraction(cfg.q_grid[int(rng.integers(len(cfg.q_grid)))])
                m = MixtureSpec(q, x, y)
                lo = mixture_cdf_left_limit(m, t)
                hi = mixture_cdf(m, t)
                if rng.random() < 0.5 and lo > 0:
                    return m, lo
                return m, lo + (hi - lo) * Fraction(int(rng.integers(1, 8)), 8)
    y_offset = Fraction(0) if cfg.allow_coincident_breakpoints else Fraction(1, 7)
    for attempt in range(32):
        x = _random_component(rng, cfg, Fraction(0))
        y = _random_component(rng, cfg, y_offset)
        if not _shares_double_plateau_atom(x, y):
            break
    else:
        x = _random_component(rng, cfg, Fraction(0))
        y = _random_component(rng, cfg, Fraction(1, 7))
    q = as_fraction(cfg.q_grid[int(rng.integers(len(cfg.q_grid)))])
    m = MixtureSpec(q, x, y)
    return m, _choose_level(rng, m, cfg)


# -- cross-checking --------------------------------------------------------------


@dataclass(slots=True)
class CheckReport:
    """Everything one instance revealed, with per-invariant outcomes."""

    s_p: ExtendedReal
    solution: QuantileSolution
    cell_id: str | None
    direct_value: ExtendedReal | None
    exact_match: bool | None
    deviation: float | None
    grid_value: float | None
    grid_ok: bool | None
    classification: ClassificationReport | None
    relations_ok: bool | None
    sandwich_ok: bool
    split_identity_ok: bool
    bracketing_ok: bool
    swap_ok: bool
    transpose_ok: bool | None
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary_line(self, index: int | None = None) -> str:
        head = "" if index is None else f"[{index:05d}] "
        cell = self.cell_id or "-"
        status = "ok" if self.passed else "FAIL: " + "; ".join(self.failures)
        return f"{head}cell={cell} s_p={self.s_p} {status}"

    def to_dict(self) -> dict:
        return {
            "cell": self.cell_id,
            "s_p": str(self.s_p),
            "alpha_star": str(self.solution.alpha_star),
            "beta_star": str(self.solution.beta_star),
            "clamped": self.solution.clamped,
            "direct": None if self.direct_value is None else str(self.direct_value),
            "exact_match": self.exact_match,
            "deviation": self.deviation,
            "grid": self.grid_value,
            "grid_ok": self.grid_ok,
            "relations_ok": self.relations_ok,
            "sandwich_ok": self.sandwich_ok,
            "split_identity_ok": self.split_identity_ok,
            "bracketing_ok": self.bracketing_ok,
            "swap_ok": self.swap_ok,
            "transpose_ok": self.transpose_ok,
            "failures": list(self.failures),
        }


def _leq(a, b, tol) -> bool:
    if a <= b:
        return True
    if tol == 0:
        return False
    try:
        return float(a) <= float(b) + tol
    except OverflowError:
        return False


def cross_check(
    m: MixtureSpec, p, grid_cfg: GridOracleConfig | None = None
) -> CheckReport:
    """Run one instance through the split path, oracles, and all invariants.

    The grid oracle runs only when ``grid_cfg`` is given (it is by far the
    most expensive check).  Mixed piecewise/parametric pairs skip direct
    inversion and classification; the grid oracle is their reference.
    """
    p = as_fraction(p)
    failures: list[str] = []
    sol = split_quantile(m, p)
    s_p = sol.s_p
    exact = m.is_exact
    tol = 0 if exact else PARAMETRIC_AGREE_TOL

    # Dual route: direct CDF inversion.
    direct_value = exact_match = deviation = None
    if 0 < m.q < 1 and (exact or m.is_parametric_pair):
        direct_value = direct_quantile(m, p)
        if exact:
            exact_match = s_p == direct_value
            if not exact_match:
                failures.append(f"split {s_p} != direct {direct_value}")
        else:
            deviation = abs(float(s_p) - float(direct_value))
            if not deviation <= PARAMETRIC_AGREE_TOL:
                failures.append(f"split/direct deviation {deviation:.3e}")

    # Grid oracle.
    grid_value = grid_ok = None
    if grid_cfg is not None:
        grid_value = grid_oracle_quantile(m, p, grid_cfg)
        grid_ok = (
            -GRID_FLOAT_SLACK <= grid_value - float(s_p) <= grid_cfg.step + GRID_FLOAT_SLACK
        )
        if not grid_ok:
            failures.append(f"grid {grid_value} vs s_p {s_p} (step {grid_cfg.step:.3g})")

    # Classification and cell relations.
    classification = None
    relations_ok = None
    if 0 < m.q < 1 and m.x.is_exact == m.y.is_exact:
        try:
            classification = classify(m, p, sol)
        except InternalContradictionError as exc:
            relations_ok = False
            failures.append(f"classification: {exc}")
        else:
            relations_ok = classification.relations_ok
            if not relations_ok:
                bad = [c.relation for c in classification.relations_checked if not c.holds]
                failures.append(f"cell {classification.label.cell_id} relations: {bad}")

    # Sandwich: F_S(s_p-) <= p <= F_S(s_p).
    left = mixture_cdf_left_limit(m, s_p)
    right = mixture_cdf(m, s_p)
    sandwich_ok = _leq(left, p, tol) and _leq(p, right, tol)
    if not sandwich_ok:
        failures.append(f"sandwich {left} <= {p} <= {right} violated")

    # Split identity: q*alpha + (1-q)*beta = p.
    recombined = m.q * sol.alpha_star + (1 - m.q) * sol.beta_star
    if exact:
        split_identity_ok = recombined == p
    else:
        split_identity_ok = abs(float(recombined) - float(p)) <= 1e-12
    if not split_identity_ok:
        failures.append(f"split identity {recombined} != {p}")

    # Bracketing of the split levels by the component CDFs at s_p.
    if 0 < m.q < 1:
        fx_left, fx_right = m.x.cdf_left_limit(s_p), m.x.cdf(s_p)
        gy_left, gy_right = m.y.cdf_left_limit(s_p), m.y.cdf(s_p)
        bracketing_ok = (
            _leq(fx_left, sol.alpha_star, tol)
            and _leq(sol.alpha_star, fx_right, tol)
            and _leq(gy_left, sol.beta_star, tol)
            and _leq(sol.beta_star, gy_right, tol)
        )
        if not bracketing_ok:
            failures.append(
                f"bracketing alpha*={sol.alpha_star} in [{fx_left}, {fx_right}], "
                f"beta*={sol.beta_star} in [{gy_left}, {gy_right}] violated"
            )
    else:
        bracketing_ok = True

    # Swap symmetry: the mixture with roles exchanged has the same quantile,
    # and its classification is the transposed cell.
    swapped_sol = split_quantile(m.swapped(), p)
    if exact:
        swap_ok = swapped_sol.s_p == s_p
    else:
        swap_ok = abs(float(swapped_sol.s_p) - float(s_p)) <= PARAMETRIC_AGREE_TOL
    if not swap_ok:
        failures.append(f"swapped quantile {swapped_sol.s_p} != {s_p}")
    transpose_ok = None
    if classification is not None:
        try:
            swapped_report = classify(m.swapped(), p, swapped_sol)
        except InternalContradictionError as exc:
            transpose_ok = False
            failures.append(f"swapped classification: {exc}")
        else:
            transpose_ok = swapped_report.label == classification.label.transposed()
            if not transpose_ok:
                failures.append(
                    f"swapped cell {swapped_report.label.cell_id} is not the transpose "
                    f"of {classification.label.cell_id}"
                )

    return CheckReport(
        s_p=s_p,
        solution=sol,
        cell_id=None if classification is None else classification.label.cell_id,
        direct_value=direct_value,
        exact_match=exact_match,
        deviation=deviation,
        grid_value=grid_value,
        grid_ok=grid_ok,
        classification=classification,
        relations_ok=relations_ok,
        sandwich_ok=sandwich_ok,
        split_identity_ok=split_identity_ok,
        bracketing_ok=bracketing_ok,
        swap_ok=swap_ok,
        transpose_ok=transpose_ok,
        failures=tuple(failures),
    )


# -- bulk runs --------------------------------------------------------------------


@dataclass(slots=True)
class SuiteResult:
    """Outcome of a randomized verification run."""

    count: int
    census: Counter
    failures: list[tuple[int, tuple[str, ...]]]
    lines: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _suite_task(args) -> tuple[int, str | None, tuple[str, ...], str]:
    cfg, index, grid_steps = args
    m, p = generate_instance(cfg, index)
    grid_cfg = (
        GridOracleConfig.from_mixture(m, steps=grid_steps) if grid_steps else None
    )
    report = cross_check(m, p, grid_cfg)
    return index, report.cell_id, report.failures, report.summary_line(index)


def run_suite(
    cfg: InstanceGenConfig,
    count: int,
    jobs: int = 1,
    grid_steps: int | None = 10_001,
) -> SuiteResult:
    """Cross-check ``count`` generated instances; deterministic merge order."""
    if count < 1:
        raise DomainError(f"instance count must be positive, got {count}")
    tasks = [(cfg, k, grid_steps) for k in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_suite_task, tasks, chunksize=64))
        rows.sort(key=lambda row: row[0])
    else:
        rows = [_suite_task(task) for task in tasks]
    census: Counter = Counter()
    failures = []
    lines = []
    for index, cell_id, fails, line in rows:
        census[cell_id or "-"] += 1
        if fails:
            failures.append((index, fails))
        lines.append(line)
    return SuiteResult(count=count, census=census, failures=failures, lines=lines)
