"""Case classification of a mixture instance at its quantile.

Each component CDF is sorted into one of four behaviors at s_p:

    1  continuous at s_p, strictly rising from the left
    2  continuous at s_p, flat on some interval left of s_p
    3  discontinuous at s_p, no flat stretch left of s_p
    4  discontinuous at s_p, flat on some interval left of s_p

(the F behavior is numbered 1-4, the G behavior lettered a-d), giving a
sixteen-cell case table.  Flatness is always judged against the left limit:
F is flat left of s_p when some z < s_p has F(z) = F(s_p-).  Cells (2b) and
(4d) cannot occur; computing one signals an internal contradiction.  Four
cells -- (1d), (3d), (4a), (4c) -- split into sub-cases on whether the
mixture CDF's left limit at s_p falls short of p or hits it exactly.

Every cell asserts a small set of exact relations tying alpha*, beta*, and
s_p to the component CDFs and inverses; ``verify_cell_relations`` evaluates
them (exactly for piecewise pairs, at tolerance ``RELATION_TOL`` otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .distributions import DomainError, ExtendedReal, RealLike, as_fraction
from .mixture import MixtureSpec, mixture_cdf_left_limit
from .split import QuantileSolution, split_quantile

__all__ = [
    "RELATION_TOL",
    "SUBCASE_LT",
    "SUBCASE_EQ",
    "BRANCHING_CELLS",
    "IMPOSSIBLE_CELLS",
    "InternalContradictionError",
    "CaseLabel",
    "RelationCheck",
    "ClassificationReport",
    "classify",
    "verify_cell_relations",
]

#: Absolute tolerance for relation checks on parametric components.
RELATION_TOL = 1e-9

SUBCASE_LT = "F_S(sp-)<p"
SUBCASE_EQ = "F_S(sp-)=p"

#: Cells whose asserted relations depend on whether F_S(s_p-) < p or = p.
BRANCHING_CELLS = frozenset({(1, "d"), (3, "d"), (4, "a"), (4, "c")})

#: Cells that no instance can occupy.
IMPOSSIBLE_CELLS = frozenset({(2, "b"), (4, "d")})


class InternalContradictionError(RuntimeError):
    """A computed classification landed in a provably impossible cell."""


@dataclass(frozen=True, slots=True)
class CaseLabel:
    """Cell of the case table: F behavior 1-4, G behavior a-d, optional sub-case."""

    f_case: int
    g_case: str
    subcase: str | None = None

    @property
    def cell(self) -> str:
        return f"{self.f_case}{self.g_case}"

    @property
    def cell_id(self) -> str:
        return self.cell if self.subcase is None else f"{self.cell}/{self.subcase}"

    def transposed(self) -> "CaseLabel":
        """The label after swapping the component roles (1<->a, ..., 4<->d)."""
        return CaseLabel("abcd".index(self.g_case) + 1, "abcd"[self.f_case - 1], self.subcase)


@dataclass(frozen=True, slots=True)
class RelationCheck:
    """One asserted cell relation and whether it held."""

    relation: str
    holds: bool


@dataclass(slots=True)
class ClassificationReport:
    """Cell label plus the evidence behind it."""

    label: CaseLabel
    s_p: ExtendedReal
    f_flat_witness: ExtendedReal | None
    g_flat_witness: ExtendedReal | None
    relations_checked: list[RelationCheck] = field(default_factory=list)

    @property
    def relations_ok(self) -> bool:
        return all(check.holds for check in self.relations_checked)

    def to_dict(self) -> dict:
        return {
            "cell": self.label.cell_id,
            "s_p": str(self.s_p),
            "f_flat_witness": None if self.f_flat_witness is None else str(self.f_flat_witness),
            "g_flat_witness": None if self.g_flat_witness is None else str(self.g_flat_witness),
            "relations": [[c.relation, c.holds] for c in self.relations_checked],
        }


def _behavior_case(d, s_p) -> tuple[int, ExtendedReal | None]:
    """1-4 from (continuity at s_p, flatness left of s_p), plus the witness."""
    continuous = d.is_continuous_at(s_p)
    flat, witness = d.flat_left_of(s_p)
    if continuous:
        return (2 if flat else 1), witness
    return (4 if flat else 3), witness


def classify(
    m: MixtureSpec, p: RealLike, solution: QuantileSolution | None = None
) -> ClassificationReport:
    """Classify the instance at its quantile and verify the cell's relations.

    Parameters
    ----------
    m, p:
        The mixture and the level, with 0 < q < 1 and 0 < p < 1.
    solution:
        An already-computed ``split_quantile(m, p)`` to reuse; computed fresh
        when omitted.

    Raises
    ------
    InternalContradictionError
        If the computed cell is (2b) or (4d), or the mixture CDF's left limit
        exceeds p (both impossible for a correct quantile).
    """
    p = as_fraction(p)
    if not 0 < m.q < 1:
        raise DomainError(f"classification needs 0 < q < 1, got q = {m.q}")
    if not 0 < p < 1:
        raise DomainError(f"classification needs 0 < p < 1, got p = {p}")
    if m.x.is_exact != m.y.is_exact:
        raise DomainError("classification needs both components piecewise or both parametric")
    if solution is None:
        solution = split_quantile(m, p)

    s_p = solution.s_p
    f_case, f_witness = _behavior_case(m.x, s_p)
    g_index, g_witness = _behavior_case(m.y, s_p)
    g_case = "abcd"[g_index - 1]

    if (f_case, g_case) in IMPOSSIBLE_CELLS:
        raise InternalContradictionError(
            f"computed cell ({f_case}{g_case}) cannot occur; "
            f"instance q={m.q}, p={p}, s_p={s_p}"
        )

    subcase = None
    if (f_case, g_case) in BRANCHING_CELLS:
        left_limit = mixture_cdf_left_limit(m, s_p)
        tol = 0 if m.is_exact else RELATION_TOL
        if left_limit > p + tol:
            raise InternalContradictionError(
                f"mixture CDF left limit {left_limit} exceeds p={p} at s_p={s_p}"
            )
        subcase = SUBCASE_EQ if _matches(left_limit, p, tol) else SUBCASE_LT

    report = ClassificationReport(
        label=CaseLabel(f_case, g_case, subcase),
        s_p=s_p,
        f_flat_witness=f_witness,
        g_flat_witness=g_witness,
    )
    report.relations_checked = verify_cell_relations(report, solution, m, p)
    return report


def _matches(a, b, tol) -> bool:
    if a == b:
        return True
    if tol == 0:
        return False
    try:
        return abs(float(a) - float(b)) <= tol
    except OverflowError:
        return False


def _exceeds(a, b, tol) -> bool:
    """Strictly greater, by more than tol when tolerant."""
    if tol == 0:
        return a > b
    if a == b:
        return False
    fa, fb = float(a), float(b)
    if fa == float("inf") or fb == float("-inf"):
        return fa > fb
    return fa > fb + tol


# The relations each cell asserts.  Tokens: aF = alpha* equals F(s_p),
# bG = beta* equals G(s_p), x=/y= mean s_p equals that component's inverse
# at its split level, x>/y> mean s_p strictly exceeds it.
#
# x@ and y@ are conditional: when both components jump at s_p and one of
# them is flat on the left, that side's split level can land exactly on the
# bottom of its own jump, where its inverse falls below s_p (the level no
# longer clears the jump).  The side attains s_p precisely when its level
# sits strictly above the jump bottom, so the asserted relation switches
# between = and > on that comparison.  The other side carries the quantile
# either way.
_CELL_RELATIONS: dict[tuple, tuple[str, ...]] = {
    (1, "a", None): ("aF", "bG", "x=", "y="),
    (1, "b", None): ("aF", "bG", "x=", "y>"),
    (1, "c", None): ("aF", "x=", "y="),
    (1, "d", SUBCASE_LT): ("aF", "x=", "y="),
    (1, "d", SUBCASE_EQ): ("aF", "x=", "y>"),
    (2, "a", None): ("aF", "bG", "y=", "x>"),
    (2, "c", None): ("aF", "y=", "x>"),
    (2, "d", None): ("aF", "y=", "x>"),
    (3, "a", None): ("bG", "x=", "y="),
    (3, "b", None): ("bG", "x=", "y>"),
    (3, "c", None): ("x=", "y="),
    (3, "d", SUBCASE_LT): ("x=", "y@"),
    (3, "d", SUBCASE_EQ): ("x=", "y>"),
    (4, "a", SUBCASE_LT): ("bG", "y=", "x="),
    (4, "a", SUBCASE_EQ): ("bG", "y=", "x>"),
    (4, "b", None): ("bG", "x=", "y>"),
    (4, "c", SUBCASE_LT): ("y=", "x@"),
    (4, "c", SUBCASE_EQ): ("y=", "x>"),
}

_RELATION_TEXT = {
    "aF": "alpha_star = F(s_p)",
    "bG": "beta_star = G(s_p)",
    "x=": "s_p = Qx(alpha_star)",
    "y=": "s_p = Qy(beta_star)",
    "x>": "s_p > Qx(alpha_star)",
    "y>": "s_p > Qy(beta_star)",
}


def verify_cell_relations(
    report: ClassificationReport,
    solution: QuantileSolution,
    m: MixtureSpec,
    p: RealLike,
) -> list[RelationCheck]:
    """Evaluate every relation the report's cell asserts.

    Equalities and strict inequalities are exact for piecewise pairs and use
    ``RELATION_TOL`` otherwise.  Unknown cells (the impossible ones) raise.
    """
    label = report.label
    key = (label.f_case, label.g_case, label.subcase)
    if key not in _CELL_RELATIONS:
        raise InternalContradictionError(f"no relations defined for cell {label.cell_id}")
    tol = 0 if m.is_exact else RELATION_TOL
    s_p = solution.s_p
    values = {
        "aF": lambda: _matches(solution.alpha_star, m.x.cdf(s_p), tol),
        "bG": lambda: _matches(solution.beta_star, m.y.cdf(s_p), tol),
        "x=": lambda: _matches(s_p, m.x.quantile(solution.alpha_star), tol),
        "y=": lambda: _matches(s_p, m.y.quantile(solution.beta_star), tol),
        "x>": lambda: _exceeds(s_p, m.x.quantile(solution.alpha_star), tol),
        "y>": lambda: _exceeds(s_p, m.y.quantile(solution.beta_star), tol),
    }
    checks = []
    for token in _CELL_RELATIONS[key]:
        if token == "x@":
            above = _exceeds(solution.alpha_star, m.x.cdf_left_limit(s_p), tol)
            token = "x=" if above else "x>"
            text = _RELATION_TEXT[token] + (
                " [alpha_star > F(s_p-)]" if above else " [alpha_star = F(s_p-)]"
            )
        elif token == "y@":
            above = _exceeds(solution.beta_star, m.y.cdf_left_limit(s_p), tol)
            token = "y=" if above else "y>"
            text = _RELATION_TEXT[token] + (
                " [beta_star > G(s_p-)]" if above else " [beta_star = G(s_p-)]"
            )
        else:
            text = _RELATION_TEXT[token]
        checks.append(RelationCheck(text, bool(values[token]())))
    return checks
