"""Case-table classification: cells, sub-cases, relations, transposition."""

from fractions import Fraction as F

import pytest

from mixquant.classify import (
    CaseLabel,
    InternalContradictionError,
    classify,
    verify_cell_relations,
)
from mixquant.distributions import DomainError, Normal, Piecewise, Uniform
from mixquant.mixture import MixtureSpec
from mixquant.split import split_quantile
from mixquant.verification import InstanceGenConfig, generate_instance

# ---------------------------------------------------------------------------
# frozen cells
# ---------------------------------------------------------------------------


def test_shifted_uniforms_classify_1b():
    m = MixtureSpec(F(1, 2), Piecewise.uniform(0, 1), Piecewise.uniform(1, 2))
    report = classify(m, F(1, 4))
    assert report.label.cell == "1b"
    assert report.label.subcase is None
    assert report.f_flat_witness is None
    assert report.g_flat_witness is not None and report.g_flat_witness < F(1, 2)
    assert report.relations_ok


def test_two_point_masses_classify_4b():
    m = MixtureSpec(F(1, 2), Piecewise.point_mass(0), Piecewise.point_mass(1))
    report = classify(m, F(1, 4))
    assert report.label.cell == "4b"
    assert report.f_flat_witness < 0
    assert report.g_flat_witness < 0
    texts = {c.relation: c.holds for c in report.relations_checked}
    assert texts["beta_star = G(s_p)"]
    assert texts["s_p = Qx(alpha_star)"]
    assert texts["s_p > Qy(beta_star)"]  # 0 > Qy(0) = -inf
    assert report.relations_ok


def test_atom_against_uniform_classifies_2a():
    m = MixtureSpec(F(1, 2), Piecewise.point_mass(0), Piecewise.uniform(0, 1))
    report = classify(m, F(3, 5))
    assert report.label.cell == "2a"
    texts = {c.relation: c.holds for c in report.relations_checked}
    assert texts["alpha_star = F(s_p)"]
    assert texts["s_p = Qy(beta_star)"]
    assert texts["s_p > Qx(alpha_star)"]
    assert report.relations_ok


def test_normal_pair_classifies_1a():
    m = MixtureSpec(F(3, 10), Normal(0, 1), Normal(1, 1))
    report = classify(m, F(9, 10))
    assert report.label.cell == "1a"
    assert report.label.subcase is None
    assert report.relations_ok


def test_subcase_splits_on_the_left_limit():
    # shared atom at 1 where X runs a segment into it and Y is flat
    x = Piecewise(atoms=[(1, F(1, 2))], segments=[(0, 1, F(1, 2))])
    y = Piecewise(atoms=[(-1, F(1, 2)), (1, F(1, 2))])
    m = MixtureSpec(F(1, 2), x, y)
    # F_S(1-) = 1/2: hitting it exactly gives the "=" branch of (3d)
    eq = classify(m, F(1, 2))
    assert eq.label.cell == "3d" and eq.label.subcase == "F_S(sp-)=p"
    lt = classify(m, F(3, 4))
    assert lt.label.cell == "3d" and lt.label.subcase == "F_S(sp-)<p"


# ---------------------------------------------------------------------------
# the conditional relation in (3d)/(4c) below the left limit
# ---------------------------------------------------------------------------


def test_4c_with_split_level_on_the_jump_bottom():
    # both components jump at 1/2; X is flat on the left, Y runs a segment in.
    # the line of feasible splits rides Y's jump all the way down, so the
    # x-side level lands exactly on F(s_p-) and X does not attain s_p.
    x = Piecewise(
        atoms=[(F(1, 2), F(3, 8))],
        segments=[(-1, 0, F(3, 8)), (F(9, 4), 3, F(1, 4))],
    )
    y = Piecewise(
        atoms=[(-2, F(3, 7)), (F(1, 2), F(2, 7))],
        segments=[(F(1, 4), F(3, 4), F(1, 7)), (2, F(5, 2), F(1, 7))],
    )
    m = MixtureSpec(F(1, 3), x, y)
    p = F(3, 5)
    sol = split_quantile(m, p)
    assert sol.s_p == F(1, 2)
    assert sol.alpha_star == m.x.cdf_left_limit(sol.s_p)  # bottom of X's jump
    assert not sol.x_attains and sol.y_attains
    report = classify(m, p, sol)
    assert report.label.cell == "4c"
    assert report.label.subcase == "F_S(sp-)<p"
    texts = {c.relation: c.holds for c in report.relations_checked}
    assert texts["s_p = Qy(beta_star)"]
    assert texts["s_p > Qx(alpha_star) [alpha_star = F(s_p-)]"]
    assert report.relations_ok


def test_4c_with_split_level_inside_the_jump():
    # same cell but Y keeps mass above s_p, pinning the x-side level
    # strictly inside X's jump, so X attains
    x = Piecewise(atoms=[(1, F(1, 2)), (-3, F(1, 2))])
    y = Piecewise(atoms=[(1, F(1, 4))], segments=[(0, 1, F(1, 4)), (2, 3, F(1, 2))])
    m = MixtureSpec(F(1, 2), x, y)
    p = F(5, 8)
    sol = split_quantile(m, p)
    report = classify(m, p, sol)
    assert report.label.cell == "4c"
    assert report.label.subcase == "F_S(sp-)<p"
    texts = {c.relation: c.holds for c in report.relations_checked}
    assert texts["s_p = Qy(beta_star)"]
    assert texts["s_p = Qx(alpha_star) [alpha_star > F(s_p-)]"]
    assert report.relations_ok


# ---------------------------------------------------------------------------
# impossible-cell tripwire
# ---------------------------------------------------------------------------


def test_shared_isolated_atoms_raise_a_contradiction():
    # both CDFs jump off a plateau at the same point: outside the case table
    m = MixtureSpec(F(1, 2), Piecewise.point_mass(0), Piecewise.point_mass(0))
    with pytest.raises(InternalContradictionError):
        classify(m, F(1, 4))


# ---------------------------------------------------------------------------
# label mechanics and preconditions
# ---------------------------------------------------------------------------


def test_label_transposition_mapping():
    label = CaseLabel(2, "c", None)
    assert label.transposed() == CaseLabel(3, "b", None)
    branched = CaseLabel(3, "d", "F_S(sp-)=p")
    assert branched.transposed() == CaseLabel(4, "c", "F_S(sp-)=p")
    assert branched.cell_id == "3d/F_S(sp-)=p"


def test_classify_rejects_degenerate_weights_and_levels():
    d = Piecewise.point_mass(0)
    with pytest.raises(DomainError):
        classify(MixtureSpec(1, d, d), F(1, 2))
    m = MixtureSpec(F(1, 2), d, Piecewise.point_mass(1))
    with pytest.raises(DomainError):
        classify(m, 0)


def test_classify_rejects_mixed_component_kinds():
    m = MixtureSpec(F(1, 2), Piecewise.point_mass(0), Normal(0, 1))
    with pytest.raises(DomainError):
        classify(m, F(1, 2))


def test_relation_list_matches_report_cell():
    m = MixtureSpec(F(1, 2), Piecewise.uniform(0, 1), Piecewise.uniform(1, 2))
    report = classify(m, F(1, 4))
    sol = split_quantile(m, F(1, 4))
    rechecked = verify_cell_relations(report, sol, m, F(1, 4))
    assert [c.relation for c in rechecked] == [
        c.relation for c in report.relations_checked
    ]
    assert all(c.holds for c in rechecked)


# ---------------------------------------------------------------------------
# randomized transposition property
# ---------------------------------------------------------------------------


def test_swap_transposes_the_cell_on_random_instances():
    cfg = InstanceGenConfig(seed=555)
    for index in range(200):
        m, p = generate_instance(cfg, index)
        if not 0 < m.q < 1:
            continue
        report = classify(m, p)
        swapped = classify(m.swapped(), p)
        assert swapped.label == report.label.transposed(), f"instance {index}"
        assert swapped.s_p == report.s_p, f"instance {index}"


def test_relations_hold_on_random_instances():
    cfg = InstanceGenConfig(seed=556)
    for index in range(200):
        m, p = generate_instance(cfg, index)
        report = classify(m, p)
        assert report.relations_ok, (
            f"instance {index}: "
            f"{[(c.relation, c.holds) for c in report.relations_checked]}"
        )
