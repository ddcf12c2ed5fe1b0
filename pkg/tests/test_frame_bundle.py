from fractions import Fraction

import pytest

from orbcheck.atlas import Ball
from orbcheck.catalog import catalog_scenario
from orbcheck.cyclotomic import CycMatrix, CyclotomicNumber, vec
from orbcheck.errors import BasepointOutsideDomain, NoApplicableChange
from orbcheck.frame_bundle import (
    FrameClass,
    UnitaryFrame,
    check_equivariance,
    check_lifted_action_free,
    cocycle_check,
    gluing_apply,
    gluing_choices,
    gluing_from_atlas,
    gluing_well_defined,
    lift_change_of_chart,
    lift_group_action,
    right_action,
    sample_classes,
    sample_frames,
    seifert_fiber_report,
)
from orbcheck.pipeline import build_atlas


@pytest.fixture(scope="module")
def football3():
    return build_atlas(catalog_scenario("football:3"))


@pytest.fixture(scope="module")
def quaternion():
    return build_atlas(catalog_scenario("quaternion-chart"))


def test_frames_must_be_unitary():
    with pytest.raises(ValueError):
        UnitaryFrame("A", vec(4, [0]), CycMatrix(4, [[2]]))


def test_lift_acts_through_linear_part(football3):
    chart = football3.chart("A")
    g = next(m for m in chart.group if not m.is_identity())
    frame = sample_frames(chart, 1)[0]
    moved = lift_group_action(g, frame)
    assert moved.basepoint == g.apply(frame.basepoint)
    assert moved.frame == g @ frame.frame


def test_free_and_equivariant_on_catalog(football3, quaternion):
    for atlas in (football3, quaternion):
        for chart in atlas.charts:
            frames = sample_frames(chart, 10)
            assert check_lifted_action_free(chart.group, frames).passed
            a = CycMatrix.identity(chart.cyclotomic_order, chart.n)
            for g in chart.group:
                for fr in frames:
                    assert check_equivariance(g, a, fr).passed


def test_lift_change_requires_basepoint_in_domain(football3):
    change = football3.changes_between("A", "B")[0]
    chart = football3.chart("A")
    order = chart.cyclotomic_order
    far = UnitaryFrame("A", vec(order, [Fraction(7, 4)]), CycMatrix.identity(order, 1))
    with pytest.raises(BasepointOutsideDomain):
        lift_change_of_chart(change, far)


def test_gluing_well_defined_sees_redundant_change(football3):
    gluing = gluing_from_atlas(football3, "A", "B")
    assert len(gluing.changes) == 2
    cls = sample_classes(football3.chart("A"), gluing.changes[0].source_domain, 1)[0]
    choices = gluing_choices(gluing, cls)
    assert len(choices) == 2  # both declared changes, identity representative
    verdict = gluing_well_defined(gluing, cls)
    assert verdict.passed
    assert "nontrivial" in verdict.detail


def test_gluing_apply_requires_applicable_choice(football3):
    gluing = gluing_from_atlas(football3, "A", "B")
    order = football3.chart("A").cyclotomic_order
    frame = UnitaryFrame("A", vec(order, [0]), CycMatrix.identity(order, 1))
    off_overlap = FrameClass("A", frame, football3.chart("A").group)
    with pytest.raises(NoApplicableChange):
        gluing_apply(gluing, off_overlap)


def test_cocycle_holds_on_football_triple(football3):
    g_ji = gluing_from_atlas(football3, "A", "C")
    g_kj = gluing_from_atlas(football3, "C", "B")
    g_ki = gluing_from_atlas(football3, "A", "B")
    classes = sample_classes(
        football3.chart("A"), g_ki.changes[0].source_domain, 25
    )
    assert cocycle_check(g_ji, g_kj, g_ki, classes).passed


def test_cocycle_detects_broken_gluing(football3):
    g_ji = gluing_from_atlas(football3, "A", "C")
    g_kj = gluing_from_atlas(football3, "C", "B")
    g_ki = gluing_from_atlas(football3, "A", "B")
    # sabotage the direct gluing with a translation
    from orbcheck.atlas import ChangeOfChart

    order = football3.chart("A").cyclotomic_order
    broken = ChangeOfChart(
        "A",
        "B",
        g_ki.changes[0].linear,
        vec(order, [Fraction(1, 8)]),
        g_ki.changes[0].source_domain,
    )
    g_ki_bad = gluing_from_atlas(football3, "A", "B")
    g_ki_bad.changes = [broken]
    classes = sample_classes(football3.chart("A"), broken.source_domain, 5)
    assert not cocycle_check(g_ji, g_kj, g_ki_bad, classes).passed


def test_seifert_fiber_orders(football3, quaternion):
    s, desc = seifert_fiber_report(football3, "A", vec(3, [0]))
    assert s == 3 and "3" in desc
    s, _ = seifert_fiber_report(football3, "C", vec(3, [0]))
    assert s == 1
    s, _ = seifert_fiber_report(quaternion, "Q", vec(4, [0, 0]))
    assert s == 8


def test_right_action_commutes_pointwise(quaternion):
    chart = quaternion.chart("Q")
    frame = sample_frames(chart, 1)[0]
    z = CyclotomicNumber.zeta(4)
    a = CycMatrix(4, [[z, 0], [0, 1]])
    for g in chart.group:
        lhs = lift_group_action(g, right_action(frame, a))
        rhs = right_action(lift_group_action(g, frame), a)
        assert lhs == rhs
