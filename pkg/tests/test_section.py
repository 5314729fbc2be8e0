import math

import pytest
from hypothesis import given, strategies as st

from nfold.geom import angle_of, line_at_angle
from nfold.numtheory import UnsupportedInputError
from nfold.section import (DomainError, AngleValue, chebyshev, m_sect, p_sect, project_cos,
                           section_plan, unproject_cos)
from nfold.trace import verify
from oracles import chebyshev_closed


def test_chebyshev_examples():
    assert chebyshev(0).coeffs == (1.0,)
    assert chebyshev(1).coeffs == (1.0, 0.0)
    assert chebyshev(3).coeffs == (4.0, 0.0, -3.0, 0.0)
    assert chebyshev(5).coeffs == (16.0, 0.0, -20.0, 0.0, 5.0, 0.0)


@pytest.mark.parametrize("p", range(14))
@given(st.floats(0, math.pi))
def test_chebyshev_identity(p, alpha):
    assert abs(chebyshev(p)(math.cos(alpha)) - chebyshev_closed(p, math.cos(alpha))) <= 1e-10


@pytest.mark.parametrize("deg,want", [(45, math.sqrt(2) / 2), (90, 0.0), (60, 0.5)])
def test_project_cos(deg, want):
    pt, trace = project_cos(line_at_angle(math.radians(deg)))
    assert pt.x == pytest.approx(want, abs=1e-12)
    assert pt.y == 0
    assert verify(trace).ok


def test_project_cos_x_axis_is_free():
    pt, trace = project_cos(line_at_angle(0.0))
    assert pt.as_tuple() == (1.0, 0.0)
    assert trace.steps == ()


def test_project_cos_reflex_arm():
    pt, trace = project_cos(line_at_angle(math.radians(30)), theta=math.radians(210))
    assert pt.x == pytest.approx(math.cos(math.radians(210)), abs=1e-12)
    assert verify(trace).ok


@pytest.mark.parametrize("x,deg", [(0.5, 60), (1.0, 0), (math.cos(math.radians(20)), 20), (-1.0, 180), (0.0, 90)])
def test_unproject_cos(x, deg):
    line, trace = unproject_cos(x)
    got = math.degrees(angle_of(line)) % 180
    assert min(abs(got - deg % 180), 180 - abs(got - deg % 180)) < 1e-9
    assert verify(trace).ok


def test_unproject_domain():
    with pytest.raises(DomainError):
        unproject_cos(1.1)


def test_trisect_60():
    ang, trace = p_sect(math.radians(60), 3)
    assert math.cos(ang) == pytest.approx(0.9396926207859084, abs=1e-12)
    assert math.degrees(ang) == pytest.approx(20, abs=1e-9)
    assert trace.fold_width == 1
    assert verify(trace).ok


def test_bisect_90():
    ang, trace = p_sect(math.pi / 2, 2)
    assert ang == pytest.approx(math.pi / 4, abs=1e-12)


def test_eleven_section_width():
    ang, trace = p_sect(1.0, 11)
    assert ang == pytest.approx(1 / 11, abs=1e-11)
    assert trace.fold_width == 9
    assert verify(trace).ok


def test_p_sect_rejects_composite():
    with pytest.raises(ValueError):
        p_sect(1.0, 4)


def test_m_sect_examples():
    ang, trace, plan = m_sect(math.radians(60), 4)
    assert math.degrees(ang) == pytest.approx(15, abs=1e-9)
    assert plan.prime_chain == (2, 2)
    assert section_plan(11).required_n == 9
    assert section_plan(5).required_n == 3
    assert section_plan(12).per_step_budgets == (1, 1, 1)
    with pytest.raises(UnsupportedInputError):
        section_plan(10**9 + 7)


def test_reflex_angles_take_the_runner_up_root():
    for deg in (200.0, 270.0, 359.0):
        ang, trace = p_sect(math.radians(deg), 3)
        assert math.degrees(ang) == pytest.approx(deg / 3, abs=1e-8)
        assert verify(trace).ok


def test_angle_value_representations_agree():
    v = AngleValue.from_theta(1.0)
    assert v.as_cos_point.x == pytest.approx(math.cos(1.0))
    assert angle_of(v.as_line) == pytest.approx(1.0)


@given(st.floats(1e-3, math.pi - 1e-3), st.integers(2, 20))
def test_section_identity(theta, m):
    ang, trace, plan = m_sect(theta, m)
    assert abs(m * ang - theta) <= m * 1e-8
    assert 0 < ang < math.pi / max(plan.prime_chain[0], 1) + 1e-12
    assert trace.fold_width == plan.required_n
    assert verify(trace).ok


@given(st.floats(1e-3, math.pi - 1e-3), st.sampled_from([2, 3, 5, 7]))
def test_selected_root_is_the_largest(theta, p):
    from nfold.lill import solve_real_roots
    roots = [s.root for s in solve_real_roots(chebyshev(p) - math.cos(theta))]
    ang, _ = p_sect(theta, p)
    assert math.cos(ang) == pytest.approx(max(r for r in roots if abs(r) <= 1), abs=1e-9)
