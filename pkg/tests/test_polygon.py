import math
from math import gcd

import mpmath
import pytest
from hypothesis import given, strategies as st

from nfold.geom import Point, UNIT
from nfold.numtheory import UnsupportedInputError, is_prime
from nfold.polygon import (build_period_tower, build_polygon, check_polygon, check_section,
                           construct_cos_prime, euler_phi, factorize, gleason_consistency,
                           primitive_root_mod, rotate_by_fold, step_polynomial, totient_report)
from nfold.trace import verify


def brute_phi(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def brute_order(g, p):
    k, x = 1, g % p
    while x != 1:
        x = x * g % p
        k += 1
    return k


def test_totient_examples():
    assert euler_phi(199) == 198
    assert factorize(198).factors == ((2, 1), (3, 2), (11, 1))
    assert euler_phi(1) == 1
    with pytest.raises(UnsupportedInputError):
        factorize(0)


@given(st.integers(1, 5000))
def test_phi_matches_count(m):
    assert euler_phi(m) == brute_phi(m)
    f = factorize(m)
    assert f.value() == m
    assert f.primes == sorted(f.primes)
    assert all(is_prime(p) for p in f.primes)


def test_predicate_examples():
    assert check_polygon(199, 9).ok and check_polygon(199, 9).required_n == 9
    assert not check_polygon(199, 8)
    assert check_section(11, 9).ok and check_section(11, 9).required_n == 9
    assert not check_section(11, 8)
    rep = totient_report(11)
    assert (rep.phi, rep.largest_prime, rep.required_n) == (10, 5, 3)


@pytest.mark.parametrize("m,n", [(199, 9), (7, 1), (23, 1), (17, 1), (1000, 3)])
def test_gleason_examples(m, n):
    assert gleason_consistency(m, n)


@pytest.mark.parametrize("p,g", [(3, 2), (7, 3), (11, 2), (17, 3), (199, 3)])
def test_primitive_root(p, g):
    assert primitive_root_mod(p) == g
    assert brute_order(g, p) == p - 1
    assert all(brute_order(h, p) < p - 1 for h in range(2, g))


def test_tower_shapes():
    t11 = build_period_tower(11)
    assert t11.level_degrees == (5,)
    want = sorted(2 * math.cos(2 * math.pi * k / 11) for k in range(1, 6))
    assert sorted(float(v) for v in t11.levels[-1]) == pytest.approx(want, abs=1e-15)
    assert float(t11.levels[0][0]) == pytest.approx(-1, abs=1e-30)
    t17 = build_period_tower(17)
    assert t17.level_degrees == (2, 2, 2)
    split = sorted(float(v) for v in t17.levels[1])
    assert split == pytest.approx([(-1 - math.sqrt(17)) / 2, (-1 + math.sqrt(17)) / 2], abs=1e-15)
    t3 = build_period_tower(3)
    assert t3.level_degrees == ()
    assert float(t3.levels[0][0]) == pytest.approx(-1)


def test_step_polynomials():
    assert step_polynomial(build_period_tower(3), 0).coeffs == (1.0, 1.0)
    p11 = step_polynomial(build_period_tower(11), 0)
    assert [round(a) for a in p11.coeffs] == [1, 1, -4, -3, 3, 1]
    assert max(abs(a - round(a)) for a in p11.coeffs) < 1e-12
    p17 = step_polynomial(build_period_tower(17), 0)
    assert [round(a) for a in p17.coeffs] == [1, 1, -4]


@pytest.mark.parametrize("p", [5, 7, 13, 17, 31, 37, 41, 97])
def test_tower_telescopes(p):
    t = build_period_tower(p)
    with mpmath.workdps(40):
        for j, d in enumerate(t.level_degrees):
            for i, parent in enumerate(t.levels[j]):
                assert abs(parent - mpmath.fsum(t.children(j, i))) < 1e-30


@pytest.mark.parametrize("p,want,width", [
    (3, -0.5, 1),
    (5, (math.sqrt(5) - 1) / 4, 1),
    (11, math.cos(2 * math.pi / 11), 3),
    (17, math.cos(2 * math.pi / 17), 1),
])
def test_construct_cos_prime(p, want, width):
    c, trace = construct_cos_prime(p)
    assert c == pytest.approx(want, abs=1e-12)
    assert trace.fold_width == width
    assert verify(trace).ok


def test_rotate_by_fold():
    img, step = rotate_by_fold(UNIT, Point(math.cos(math.pi / 4), math.sin(math.pi / 4)))
    assert img.x == pytest.approx(0, abs=1e-15) and img.y == pytest.approx(1)
    half = 0.7
    img, _ = rotate_by_fold(UNIT, Point(math.cos(half / 2), math.sin(half / 2)))
    assert (img - Point(math.cos(half), math.sin(half))).norm() < 1e-15
    assert step.kind == "rotation" and step.width == 1
    with pytest.raises(ValueError):
        rotate_by_fold(UNIT, Point(0, 0))


def test_eleven_rotations_close_up():
    xi = Point(math.cos(2 * math.pi / 11), math.sin(2 * math.pi / 11))
    prev, cur = UNIT, xi
    for _ in range(10):
        prev, cur = cur, rotate_by_fold(prev, cur)[0]
    assert (cur - UNIT).norm() <= 11 * 1e-8


@pytest.mark.parametrize("m", [3, 4, 5, 6, 8, 11, 12, 15, 17, 30, 49, 51])
def test_polygon_vertices(m):
    res = build_polygon(m)
    assert res.vertices[0] == UNIT
    for k, v in enumerate(res.vertices):
        assert abs(v.x - math.cos(2 * math.pi * k / m)) < 1e-8
        assert abs(v.y - math.sin(2 * math.pi * k / m)) < 1e-8
        assert abs(v.norm() - 1) < 1e-8
    angles = [math.atan2(v.y, v.x) % math.tau for v in res.vertices]
    assert angles == sorted(angles)
    assert res.fold_width <= res.report.required_n
    assert check_polygon(m, res.fold_width)
    assert verify(res.trace).ok
    assert sum(1 for s in res.trace.steps if s.kind == "edge") == m


def test_known_widths():
    assert build_polygon(5).fold_width == 1
    assert build_polygon(11).fold_width == 3


def test_polygon_rejects_small_m():
    with pytest.raises(ValueError):
        build_polygon(2)
