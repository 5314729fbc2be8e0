"""Dividing an angle into equal parts with Chebyshev equations solved by Lill folds.

An angle arrives as a line through the origin.  Two folds drop its cosine
onto the x-axis; ``T_p(x) = cos(theta)`` is solved by the Lill construction;
the chosen root is lifted back to a line by the reverse folds.  Composite
part counts chain one prime section per prime factor, smallest first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .axioms import AxiomInstance, axiom_step, solve_axiom
from .geom import (DEFAULT_TOL, ORIGIN, UNIT, X_AXIS, Line, Point, Tolerance, angle_of,
                   line_at_angle, line_through, normalize_angle, perpendicular_through,
                   reflect_point)
from .lill import Polynomial, fold_budget, lill_step, solve_real_roots
from .numtheory import factorize, is_prime
from .trace import Constraint, FoldStep, FoldTrace, TraceBuilder


class NumericFailure(RuntimeError):
    """A construction step did not reach its target within tolerance."""


class DomainError(ValueError):
    pass


def chebyshev(p: int) -> Polynomial:
    """T_p with integer coefficients, highest degree first."""
    if p < 0:
        raise ValueError("p must be non-negative")
    # low-degree-first integer lists
    prev, cur = [1], [0, 1]
    if p == 0:
        return Polynomial((1,))
    for _ in range(p - 1):
        nxt = [0] + [2 * a for a in cur]
        for i, a in enumerate(prev):
            nxt[i] -= a
        prev, cur = cur, nxt
    return Polynomial(tuple(reversed(cur)))


@dataclass(frozen=True)
class SectionPlan:
    m: int
    prime_chain: tuple[int, ...]
    required_n: int
    per_step_budgets: tuple[int, ...]


def section_plan(m: int) -> SectionPlan:
    if m < 2:
        raise ValueError("m must be at least 2")
    chain = tuple(factorize(m).chain())
    budgets = tuple(fold_budget(p) for p in chain)
    return SectionPlan(m, chain, max(budgets), budgets)


@dataclass(frozen=True)
class AngleValue:
    theta: float
    as_line: Line
    as_cos_point: Point

    @classmethod
    def from_theta(cls, theta: float) -> "AngleValue":
        t = normalize_angle(theta)
        return cls(t, line_at_angle(t), Point(math.cos(t), 0.0))


def _project(b: TraceBuilder, ell: str, line: Line, theta: float, tol: Tolerance) -> tuple[str, Point]:
    o, q, xa = b.given("O", ORIGIN), b.given("Q", UNIT), b.given("x_axis", X_AXIS)
    theta = normalize_angle(theta)
    if min(theta, math.tau - theta) <= tol.eps_incidence:
        return q, UNIT
    if abs(theta - math.pi) <= tol.eps_incidence:
        # straight angle: the y-axis fold sends Q to (-1, 0)
        fold = perpendicular_through(X_AXIS, ORIGIN)
        img = reflect_point(UNIT, fold)
        _, names = axiom_step(b, 5, fold, [o], [xa], fold_name="chi", images={"P": (q, img)})
        return names["P"], img

    chi1 = line_at_angle(theta / 2)
    q1 = reflect_point(UNIT, chi1)
    f1, names = axiom_step(b, 2, chi1, [], [ell, xa], fold_name="chi", images={"Qp": (q, q1)},
                           note="align the angle's arm with OQ")
    q1n = names["Qp"]
    chi2 = perpendicular_through(X_AXIS, q1)
    pt = Point(q1.x, 0.0)
    f2, pn = b.name("chi"), b.name("P")
    b.add(FoldStep("projection", ((f2, chi2),), (
        Constraint("on", (q1n, ell)),
        Constraint("on", (q1n, f2)),
        Constraint("line_maps_to_line", (f2, xa, xa)),
        Constraint("on", (pn, f2)),
        Constraint("on", (pn, xa)),
    ), ((pn, pt),), note=f"drop Q' onto OQ after {f1}"))
    return pn, pt


def project_cos(ell: Line, tol: Tolerance = DEFAULT_TOL, theta: float | None = None) -> tuple[Point, FoldTrace]:
    """Fold the point (cos(theta), 0) from a line through O at angle theta.

    ``theta`` picks the arm of the line when the angle exceeds pi; by default
    the line's own direction angle in [0, pi) is used.
    """
    if abs(ell.c) > tol.eps_incidence:
        raise DomainError("the angle's line must pass through O")
    b = TraceBuilder()
    name = b.given("ell", ell)
    _, pt = _project(b, name, ell, angle_of(ell) if theta is None else theta, tol)
    return pt, b.build()


def _unproject(b: TraceBuilder, x: float, tol: Tolerance) -> tuple[str, Line, str, Point]:
    """Fold a line through O at angle arccos(x); returns (line name, line, arm point name, point)."""
    if abs(x) > 1 + tol.eps_incidence:
        raise DomainError(f"cosine {x} outside [-1, 1]")
    x = max(-1.0, min(1.0, x))
    o, q, xa = b.given("O", ORIGIN), b.given("Q", UNIT), b.given("x_axis", X_AXIS)
    # Q within eps of the vertical line: below resolution, the angle is 0 or pi
    if x >= 1 - tol.eps_incidence:
        return xa, X_AXIS, q, UNIT
    if x <= -1 + tol.eps_incidence:
        fold = perpendicular_through(X_AXIS, ORIGIN)
        img = reflect_point(UNIT, fold)
        _, names = axiom_step(b, 5, fold, [o], [xa], fold_name="chi", images={"X": (q, img)})
        return xa, X_AXIS, names["X"], img

    v = b.given("V", Point(x, 0.0))
    vline = perpendicular_through(X_AXIS, Point(x, 0.0))
    vn, _ = axiom_step(b, 5, vline, [v], [xa], fold_name="vert")
    sol = solve_axiom(AxiomInstance(6, (UNIT, ORIGIN), (vline,)), tol)
    folds = [(f, reflect_point(UNIT, f)) for f in sol.folds]
    folds = [fx for fx in folds if fx[1].y > 0]
    if not folds:
        raise NumericFailure(f"no upper solution when unprojecting {x}")
    chi, img = max(folds, key=lambda fx: fx[1].y)
    _, names = axiom_step(b, 6, chi, [q, o], [vn], fold_name="chi", images={"X": (q, img)})
    xn = names["X"]
    ell = line_through(ORIGIN, img)
    en, _ = axiom_step(b, 4, ell, [o, xn], [], fold_name="ell")
    return en, ell, xn, img


def unproject_cos(x: float, tol: Tolerance = DEFAULT_TOL) -> tuple[Line, FoldTrace]:
    b = TraceBuilder()
    _, line, _, _ = _unproject(b, x, tol)
    return line, b.build()


def _select_root(roots: list[float], theta: float, tol: Tolerance) -> float:
    inside = sorted((r for r in roots if abs(r) <= 1 + tol.eps_report), reverse=True)
    # cos(theta/p) is the largest root for theta <= pi, the runner-up beyond
    rank = 0 if theta <= math.pi + tol.eps_incidence else 1
    if len(inside) <= rank:
        raise NumericFailure(f"no admissible root in [-1, 1] (found {roots})")
    return inside[rank]


def _p_sect(b: TraceBuilder, theta: float, p: int, tol: Tolerance,
            ell: str | None = None, line: Line | None = None) -> tuple[float, str, Line, str, Point]:
    theta = normalize_angle(theta)
    if not 0 < theta < math.tau:
        raise DomainError("angle must lie in (0, 2*pi)")
    if line is None:
        line = line_at_angle(theta)
        ell = b.given("ell", line)
    _project(b, ell, line, theta, tol)
    poly = chebyshev(p) - math.cos(theta)
    sols = solve_real_roots(poly, tol)
    x = _select_root([s.root for s in sols], theta, tol)
    sol = next(s for s in sols if s.root == x)
    lill_step(b, sol, prefix=f"T{p}_")
    en, out, xn, arm = _unproject(b, sol.root, tol)
    return math.atan2(arm.y, arm.x), en, out, xn, arm


def p_sect(theta: float, p: int, tol: Tolerance = DEFAULT_TOL) -> tuple[float, FoldTrace]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    b = TraceBuilder()
    angle, *_ = _p_sect(b, theta, p, tol)
    return angle, b.build()


def m_sect(theta: float, m: int, tol: Tolerance = DEFAULT_TOL) -> tuple[float, FoldTrace, SectionPlan]:
    plan = section_plan(m)
    b = TraceBuilder()
    angle, ell, line = theta, None, None
    for p in plan.prime_chain:
        angle, ell, line, _, _ = _p_sect(b, angle, p, tol, ell, line)
    return angle, b.build(), plan
