"""Regular polygons under a simultaneous-fold budget.

The budget test looks only at the largest prime factor of the totient.  The
construction realizes it with real Gaussian periods: for an odd prime ``p``
the numbers ``2cos(2*pi*k/p)`` are grouped along a chain of subgroups of the
half-residue group, and each refinement of the chain is one polynomial of
prime degree solved by a Lill fold bundle.  Prime powers add p-sections,
powers of two add bisections, coprime parts are glued by a Bezout identity on
angles, and the remaining vertices come from one reflection each.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .axioms import AxiomInstance, axiom_step, solve_axiom
from .geom import (DEFAULT_TOL, ORIGIN, UNIT, X_AXIS, DegenerateInputError, Point, Tolerance,
                   line_through, perpendicular_bisector,
                   perpendicular_through, reflect_point)
from .lill import Polynomial, fold_budget, lill_step, solve_real_roots
from .numtheory import (Factorization, UnsupportedInputError, euler_phi, factorize, is_prime,
                        primitive_root_mod)
from .section import NumericFailure, _p_sect, _unproject
from .trace import Constraint, FoldStep, FoldTrace, TraceBuilder

__all__ = [
    "Factorization", "TotientReport", "Verdict", "PeriodTower", "PolygonResult",
    "factorize", "euler_phi", "primitive_root_mod", "totient_report", "check_section",
    "check_polygon", "gleason_consistency", "build_period_tower", "step_polynomial",
    "construct_cos_prime", "rotate_by_fold", "build_polygon", "UnsupportedInputError",
]

TOWER_DPS = 40


@dataclass(frozen=True)
class TotientReport:
    m: int
    phi: int
    phi_factors: Factorization
    largest_prime: int
    required_n: int


def totient_report(m: int) -> TotientReport:
    phi = euler_phi(m)
    fac = factorize(phi)
    return TotientReport(m, phi, fac, fac.largest_prime, fold_budget(max(fac.largest_prime, 1)))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    required_n: int
    detail: object

    def __bool__(self):
        return self.ok


def check_section(m: int, n: int) -> Verdict:
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    fac = factorize(m)
    p = fac.largest_prime
    return Verdict(p <= n + 2, fold_budget(p), fac)


def check_polygon(m: int, n: int) -> Verdict:
    if m < 3 or n < 1:
        raise ValueError("need m >= 3 and n >= 1")
    rep = totient_report(m)
    return Verdict(rep.largest_prime <= n + 2, rep.required_n, rep)


def gleason_consistency(m: int, n: int) -> bool:
    """p-section for every prime p | phi(m) must imply the m-gon check."""
    primes = totient_report(m).phi_factors.primes
    can_section = all(check_section(q, n) for q in primes)
    return (not can_section) or check_polygon(m, n).ok


@dataclass(frozen=True)
class PeriodTower:
    p: int
    generator: int
    level_degrees: tuple[int, ...]
    levels: tuple[tuple[mpmath.mpf, ...], ...]

    def children(self, level: int, parent: int) -> list[mpmath.mpf]:
        size = len(self.levels[level])
        d = self.level_degrees[level]
        return [self.levels[level + 1][parent + size * c] for c in range(d)]


def build_period_tower(p: int, tol: Tolerance = DEFAULT_TOL) -> PeriodTower:
    """Real Gaussian periods of ``2cos(2*pi*k/p)`` along a prime-step subgroup chain.

    Half-residues are ordered as ``g**k mod p``; at a level with ``D`` periods,
    period ``i`` sums the terms with ``k = i (mod D)``.
    """
    if p < 3 or not is_prime(p):
        raise ValueError("need an odd prime")
    h = (p - 1) // 2
    g = primitive_root_mod(p)
    degrees = tuple(factorize(h).chain()) if h > 1 else ()
    with mpmath.workdps(TOWER_DPS):
        eta = [2 * mpmath.cos(2 * mpmath.pi * pow(g, k, p) / p) for k in range(h)]
        levels = []
        size = 1
        for d in (1,) + degrees:
            size *= d
            levels.append(tuple(mpmath.fsum(eta[i::size]) for i in range(size)))
    return PeriodTower(p, g, degrees, tuple(levels))


def step_polynomial(tower: PeriodTower, level: int, parent: int = 0) -> Polynomial:
    """Monic polynomial whose roots are the children of one period."""
    if not tower.level_degrees:
        return Polynomial((1.0, -float(tower.levels[0][0])))
    roots = tower.children(level, parent)
    with mpmath.workdps(TOWER_DPS):
        coeffs = [mpmath.mpf(1)]
        for r in roots:
            coeffs = [a - r * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return Polynomial(tuple(float(c) for c in coeffs))


def _cos_prime(b: TraceBuilder, p: int, tol: Tolerance) -> float:
    tower = build_period_tower(p, tol)
    steps = max(1, len(tower.level_degrees))
    root = None
    for j in range(steps):
        poly = step_polynomial(tower, j, 0)
        target = tower.levels[j + 1][0] if tower.level_degrees else tower.levels[0][0]
        sols = solve_real_roots(poly, tol)
        if not sols:
            raise NumericFailure(f"p={p} level {j}: no real root")
        sol = min(sols, key=lambda s: abs(s.root - target))
        if abs(sol.root - target) > tol.eps_report:
            raise NumericFailure(f"p={p} level {j}: root {sol.root} misses period {float(target)}")
        lill_step(b, sol, prefix=f"G{p}L{j}_")
        root = sol.root
    return root / 2


def construct_cos_prime(p: int, tol: Tolerance = DEFAULT_TOL) -> tuple[float, FoldTrace]:
    b = TraceBuilder()
    c = _cos_prime(b, p, tol)
    return c, b.build()


def _rotation_step(b: TraceBuilder, pn: str, P: Point, tn: str, T: Point) -> tuple[str, Point]:
    fold = line_through(ORIGIN, T)
    img = reflect_point(P, fold)
    o = b.given("O", ORIGIN)
    fn, vn = b.name("rot"), b.name("v")
    b.add(FoldStep("rotation", ((fn, fold),), (
        Constraint("on", (o, fn)),
        Constraint("on", (tn, fn)),
        Constraint("maps_to_point", (fn, pn, vn)),
    ), ((vn, img),)))
    return vn, img


def rotate_by_fold(P: Point, theta_point: Point, tol: Tolerance = DEFAULT_TOL) -> tuple[Point, FoldStep]:
    """Reflect ``P`` across the line through O and ``theta_point``.

    With ``P`` at angle ``a`` and ``theta_point`` at ``t`` the image sits at
    ``2t - a``; iterating on consecutive vertices walks around the circle.
    """
    if abs(theta_point.norm() - 1) > tol.eps_incidence:
        raise DegenerateInputError("theta_point must lie on the unit circle")
    b = TraceBuilder()
    pn, tn = b.given("P", P), b.given("T", theta_point)
    _, img = _rotation_step(b, pn, P, tn, theta_point)
    return img, b.build().steps[0]


def _multiple(b, base: tuple[str, Point], k: int) -> tuple[str, Point]:
    """Unit point at ``k`` times the angle of ``base``."""
    q = b.given("Q", UNIT)
    prev, cur = (q, UNIT), base
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, _rotation_step(b, prev[0], prev[1], cur[0], cur[1])
    return cur


def _add_angles(b, x: tuple[str, Point], y: tuple[str, Point], tol) -> tuple[str, Point]:
    q = b.given("Q", UNIT)
    if x[0] == q:
        return y
    if y[0] == q:
        return x
    o = b.given("O", ORIGIN)
    if (x[1] - y[1]).norm() <= tol.eps_incidence:
        fold = line_through(ORIGIN, x[1])
        img = reflect_point(UNIT, fold)
        _, names = axiom_step(b, 4, fold, [o, x[0]], [], fold_name="sum", images={"z": (q, img)})
    else:
        # the fold swapping two unit points passes through O at their mean angle
        fold = perpendicular_bisector(x[1], y[1])
        img = reflect_point(UNIT, fold)
        _, names = axiom_step(b, 1, fold, [x[0], y[0]], [], fold_name="sum", images={"z": (q, img)})
    return names["z"], img


def _two_power(b, a: int, tol) -> tuple[str, Point]:
    o, q, xa = b.given("O", ORIGIN), b.given("Q", UNIT), b.given("x_axis", X_AXIS)
    yax = perpendicular_through(X_AXIS, ORIGIN)
    if a == 1:
        _, names = axiom_step(b, 5, yax, [o], [xa], fold_name="y_axis", images={"w": (q, reflect_point(UNIT, yax))})
        return names["w"], reflect_point(UNIT, yax)
    yn, _ = axiom_step(b, 5, yax, [o], [xa], fold_name="y_axis")
    diag = next(f for f in solve_axiom(AxiomInstance(2, (), (X_AXIS, yax)), tol).folds
                if reflect_point(UNIT, f).y > 0)
    up = reflect_point(UNIT, diag)
    _, names = axiom_step(b, 2, diag, [], [xa, yn], fold_name="diag", images={"w": (q, up)})
    cur = (names["w"], up)
    angle, ln, line = math.pi / 2, yn, yax
    for _ in range(a - 2):
        angle, ln, line, xn, arm = _p_sect(b, angle, 2, tol, ln, line)
        cur = (xn, arm)
    return cur


def _prime_power(b, p: int, a: int, tol) -> tuple[str, Point]:
    c = _cos_prime(b, p, tol)
    ln, line, xn, arm = _unproject(b, c, tol)
    angle = math.atan2(arm.y, arm.x)
    for _ in range(a - 1):
        angle, ln, line, xn, arm = _p_sect(b, angle, p, tol, ln, line)
    return xn, arm


def _mirror_step(b, pts: list[tuple[str, Point]]) -> list[tuple[str, Point]]:
    """Fold along the x-axis, sending each vertex to its conjugate."""
    if not pts:
        return []
    xa = b.given("x_axis", X_AXIS)
    fn = b.name("mirror")
    cons = [Constraint("coincident", (fn, xa))]
    out = []
    for pn, P in pts:
        vn = b.name("v")
        out.append((vn, Point(P.x, -P.y)))
        cons.append(Constraint("maps_to_point", (fn, pn, vn)))
    b.add(FoldStep("axiom", ((fn, X_AXIS),), tuple(cons), tuple(out), op_id=3))
    return out


@dataclass(frozen=True)
class PolygonResult:
    m: int
    vertices: tuple[Point, ...]
    trace: FoldTrace
    fold_width: int
    report: TotientReport

    @property
    def fold_count(self) -> int:
        return self.trace.fold_count


def build_polygon(m: int, tol: Tolerance = DEFAULT_TOL) -> PolygonResult:
    if m < 3:
        raise ValueError("a polygon needs m >= 3")
    report = totient_report(m)
    b = TraceBuilder()
    b.given("O", ORIGIN)
    q = b.given("Q", UNIT)

    parts = []
    for p, a in factorize(m).factors:
        root = _two_power(b, a, tol) if p == 2 else _prime_power(b, p, a, tol)
        parts.append((p**a, root))

    mod, xi = parts[0]
    for mod2, xi2 in parts[1:]:
        # a*mod2 + c*mod = 1 (mod mod*mod2)  =>  2pi/(mod*mod2) = a*2pi/mod + c*2pi/mod2
        a, c = pow(mod2, -1, mod), pow(mod, -1, mod2)
        xi = _add_angles(b, _multiple(b, xi, a), _multiple(b, xi2, c), tol)
        mod *= mod2

    # rotate up to the half-turn only; angle error grows with each rotation
    verts = [(q, UNIT), xi]
    half = m // 2
    while len(verts) <= half:
        verts.append(_rotation_step(b, *verts[-2], *verts[-1]))
    mirror = _mirror_step(b, verts[1:m - half])
    verts += mirror[::-1]

    for k in range(m):
        (n1, p1), (n2, p2) = verts[k], verts[(k + 1) % m]
        en = b.name("edge")
        b.add(FoldStep("edge", ((en, line_through(p1, p2)),),
                       (Constraint("on", (n1, en)), Constraint("on", (n2, en)))))

    trace = b.build()
    if trace.fold_width > report.required_n:
        raise NumericFailure(f"fold width {trace.fold_width} exceeds budget {report.required_n}")
    return PolygonResult(m, tuple(p for _, p in verts), trace, trace.fold_width, report)
