"""Real polynomial roots by Lill's right-angle paths, realized as simultaneous folds.

The coefficient path turns left by 90 degrees at every vertex; a negative
coefficient walks its segment backwards and a zero coefficient leaves a
zero-length segment that still turns.  A shot from the origin at angle
``theta`` bounces at right angles off the successive segment lines; it lands
on the terminus exactly when ``-tan(theta)`` is a root.

For degree ``m >= 3`` the interior legs of the shot are the ``m - 2`` fold
lines executed together; for ``m <= 2`` one fold suffices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .geom import DEFAULT_TOL, ORIGIN, Line, Point, Tolerance
from .trace import Constraint, FoldStep, FoldTrace, TraceBuilder

GRID_SAMPLES = 4096
MAX_SHOT_ANGLE = math.radians(89.9)

# segment k runs along _DIRS[k % 4]
_DIRS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))


class OutOfDomainError(ValueError):
    """The shot runs parallel to a segment line (|theta| >= pi/2)."""


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial, coefficients highest degree first."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(a) for a in self.coeffs)
        if not c:
            raise ValueError("empty coefficient list")
        if not abs(c[0]) > 1e-9:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0.0 * x
        for a in self.coeffs:
            acc = acc * x + a
        return acc

    def derivative(self) -> "Polynomial":
        m = self.degree
        return Polynomial(tuple(a * (m - i) for i, a in enumerate(self.coeffs[:-1])))

    def __sub__(self, other: float) -> "Polynomial":
        return Polynomial(self.coeffs[:-1] + (self.coeffs[-1] - other,))

    def __str__(self):
        terms = []
        m = self.degree
        for i, a in enumerate(self.coeffs):
            if a:
                k = m - i
                terms.append(f"{a:+g}" + ("" if k == 0 else "x" if k == 1 else f"x^{k}"))
        return " ".join(terms) or "0"


def rescale(p: Polynomial, s: float) -> Polynomial:
    """``q(y) = p(s*y)``; roots of ``q`` are the roots of ``p`` divided by ``s``."""
    m = p.degree
    return Polynomial(tuple(a * s ** (m - i) for i, a in enumerate(p.coeffs)))


def fold_budget(degree: int) -> int:
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return max(1, degree - 2)


@dataclass(frozen=True)
class LillPath:
    vertices: tuple[Point, ...]
    segment_signs: tuple[int, ...]
    coeffs: tuple[float, ...]
    turn_convention: str = "left"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def terminus(self) -> Point:
        return self.vertices[-1]

    def segment_line(self, k: int) -> Line:
        """Line carrying segment ``k`` (defined even for zero-length segments)."""
        dx, dy = _DIRS[k % 4]
        v = self.vertices[k]
        return Line(-dy, dx, dy * v.x - dx * v.y)


def build_lill_path(p: Polynomial) -> LillPath:
    if p.degree < 1:
        raise ValueError("Lill paths need degree >= 1")
    x = y = 0.0
    verts = [Point(0.0, 0.0)]
    signs = []
    for k, a in enumerate(p.coeffs):
        dx, dy = _DIRS[k % 4]
        x, y = x + a * dx, y + a * dy
        verts.append(Point(x, y))
        signs.append((a > 0) - (a < 0))
    return LillPath(tuple(verts), tuple(signs), tuple(float(a) for a in p.coeffs))


def _shoot(path: LillPath, theta):
    """Bounce the shot through the segment lines; returns (pivots_x, pivots_y, miss)."""
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) >= math.pi / 2):
        raise OutOfDomainError("shot angle must satisfy |theta| < pi/2")
    c, s = np.cos(theta), np.sin(theta)
    px = np.zeros_like(theta)
    py = np.zeros_like(theta)
    dx, dy = c, s
    xs, ys = [], []
    m = path.degree
    for k in range(1, m + 1):
        # segment line k has normal along segment k-1
        nx, ny = _DIRS[(k - 1) % 4]
        v = path.vertices[k]
        lam = ((v.x - px) * nx + (v.y - py) * ny) / (dx * nx + dy * ny)
        px, py = px + lam * dx, py + lam * dy
        xs.append(px)
        ys.append(py)
        dx, dy = -dy, dx
    ux, uy = _DIRS[m % 4]
    t = path.terminus
    miss = (t.x - px) * ux + (t.y - py) * uy
    return xs, ys, miss


def _shoot_mp(path: LillPath, theta) -> tuple[list[tuple], object]:
    """The same shot in extended precision, for one angle (call under workdps)."""
    dx, dy = mpmath.cos(theta), mpmath.sin(theta)
    px = py = vx = vy = mpmath.mpf(0)
    pts = []
    for k, a in enumerate(path.coeffs):
        ux, uy = _DIRS[k % 4]
        vx, vy = vx + a * ux, vy + a * uy
        if k == path.degree:
            break
        # vertex k+1 starts segment line k+1, whose normal is u_k
        lam = ((vx - px) * ux + (vy - py) * uy) / (dx * ux + dy * uy)
        px, py = px + lam * dx, py + lam * dy
        pts.append((px, py))
        dx, dy = -dy, dx
    ux, uy = _DIRS[path.degree % 4]
    return pts, (vx - px) * ux + (vy - py) * uy


def miss_function(path: LillPath, theta):
    """Signed distance along the last segment line from the shot's landing point to T."""
    return _shoot(path, theta)[2]


def _normalized_miss(path: LillPath, theta):
    # miss scaled by cos^m / max|a|: bounded on the whole domain, same sign
    scale = max(abs(a) for a in path.coeffs)
    return miss_function(path, theta) * np.cos(theta) ** path.degree / scale


@dataclass(frozen=True)
class LillSolution:
    root: float
    theta: float
    fold_lines: tuple[Line, ...]
    pivot_points: tuple[Point, ...]
    residual: float
    path: LillPath

    @property
    def width(self) -> int:
        return len(self.fold_lines)


SHOT_DPS = 40


def _solution(path: LillPath, theta: float) -> LillSolution:
    # Steep shots amplify the rounding of theta through every bounce, so the
    # landing angle is polished and the pivots placed in extended precision;
    # each fold then carries only its own rounding.
    with mpmath.workdps(SHOT_DPS):
        t0 = mpmath.mpf(theta)
        miss0 = abs(_shoot_mp(path, t0)[1])
        try:
            t = mpmath.findroot(lambda u: _shoot_mp(path, u)[1], (t0, t0 + 1e-13), solver="secant",
                                  verify=False)
            if not (abs(t - t0) <= 1e-9 and abs(_shoot_mp(path, t)[1]) <= miss0):
                t = t0
        except (ValueError, ZeroDivisionError):
            t = t0
        pts, miss = _shoot_mp(path, t)
        pivots = tuple(Point(float(x), float(y)) for x, y in pts)
        # fold k runs through pivot k at angle t + k*pi/2 (one fold when m <= 2)
        folds = []
        for k in range(1, max(2, path.degree - 1)):
            phi = t + k * mpmath.pi / 2
            na, nb = -mpmath.sin(phi), mpmath.cos(phi)
            x, y = pts[k - 1]
            folds.append(Line(float(na), float(nb), float(-(na * x + nb * y))))
        theta = float(t)
        scale = max(abs(a) for a in path.coeffs)
        res = float(miss * mpmath.cos(t) ** path.degree / scale)
        root = float(-mpmath.tan(t))
    return LillSolution(root, theta, tuple(folds), pivots, res, path)


def _rounding_floor(p: Polynomial, theta: float) -> float:
    """Bound on the rounding error of the normalized miss at ``theta``."""
    m = p.degree
    c, s = abs(math.cos(theta)), abs(math.sin(theta))
    mass = sum(abs(a) * s ** (m - i) * c ** i for i, a in enumerate(p.coeffs))
    return 64 * np.finfo(float).eps * (m + 1) * mass / max(map(abs, p.coeffs))


def _bisect(path, lo, hi, glo):
    lo, hi, glo = np.array(lo), np.array(hi), np.array(glo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        # run to float resolution; eps_root is the loosest acceptable stop
        active = (mid > lo) & (mid < hi)
        if not active.any():
            break
        gm = _normalized_miss(path, mid)
        left = np.sign(gm) == np.sign(glo)
        lo = np.where(active & left, mid, lo)
        glo = np.where(active & left, gm, glo)
        hi = np.where(active & ~left, mid, hi)
    # adjacent floats now; keep the one the shot lands closer with
    if not len(lo):
        return lo
    return np.where(np.abs(_normalized_miss(path, lo)) <= np.abs(_normalized_miss(path, hi)), lo, hi)


def solve_real_roots(p: Polynomial, tol: Tolerance = DEFAULT_TOL,
                     samples: int = GRID_SAMPLES, bound: float = MAX_SHOT_ANGLE) -> list[LillSolution]:
    """All real roots with ``|root| <= tan(bound)`` found by scanning the shot angle.

    Sign changes of the miss on the grid are bisected; grid-local minima of
    ``|miss|`` are located by bisecting the derivative polynomial's own Lill
    shot (its landing angle is the extremum), then either split into two
    brackets (two close roots, when the sign flip clears the rounding floor)
    or accepted as a tangential (double) root when the normalized miss there
    is below ``eps_incidence``.  Roots closer than
    one grid cell with no detectable dip can be missed.
    """
    path = build_lill_path(p)
    grid = np.linspace(-bound, bound, samples)
    g = _normalized_miss(path, grid)
    sg = np.sign(g)

    thetas = list(grid[g == 0.0])
    lo, hi, glo = [], [], []
    for k in np.nonzero(sg[:-1] * sg[1:] < 0)[0]:
        lo.append(grid[k])
        hi.append(grid[k + 1])
        glo.append(g[k])

    ag = np.abs(g)
    dips = np.nonzero((ag[1:-1] <= ag[:-2]) & (ag[1:-1] <= ag[2:])
                      & (sg[:-2] == sg[1:-1]) & (sg[1:-1] == sg[2:]) & (sg[1:-1] != 0))[0] + 1
    if len(dips):
        # a dip's extremum is where the derivative's shot lands: bisect that
        dpath = build_lill_path(p.derivative())
        a, b = grid[dips - 1], grid[dips + 1]
        ga, gb = _normalized_miss(dpath, a), _normalized_miss(dpath, b)
        ok = np.sign(ga) * np.sign(gb) < 0
        t0s = _bisect(dpath, a[ok], b[ok], ga[ok]) if ok.any() else []
        for k, t0 in zip(dips[ok], t0s):
            s = sg[k]
            v0 = float(_normalized_miss(path, np.array([t0]))[0])
            if v0 * s < -_rounding_floor(p, t0):
                lo += [grid[k - 1], t0]
                hi += [t0, grid[k + 1]]
                glo += [g[k - 1], v0]
            elif abs(v0) <= tol.eps_incidence:
                thetas.append(float(t0))

    if lo:
        thetas.extend(_bisect(path, lo, hi, glo).tolist())

    thetas.sort()
    sols: list[LillSolution] = []
    for t in thetas:
        root = -math.tan(t)
        if sols and abs(sols[-1].root - root) <= 10 * tol.eps_root * max(1.0, abs(root)):
            continue
        sols.append(_solution(path, t))
    sols.sort(key=lambda s: s.root)
    return sols


def lill_step(b: TraceBuilder, sol: LillSolution, prefix: str = "") -> list[str]:
    """Record ``sol`` as one simultaneous-fold step; returns the pivot names."""
    path = sol.path
    m = path.degree
    u0 = Point(*_DIRS[0])
    um = Point(*_DIRS[m % 4])
    a_m, a_0 = path.coeffs[0], path.coeffs[-1]
    # O lands on p (parallel to segment 1); T lands on q (parallel to segment m-1)
    line_p = Line(u0.x, u0.y, -2 * a_m)
    vm = path.vertices[m]
    line_q = Line(um.x, um.y, -(vm.dot(um) - a_0))

    o = b.given("O", ORIGIN)
    t = b.given(prefix + "T", path.terminus)
    lp = b.given(prefix + "p", line_p)
    lq = b.given(prefix + "q", line_q)
    seg = {k: b.given(f"{prefix}s{k}", path.segment_line(k)) for k in range(1, m)}

    pivots = [b.name(f"{prefix}P{k}") for k in range(1, m)]
    folds = [b.name(f"{prefix}chi{k}") for k in range(1, len(sol.fold_lines) + 1)]
    cons = []
    for k, pv in enumerate(pivots, start=1):
        cons.append(Constraint("on", (pv, seg[k])))
    cons.append(Constraint("maps_to_line", (folds[0], o, lp)))
    if m <= 2:
        cons.extend(Constraint("on", (pv, folds[0])) for pv in pivots)
        cons.append(Constraint("on", (t, folds[0])))
    else:
        for k, f in enumerate(folds):
            cons.append(Constraint("on", (pivots[k], f)))
            cons.append(Constraint("on", (pivots[k + 1], f)))
            if k:
                cons.append(Constraint("perpendicular", (folds[k - 1], f)))
        cons.append(Constraint("maps_to_line", (folds[-1], t, lq)))
    step = FoldStep("lill_bundle", tuple(zip(folds, sol.fold_lines)), tuple(cons),
                    tuple(zip(pivots, sol.pivot_points[:m - 1])),
                    note=f"root {sol.root!r} of {' '.join(repr(a) for a in path.coeffs)}")
    b.add(step)
    return pivots


def lill_trace(sol: LillSolution) -> FoldTrace:
    b = TraceBuilder()
    lill_step(b, sol)
    return b.build()
