"""Solvers for the eight single-fold elementary operations.

Each operation takes the given points and lines and returns every fold line
satisfying its incidences.  Operation 7 (placing two points onto two lines at
once) reduces to a binary cubic in the fold direction; the others are
closed-form.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .geom import (DEFAULT_TOL, Line, Parallel, Point, Tolerance, angle_of, intersect,
                   line_distance, line_through, perpendicular_bisector, perpendicular_through,
                   reflect_point)
from .trace import Constraint, FoldStep, TraceBuilder

INFINITE = math.inf

# op -> (points, lines)
ARITY = {1: (2, 0), 2: (0, 2), 3: (0, 1), 4: (2, 0), 5: (1, 1), 6: (2, 1), 7: (2, 2), 8: (1, 2)}
MAX_FINITE = {1: 1, 2: 2, 3: 1, 4: 1, 5: 1, 6: 2, 7: 3, 8: 1}


class AxiomError(ValueError):
    """Arity mismatch or a violated precondition of an operation."""


class Multiplicity(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    EMPTY = "empty"


@dataclass(frozen=True)
class AxiomInstance:
    op_id: int
    points: tuple[Point, ...] = ()
    lines: tuple[Line, ...] = ()

    def __post_init__(self):
        if self.op_id not in ARITY:
            raise AxiomError(f"unknown operation {self.op_id}")
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "lines", tuple(self.lines))
        if (len(self.points), len(self.lines)) != ARITY[self.op_id]:
            npts, nlines = ARITY[self.op_id]
            raise AxiomError(f"op {self.op_id} takes {npts} points and {nlines} lines")


@dataclass(frozen=True)
class AxiomSolution:
    folds: tuple[Line, ...]
    multiplicity_class: Multiplicity = field(default=Multiplicity.FINITE)

    @property
    def count(self) -> float:
        if self.multiplicity_class is Multiplicity.INFINITE:
            return INFINITE
        return len(self.folds)


def _finite(folds, tol) -> AxiomSolution:
    uniq: list[Line] = []
    for f in folds:
        if all(line_distance(f, g) > tol.eps_report for g in uniq):
            uniq.append(f)
    uniq.sort(key=lambda f: (round(angle_of(f), 12), f.c))
    if not uniq:
        return AxiomSolution((), Multiplicity.EMPTY)
    return AxiomSolution(tuple(uniq))


def _scale(*pts: Point) -> float:
    return max([1.0] + [abs(v) for p in pts for v in p.as_tuple()])


def _on(p: Point, line: Line, tol: Tolerance) -> bool:
    return abs(line(p)) <= tol.eps_incidence * max(1.0, abs(p.x), abs(p.y))


def _op1(P, Q, tol):
    if (P - Q).norm() <= tol.eps_incidence:
        raise AxiomError("op 1 needs two distinct points")
    return _finite([perpendicular_bisector(P, Q)], tol)


def _op2(r, s, tol):
    x = intersect(r, s, tol)
    if x is Parallel.COINCIDENT:
        return AxiomSolution((), Multiplicity.INFINITE)
    if x is Parallel.DISTINCT:
        sign = 1.0 if r.a * s.a + r.b * s.b > 0 else -1.0
        return _finite([Line(r.a, r.b, (r.c + sign * s.c) / 2)], tol)
    # with normals aligned the sum is well conditioned even for nearly parallel
    # lines; the other bisector is its perpendicular through the crossing
    sign = 1.0 if r.a * s.a + r.b * s.b >= 0 else -1.0
    b1 = Line(r.a + sign * s.a, r.b + sign * s.b, r.c + sign * s.c)
    return _finite([b1, perpendicular_through(b1, x)], tol)


def _op6(P, Q, r, tol):
    if _on(P, r, tol):
        return AxiomSolution((), Multiplicity.INFINITE)
    rho2 = (P - Q).dot(P - Q)
    d = r(Q)
    foot = r.foot(Q)
    disc = rho2 - d * d
    # signed half-chord; within eps of zero the circle touches r once, at the foot
    h = math.copysign(math.sqrt(abs(disc)), disc)
    if abs(h) <= tol.eps_incidence * _scale(P, Q):
        images = [foot]
    elif h < 0:
        images = []
    else:
        u = r.direction
        images = [foot + u.scale(h), foot - u.scale(h)]
    return _finite([perpendicular_bisector(P, X) for X in images], tol)


def beloch_cubic(P: Point, r: Line, Q: Point, s: Line) -> np.ndarray:
    """Coefficients ``c[i]`` of the binary cubic ``sum c[i] v**i u**(3-i)``.

    Its real projective roots ``(u, v)`` are the directions of folds placing
    ``P`` onto ``r`` and ``Q`` onto ``s``.  With fold normal ``n = (-v, u)``
    the two placements demand the same offset ``h``, which after clearing
    denominators gives

        2 (n.(P-Q)) (n.nr) (n.ns) - r(P) |n|^2 (n.ns) + s(Q) |n|^2 (n.nr) = 0.
    """
    # linear forms in k = v/u, lowest degree first: n.X = X.y - k X.x
    def lin(x, y):
        return np.array([y, -x])

    lpq = lin(P.x - Q.x, P.y - Q.y)
    lr = lin(r.a, r.b)
    ls = lin(s.a, s.b)
    nn = np.array([1.0, 0.0, 1.0])
    P_ = np.polynomial.polynomial
    cubic = P_.polyadd(P_.polysub(2 * P_.polymul(P_.polymul(lpq, lr), ls), r(P) * P_.polymul(nn, ls)),
                       s(Q) * P_.polymul(nn, lr))
    out = np.zeros(4)
    out[:len(cubic)] = cubic
    return out


def _real_roots(coeffs_low_first: np.ndarray) -> list[float]:
    c = np.asarray(coeffs_low_first, dtype=float)
    scale = np.max(np.abs(c))
    if scale == 0:
        return []
    # rounding-level coefficients are zeros; a dropped top term means a root at infinity
    c = np.where(np.abs(c) <= 1e-14 * scale, 0.0, c / scale)
    c = np.trim_zeros(c, "b")
    if len(c) <= 1:
        return []
    out = []
    for z in np.roots(c[::-1]):
        if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            continue
        x = z.real
        d = np.polynomial.polynomial.polyder(c)
        for _ in range(8):
            fx = np.polynomial.polynomial.polyval(x, c)
            dfx = np.polynomial.polynomial.polyval(x, d)
            if dfx == 0:
                break
            step = fx / dfx
            x -= step
            if abs(step) <= 1e-16 * max(1.0, abs(x)):
                break
        out.append(float(x))
    return out


def _op7(P, Q, r, s, tol):
    if _on(P, r, tol) or _on(Q, s, tol):
        raise AxiomError("op 7 needs P off r and Q off s")
    if line_distance(r, s) <= tol.eps_incidence and (P - Q).norm() <= tol.eps_incidence:
        raise AxiomError("op 7 needs r, s distinct or P, Q distinct")
    c = beloch_cubic(P, r, Q, s)
    # directions (1, k) with |k| <= 1, then (j, 1) with |j| < 1 to cover steep folds
    dirs = [(1.0, k) for k in _real_roots(c) if abs(k) <= 1.0]
    dirs += [(j, 1.0) for j in _real_roots(c[::-1]) if abs(j) < 1.0]
    scale = _scale(P, Q)
    folds = []
    for u, v in dirs:
        n = Point(-v, u)
        nr, ns = n.dot(r.normal), n.dot(s.normal)
        nn = n.dot(n)
        if max(abs(nr), abs(ns)) <= 1e-12 * nn:
            # fold perpendicular to both parallel lines: the cubic vanishes trivially
            continue
        # pick the better-conditioned placement to fix the offset
        if abs(nr) >= abs(ns):
            h = n.dot(P) - r(P) * nn / (2 * nr)
        else:
            h = n.dot(Q) - s(Q) * nn / (2 * ns)
        f = Line(n.x, n.y, -h)
        ok_p = abs(r(reflect_point(P, f))) <= tol.eps_incidence * scale
        ok_q = abs(s(reflect_point(Q, f))) <= tol.eps_incidence * scale
        if ok_p and ok_q:
            folds.append(f)
    return _finite(folds, tol)


def _op8(P, r, s, tol):
    # a fold reflecting s onto itself is perpendicular to s, so it slides P along s
    u = s.direction
    ru = r.a * u.x + r.b * u.y
    rp = r(P)
    if abs(ru) <= tol.eps_incidence:
        if abs(rp) <= tol.eps_incidence * _scale(P):
            return AxiomSolution((), Multiplicity.INFINITE)
        return AxiomSolution((), Multiplicity.EMPTY)
    t = -rp / ru
    if abs(t) <= tol.eps_incidence * _scale(P):
        return _finite([perpendicular_through(s, P)], tol)
    return _finite([perpendicular_bisector(P, P + u.scale(t))], tol)


def solve_axiom(inst: AxiomInstance, tol: Tolerance = DEFAULT_TOL) -> AxiomSolution:
    op, pts, lines = inst.op_id, inst.points, inst.lines
    if op == 1:
        return _op1(pts[0], pts[1], tol)
    if op == 2:
        return _op2(lines[0], lines[1], tol)
    if op == 3:
        return AxiomSolution((lines[0],))
    if op == 4:
        if (pts[0] - pts[1]).norm() <= tol.eps_incidence:
            raise AxiomError("op 4 needs two distinct points")
        return AxiomSolution((line_through(pts[0], pts[1]),))
    if op == 5:
        return AxiomSolution((perpendicular_through(lines[0], pts[0]),))
    if op == 6:
        return _op6(pts[0], pts[1], lines[0], tol)
    if op == 7:
        return _op7(pts[0], pts[1], lines[0], lines[1], tol)
    return _op8(pts[0], lines[0], lines[1], tol)


def count_solutions(inst: AxiomInstance, tol: Tolerance = DEFAULT_TOL) -> float:
    """Number of admissible folds, ``math.inf`` for a continuum."""
    return solve_axiom(inst, tol).count


def axiom_constraints(op_id: int, fold: str, points: list[str], lines: list[str]) -> list[Constraint]:
    """The incidences a fold named ``fold`` must satisfy for operation ``op_id``."""
    P = points[0] if points else None
    Q = points[1] if len(points) > 1 else None
    r = lines[0] if lines else None
    s = lines[1] if len(lines) > 1 else None
    table = {
        1: [("maps_to_point", fold, P, Q)],
        2: [("line_maps_to_line", fold, r, s)],
        3: [("coincident", fold, r)],
        4: [("on", P, fold), ("on", Q, fold)],
        5: [("on", P, fold), ("line_maps_to_line", fold, r, r)],
        6: [("on", Q, fold), ("maps_to_line", fold, P, r)],
        7: [("maps_to_line", fold, P, r), ("maps_to_line", fold, Q, s)],
        8: [("maps_to_line", fold, P, r), ("line_maps_to_line", fold, s, s)],
    }
    return [Constraint(k, args) for k, *args in table[op_id]]


def axiom_step(b: TraceBuilder, op_id: int, fold: Line, points: list[str], lines: list[str],
               fold_name: str = "f", images: dict[str, tuple[str, Point]] | None = None,
               note: str = "") -> tuple[str, dict[str, str]]:
    """Append one single-fold step to ``b``.

    ``images`` maps a base name for a derived point to ``(source point name,
    image)``; each is recorded with a ``maps_to_point`` constraint.  Returns
    the fold's name and the assigned names of the derived points.
    """
    fname = b.name(fold_name)
    cons = axiom_constraints(op_id, fname, points, lines)
    derived = []
    names = {}
    for base, (src, img) in (images or {}).items():
        n = names[base] = b.name(base)
        derived.append((n, img))
        cons.append(Constraint("maps_to_point", (fname, src, n)))
    b.add(FoldStep("axiom", ((fname, fold),), tuple(cons), tuple(derived), op_id=op_id, note=note))
    return fname, names


def instance_trace(inst: AxiomInstance, fold: Line):
    """A one-step trace recording ``fold`` as a solution of ``inst``."""
    b = TraceBuilder()
    pnames = [b.given(n, p) for n, p in zip("PQ", inst.points)]
    lnames = [b.given(n, l) for n, l in zip("rs", inst.lines)]
    axiom_step(b, inst.op_id, fold, pnames, lnames, fold_name="f")
    return b.build()
