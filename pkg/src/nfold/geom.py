"""Plane primitives: points, normalized lines, reflections and intersections.

Lines are stored in implicit form ``a*x + b*y + c = 0`` with ``a**2 + b**2 == 1``
and a canonical sign (``a > 0``, or ``a == 0`` and ``b > 0``), so two lines
describing the same locus compare equal up to rounding.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class DegenerateInputError(ValueError):
    """Raised when a primitive is asked for an undefined object (e.g. a line through one point)."""


@dataclass(frozen=True)
class Tolerance:
    eps_incidence: float = 1e-9
    eps_root: float = 1e-11
    eps_report: float = 1e-8

    def __post_init__(self):
        if min(self.eps_incidence, self.eps_root, self.eps_report) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if not self.eps_root <= self.eps_incidence <= self.eps_report:
            raise ValueError("expected eps_root <= eps_incidence <= eps_report")

    @classmethod
    def from_incidence(cls, eps: float) -> "Tolerance":
        """Build a tolerance record around a user-chosen incidence threshold."""
        d = cls()
        return cls(eps_incidence=eps, eps_root=min(d.eps_root, eps), eps_report=max(d.eps_report, eps))


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateInputError(f"non-finite point ({self.x}, {self.y})")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, k: float) -> "Point":
        return Point(k * self.x, k * self.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


ORIGIN = Point(0.0, 0.0)
UNIT = Point(1.0, 0.0)


@dataclass(frozen=True)
class Line:
    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        r = math.hypot(a, b)
        if r == 0.0 or not math.isfinite(r) or not math.isfinite(c):
            raise DegenerateInputError(f"not a line: ({a}, {b}, {c})")
        if abs(r - 1.0) > 4e-16:
            a, b, c = a / r, b / r, c / r
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        object.__setattr__(self, "a", a + 0.0)
        object.__setattr__(self, "b", b + 0.0)
        object.__setattr__(self, "c", c + 0.0)

    def __call__(self, p: Point) -> float:
        """Signed distance from ``p`` to the line."""
        return self.a * p.x + self.b * p.y + self.c

    @property
    def normal(self) -> Point:
        return Point(self.a, self.b)

    @property
    def direction(self) -> Point:
        return Point(self.b, -self.a)

    def foot(self, p: Point) -> Point:
        """Orthogonal projection of ``p`` onto the line."""
        d = self(p)
        return Point(p.x - d * self.a, p.y - d * self.b)

    def point(self) -> Point:
        """The point of the line closest to the origin."""
        return Point(-self.c * self.a, -self.c * self.b)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


X_AXIS = Line(0.0, 1.0, 0.0)


class Parallel(enum.Enum):
    DISTINCT = "distinct"
    COINCIDENT = "coincident"


def line_distance(l1: Line, l2: Line) -> float:
    """Max-abs difference of normalized coefficients, blind to the canonical sign flip."""
    d1 = max(abs(l1.a - l2.a), abs(l1.b - l2.b), abs(l1.c - l2.c))
    d2 = max(abs(l1.a + l2.a), abs(l1.b + l2.b), abs(l1.c + l2.c))
    return min(d1, d2)


def reflect_point(p: Point, f: Line) -> Point:
    d = 2.0 * f(p)
    return Point(p.x - d * f.a, p.y - d * f.b)


def reflect_line(s: Line, f: Line) -> Line:
    # normal reflects as a vector, one point of s reflects as a point
    k = 2.0 * (s.a * f.a + s.b * f.b)
    na, nb = s.a - k * f.a, s.b - k * f.b
    q = reflect_point(s.point(), f)
    return Line(na, nb, -(na * q.x + nb * q.y))


def intersect(l1: Line, l2: Line, tol: Tolerance = DEFAULT_TOL) -> Point | Parallel:
    det = l1.a * l2.b - l2.a * l1.b
    if abs(det) > tol.eps_incidence:
        x = (l1.b * l2.c - l2.b * l1.c) / det
        y = (l2.a * l1.c - l1.a * l2.c) / det
        return Point(x, y)
    # same normal up to sign: compare offsets on a common orientation
    sign = 1.0 if l1.a * l2.a + l1.b * l2.b > 0 else -1.0
    if abs(l1.c - sign * l2.c) <= tol.eps_incidence * max(1.0, abs(l1.c)):
        return Parallel.COINCIDENT
    return Parallel.DISTINCT


def line_through(p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Line:
    dx, dy = q.x - p.x, q.y - p.y
    if math.hypot(dx, dy) <= tol.eps_incidence:
        raise DegenerateInputError("line through coincident points")
    return Line(-dy, dx, dy * p.x - dx * p.y)


def perpendicular_through(line: Line, p: Point) -> Line:
    a, b = line.b, -line.a
    return Line(a, b, -(a * p.x + b * p.y))


def parallel_through(line: Line, p: Point) -> Line:
    return Line(line.a, line.b, -(line.a * p.x + line.b * p.y))


def line_at_angle(theta: float, p: Point = ORIGIN) -> Line:
    a, b = -math.sin(theta), math.cos(theta)
    return Line(a, b, -(a * p.x + b * p.y))


def angle_of(line: Line) -> float:
    """Direction angle of the line in [0, pi)."""
    t = math.atan2(-line.a, line.b) % math.pi
    return 0.0 if t >= math.pi else t


def perpendicular_bisector(p: Point, q: Point, tol: Tolerance = DEFAULT_TOL) -> Line:
    dx, dy = q.x - p.x, q.y - p.y
    if math.hypot(dx, dy) <= tol.eps_incidence:
        raise DegenerateInputError("bisector of coincident points")
    mx, my = (p.x + q.x) / 2, (p.y + q.y) / 2
    return Line(dx, dy, -(dx * mx + dy * my))


def normalize_angle(theta: float) -> float:
    """Map an angle to [0, 2*pi)."""
    t = theta % math.tau
    return 0.0 if t >= math.tau else t


def unit_point(theta: float) -> Point:
    return Point(math.cos(theta), math.sin(theta))
