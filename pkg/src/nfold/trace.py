"""Fold traces: the record of every construction, and an independent verifier.

A trace is a list of named givens followed by fold steps.  Each step carries
the fold lines executed simultaneously, the points it derives, and the
incidence constraints it claims.  :func:`verify` recomputes every constraint
from the stored coordinates using only :mod:`nfold.geom` primitives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .geom import (DEFAULT_TOL, Line, Point, Tolerance, line_distance, reflect_line,
                   reflect_point)

Entity = Union[Point, Line]

STEP_KINDS = ("axiom", "lill_bundle", "projection", "rotation", "edge")

# kind -> argument roles ("p" point, "l" line)
CONSTRAINT_SIGNATURES = {
    "on": ("p", "l"),                   # point lies on line
    "maps_to_point": ("l", "p", "p"),   # fold sends point onto point
    "maps_to_line": ("l", "p", "l"),    # fold sends point onto line
    "line_maps_to_line": ("l", "l", "l"),  # fold sends line onto line
    "perpendicular": ("l", "l"),
    "coincident": ("l", "l"),
}


class TraceStructureError(ValueError):
    """Malformed trace: dangling name, wrong entity type, unknown kind."""


@dataclass(frozen=True)
class Constraint:
    kind: str
    args: tuple[str, ...]

    def __post_init__(self):
        sig = CONSTRAINT_SIGNATURES.get(self.kind)
        if sig is None:
            raise TraceStructureError(f"unknown constraint kind {self.kind!r}")
        if len(sig) != len(self.args):
            raise TraceStructureError(f"{self.kind} takes {len(sig)} arguments, got {len(self.args)}")
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return f"{self.kind}({', '.join(self.args)})"


@dataclass(frozen=True)
class FoldStep:
    kind: str
    folds: tuple[tuple[str, Line], ...]
    constraints: tuple[Constraint, ...] = ()
    derived_points: tuple[tuple[str, Point], ...] = ()
    op_id: int | None = None
    note: str = ""

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise TraceStructureError(f"unknown step kind {self.kind!r}")
        if self.kind == "axiom" and self.op_id not in range(1, 9):
            raise TraceStructureError("axiom steps need op_id in 1..8")
        object.__setattr__(self, "folds", tuple(self.folds))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "derived_points", tuple(self.derived_points))

    @property
    def width(self) -> int:
        return len(self.folds)

    @property
    def label(self) -> str:
        return f"axiom({self.op_id})" if self.kind == "axiom" else self.kind


@dataclass(frozen=True)
class FoldTrace:
    inputs: tuple[tuple[str, Entity], ...]
    steps: tuple[FoldStep, ...]

    @property
    def fold_width(self) -> int:
        return max((s.width for s in self.steps), default=0)

    @property
    def fold_count(self) -> int:
        return sum(s.width for s in self.steps)

    def entities(self) -> dict[str, Entity]:
        """All named objects in definition order (no validation)."""
        env = dict(self.inputs)
        for step in self.steps:
            env.update(step.folds)
            env.update(step.derived_points)
        return env

    def __getitem__(self, name: str) -> Entity:
        return self.entities()[name]


class TraceBuilder:
    """Accumulates givens and steps while handing out unique entity names."""

    def __init__(self):
        self._inputs: dict[str, Entity] = {}
        self._steps: list[FoldStep] = []
        self._names: set[str] = set()

    def name(self, base: str) -> str:
        if base not in self._names:
            self._names.add(base)
            return base
        k = 1
        while f"{base}_{k}" in self._names:
            k += 1
        n = f"{base}_{k}"
        self._names.add(n)
        return n

    def given(self, base: str, obj: Entity) -> str:
        # shared givens (O, Q, the x-axis) are reused when their value matches
        if base in self._inputs and self._inputs[base] == obj:
            return base
        n = self.name(base)
        self._inputs[n] = obj
        return n

    def add(self, step: FoldStep) -> FoldStep:
        self._steps.append(step)
        return step

    def build(self) -> FoldTrace:
        return FoldTrace(tuple(self._inputs.items()), tuple(self._steps))


@dataclass
class VerificationReport:
    ok: bool
    max_residual: float
    failures: list[tuple[int, str, float]] = field(default_factory=list)
    checked: int = 0


def _scale(*vals: float) -> float:
    return max(1.0, *(abs(v) for v in vals))


def residual(c: Constraint, env: dict[str, Entity]) -> float:
    """Scale-relative residual of one constraint (0 when exactly satisfied)."""
    ents = [env[n] for n in c.args]
    if c.kind == "on":
        p, l = ents
        return abs(l(p)) / _scale(p.x, p.y, l.c)
    if c.kind == "maps_to_point":
        f, p, q = ents
        img = reflect_point(p, f)
        # rounding in a reflection grows with the fold's distance from O
        return (img - q).norm() / _scale(q.x, q.y, p.x, p.y, f.c)
    if c.kind == "maps_to_line":
        f, p, l = ents
        img = reflect_point(p, f)
        return abs(l(img)) / _scale(img.x, img.y, l.c, f.c)
    if c.kind == "line_maps_to_line":
        f, s, t = ents
        img = reflect_line(s, f)
        return line_distance(img, t) / _scale(t.c, s.c, f.c)
    if c.kind == "perpendicular":
        f, g = ents
        return abs(f.a * g.a + f.b * g.b)
    if c.kind == "coincident":
        f, g = ents
        return line_distance(f, g) / _scale(f.c)
    raise TraceStructureError(c.kind)


def _check_types(c: Constraint, env: dict[str, Entity], idx: int):
    for role, n in zip(CONSTRAINT_SIGNATURES[c.kind], c.args):
        if n not in env:
            raise TraceStructureError(f"step {idx}: {c} references undefined {n!r}")
        want = Point if role == "p" else Line
        if not isinstance(env[n], want):
            raise TraceStructureError(f"step {idx}: {c} expects {want.__name__} for {n!r}")


def verify(trace: FoldTrace, tol: Tolerance = DEFAULT_TOL) -> VerificationReport:
    env: dict[str, Entity] = {}
    for n, obj in trace.inputs:
        if n in env:
            raise TraceStructureError(f"duplicate input {n!r}")
        env[n] = obj
    worst = 0.0
    failures = []
    checked = 0
    for i, step in enumerate(trace.steps):
        if not step.folds:
            raise TraceStructureError(f"step {i} has no fold lines")
        for n, obj in (*step.folds, *step.derived_points):
            if n in env:
                raise TraceStructureError(f"step {i} redefines {n!r}")
            env[n] = obj
        for c in step.constraints:
            _check_types(c, env, i)
            r = residual(c, env)
            if math.isnan(r):
                r = math.inf
            checked += 1
            worst = max(worst, r)
            if r > tol.eps_incidence:
                failures.append((i, str(c), r))
    return VerificationReport(ok=worst <= tol.eps_incidence, max_residual=worst,
                              failures=failures, checked=checked)
