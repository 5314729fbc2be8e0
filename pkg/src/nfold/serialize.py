"""JSON and SVG output for fold traces.

Floats go through ``repr`` (shortest string that round-trips), so a trace
loads back bit-for-bit.  SVG output is a pure function of the trace.
"""
from __future__ import annotations

import json
import math
from xml.sax.saxutils import escape

from .geom import Line, Point
from .polygon import TotientReport
from .trace import Constraint, FoldStep, FoldTrace, VerificationReport

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


class EmptyDiagramError(ValueError):
    pass


def _entity(name: str, obj) -> dict:
    if isinstance(obj, Point):
        return {"name": name, "type": "point", "x": float(obj.x), "y": float(obj.y)}
    return {"name": name, "type": "line", "a": float(obj.a), "b": float(obj.b), "c": float(obj.c)}


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


def _to_doc(obj) -> dict:
    if isinstance(obj, FoldTrace):
        return {
            "version": SCHEMA_VERSION,
            "type": "trace",
            "fold_width": obj.fold_width,
            "inputs": [_entity(n, e) for n, e in obj.inputs],
            "steps": [{
                "kind": s.kind,
                "op_id": s.op_id,
                "note": s.note,
                "folds": [_entity(n, f) for n, f in s.folds],
                "constraints": [{"kind": c.kind, "args": list(c.args)} for c in s.constraints],
                "derived_points": [_entity(n, p) for n, p in s.derived_points],
            } for s in obj.steps],
        }
    if isinstance(obj, VerificationReport):
        return {
            "version": SCHEMA_VERSION,
            "type": "verification",
            "ok": obj.ok,
            "max_residual": _finite_or_none(obj.max_residual),
            "checked": obj.checked,
            "failures": [{"step": i, "constraint": c, "residual": _finite_or_none(r)}
                         for i, c, r in obj.failures],
        }
    if isinstance(obj, TotientReport):
        return {
            "version": SCHEMA_VERSION,
            "type": "totient",
            "m": obj.m,
            "phi": obj.phi,
            "phi_factors": [list(pe) for pe in obj.phi_factors.factors],
            "largest_prime": obj.largest_prime,
            "required_n": obj.required_n,
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_json(obj) -> bytes:
    return json.dumps(_to_doc(obj), indent=1, allow_nan=False).encode()


def _load_entity(d: dict):
    try:
        if d["type"] == "point":
            return d["name"], Point(float(d["x"]), float(d["y"]))
        if d["type"] == "line":
            return d["name"], Line(float(d["a"]), float(d["b"]), float(d["c"]))
    except (KeyError, TypeError) as e:
        raise SchemaError(f"bad entity {d!r}") from e
    raise SchemaError(f"unknown entity type {d.get('type')!r}")


def load_json(data: bytes | str):
    """Inverse of :func:`emit_json` for traces and verification reports."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"not JSON: {e}") from e
    if not isinstance(doc, dict) or "version" not in doc:
        raise SchemaError("missing 'version'")
    if doc["version"] != SCHEMA_VERSION:
        raise SchemaError(f"unknown schema version {doc['version']!r}")
    kind = doc.get("type")
    try:
        if kind == "trace":
            inputs = tuple(_load_entity(e) for e in doc["inputs"])
            steps = tuple(FoldStep(
                kind=s["kind"],
                folds=tuple(_load_entity(f) for f in s["folds"]),
                constraints=tuple(Constraint(c["kind"], tuple(c["args"])) for c in s["constraints"]),
                derived_points=tuple(_load_entity(p) for p in s["derived_points"]),
                op_id=s.get("op_id"),
                note=s.get("note", ""),
            ) for s in doc["steps"])
            return FoldTrace(inputs, steps)
        if kind == "verification":
            def num(x):
                return math.inf if x is None else float(x)
            return VerificationReport(
                ok=bool(doc["ok"]), max_residual=num(doc["max_residual"]),
                failures=[(f["step"], f["constraint"], num(f["residual"])) for f in doc["failures"]],
                checked=int(doc["checked"]))
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed {kind} document: {e}") from e
    raise SchemaError(f"unknown document type {kind!r}")


# --- SVG -------------------------------------------------------------------

def _clip(line: Line, box) -> tuple[Point, Point] | None:
    """Segment of ``line`` inside the box (xmin, ymin, xmax, ymax)."""
    x0, y0, x1, y1 = box
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    base = line.foot(Point(cx, cy))
    d = line.direction
    lo, hi = -math.inf, math.inf
    for p, v, a, b in ((base.x, d.x, x0, x1), (base.y, d.y, y0, y1)):
        if abs(v) < 1e-15:
            if not a <= p <= b:
                return None
            continue
        t1, t2 = sorted(((a - p) / v, (b - p) / v))
        lo, hi = max(lo, t1), min(hi, t2)
    if lo >= hi:
        return None
    return base + d.scale(lo), base + d.scale(hi)


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def emit_svg(trace: FoldTrace, viewport: tuple[float, float, float, float] | None = None) -> bytes:
    """Render ``trace`` as SVG 1.1.

    Givens are drawn as class ``given``, fold lines as ``fold``, points as
    ``point``.  Edge steps become ``edge`` segments between their endpoints,
    which are marked as ``vertex``.  ``viewport`` is (xmin, ymin, xmax, ymax);
    by default the bounding box of all points plus a 5% margin.
    """
    if not trace.steps:
        raise EmptyDiagramError("trace has no steps to draw")
    env = trace.entities()
    edges = []
    vertex_names: list[str] = []
    for s in trace.steps:
        if s.kind != "edge":
            continue
        ends = [c.args[0] for c in s.constraints if c.kind == "on"]
        edges.append((s.folds[0][0], ends))
        vertex_names += [n for n in ends if n not in vertex_names]
    points = [(n, e) for n, e in env.items() if isinstance(e, Point)]

    if viewport is None:
        xs = [p.x for _, p in points] or [-1.0, 1.0]
        ys = [p.y for _, p in points] or [-1.0, 1.0]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
        if w < 1e-6 * max(1.0, h):
            w = h
        if h < 1e-6 * max(1.0, w):
            h = w
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        x0, x1, y0, y1 = cx - w / 2 * 1.1, cx + w / 2 * 1.1, cy - h / 2 * 1.1, cy + h / 2 * 1.1
    else:
        x0, y0, x1, y1 = viewport
    box = (x0, y0, x1, y1)
    size = max(x1 - x0, y1 - y0)
    stroke = _fmt(size / 400)
    radius = _fmt(size / 150)

    def seg(cls, name, p, q):
        # y is flipped so the diagram reads with +y up
        return (f'<line class="{cls}" id="{escape(name)}" x1="{_fmt(p.x)}" y1="{_fmt(-p.y)}" '
                f'x2="{_fmt(q.x)}" y2="{_fmt(-q.y)}"/>')

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">',
        "<style>"
        f".given{{stroke:#888;stroke-width:{stroke};stroke-dasharray:{_fmt(size / 100)}}}"
        f".fold{{stroke:#c03;stroke-width:{stroke}}}"
        f".edge{{stroke:#024;stroke-width:{_fmt(size / 200)}}}"
        ".point{fill:#333}.vertex{fill:#024}"
        f"text{{font-size:{_fmt(size / 60)}px;font-family:sans-serif}}"
        "</style>",
    ]
    for n, e in trace.inputs:
        if isinstance(e, Line) and (ends := _clip(e, box)):
            out.append(seg("given", n, *ends))
    for i, s in enumerate(trace.steps):
        if s.kind == "edge":
            continue
        out.append(f'<g class="step" data-index="{i}" data-kind="{escape(s.label)}">')
        for n, f in s.folds:
            ends = _clip(f, box)
            if ends:
                out.append(seg("fold", n, *ends))
        out.append("</g>")
    for n, ends in edges:
        if len(ends) == 2:
            out.append(seg("edge", n, env[ends[0]], env[ends[1]]))
    for n, p in points:
        cls = "vertex" if n in vertex_names else "point"
        out.append(f'<circle class="{cls}" id="{escape(n)}" cx="{_fmt(p.x)}" cy="{_fmt(-p.y)}" r="{radius}"/>')
        out.append(f'<text x="{_fmt(p.x)}" y="{_fmt(-p.y)}">{escape(n)}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()
