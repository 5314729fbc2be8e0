import json
import math

import pytest

from nfold.axioms import AxiomInstance, instance_trace, solve_axiom
from nfold.geom import Line, Point
from nfold.lill import Polynomial, lill_trace, solve_real_roots
from nfold.polygon import build_polygon, totient_report
from nfold.section import m_sect, p_sect
from nfold.serialize import EmptyDiagramError, SchemaError, emit_json, emit_svg, load_json
from nfold.trace import (Constraint, FoldStep, FoldTrace, TraceBuilder, TraceStructureError,
                         VerificationReport, verify)


def op1_trace():
    inst = AxiomInstance(1, (Point(0, 0), Point(2, 0)))
    return instance_trace(inst, solve_axiom(inst).folds[0])


def perturb(trace, step_idx=0, fold_idx=0, delta=1e-3):
    steps = list(trace.steps)
    s = steps[step_idx]
    folds = list(s.folds)
    n, f = folds[fold_idx]
    folds[fold_idx] = (n, Line(f.a, f.b, f.c + delta))
    steps[step_idx] = FoldStep(s.kind, tuple(folds), s.constraints, s.derived_points, s.op_id, s.note)
    return FoldTrace(trace.inputs, tuple(steps))


def test_op1_trace_verifies():
    rep = verify(op1_trace())
    assert rep.ok and rep.max_residual < 1e-15 and rep.checked == 1


def test_perturbation_is_caught():
    rep = verify(perturb(op1_trace()))
    assert not rep.ok
    assert rep.failures[0][0] == 0
    assert "maps_to_point" in rep.failures[0][1]
    assert rep.max_residual == pytest.approx(1e-3, rel=0.01)


def test_trisection_trace():
    _, trace = p_sect(math.radians(60), 3)
    assert verify(trace).ok
    assert trace.fold_width == 1


def test_structural_errors():
    b = TraceBuilder()
    b.given("P", Point(0, 0))
    b.add(FoldStep("axiom", (("f", Line(1, 0, 0)),), (Constraint("on", ("Z", "f")),), op_id=4))
    with pytest.raises(TraceStructureError):
        verify(b.build())
    b = TraceBuilder()
    b.given("P", Point(0, 0))
    b.add(FoldStep("axiom", (("f", Line(1, 0, 0)),), (Constraint("on", ("f", "f")),), op_id=4))
    with pytest.raises(TraceStructureError):
        verify(b.build())
    with pytest.raises(TraceStructureError):
        verify(FoldTrace((), (FoldStep("edge", ()),)))
    with pytest.raises(TraceStructureError):
        FoldStep("bogus", (("f", Line(1, 0, 0)),))
    with pytest.raises(TraceStructureError):
        Constraint("on", ("a",))
    with pytest.raises(TraceStructureError):
        FoldStep("axiom", (("f", Line(1, 0, 0)),), op_id=None)
    dup = FoldTrace((("P", Point(0, 0)),), (FoldStep("edge", (("P", Line(1, 0, 0)),)),))
    with pytest.raises(TraceStructureError):
        verify(dup)


def test_builder_names_unique():
    b = TraceBuilder()
    assert [b.name("x") for _ in range(3)] == ["x", "x_1", "x_2"]
    assert b.given("O", Point(0, 0)) == "O"
    assert b.given("O", Point(0, 0)) == "O"
    assert b.given("O", Point(1, 0)) == "O_1"


def sample_traces():
    yield op1_trace()
    yield p_sect(1.0, 5)[1]
    yield m_sect(2.0, 12)[1]
    yield lill_trace(solve_real_roots(Polynomial((1, 0, 0, 0, 0, -32)))[0])
    yield build_polygon(7).trace


@pytest.mark.parametrize("trace", list(sample_traces()))
def test_json_round_trip(trace):
    data = emit_json(trace)
    back = load_json(data)
    assert back == trace
    assert emit_json(back) == data
    assert json.loads(data)["version"] == 1
    assert json.loads(data)["fold_width"] == trace.fold_width


def test_json_schema_errors():
    doc = json.loads(emit_json(op1_trace()))
    del doc["version"]
    with pytest.raises(SchemaError):
        load_json(json.dumps(doc))
    doc["version"] = 2
    with pytest.raises(SchemaError):
        load_json(json.dumps(doc))
    with pytest.raises(SchemaError):
        load_json(b"not json")
    with pytest.raises(SchemaError):
        load_json(json.dumps({"version": 1, "type": "trace", "inputs": []}))


def test_hand_written_op3_trace():
    doc = {
        "version": 1,
        "type": "trace",
        "inputs": [{"name": "r", "type": "line", "a": 0, "b": 1, "c": -3}],
        "steps": [{
            "kind": "axiom", "op_id": 3, "note": "",
            "folds": [{"name": "f", "type": "line", "a": 0, "b": 1, "c": -3}],
            "constraints": [{"kind": "coincident", "args": ["f", "r"]}],
            "derived_points": [],
        }],
    }
    trace = load_json(json.dumps(doc))
    assert verify(trace).ok
    assert trace.fold_width == 1


def test_report_json():
    rep = verify(perturb(op1_trace()))
    back = load_json(emit_json(rep))
    assert isinstance(back, VerificationReport)
    assert back == rep
    doc = json.loads(emit_json(totient_report(199)))
    assert doc["phi"] == 198 and doc["required_n"] == 9
    with pytest.raises(TypeError):
        emit_json(object())


def test_svg_deterministic_and_counts():
    _, tri = p_sect(math.radians(60), 3)
    a, b = emit_svg(tri), emit_svg(tri)
    assert a == b
    text = a.decode()
    assert text.count('class="fold"') == tri.fold_count == len(tri.steps)
    assert text.startswith("<?xml")
    pent = emit_svg(build_polygon(5).trace).decode()
    assert pent.count('class="vertex"') == 5
    assert pent.count('class="edge"') == 5


def test_svg_viewbox_margin():
    b = TraceBuilder()
    b.given("A", Point(0, 0))
    b.given("B", Point(10, 5))
    b.add(FoldStep("edge", (("e", Line(1, -2, 0)),),
                   (Constraint("on", ("A", "e")), Constraint("on", ("B", "e")))))
    svg = emit_svg(b.build()).decode()
    assert 'viewBox="-0.5 -5.25 11 5.5"' in svg


def test_svg_empty_trace():
    with pytest.raises(EmptyDiagramError):
        emit_svg(FoldTrace((), ()))
