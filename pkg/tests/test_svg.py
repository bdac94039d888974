"""Tests for SVG rendering of arc diagrams."""

from xml.etree import ElementTree

from atilde_exceptional.annulus import ClosedCurve, diagram_from_modules, heart
from atilde_exceptional.svg import render_diagram


def test_render_case_a_counts(case_a):
    """One path per arc; two boundary circles and one dot per marked point."""
    svg = render_diagram(diagram_from_modules(case_a))
    assert svg.count("<path") == 3
    assert svg.count("<circle") == 5
    assert svg.count("<text") == 3


def test_render_is_well_formed_xml(case_a):
    root = ElementTree.fromstring(render_diagram(diagram_from_modules(case_a), size=300))
    assert root.tag.endswith("svg")
    assert root.get("width") == "300"


def test_render_is_deterministic(case_a):
    d = diagram_from_modules(case_a)
    assert render_diagram(d) == render_diagram(d)


def test_render_labels_arcs(case_a):
    d = diagram_from_modules(case_a)
    svg = render_diagram(d)
    for arc in d.arcs:
        assert f"<title>{arc.label}</title>" in svg


def test_render_highlights_heart(case_a):
    d = diagram_from_modules(case_a)
    plain = render_diagram(d)
    marked = render_diagram(d, highlight=heart(d))
    assert "#c0392b" not in plain
    assert marked.count('stroke="#c0392b"') == 2


def test_render_closed_curve_is_dashed(kronecker_set):
    d = diagram_from_modules(kronecker_set)
    svg = render_diagram(d, curves=(ClosedCurve(d.orientation, 2),))
    assert "stroke-dasharray" in svg
    assert svg.count("<path") == 3
