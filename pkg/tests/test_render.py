import json

import pytest

from commlen.builder import build_diagram
from commlen.figures import fig1
from commlen.render import FORMATS, render
from commlen.stripdiag import base, strip_from_json


@pytest.mark.parametrize("fmt", FORMATS)
def test_render_is_byte_stable(fmt):
    sd = build_diagram(7, 4)
    assert render(sd, fmt) == render(build_diagram(7, 4), fmt)
    assert render(fig1().map, fmt) == render(fig1().map, fmt)


def test_d22_has_two_top_crossings():
    out = render(base("D2,2"), "tikz")
    assert out.count("gray") == 4  # two top and two bottom crossing ticks
    assert "$e_{1}$" in out and "$e_{2}$" in out


def test_degenerate_d11_has_no_crossings():
    out = render(base("D1,1"), "svg")
    assert out.startswith("<svg") and "e1" in out
    assert render(base("D1,1"), "tikz").count("gray") == 0


def test_fig1_renders_three_edges():
    out = render(fig1().map, "dot")
    assert out.count(" -- ") == 3
    text = render(fig1().map, "text", "fig1")
    assert "genus=1" in text and "F=1" in text


def test_json_render_loads_back():
    sd = base("D3,3")
    data = json.loads(render(sd, "json"))
    assert strip_from_json(data).close().genus() == 1


def test_unknown_format():
    with pytest.raises(ValueError):
        render(base("D3,3"), "png")
