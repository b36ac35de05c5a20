from __future__ import annotations

import re

from mellinkit.parser import parse
from mellinkit.polygons import global_polygon
from mellinkit.render import render_svg, write_svg
from mellinkit.stationary import verify


def panels(text):
    r = verify(parse(text))
    return [("global", r.global_polygon), ("mellin germ", r.mellin_polygon)]


def test_one_polyline_per_side():
    for text in ["T - z", "T^2 - z^-1 - z", "(z-1)*(z-2)*T + 1", "z - 2", "T - 3", "z^2*T - z + 1"]:
        svg = render_svg(panels(text))
        expected = sum(len(N.sides) + (1 if N.vertical_height else 0) for _, N in panels(text))
        assert svg.count("<polyline") == expected, text
        assert svg.count('stroke-dasharray') == 4


def test_svg_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    write_svg(str(a), panels("T^2 - z"))
    write_svg(str(b), panels("T^2 - z"))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith('<?xml version="1.0"')


def test_rays_stay_inside_the_box():
    svg = render_svg([("g", global_polygon(parse("T^2 - z")))])
    w = float(re.search(r'width="([\d.]+)"', svg).group(1))
    h = float(re.search(r'height="([\d.]+)"', svg).group(1))
    for x1, y1, x2, y2 in re.findall(r'x1="([\d.-]+)" y1="([\d.-]+)" x2="([\d.-]+)" y2="([\d.-]+)"', svg):
        for x in (x1, x2):
            assert 0 <= float(x) <= w
        for y in (y1, y2):
            assert 0 <= float(y) <= h


def test_matplotlib_figure(tmp_path):
    from mellinkit.plotting import save_figure

    out = tmp_path / "fig.png"
    save_figure(str(out), panels("(z-1)*T + 1"))
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
