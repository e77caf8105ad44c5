"""Deterministic figure output for strips and closed maps.

Strips are drawn as the rectangle of the strip presentation: the frame,
the top and bottom rectangle edges labelled ``e1 .. e2k`` in the
identification pattern, crossing ticks, and the diagram edges as straight
segments between stored vertex positions.  Closed maps have no stored
geometry; they are drawn with vertices on a circle, which is enough to read
off rotations and corner exponents.  All numbers are printed with fixed
precision so output bytes depend only on the input.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .fpword import A
from .stripdiag import StripDiagram, strip_to_json
from .surfmap import ClosedMap

FORMATS = ("json", "tikz", "svg", "dot", "text")

_SX, _SY = 2.0, 3.0   # strip units to figure units


@dataclass(frozen=True)
class Figure:
    """Backend-neutral drawing: points, segments and text.

    A segment is ``(start, end, style, bend)`` with ``bend`` the control
    point offset, as a fraction of the length, for parallel edges.
    """
    width: float
    height: float
    segments: list[tuple[tuple[float, float], tuple[float, float], str, float]]
    dots: list[tuple[tuple[float, float], str]]
    labels: list[tuple[tuple[float, float], str]]


def _f(x: float) -> str:
    return f"{x:.3f}"


def strip_figure(sd: StripDiagram) -> Figure:
    pm = sd.pm
    pts = {v: (x * _SX, y * _SY) for v, (x, y) in pm.pos.items()}
    xs = [p[0] for p in pts.values()]
    width = max(xs) if xs else _SX
    segs = []
    for d in sorted(pm.twin):
        e = pm.twin[d]
        if d > e:
            continue
        u, w = pm.org[d], pm.org[e]
        # pieces of the rectangle sides are drawn with the frame below
        if pm.is_gamma(u) or pm.is_gamma(w) or pts[u][1] != pts[w][1]:
            segs.append((pts[u], pts[w], "edge", 0.0))
    for a, b in (("BL", "BR"), ("BR", "TR"), ("TR", "TL"), ("TL", "BL")):
        segs.append((pts[sd.corners[a]], pts[sd.corners[b]], "frame", 0.0))
    dots = []
    labels = []
    for v in sorted(pm.kind):
        kind = pm.kind[v]
        if pm.is_gamma(v):
            dots.append((pts[v], kind))
        elif kind in ("s", "x"):
            x, y = pts[v]
            tick = 0.12 if kind == "s" else 0.08
            segs.append(((x, y - tick), (x, y + tick), "tick" if kind == "s" else "crossing", 0.0))
    for side in ("top", "bottom"):
        chain = sd.top() if side == "top" else sd.bottom()
        cuts = [pts[v][0] for v in chain if pm.kind[v] in ("c", "s")]
        y = _SY + 0.3 if side == "top" else -0.3
        for i, (x0, x1) in enumerate(zip(cuts, cuts[1:]), start=1):
            e = i if side == "top" else (i + 1 if i % 2 else i - 1)
            labels.append((((x0 + x1) / 2, y), f"e{e}"))
    return Figure(width, _SY, segs, dots, labels)


def map_figure(m: ClosedMap) -> Figure:
    verts = sorted(m.vertices)
    r = 2.0
    pts = {}
    for i, v in enumerate(verts):
        ang = math.pi / 2 - 2 * math.pi * i / max(len(verts), 1)
        pts[v] = (r + r * math.cos(ang), r + r * math.sin(ang))
    segs = []
    labels = []
    seen: dict[tuple[int, int], int] = {}
    for d, e in m.edges():
        ends = (m.origin(d), m.origin(e))
        i = seen.get(tuple(sorted(ends)), 0)
        seen[tuple(sorted(ends))] = i + 1
        # parallel edges fan out alternately to either side: 0, +, -, ++, --
        bend = 0.25 * ((i + 1) // 2) * (1 if i % 2 else -1)
        if ends[0] > ends[1]:
            bend = -bend
        u, w = pts[ends[0]], pts[ends[1]]
        segs.append((u, w, "edge", bend))
        mid = _control(u, w, bend)
        labels.append((((u[0] + w[0]) / 4 + mid[0] / 2, (u[1] + w[1]) / 4 + mid[1] / 2), f"{d}/{e}"))
    dots = [(pts[v], m.vertices[v].kind) for v in verts]
    for v in verts:
        rec = m.vertices[v]
        x, y = pts[v]
        text = " ".join(f"{c:+d}" for c in rec.corners)
        labels.append(((x, y + 0.35), f"v{v}: {text}"))
    return Figure(2 * r, 2 * r, segs, dots, labels)


def _control(p, q, bend: float) -> tuple[float, float]:
    """Control point of the quadratic curve bowing ``bend`` times the length to the left."""
    mx, my = (p[0] + q[0]) / 2, (p[1] + q[1]) / 2
    return mx - bend * (q[1] - p[1]) * 2, my + bend * (q[0] - p[0]) * 2


def _tikz(fig: Figure) -> str:
    style = {"edge": "very thick", "frame": "thin", "tick": "thin", "crossing": "thin, gray"}
    lines = ["\\begin{tikzpicture}[x=1cm, y=1cm]"]
    for (p, q, kind, bend) in fig.segments:
        if bend:
            c = _control(p, q, bend)
            lines.append(f"  \\draw[{style[kind]}] ({_f(p[0])},{_f(p[1])}) .. controls "
                         f"({_f(c[0])},{_f(c[1])}) .. ({_f(q[0])},{_f(q[1])});")
        else:
            lines.append(f"  \\draw[{style[kind]}] ({_f(p[0])},{_f(p[1])}) -- ({_f(q[0])},{_f(q[1])});")
    for (p, kind) in fig.dots:
        fill = "black" if kind == A else "white"
        lines.append(f"  \\filldraw[fill={fill}] ({_f(p[0])},{_f(p[1])}) circle (2pt);")
    for (p, text) in fig.labels:
        lines.append(f"  \\node[font=\\scriptsize] at ({_f(p[0])},{_f(p[1])}) {{${_tex(text)}$}};")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def _tex(text: str) -> str:
    if text.startswith("e") and text[1:].isdigit():
        return f"e_{{{text[1:]}}}"
    return text


def _svg(fig: Figure) -> str:
    scale, pad = 60.0, 30.0
    w, h = fig.width * scale + 2 * pad, fig.height * scale + 2 * pad

    def xy(p):
        return _f(pad + p[0] * scale), _f(pad + (fig.height - p[1]) * scale)

    width = {"edge": "2.5", "frame": "1", "tick": "1", "crossing": "1"}
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" '
           f'viewBox="0 0 {_f(w)} {_f(h)}">']
    for (p, q, kind, bend) in fig.segments:
        (x1, y1), (x2, y2) = xy(p), xy(q)
        cx, cy = xy(_control(p, q, bend))
        out.append(f'  <path d="M {x1} {y1} Q {cx} {cy} {x2} {y2}" fill="none" stroke="black" '
                   f'stroke-width="{width[kind]}"/>')
    for (p, kind) in fig.dots:
        x, y = xy(p)
        fill = "black" if kind == A else "white"
        out.append(f'  <circle cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="black"/>')
    for (p, text) in fig.labels:
        x, y = xy(p)
        out.append(f'  <text x="{x}" y="{y}" font-size="11" text-anchor="middle">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _dot(m: ClosedMap, name: str) -> str:
    out = [f'graph "{name}" {{']
    for v in sorted(m.vertices):
        rec = m.vertices[v]
        shape = "circle, style=filled, fillcolor=black, fontcolor=white" if rec.kind == A else "circle"
        corners = " ".join(f"{c:+d}" for c in rec.corners)
        out.append(f'  v{v} [label="{rec.kind}{v}", xlabel="{corners}", shape={shape}];')
    for d, e in m.edges():
        out.append(f'  v{m.origin(d)} -- v{m.origin(e)} [label="{d}/{e}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _text(m: ClosedMap, name: str) -> str:
    faces = m.faces()
    lines = [f"{name or 'map'} in ctx {m.ctx}",
             f"V={m.num_vertices()} E={m.num_edges()} F={len(faces)} genus={m.genus()}"]
    for v in sorted(m.vertices):
        rec = m.vertices[v]
        lines.append(f"  {rec.kind}{v}: rotation {list(rec.rotation)} corners {list(rec.corners)}")
    for i, f in enumerate(faces):
        lines.append(f"  face {i}: {m.face_label(f)}")
    return "\n".join(lines) + "\n"


def render_strip(sd: StripDiagram, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(strip_to_json(sd), sort_keys=True, indent=1) + "\n"
    if fmt == "tikz":
        return _tikz(strip_figure(sd))
    if fmt == "svg":
        return _svg(strip_figure(sd))
    m = sd.close()
    return _dot(m, sd.name) if fmt == "dot" else _text(m, sd.name)


def render_map(m: ClosedMap, fmt: str, name: str = "") -> str:
    if fmt == "json":
        return json.dumps(m.to_json(), sort_keys=True, indent=1) + "\n"
    if fmt == "tikz":
        return _tikz(map_figure(m))
    if fmt == "svg":
        return _svg(map_figure(m))
    return _dot(m, name) if fmt == "dot" else _text(m, name)


def render(obj: StripDiagram | ClosedMap, fmt: str, name: str = "") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if isinstance(obj, StripDiagram):
        return render_strip(obj, fmt)
    return render_map(obj, fmt, name)
