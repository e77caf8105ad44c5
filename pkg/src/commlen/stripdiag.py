"""Rectangle ("strip") presentation of diagrams and the composition calculus.

A strip is a planar map drawn inside a rectangle whose top side is cut into
edges ``e_1 .. e_2k`` (left to right) and whose bottom side carries the same
edges in the order ``e_2, e_1, e_4, e_3, ...``.  Gluing equally named edges and
collapsing the left and right sides to points yields a closed surface of genus
``k``.  Several diagram edges may cross the same rectangle edge; the ``j``-th
crossing of ``e_i`` on top is glued to the ``j``-th crossing of ``e_i`` on the
bottom, counting from the left.

The frame of the rectangle is stored in the same :class:`PlanarMap` as the
diagram, which makes faces of the drawing (in particular the regions next to
the left and right sides) directly available.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .fpword import A, T, GroupCtx, Word, at_power, are_conjugate
from .planar import PlanarMap
from .surfmap import ClosedMap, MapStructureError, VertexRec


# marks that survive composition (they name vertices of the leftmost operand)
CARRIED_MARKS = ("central_t",)


class StripError(ValueError):
    """Precondition violations in strip operations (borders, surgery sites)."""


class IntermediateStripError(StripError):
    """Raised when closing a juxtaposition that no surgery has repaired yet."""


@dataclass
class Border:
    side: str
    darts: list[int]          # planar darts, oriented along the border
    vertices: list[int]       # diagram vertices in the order they are met
    out_dart: dict[int, int]  # vertex -> border dart leaving it (owns the border corner)

    def order(self, v: int) -> int:
        return self.vertices.index(v)


@dataclass
class StripDiagram:
    pm: PlanarMap
    k: int
    corners: dict[str, int]   # BL, BR, TR, TL frame corner vertex ids
    aplus: set[int] = field(default_factory=set)
    aminus: set[int] = field(default_factory=set)
    ctx: GroupCtx = field(default_factory=GroupCtx)
    marks: dict = field(default_factory=dict)
    intermediate: bool = False
    name: str = ""

    def copy(self) -> "StripDiagram":
        return StripDiagram(self.pm.copy(), self.k, dict(self.corners), set(self.aplus),
                            set(self.aminus), self.ctx, json.loads(json.dumps(self.marks)),
                            self.intermediate, self.name)

    # ------------------------------------------------------------ frame
    def _side_dart(self, v: int, east: bool) -> int | None:
        """Frame dart at ``v`` running along the top or bottom side."""
        pm = self.pm
        x, y = pm.pos[v]
        for d in pm.rot[v]:
            w = pm.head(d)
            if pm.is_gamma(w):
                continue
            wx, wy = pm.pos[w]
            if abs(wy - y) < 1e-9 and ((wx > x) if east else (wx < x)):
                return d
        return None

    def east(self, v: int) -> int:
        return self._side_dart(v, True)

    def west(self, v: int) -> int:
        return self._side_dart(v, False)

    def _side_list(self, start: str) -> list[int]:
        out = [self.corners[start]]
        while True:
            d = self.east(out[-1])
            if d is None:
                return out
            out.append(self.pm.head(d))

    def top(self) -> list[int]:
        return self._side_list("TL")

    def bottom(self) -> list[int]:
        return self._side_list("BL")

    def crossing_gamma(self, x: int) -> int:
        """The diagram dart at a crossing vertex."""
        pm = self.pm
        # a crossing has exactly three darts; the gamma one is not a side dart
        sides = {self.east(x), self.west(x)}
        (g,) = [d for d in pm.rot[x] if d not in sides]
        return g

    def edge_labels(self, side: str) -> list[tuple[int, int]]:
        """For each crossing on a side: (rectangle edge index, rank among its crossings)."""
        pts = self.top() if side == "top" else self.bottom()
        out = []
        slot = 1
        rank: dict[int, int] = {}
        for v in pts[1:-1]:
            kind = self.pm.kind[v]
            if kind == "s":
                slot += 1
            elif kind == "x":
                e = slot if side == "top" else (slot + 1 if slot % 2 else slot - 1)
                out.append((v, e, rank.get(e, 0)))
                rank[e] = rank.get(e, 0) + 1
        return out

    def partners(self) -> dict[int, int]:
        top = {(e, j): v for v, e, j in self.edge_labels("top")}
        bot = {(e, j): v for v, e, j in self.edge_labels("bottom")}
        if set(top) != set(bot):
            raise StripError("top and bottom crossings do not pair up")
        out = {}
        for key, v in top.items():
            out[v] = bot[key]
            out[bot[key]] = v
        return out

    def top_crossings(self) -> list[int]:
        return [v for v, _, _ in self.edge_labels("top")]

    def bottom_crossings(self) -> list[int]:
        return [v for v, _, _ in self.edge_labels("bottom")]

    # ------------------------------------------------------------ closing
    def gamma_vertices(self) -> list[int]:
        return sorted(v for v in self.pm.kind if self.pm.is_gamma(v))

    def chain_next(self, d: int, partners: dict[int, int] | None = None) -> int:
        """Follow a diagram dart through crossings; return the dart arriving at a diagram vertex."""
        pm = self.pm
        partners = partners if partners is not None else self.partners()
        x = pm.twin[d]
        while not pm.is_gamma(pm.org[x]):
            c = partners[pm.org[x]]
            x = pm.twin[self.crossing_gamma(c)]
        return x

    def chain(self, d: int, partners: dict[int, int] | None = None) -> list[int]:
        """Planar darts making up the diagram edge that starts with ``d``."""
        pm = self.pm
        partners = partners if partners is not None else self.partners()
        out = [d]
        x = pm.twin[d]
        while not pm.is_gamma(pm.org[x]):
            c = partners[pm.org[x]]
            out.append(self.crossing_gamma(c))
            x = pm.twin[out[-1]]
        return out

    def edge_owner(self, partners: dict[int, int] | None = None) -> dict[int, int]:
        """Map every planar diagram dart to the closed-map dart it is a piece of."""
        partners = partners if partners is not None else self.partners()
        owner = {}
        for v in self.gamma_vertices():
            for d in self.pm.rot[v]:
                for piece in self.chain(d, partners):
                    owner[piece] = d
        return owner

    def closed_raw(self) -> ClosedMap:
        pm = self.pm
        partners = self.partners()
        twin = {}
        for v in self.gamma_vertices():
            for d in pm.rot[v]:
                twin[d] = self.chain_next(d, partners)
        verts = {}
        for v in self.gamma_vertices():
            r = pm.rot[v]
            verts[v] = VertexRec(pm.kind[v], tuple(r), tuple(pm.corner[d] for d in r))
        return ClosedMap(verts, twin, self.ctx)

    def close(self) -> ClosedMap:
        if self.intermediate:
            raise IntermediateStripError("strip is an unrepaired juxtaposition")
        m = self.closed_raw()
        g = m.genus()
        if g != self.k:
            raise MapStructureError(f"closed genus {g} differs from strip genus {self.k}")
        return m

    # ------------------------------------------------------------ borders
    def _border_walk(self, start_crossing: int, end_crossing: int, side: str) -> Border:
        pm = self.pm
        d = self.crossing_gamma(start_crossing)
        darts = [d]
        while pm.is_gamma(pm.head(darts[-1])):
            darts.append(pm.face_next(darts[-1]))
            if len(darts) > len(pm.twin) + 2:
                raise StripError("border walk does not terminate")
        if pm.head(darts[-1]) != end_crossing:
            raise StripError(f"{side} border does not end at the expected crossing")
        verts, out = [], {}
        for d in darts[1:]:
            v = pm.org[d]
            if v not in out:
                verts.append(v)
                out[v] = d
        return Border(side, darts, verts, out)

    def left_border(self) -> Border:
        special = self.marks.get("borders")
        if special:
            return self._special_border("left")
        if self.k == 0:
            raise StripError("borders are undefined for genus 0 strips")
        return self._border_walk(self.bottom_crossings()[0], self.top_crossings()[0], "left")

    def right_border(self) -> Border:
        special = self.marks.get("borders")
        if special:
            return self._special_border("right")
        if self.k == 0:
            raise StripError("borders are undefined for genus 0 strips")
        return self._border_walk(self.top_crossings()[-1], self.bottom_crossings()[-1], "right")

    def _special_border(self, side: str) -> Border:
        """Borders of the degenerate inverted single arc: A+ to A- on the left, back on the right."""
        (vp,), (vm,) = tuple(self.aplus), tuple(self.aminus)
        first, last = (vp, vm) if side == "left" else (vm, vp)
        pm = self.pm
        darts = []
        v = first
        while v != last:
            nxt = [d for d in pm.rot[v] if pm.is_gamma(pm.head(d)) and (not darts or pm.head(d) != pm.org[darts[-1]])]
            darts.append(nxt[0])
            v = pm.head(nxt[0])
        # the corners facing the rectangle side
        verts = [pm.org[d] for d in darts] + [last]
        out = {pm.org[d]: d for d in darts}
        out[last] = pm.twin[darts[-1]]
        return Border(side, darts, verts, out)

    # ------------------------------------------------------------ summary
    def summary(self) -> dict:
        m = self.close()
        faces = m.faces()
        return {
            "faces": len(faces),
            "genus": m.genus(),
            "labels": [m.face_label(f) for f in faces],
        }


# ---------------------------------------------------------------- drawing

def _angle(p, q) -> float:
    return math.atan2(q[1] - p[1], q[0] - p[0]) % (2 * math.pi)


def make_frame(pm: PlanarMap, width: float) -> dict[str, int]:
    """The four rectangle corners."""
    corners = {
        "BL": pm.add_vertex("c", (0.0, 0.0)),
        "BR": pm.add_vertex("c", (width, 0.0)),
        "TR": pm.add_vertex("c", (width, 1.0)),
        "TL": pm.add_vertex("c", (0.0, 1.0)),
    }
    return corners


@dataclass
class Drawing:
    """Coordinates-and-polylines description of a base strip.

    ``vertices`` maps a name to ``(kind, (x, y))``; ``edges`` lists polylines
    ``[u, waypoint, ..., v]`` where a waypoint is a point ``(x, y)`` or a
    crossing ``("up", x_top, x_bottom)`` / ``("down", x_bottom, x_top)``
    meaning the edge leaves through one side and re-enters through the other.
    ``corners`` gives explicit exponents for vertices that are neither A+/A-
    nor degree-two T vertices of t-arcs, listed counterclockwise starting from
    the dart of least angle.
    """
    k: int
    vertices: dict[str, tuple[str, tuple[float, float]]]
    edges: list[list]
    aplus: Sequence[str] = ()
    aminus: Sequence[str] = ()
    corners: dict[str, Sequence[int]] = field(default_factory=dict)
    width: float | None = None


def draw(drawing: Drawing, ctx: GroupCtx | None = None, name: str = "") -> StripDiagram:
    ctx = ctx or GroupCtx()
    pm = PlanarMap()
    width = drawing.width if drawing.width is not None else float(max(2 * drawing.k, 1))
    corners = make_frame(pm, width)
    vid = {nm: pm.add_vertex(kind, pos) for nm, (kind, pos) in drawing.vertices.items()}

    # frame points on each side: (x, vertex)
    top_pts = [(0.0, corners["TL"]), (width, corners["TR"])]
    bot_pts = [(0.0, corners["BL"]), (width, corners["BR"])]
    unit = width / max(2 * drawing.k, 1)
    for i in range(1, 2 * drawing.k):
        top_pts.append((i * unit, pm.add_vertex("s", (i * unit, 1.0))))
        bot_pts.append((i * unit, pm.add_vertex("s", (i * unit, 0.0))))

    # darts with the direction they leave their origin, assigned to rotations afterwards
    leaving: dict[int, list[tuple[float, int]]] = {}

    def add_dart(v, d, toward):
        leaving.setdefault(v, []).append((_angle(pm.pos[v], toward), d))

    for poly in drawing.edges:
        u, *mid, w = poly
        cur = vid[u]
        cur_pos = pm.pos[cur]
        pending = None  # dart at cur awaiting its twin's direction
        pieces = []     # list of (from_vertex, to_vertex, from_dir_point, to_dir_point)
        pts = []
        for wp in mid:
            if isinstance(wp[0], str):
                direction, x_out, x_in = wp
                y_out, y_in = (1.0, 0.0) if direction == "up" else (0.0, 1.0)
                xo = pm.add_vertex("x", (x_out, y_out))
                xi = pm.add_vertex("x", (x_in, y_in))
                (top_pts if y_out == 1.0 else bot_pts).append((x_out, xo))
                (top_pts if y_in == 1.0 else bot_pts).append((x_in, xi))
                pts.append(("cross", xo, xi))
            else:
                pts.append(("pt", wp))
        # split the polyline into pieces between vertices
        seq = [("v", vid[u])]
        for p in pts:
            seq.append(p)
        seq.append(("v", vid[w]))
        start = vid[u]
        bends: list = []
        for item in seq[1:]:
            if item[0] == "pt":
                bends.append(item[1])
                continue
            end = item[1] if item[0] == "v" else item[1]
            d, e = pm.new_darts()
            first_toward = bends[0] if bends else pm.pos[end]
            last_toward = bends[-1] if bends else pm.pos[start]
            add_dart(start, d, first_toward)
            add_dart(end, e, last_toward)
            bends = []
            if item[0] == "cross":
                start = item[2]
            else:
                start = None

    for side, pts in (("top", top_pts), ("bottom", bot_pts)):
        pts.sort()
        for (x0, v0), (x1, v1) in zip(pts, pts[1:]):
            d, e = pm.new_darts()
            add_dart(v0, d, pm.pos[v1])
            add_dart(v1, e, pm.pos[v0])
    for lo, hi in (("BL", "TL"), ("BR", "TR")):
        d, e = pm.new_darts()
        add_dart(corners[lo], d, pm.pos[corners[hi]])
        add_dart(corners[hi], e, pm.pos[corners[lo]])

    for v, items in leaving.items():
        items.sort()
        for _, d in items:
            pm.attach(v, d)

    sd = StripDiagram(pm, drawing.k, corners, {vid[n] for n in drawing.aplus}, {vid[n] for n in drawing.aminus},
                      ctx, {}, False, name)
    for v in sd.gamma_vertices():
        for d in pm.rot[v]:
            pm.corner[d] = 0
    for nm, exps in drawing.corners.items():
        v = vid[nm]
        if len(exps) != len(pm.rot[v]):
            raise StripError(f"vertex {nm}: {len(exps)} corners given for degree {len(pm.rot[v])}")
        for d, c in zip(pm.rot[v], exps):
            pm.corner[d] = c
    explicit = {vid[nm] for nm in drawing.corners}
    sd.marks["names"] = {nm: v for nm, v in vid.items()}
    normalize_corners(sd, skip=explicit)
    return sd


def arc_t_vertices(sd: StripDiagram) -> list[int]:
    """Degree-two T vertices joining an A+ vertex to an A- vertex."""
    pm = sd.pm
    out = []
    for v in sd.gamma_vertices():
        if pm.kind[v] != T or len(pm.rot[v]) != 2:
            continue
        ends = set()
        for d in pm.rot[v]:
            w = sd.chain_next(d)
            ends.add(pm.org[w])
        if any(e in sd.aplus for e in ends) and any(e in sd.aminus for e in ends):
            out.append(v)
    return out


def normalize_corners(sd: StripDiagram, skip: Iterable[int] = ()):
    """Reset corners of A+/A- vertices and of t-arc centres from the marks."""
    pm = sd.pm
    skip = set(skip)
    for v in sd.aplus:
        for d in pm.rot[v]:
            pm.corner[d] = 1
    for v in sd.aminus:
        for d in pm.rot[v]:
            pm.corner[d] = -1
    partners = sd.partners()
    for v in arc_t_vertices(sd):
        if v in skip:
            continue
        for d in pm.rot[v]:
            end = pm.org[sd.chain_next(d, partners)]
            pm.corner[d] = -1 if end in sd.aplus else 1


# ---------------------------------------------------------------- juxtaposition

def _width(sd: StripDiagram) -> float:
    return sd.pm.pos[sd.corners["BR"]][0]


def _embed(dst: PlanarMap, src: PlanarMap, dx: float) -> tuple[int, int]:
    """Copy ``src`` into ``dst`` shifted right by ``dx``; returns (vertex offset, dart offset)."""
    vo, do = dst._vnext, dst._dnext
    for v, kind in src.kind.items():
        x, y = src.pos[v]
        dst.add_vertex(kind, (x + dx, y), v + vo)
    for d, e in src.twin.items():
        dst.twin[d + do] = e + do
    for v, r in src.rot.items():
        dst.rot[v + vo] = [d + do for d in r]
        for d in r:
            dst.org[d + do] = v + vo
    for d, c in src.corner.items():
        dst.corner[d + do] = c
    dst._dnext = max(dst._dnext, do + src._dnext)
    return vo, do


@dataclass
class Juxtaposition:
    strip: StripDiagram
    offsets: list[tuple[int, int]]   # (vertex offset, dart offset) per operand

    def vmap(self, i: int, v: int) -> int:
        return v + self.offsets[i][0]

    def dmap(self, i: int, d: int) -> int:
        return d + self.offsets[i][1]

    def border(self, i: int, b: Border) -> Border:
        vo, do = self.offsets[i]
        return Border(b.side, [d + do for d in b.darts], [v + vo for v in b.vertices],
                      {v + vo: d + do for v, d in b.out_dart.items()})


def juxtapose_many(parts: Sequence[StripDiagram]) -> Juxtaposition:
    """``D_1 + D_2 + ...``: glue right sides to left sides, flagged intermediate."""
    if not parts:
        raise StripError("nothing to juxtapose")
    ctx = parts[0].ctx
    if any(p.ctx != ctx for p in parts):
        raise StripError("operands live in different contexts")
    pm = PlanarMap()
    offsets = []
    corners = None
    aplus, aminus = set(), set()
    x = 0.0
    k = 0
    prev = None
    for sd in parts:
        vo, do = _embed(pm, sd.pm, x)
        offsets.append((vo, do))
        aplus |= {v + vo for v in sd.aplus}
        aminus |= {v + vo for v in sd.aminus}
        mine = {key: v + vo for key, v in sd.corners.items()}
        if prev is None:
            corners = dict(mine)
        else:
            pc = prev
            # drop the facing sides, then merge the corner points into separators
            right = [d for d in pm.rot[pc["BR"]] if pm.head(d) == pc["TR"]][0]
            left = [d for d in pm.rot[mine["BL"]] if pm.head(d) == mine["TL"]][0]
            pm.delete_edge(right)
            pm.delete_edge(left)
            for a, b in (("BR", "BL"), ("TR", "TL")):
                (da,) = pm.rot[pc[a]]
                (db,) = pm.rot[mine[b]]
                pm.pinch(da, db)
                v = pc[a]
                if k > 0 and sd.k > 0:
                    pm.kind[v] = "s"
                else:
                    pm.smooth(v)
            corners["BR"], corners["TR"] = mine["BR"], mine["TR"]
        prev = mine
        x += _width(sd)
        k += sd.k
    # the first operand keeps its vertex ids, so its surgery marks stay valid
    marks = {key: val for key, val in parts[0].marks.items() if key in CARRIED_MARKS}
    out = StripDiagram(pm, k, corners, aplus, aminus, ctx, marks, len(parts) > 1, "")
    return Juxtaposition(out, offsets)


def juxtapose(d1: StripDiagram, d2: StripDiagram) -> StripDiagram:
    return juxtapose_many([d1, d2]).strip


def _finish(sd: StripDiagram, name: str) -> StripDiagram:
    """Normalize corners and clear the intermediate flag if the closed map is a genuine diagram."""
    normalize_corners(sd)
    m = sd.closed_raw()
    if m.components() != 1:
        raise StripError(f"{name}: result is disconnected")
    g = m.genus()
    if g != sd.k:
        raise StripError(f"{name}: closed genus {g} differs from {sd.k}")
    sd.intermediate = False
    sd.name = name
    return sd


# ---------------------------------------------------------------- arcs

def t_arcs(sd: StripDiagram) -> list[tuple[int, int, int]]:
    """t-arcs as (A+ vertex, T vertex, A- vertex)."""
    pm = sd.pm
    partners = sd.partners()
    out = []
    for v in arc_t_vertices(sd):
        ends = [pm.org[sd.chain_next(d, partners)] for d in pm.rot[v]]
        vp = [e for e in ends if e in sd.aplus][0]
        vm = [e for e in ends if e in sd.aminus][0]
        out.append((vp, v, vm))
    return out


def _arc_darts(sd: StripDiagram, tv: int, partners=None) -> dict:
    """Darts of the t-arc centred at ``tv``: at A+, at T toward A+, at T toward A-, at A-."""
    pm = sd.pm
    partners = partners if partners is not None else sd.partners()
    out = {}
    for d in pm.rot[tv]:
        far = sd.chain_next(d, partners)
        if pm.org[far] in sd.aplus:
            out["tp"], out["p"] = d, far
        else:
            out["tm"], out["m"] = d, far
    return out


def remove_gamma_edge(sd: StripDiagram, d: int):
    """Delete the diagram edge starting with planar dart ``d``, with its frame crossings."""
    pm = sd.pm
    partners = sd.partners()
    pieces = sd.chain(d, partners)
    crossings = []
    for piece in pieces:
        for end in (pm.org[piece], pm.head(piece)):
            if pm.kind[end] == "x":
                crossings.append(end)
    for piece in pieces:
        pm.delete_edge(piece)
    for x in crossings:
        pm.smooth(x)


def remove_t_arc(sd: StripDiagram, tv: int):
    for d in list(sd.pm.rot[tv]):
        remove_gamma_edge(sd, d)
    sd.pm.delete_vertex(tv)


def _component(pm: PlanarMap, v: int) -> set[int]:
    seen, todo = {v}, [v]
    while todo:
        u = todo.pop()
        for d in pm.rot[u]:
            w = pm.head(d)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _same_face(pm: PlanarMap, d1: int, d2: int) -> bool:
    """Corners owned by ``d1`` and ``d2`` can be joined by a chord.

    A component floating inside a face (the degenerate single arc) is
    reachable from every corner of the face that surrounds it.
    """
    if pm.org[d2] not in _component(pm, pm.org[d1]):
        return True
    return d2 in pm.face_cycle(d1)


# ---------------------------------------------------------------- composition ⋖⋖

def _pairs_on(border: Border, aplus: set, aminus: set) -> list[tuple[int, int, bool]]:
    out = []
    for vp in border.vertices:
        if vp not in aplus:
            continue
        for vm in border.vertices:
            if vm in aminus:
                out.append((vp, vm, border.order(vp) < border.order(vm)))
    return out


def compose_vv(d1: StripDiagram, d2: StripDiagram) -> StripDiagram:
    """``D_1 ⋖⋖ D_2``: drop a t-arc of ``D_2`` and glue its ends onto a pair of ``D_1``."""
    b1, b2 = d1.right_border(), d2.left_border()
    left_pairs = _pairs_on(b1, d1.aplus, d1.aminus)
    if not left_pairs:
        raise StripError("right border of the left operand carries no A+/A- pair")
    arcs2: dict[tuple[int, int], list[int]] = {}
    for vp, tv, vm in t_arcs(d2):
        arcs2.setdefault((vp, vm), []).append(tv)
    for key, tvs in arcs2.items():
        # arcs running along the border first
        tvs.sort(key=lambda tv: (tv not in b2.vertices, tv))
    right_pairs = [(vp, vm, pos) for vp, vm, pos in _pairs_on(b2, d2.aplus, d2.aminus) if (vp, vm) in arcs2]
    if not right_pairs:
        raise StripError("left border of the right operand carries no pair joined by a t-arc")
    powers = _rule_powers([d1, d2], -1)
    tried = []
    for p1 in left_pairs:
        for p2 in right_pairs:
            if p1[2] == p2[2]:
                tried.append("same orientation")
                continue
            for tv in arcs2[(p2[0], p2[1])]:
                try:
                    sd = _vv_surgery(d1, d2, b1, b2, p1, p2, tv)
                    _check_rule(sd, sd.name, powers)
                    _check_borders(sd, sd.name, d1, d2)
                    return sd
                except StripError as exc:
                    tried.append(str(exc))
    raise StripError("no admissible vertex pairs: " + "; ".join(sorted(set(tried))))


def _vv_surgery(d1, d2, b1, b2, p1, p2, tv2) -> StripDiagram:
    J = juxtapose_many([d1, d2])
    sd = J.strip
    pm = sd.pm
    b1, b2 = J.border(0, b1), J.border(1, b2)
    v1p, v1m = J.vmap(0, p1[0]), J.vmap(0, p1[1])
    v2p, v2m = J.vmap(1, p2[0]), J.vmap(1, p2[1])
    tv = J.vmap(1, tv2)
    arc = _arc_darts(sd, tv)
    removed = {arc["p"], arc["m"]}
    corner2 = {}
    for v in (v2p, v2m):
        c = b2.out_dart[v]
        if c in removed:
            c = pm.pred(c)
        if c in removed:
            raise StripError("the dropped t-arc is the only edge at a glued vertex")
        corner2[v] = c
    remove_t_arc(sd, tv)
    for v1, v2 in ((v1p, v2p), (v1m, v2m)):
        c1 = b1.out_dart[v1]
        if not _same_face(pm, c1, corner2[v2]):
            raise StripError("glued corners do not face the same region")
        pm.pinch(c1, corner2[v2])
        sd.aplus.discard(v2)
        sd.aminus.discard(v2)
    return _finish(sd, f"({d1.name} vv {d2.name})")


# ---------------------------------------------------------------- face powers

def face_powers(m: ClosedMap) -> list[int | None]:
    """For each face, the ``n`` with label conjugate to ``[a,t]^n`` (None if there is none)."""
    out = []
    for f in m.faces():
        n = len(f) // 4
        label = m.face_label(f)
        ok = len(f) % 4 == 0 and are_conjugate(label, at_power(n, m.ctx))
        out.append(n if ok else None)
    return out


def _check_rule(sd: StripDiagram, name: str, powers: Sequence[int] | None):
    if powers is None:
        return
    got = face_powers(sd.closed_raw())
    if sorted(got, key=lambda x: -1 if x is None else x) != sorted(powers):
        raise StripError(f"{name}: face powers {got}, expected {list(powers)}")


# ---------------------------------------------------------------- composition ⊐ / ⊏

def arc_statuses(sd: StripDiagram, border: Border) -> list[tuple[int, bool]]:
    """t-arcs meeting a border, as (T vertex, orientation agrees with the border)."""
    pm = sd.pm
    partners = sd.partners()
    owner = sd.edge_owner(partners)
    along = [owner[d] for d in border.darts if d in owner]
    out = []
    for vp, tv, vm in t_arcs(sd):
        ad = _arc_darts(sd, tv, partners)
        forward = {ad["p"], ad["tm"]}
        backward = {ad["tp"], ad["m"]}
        status = None
        for d in along:
            if d in forward:
                status = True
                break
            if d in backward:
                status = False
                break
        if status is not None:
            out.append((tv, status))
    return out


def _arc_end_slots(sd: StripDiagram, tv: int, same: bool) -> dict[str, tuple[int, str]]:
    """Where new arcs attach at the ends of the t-arc ``tv`` on the border side.

    Returns ``{"p": (dart, where), "m": (dart, where)}`` with ``where`` in
    {"after", "before"} relative to the arc dart at each end.
    """
    ad = _arc_darts(sd, tv)
    if same:
        return {"p": (ad["p"], "after"), "m": (ad["m"], "before")}
    return {"p": (ad["p"], "before"), "m": (ad["m"], "after")}


def _slot_ref(pm: PlanarMap, slot: tuple[int, str]) -> int:
    d, where = slot
    return d if where == "after" else pm.pred(d)


def _add_arc(sd: StripDiagram, ref_u: int, ref_w: int) -> int:
    """New t-arc between the corners owned by ``ref_u`` and ``ref_w``; returns its T vertex."""
    pm = sd.pm
    d = route_edge(sd, ref_u, ref_w)[0]
    (x0, y0), (x1, y1) = pm.pos[pm.org[d]], pm.pos[pm.head(d)]
    tv, _, _ = pm.split_edge(d, T, ((x0 + x1) / 2, (y0 + y1) / 2))
    return tv


def _arc_site(sd: StripDiagram, J: Juxtaposition, i: int, tv_left: int, st_left: bool,
              j: int, tv_right: int, st_right: bool) -> None:
    """Join the border arcs of operands ``i`` (right border) and ``j`` (left border)."""
    pm = sd.pm
    t1, t2 = J.vmap(i, tv_left), J.vmap(j, tv_right)
    s1 = _arc_end_slots(sd, t1, st_left)
    s2 = _arc_end_slots(sd, t2, st_right)
    # fix the reference darts before any insertion changes predecessors
    r1p, r1m = _slot_ref(pm, s1["p"]), _slot_ref(pm, s1["m"])
    r2p, r2m = _slot_ref(pm, s2["p"]), _slot_ref(pm, s2["m"])
    _add_arc(sd, r1p, r2m)
    _add_arc(sd, r1m, r2p)


def _arc_candidates(sd: StripDiagram, border: Border) -> list[tuple[int, bool]]:
    cands = arc_statuses(sd, border)
    # arcs whose centre lies on the border first, then by id
    return sorted(cands, key=lambda c: (c[0] not in border.vertices, c[0]))


def compose_arc(d1: StripDiagram, d2: StripDiagram, drop: str = "left") -> StripDiagram:
    """``D_1 ⊐ D_2`` (``drop="left"``) or ``D_1 ⊏ D_2`` (``drop="right"``)."""
    if drop not in ("left", "right"):
        raise ValueError("drop must be 'left' or 'right'")
    b1, b2 = d1.right_border(), d2.left_border()
    c1, c2 = _arc_candidates(d1, b1), _arc_candidates(d2, b2)
    if not c1 or not c2:
        raise StripError("a border meets no t-arc")
    powers = _rule_powers([d1, d2], +1)
    sym = "]" if drop == "left" else "["
    name = f"({d1.name} {sym} {d2.name})"
    errors = []
    for a1, st1 in c1:
        for a2, st2 in c2:
            if st1 != st2:
                continue
            try:
                J = juxtapose_many([d1, d2])
                sd = J.strip
                _arc_site(sd, J, 0, a1, st1, 1, a2, st2)
                remove_t_arc(sd, J.vmap(0, a1) if drop == "left" else J.vmap(1, a2))
                _finish(sd, name)
                _check_rule(sd, name, powers)
                _check_borders(sd, name, d1, d2)
                return sd
            except StripError as exc:
                errors.append(str(exc))
    raise StripError(f"{name}: no admissible t-arcs ({'; '.join(sorted(set(errors))) or 'orientations differ'})")


def compose_arc3(d1: StripDiagram, dm: StripDiagram, d2: StripDiagram) -> StripDiagram:
    """``D_1 ⊐ D_m ⊏ D_2`` performed on ``D_1 + D_m + D_2`` at once.

    The arc of ``D_1`` on its right border and the arc of ``D_2`` on its left
    border are dropped; the middle operand keeps its arcs.
    """
    c1 = _arc_candidates(d1, d1.right_border())
    cl = _arc_candidates(dm, dm.left_border())
    cr = _arc_candidates(dm, dm.right_border())
    c2 = _arc_candidates(d2, d2.left_border())
    if not (c1 and cl and cr and c2):
        raise StripError("a border meets no t-arc")
    powers = None
    p1 = _rule_powers([d1, dm], +1)
    if p1 is not None:
        powers = _rule_powers_n([p1[0]], d2, +1)
    name = f"({d1.name} ] {dm.name} [ {d2.name})"
    errors = []
    for a1, st1 in c1:
        for am, stm in cl:
            if st1 != stm:
                continue
            for bm, stb in cr:
                for a2, st2 in c2:
                    if stb != st2:
                        continue
                    try:
                        J = juxtapose_many([d1, dm, d2])
                        sd = J.strip
                        _arc_site(sd, J, 0, a1, st1, 1, am, stm)
                        _arc_site(sd, J, 1, bm, stb, 2, a2, st2)
                        remove_t_arc(sd, J.vmap(0, a1))
                        remove_t_arc(sd, J.vmap(2, a2))
                        _finish(sd, name)
                        _check_rule(sd, name, powers)
                        _check_borders(sd, name, d1, d2)
                        return sd
                    except StripError as exc:
                        errors.append(str(exc))
    raise StripError(f"{name}: no admissible t-arcs ({'; '.join(sorted(set(errors))) or 'orientations differ'})")


def _one_face_power(sd: StripDiagram) -> int | None:
    p = face_powers(sd.closed_raw())
    return p[0] if len(p) == 1 and p[0] is not None else None


def _rule_powers(parts: Sequence[StripDiagram], delta: int) -> list[int] | None:
    ns = [_one_face_power(p) for p in parts]
    if any(n is None for n in ns):
        return None
    return [sum(ns) + delta]


def _rule_powers_n(ns: Sequence[int], d2: StripDiagram, delta: int) -> list[int] | None:
    n2 = _one_face_power(d2)
    return None if n2 is None else [sum(ns) + n2 + delta]


# ---------------------------------------------------------------- composition ≍

def swap_edges(sd: StripDiagram, border: Border) -> list[tuple[int, int, int, bool]]:
    """Edges meeting a border with corners t, t^-1, a^e, a^e around them.

    Returns ``(dart at T, dart at A, e, agrees with border)`` where the edge is
    oriented from its T end to its A end.
    """
    pm = sd.pm
    partners = sd.partners()
    owner = sd.edge_owner(partners)
    along = [owner[d] for d in border.darts if d in owner]
    out, seen = [], set()
    for d in along:
        if d in seen:
            continue
        far = sd.chain_next(d, partners)
        seen.update((d, far))
        dt, da = (d, far) if pm.kind[pm.org[d]] == T else (far, d)
        t_corners = {pm.corner[dt], pm.corner[pm.pred(dt)]}
        a_corners = {pm.corner[da], pm.corner[pm.pred(da)]}
        if t_corners != {1, -1} or len(a_corners) != 1:
            continue
        (eps,) = a_corners
        out.append((dt, da, eps, d == dt))
    return out


def _face_count_rule(parts: Sequence[StripDiagram]) -> tuple[int | None, int]:
    """Expected face count of a swap composition and the total exponent."""
    counts, total = [], 0
    for p in parts:
        pw = face_powers(p.closed_raw())
        if any(x is None for x in pw):
            return None, -1
        counts.append(len(pw))
        total += sum(pw)
    if sorted(counts) == [1, 2]:
        return 1, total
    return None, total


def _check_swap(sd: StripDiagram, name: str, faces: int | None, total: int):
    if total < 0:
        return
    got = face_powers(sd.closed_raw())
    if any(x is None for x in got) or sum(got) != total:
        raise StripError(f"{name}: face powers {got}, expected total {total}")
    if faces is not None and len(got) != faces:
        raise StripError(f"{name}: {len(got)} faces, expected {faces}")


def compose_swap(d1: StripDiagram, d2: StripDiagram) -> StripDiagram:
    """``D_1 ≍ D_2``: cross-connect a border edge of each operand."""
    c1 = _keep_far_border(d1, swap_edges(d1, d1.right_border()), "left")
    c2 = _keep_far_border(d2, swap_edges(d2, d2.left_border()), "right")
    if not c1 or not c2:
        raise StripError("a border meets no edge with the t, t^-1, a^e, a^e corner pattern")
    faces, total = _face_count_rule([d1, d2])
    name = f"({d1.name} x {d2.name})"
    errors = []
    for e1 in c1:
        for e2 in c2:
            if e1[2] != e2[2] or e1[3] != e2[3]:
                continue
            try:
                J = juxtapose_many([d1, d2])
                sd = J.strip
                _swap_surgery(sd, (J.dmap(0, e1[0]), J.dmap(0, e1[1])), (J.dmap(1, e2[0]), J.dmap(1, e2[1])))
                _finish(sd, name)
                _check_swap(sd, name, faces, total)
                _check_borders(sd, name, d1, d2)
                return sd
            except StripError as exc:
                errors.append(str(exc))
    raise StripError(f"{name}: no admissible edges ({'; '.join(sorted(set(errors))) or 'orientations differ'})")


def _has_border(sd: StripDiagram, side: str) -> bool:
    try:
        sd.left_border() if side == "left" else sd.right_border()
    except StripError:
        return False
    return True


def _check_borders(sd: StripDiagram, name: str, d1: StripDiagram, d2: StripDiagram):
    """The outer borders of the operands must survive the surgery."""
    if _has_border(d1, "left") and not _has_border(sd, "left"):
        raise StripError(f"{name}: the surgery destroys the left border")
    if _has_border(d2, "right") and not _has_border(sd, "right"):
        raise StripError(f"{name}: the surgery destroys the right border")


def _keep_far_border(sd: StripDiagram, cands: list, side: str) -> list:
    """Order swap edges so that those off the opposite border come first.

    Removing an edge shared by both borders would change the border the next
    composition needs.
    """
    try:
        b = sd.left_border() if side == "left" else sd.right_border()
    except StripError:
        return cands
    owner = sd.edge_owner()
    on = {owner[d] for d in b.darts if d in owner}
    pm = sd.pm
    return sorted(cands, key=lambda c: c[0] in on or pm.twin[c[0]] in on or c[1] in on)


def _swap_surgery(sd: StripDiagram, f1: tuple[int, int], f2: tuple[int, int]):
    pm = sd.pm
    saved = {}
    for d in (*f1, *f2):
        p = pm.pred(d)
        if p in (*f1, *f2) or p == d:
            raise StripError("swap edge shares a corner with the other swap edge")
        saved[d] = (p, pm.corner[p], pm.corner[d])
    remove_gamma_edge(sd, f1[0])
    remove_gamma_edge(sd, f2[0])
    (t1, a1), (t2, a2) = f1, f2
    for a, t in ((a1, t2), (t1, a2)):
        pa, ca_pred, ca = saved[a]
        pt, ct_pred, ct = saved[t]
        pieces = route_edge(sd, pa, pt)
        na, nt = pieces[0], pm.twin[pieces[-1]]
        pm.corner[pa], pm.corner[na] = ca_pred, ca
        pm.corner[pt], pm.corner[nt] = ct_pred, ct


# ---------------------------------------------------------------- routing

def _sub_edges(sd: StripDiagram) -> dict[tuple[str, int, int], int]:
    """Inner darts of the pieces of rectangle edges, keyed by (side, edge index, piece index).

    The inner dart of a piece has the rectangle's interior on its left.
    """
    pm = sd.pm
    out = {}
    for side in ("top", "bottom"):
        pts = sd.top() if side == "top" else sd.bottom()
        slot, piece = 1, 0
        for p, q in zip(pts, pts[1:]):
            e = slot if side == "top" else (slot + 1 if slot % 2 else slot - 1)
            if sd.k > 0:
                inner = sd.west(q) if side == "top" else sd.east(p)
                out[(side, e, piece)] = inner
            if pm.kind[q] == "s":
                slot, piece = slot + 1, 0
            elif pm.kind[q] == "x":
                piece += 1
    return out


def _cross(sd: StripDiagram, inner: int) -> int:
    """Put a crossing on a frame piece; return the dart owning its inner corner."""
    pm = sd.pm
    (x0, y0), (x1, y1) = pm.pos[pm.org[inner]], pm.pos[pm.head(inner)]
    _, _, fwd = pm.split_edge(inner, "x", ((x0 + x1) / 2, y0))
    return fwd


def route_edge(sd: StripDiagram, ref_u: int, ref_w: int, via: Sequence[int] | None = None) -> list[int]:
    """Draw a new diagram edge from the corner owned by ``ref_u`` to that of ``ref_w``.

    Without ``via`` the route is a shortest path in the face graph; with
    ``via`` the edge crosses the listed ``(side, rectangle edge)`` pieces in
    order.  Returns the planar darts of the new chain.
    """
    pm = sd.pm
    pieces = []
    ref = ref_u
    steps = list(via) if via is not None else None
    while True:
        if steps is not None and not steps or steps is None and _same_face(pm, ref, ref_w):
            if not _same_face(pm, ref, ref_w):
                raise StripError("route does not reach its target region")
            d, _ = pm.connect(ref, ref_w)
            pieces.append(d)
            return pieces
        subs = _sub_edges(sd)
        face = set(pm.face_cycle(ref))
        if steps is not None:
            side, e = steps.pop(0)
            opts = sorted(key for key, inner in subs.items()
                          if key[0] == side and key[1] == e and inner in face)
            if not opts:
                raise StripError(f"rectangle edge {e} is not reachable from the current region")
            key = opts[0]
        else:
            key = _bfs_first_hop(sd, subs, ref, ref_w)
        other = ("top" if key[0] == "bottom" else "bottom", key[1], key[2])
        inner_here, inner_there = subs[key], subs[other]
        fwd = _cross(sd, inner_here)
        d, _ = pm.connect(ref, fwd)
        pieces.append(d)
        ref = _cross(sd, inner_there)


def _inside_crossings(sd: StripDiagram, inner: int) -> bool:
    """The frame piece lies between the extreme crossings of its side.

    Crossing outside that range would move a border of the strip.
    """
    pm = sd.pm
    side = "top" if pm.pos[pm.org[inner]][1] == 1.0 else "bottom"
    xs = [pm.pos[v][0] for v in (sd.top_crossings() if side == "top" else sd.bottom_crossings())]
    if not xs:
        return True
    mid = (pm.pos[pm.org[inner]][0] + pm.pos[pm.head(inner)][0]) / 2
    return min(xs) < mid < max(xs)


def _bfs_first_hop(sd: StripDiagram, subs: dict, ref: int, target: int):
    try:
        return _bfs(sd, subs, ref, target, lambda inner: _inside_crossings(sd, inner))
    except StripError:
        return _bfs(sd, subs, ref, target, lambda inner: True)


def _bfs(sd: StripDiagram, subs: dict, ref: int, target: int, allowed):
    pm = sd.pm
    fidx = pm.face_index()
    start, goal = fidx[ref], fidx[target]
    links: dict[int, list] = {}
    for key, inner in sorted(subs.items()):
        other = ("top" if key[0] == "bottom" else "bottom", key[1], key[2])
        if other in subs and allowed(inner) and allowed(subs[other]):
            links.setdefault(fidx[inner], []).append((key, fidx[subs[other]]))
    first = {start: None}
    queue = [start]
    while queue:
        f = queue.pop(0)
        if f == goal:
            break
        for key, g in links.get(f, []):
            if g not in first:
                first[g] = key if first[f] is None else first[f]
                queue.append(g)
    if goal not in first or first[goal] is None:
        raise StripError("no route between the two regions")
    return first[goal]


# ---------------------------------------------------------------- inversion

def invert(sd: StripDiagram) -> StripDiagram:
    """``D^-``: every corner label inverted, A+ and A- marks swapped."""
    out = sd.copy()
    for d in out.pm.corner:
        out.pm.corner[d] = -out.pm.corner[d]
    out.aplus, out.aminus = set(sd.aminus), set(sd.aplus)
    out.name = sd.name[:-1] if sd.name.endswith("-") else sd.name + "-"
    return out


# ---------------------------------------------------------------- serialization

def strip_to_json(sd: StripDiagram) -> dict:
    """Closed-map style record of the whole drawing, frame included.

    Frame vertices carry kinds ``c``/``s``/``x`` and no corners; every vertex
    also records its position, which fixes the left-to-right order of the
    crossings.
    """
    pm = sd.pm
    verts = []
    for v in sorted(pm.kind):
        r = pm.rot[v]
        verts.append({
            "id": v,
            "kind": pm.kind[v],
            "rotation": list(r),
            "corners": [pm.corner[d] for d in r] if pm.is_gamma(v) else [],
            "interior": True,
            "pos": list(pm.pos[v]),
        })
    twins = sorted([d, e] for d, e in pm.twin.items() if d < e)
    marks = dict(sd.marks)
    marks["aplus"] = sorted(sd.aplus)
    marks["aminus"] = sorted(sd.aminus)
    marks["frame"] = dict(sd.corners)
    return {
        "name": sd.name,
        "ctx": sd.ctx.to_json(),
        "vertices": verts,
        "twins": twins,
        "top": sd.top_crossings(),
        "bottom": sd.bottom_crossings(),
        "marks": marks,
        "k": sd.k,
        "intermediate": sd.intermediate,
    }


def strip_from_json(data: dict) -> StripDiagram:
    pm = PlanarMap()
    for rec in data["vertices"]:
        v = pm.add_vertex(rec["kind"], tuple(rec["pos"]), int(rec["id"]))
        for d in rec["rotation"]:
            pm.attach(v, d)
        for d, c in zip(rec["rotation"], rec["corners"]):
            pm.corner[d] = c
    for d, e in data["twins"]:
        pm.twin[d], pm.twin[e] = e, d
    pm._dnext = max(pm.twin, default=-1) + 1
    marks = dict(data["marks"])
    aplus, aminus = set(marks.pop("aplus")), set(marks.pop("aminus"))
    frame = {key: int(v) for key, v in marks.pop("frame").items()}
    sd = StripDiagram(pm, int(data["k"]), frame, aplus, aminus, GroupCtx.from_json(data["ctx"]),
                      marks, bool(data["intermediate"]), data.get("name", ""))
    if sd.top_crossings() != list(data["top"]) or sd.bottom_crossings() != list(data["bottom"]):
        raise StripError("crossing lists disagree with the drawing")
    return sd


def with_ctx(sd: StripDiagram, ctx: GroupCtx) -> StripDiagram:
    out = sd.copy()
    out.ctx = ctx
    return out


# ---------------------------------------------------------------- base library

BASE_NAMES = ("D1,1", "D1,1-", "D3,3", "D2,2", "D3,2", "D+2", "D+N+1,N")


def base(name: str, N: int | None = None, ctx: GroupCtx | None = None) -> StripDiagram:
    """A base strip from the shipped fixtures, placed in ``ctx``.

    ``name`` is one of :data:`BASE_NAMES`; ``"D+N+1,N"`` takes the odd
    parameter ``N >= 3`` (``"D+4,3"`` style names are accepted as well).
    """
    from . import recipes

    if name.startswith("D+") and name != "D+2":
        if name != "D+N+1,N":
            try:
                N = int(name.split(",")[1])
            except (IndexError, ValueError):
                raise StripError(f"unknown base diagram {name!r}") from None
        if N is None or N < 3 or N % 2 == 0:
            raise StripError("D+N+1,N needs an odd parameter N >= 3")
        name = f"D+{N + 1},{N}"
        if N not in recipes.SHIPPED_DPLUS:
            return with_ctx(recipes.dplus_n(N), ctx or GroupCtx())
    elif name not in BASE_NAMES:
        raise StripError(f"unknown base diagram {name!r}")
    return with_ctx(_load_fixture(name), ctx or GroupCtx())


_FIXTURE_CACHE: dict[str, StripDiagram] = {}


def _load_fixture(name: str) -> StripDiagram:
    from .recipes import FIXTURE_DIR, fixture_name

    if name not in _FIXTURE_CACHE:
        path = FIXTURE_DIR / fixture_name(name)
        _FIXTURE_CACHE[name] = strip_from_json(json.loads(path.read_text()))
    return _FIXTURE_CACHE[name].copy()
