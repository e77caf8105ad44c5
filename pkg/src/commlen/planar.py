"""Mutable planar map used to hold a strip drawing together with its frame.

Vertices are either diagram vertices (kind ``"a"`` / ``"t"``) or frame
vertices: rectangle corners ``"c"``, separators ``"s"`` between consecutive
rectangle edges, and crossings ``"x"`` where a diagram edge meets the top or
bottom side.  Rotations are counterclockwise, ``face_next = pred(twin(d))``
exactly as in :mod:`commlen.surfmap`.
"""
from __future__ import annotations

import copy

GAMMA_KINDS = ("a", "t")
FRAME_KINDS = ("c", "s", "x")


class PlanarMap:
    def __init__(self):
        self.kind: dict[int, str] = {}
        self.rot: dict[int, list[int]] = {}
        self.pos: dict[int, tuple[float, float]] = {}
        self.org: dict[int, int] = {}
        self.twin: dict[int, int] = {}
        # corner exponent owned by each dart of a diagram vertex
        self.corner: dict[int, int] = {}
        self._vnext = 0
        self._dnext = 0

    def copy(self) -> "PlanarMap":
        return copy.deepcopy(self)

    # ------------------------------------------------------------ creation
    def add_vertex(self, kind: str, pos=(0.0, 0.0), vid: int | None = None) -> int:
        if vid is None:
            vid = self._vnext
        if vid in self.kind:
            raise ValueError(f"vertex {vid} exists")
        self._vnext = max(self._vnext, vid + 1)
        self.kind[vid] = kind
        self.rot[vid] = []
        self.pos[vid] = (float(pos[0]), float(pos[1]))
        return vid

    def new_darts(self) -> tuple[int, int]:
        d, e = self._dnext, self._dnext + 1
        self._dnext += 2
        self.twin[d] = e
        self.twin[e] = d
        return d, e

    def connect(self, after_u: int, after_w: int) -> tuple[int, int]:
        """New edge between the corners owned by darts ``after_u`` and ``after_w``."""
        d, e = self.new_darts()
        self.attach_after(after_u, d)
        self.attach_after(after_w, e)
        for x in (d, e):
            if self.is_gamma(self.org[x]):
                self.corner.setdefault(x, 0)
        return d, e

    def attach(self, v: int, d: int, index: int | None = None):
        """Put dart ``d`` into the rotation of ``v`` (at ``index``, default end)."""
        self.org[d] = v
        if index is None:
            self.rot[v].append(d)
        else:
            self.rot[v].insert(index, d)

    def attach_after(self, ref: int, d: int):
        """Insert ``d`` into the corner owned by ``ref`` (right after it, counterclockwise)."""
        v = self.org[ref]
        self.attach(v, d, self.rot[v].index(ref) + 1)

    def attach_before(self, ref: int, d: int):
        v = self.org[ref]
        self.attach(v, d, self.rot[v].index(ref))

    # ------------------------------------------------------------ navigation
    def is_gamma(self, v: int) -> bool:
        return self.kind[v] in GAMMA_KINDS

    def succ(self, d: int) -> int:
        r = self.rot[self.org[d]]
        return r[(r.index(d) + 1) % len(r)]

    def pred(self, d: int) -> int:
        r = self.rot[self.org[d]]
        return r[(r.index(d) - 1) % len(r)]

    def head(self, d: int) -> int:
        return self.org[self.twin[d]]

    def face_next(self, d: int) -> int:
        return self.pred(self.twin[d])

    def face_cycle(self, d: int) -> list[int]:
        out = [d]
        x = self.face_next(d)
        while x != d:
            out.append(x)
            x = self.face_next(x)
            if len(out) > 4 * len(self.twin) + 4:
                raise RuntimeError("face walk does not close")
        return out

    def faces(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for d in sorted(self.org):
            if d not in seen:
                cyc = self.face_cycle(d)
                seen.update(cyc)
                out.append(cyc)
        return out

    def face_index(self) -> dict[int, int]:
        idx = {}
        for i, cyc in enumerate(self.faces()):
            for d in cyc:
                idx[d] = i
        return idx

    def darts(self) -> list[int]:
        return sorted(self.org)

    # ------------------------------------------------------------ surgery
    def detach(self, d: int):
        """Remove dart ``d`` from its rotation; its corner merges into the predecessor's."""
        v = self.org.pop(d)
        r = self.rot[v]
        i = r.index(d)
        if self.is_gamma(v) and len(r) > 1:
            p = r[i - 1]
            self.corner[p] = self.corner.get(p, 0) + self.corner.get(d, 0)
        r.pop(i)
        self.corner.pop(d, None)

    def delete_edge(self, d: int):
        e = self.twin[d]
        self.detach(d)
        self.detach(e)
        del self.twin[d]
        del self.twin[e]

    def delete_vertex(self, v: int):
        if self.rot[v]:
            raise ValueError(f"vertex {v} still has darts")
        for table in (self.kind, self.rot, self.pos):
            table.pop(v, None)

    def smooth(self, v: int):
        """Remove a degree-2 vertex, fusing its two edges into one."""
        d1, d2 = self.rot[v]
        e1, e2 = self.twin[d1], self.twin[d2]
        for d in (d1, d2):
            self.org.pop(d)
            self.twin.pop(d)
            self.corner.pop(d, None)
        self.rot[v] = []
        self.delete_vertex(v)
        self.twin[e1] = e2
        self.twin[e2] = e1

    def pinch(self, d1: int, d2: int):
        """Glue ``org(d2)`` onto ``org(d1)`` at the corners owned by ``d1`` and ``d2``."""
        v1, v2 = self.org[d1], self.org[d2]
        if v1 == v2:
            raise ValueError("pinch needs two distinct vertices")
        r2 = self.rot[v2]
        j = r2.index(d2)
        moved = r2[j + 1:] + r2[:j + 1]
        r1 = self.rot[v1]
        i = r1.index(d1)
        self.rot[v1] = r1[:i + 1] + moved + r1[i + 1:]
        for d in moved:
            self.org[d] = v1
        self.rot[v2] = []
        self.delete_vertex(v2)

    def new_dart(self) -> int:
        d = self._dnext
        self._dnext += 1
        return d

    def split_edge(self, d: int, kind: str, pos) -> tuple[int, int, int]:
        """Subdivide the edge of ``d`` with a new vertex ``x``.

        Returns ``(x, back, fwd)``: ``back`` at ``x`` points toward ``org(d)``,
        ``fwd`` toward ``head(d)``.  Dart ``d`` and its twin keep their places.
        """
        e = self.twin[d]
        x = self.add_vertex(kind, pos)
        back, fwd = self.new_dart(), self.new_dart()
        self.twin[d], self.twin[back] = back, d
        self.twin[e], self.twin[fwd] = fwd, e
        self.attach(x, back)
        self.attach(x, fwd)
        if self.is_gamma(x):
            self.corner[back] = self.corner[fwd] = 0
        return x, back, fwd
