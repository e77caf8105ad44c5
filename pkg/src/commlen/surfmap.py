"""Closed oriented combinatorial maps carrying Howie diagram data.

Conventions (fixed once, used everywhere):

* ``rotation`` of a vertex lists its darts counterclockwise.
* corner ``i`` of a vertex sits between ``rotation[i]`` and ``rotation[i+1]``;
  every dart therefore "owns" the corner counterclockwise after it.
* faces are traced with the face on the left:
  ``next(d) = rotation-predecessor of twin(d)``.  Reading the corner owned by
  each dart of a face cycle gives the face label counterclockwise.
* a vertex label is read clockwise, i.e. corners in reverse rotation order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .fpword import A, T, GroupCtx, Word, reduce


class MapStructureError(ValueError):
    """Raised for malformed involutions, rotations or non-integral genus."""


@dataclass(frozen=True)
class VertexRec:
    kind: str
    rotation: tuple[int, ...]
    corners: tuple[int, ...]
    interior: bool = True

    def __post_init__(self):
        if self.kind not in (A, T):
            raise MapStructureError(f"vertex kind must be 'a' or 't', got {self.kind!r}")
        if len(self.rotation) != len(self.corners):
            raise MapStructureError("one corner label per dart required")
        if not self.rotation:
            raise MapStructureError("vertices must have degree >= 1")

    @property
    def degree(self) -> int:
        return len(self.rotation)


@dataclass
class ClosedMap:
    vertices: dict[int, VertexRec]
    twin: dict[int, int]
    ctx: GroupCtx = field(default_factory=GroupCtx)

    def __post_init__(self):
        self._origin: dict[int, int] = {}
        self._pos: dict[int, int] = {}
        for v, rec in self.vertices.items():
            for i, d in enumerate(rec.rotation):
                if d in self._origin:
                    raise MapStructureError(f"dart {d} appears twice in rotations")
                self._origin[d] = v
                self._pos[d] = i
        if set(self.twin) != set(self._origin):
            raise MapStructureError("twin map and rotations disagree on the dart set")
        for d, e in self.twin.items():
            if e == d or self.twin.get(e) != d:
                raise MapStructureError(f"twin is not a fixed-point-free involution at dart {d}")

    # ------------------------------------------------------------ basics
    @property
    def darts(self) -> list[int]:
        return sorted(self._origin)

    def origin(self, d: int) -> int:
        return self._origin[d]

    def head(self, d: int) -> int:
        return self._origin[self.twin[d]]

    def pos(self, d: int) -> int:
        return self._pos[d]

    def succ(self, d: int) -> int:
        rot = self.vertices[self._origin[d]].rotation
        return rot[(self._pos[d] + 1) % len(rot)]

    def pred(self, d: int) -> int:
        rot = self.vertices[self._origin[d]].rotation
        return rot[(self._pos[d] - 1) % len(rot)]

    def face_next(self, d: int) -> int:
        return self.pred(self.twin[d])

    def corner_exp(self, d: int) -> int:
        """Exponent of the corner owned by dart ``d``."""
        return self.vertices[self._origin[d]].corners[self._pos[d]]

    def corner_word(self, d: int) -> Word:
        kind = self.vertices[self._origin[d]].kind
        return Word.gen(kind, self.corner_exp(d), self.ctx)

    def num_vertices(self) -> int:
        return len(self.vertices)

    def num_edges(self) -> int:
        return len(self.twin) // 2

    def edges(self) -> list[tuple[int, int]]:
        return sorted((d, e) for d, e in self.twin.items() if d < e)

    # ------------------------------------------------------------ faces
    def faces(self) -> list[list[int]]:
        """Face boundary cycles as dart lists, each starting at its least dart."""
        seen: set[int] = set()
        result = []
        for d in self.darts:
            if d in seen:
                continue
            cycle = []
            x = d
            while x not in seen:
                seen.add(x)
                cycle.append(x)
                x = self.face_next(x)
            if x != d:
                raise MapStructureError("face permutation is not a permutation")
            result.append(cycle)
        return result

    def num_faces(self) -> int:
        return len(self.faces())

    def euler_characteristic(self) -> int:
        return self.num_vertices() - self.num_edges() + self.num_faces()

    def components(self) -> int:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d, e in self.twin.items():
            parent[find(self.origin(d))] = find(self.origin(e))
        return len({find(v) for v in self.vertices})

    def genus(self) -> int:
        if self.components() != 1:
            raise MapStructureError("genus is defined for connected maps only")
        twice = 2 - self.euler_characteristic()
        if twice < 0 or twice % 2:
            raise MapStructureError(f"2 - chi = {twice} is not a nonnegative even integer")
        return twice // 2

    # ------------------------------------------------------------ labels
    def vertex_label(self, v: int) -> Word:
        rec = self.vertices[v]
        letters = [(rec.kind, e) for e in reversed(rec.corners)]
        return reduce(letters, self.ctx)

    def vertex_exponent_sum(self, v: int) -> int:
        return sum(self.vertices[v].corners)

    def face_of(self, d: int) -> list[int]:
        for cycle in self.faces():
            if d in cycle:
                i = cycle.index(d)
                return cycle[i:] + cycle[:i]
        raise KeyError(d)

    def face_letters(self, cycle: Sequence[int]) -> list[tuple[str, int]]:
        return [(self.vertices[self._origin[d]].kind, self.corner_exp(d)) for d in cycle]

    def face_label(self, face: Sequence[int] | int, start: int | None = None) -> Word:
        """Counterclockwise product of corner labels of a face.

        ``face`` is a dart cycle or any dart on the face; ``start`` picks the
        first corner (by its owning dart) and must lie on the face.
        """
        cycle = self.face_of(face) if isinstance(face, int) else list(face)
        if start is not None:
            if start not in cycle:
                raise ValueError(f"corner of dart {start} is not on this face")
            i = cycle.index(start)
            cycle = cycle[i:] + cycle[:i]
        return reduce(self.face_letters(cycle), self.ctx)

    # ------------------------------------------------------------ paths
    def path_corners(self, steps: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
        """Corners read by an auxiliary path, as ``(vertex, corner index)`` pairs.

        A step ``(d, +1)`` runs from the origin of dart ``d`` to the midpoint
        of its edge, ``(d, -1)`` runs from that midpoint back to the origin.
        Paths start and end at midpoints.
        """
        if not steps:
            return []
        if steps[0][1] != -1 or steps[-1][1] != +1:
            raise ValueError("auxiliary paths start and end at edge midpoints")
        out: list[tuple[int, int]] = []
        for (d0, s0), (d1, s1) in zip(steps, steps[1:]):
            if s0 == -1:
                # arrived at origin(d0); must leave from the same vertex
                if s1 != +1 or self.origin(d1) != self.origin(d0):
                    raise ValueError(f"disconnected step after ({d0}, -1)")
                v = self.origin(d0)
                deg = self.vertices[v].degree
                i, j = self.pos(d0), self.pos(d1)
                count = (i - j) % deg or deg
                out.extend((v, (i - 1 - k) % deg) for k in range(count))
            else:
                # at the midpoint of d0's edge: continue across or turn back
                if s1 != -1 or d1 not in (d0, self.twin[d0]):
                    raise ValueError(f"disconnected step after ({d0}, +1)")
        return out

    def path_label(self, steps: Sequence[tuple[int, int]]) -> Word:
        letters = []
        for v, i in self.path_corners(steps):
            rec = self.vertices[v]
            letters.append((rec.kind, rec.corners[i]))
        return reduce(letters, self.ctx)

    # ------------------------------------------------------------ editing
    def relabeled(self, ctx: GroupCtx) -> "ClosedMap":
        return ClosedMap(dict(self.vertices), dict(self.twin), ctx)

    # ------------------------------------------------------------ json
    def to_json(self) -> dict:
        verts = []
        for v in sorted(self.vertices):
            rec = self.vertices[v]
            verts.append({
                "id": v,
                "kind": rec.kind,
                "rotation": list(rec.rotation),
                "corners": list(rec.corners),
                "interior": rec.interior,
            })
        return {
            "ctx": self.ctx.to_json(),
            "vertices": verts,
            "twins": [[d, e] for d, e in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClosedMap":
        ctx = GroupCtx.from_json(data["ctx"])
        vertices = {}
        for rec in data["vertices"]:
            vertices[int(rec["id"])] = VertexRec(
                rec["kind"], tuple(rec["rotation"]), tuple(rec["corners"]), bool(rec.get("interior", True)))
        twin = {}
        for d, e in data["twins"]:
            twin[d] = e
            twin[e] = d
        return cls(vertices, twin, ctx)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def interior_ok(m: ClosedMap, v: int) -> bool:
    """The vertex label is trivial in its factor.

    For T-vertices with ``ord(t)`` infinite this is the integer condition
    "corner exponents sum to 0", which certifies every finite ``ord(t)`` at
    once; with finite ``ord(t)`` the sum is taken modulo the order.
    """
    return m.vertex_label(v).is_identity()


@dataclass
class ValidityReport:
    checks: dict[str, bool]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "failures": self.failures}


def is_valid_diagram(m: ClosedMap) -> ValidityReport:
    checks: dict[str, bool] = {}
    failures: list[str] = []

    bip = all(m.vertices[m.origin(d)].kind != m.vertices[m.head(d)].kind for d in m.darts)
    checks["bipartite"] = bip
    if not bip:
        failures.append("an edge joins two vertices of the same kind")

    bad = [v for v, rec in m.vertices.items() if rec.interior and not interior_ok(m, v)]
    checks["interior_labels"] = not bad
    if bad:
        failures.append(f"interior vertices with nontrivial label: {sorted(bad)}")

    try:
        m.genus()
        checks["orientable_euler"] = True
    except MapStructureError as exc:
        checks["orientable_euler"] = False
        failures.append(str(exc))

    # every map built from rotations closes up with disk faces; a lone vertex
    # with no edges cannot be written down, so that degenerate case never arises
    checks["disk_faces"] = True
    return ValidityReport(checks, failures)


class MapBuilder:
    """Incremental construction of a ClosedMap from edges and ordered rotations."""

    def __init__(self, ctx: GroupCtx | None = None):
        self.ctx = ctx or GroupCtx()
        self.kind: dict[int, str] = {}
        self.interior: dict[int, bool] = {}
        self.rot: dict[int, list[int]] = {}
        self.corner: dict[int, int] = {}
        self.twin: dict[int, int] = {}
        self._next = 0

    def vertex(self, v: int, kind: str, interior: bool = True) -> int:
        self.kind[v] = kind
        self.interior[v] = interior
        self.rot.setdefault(v, [])
        return v

    def edge(self) -> tuple[int, int]:
        d, e = self._next, self._next + 1
        self._next += 2
        self.twin[d] = e
        self.twin[e] = d
        return d, e

    def place(self, v: int, darts: Iterable[int], corners: Iterable[int]):
        """Set the counterclockwise rotation at ``v`` and the corner after each dart."""
        self.rot[v] = list(darts)
        for d, c in zip(self.rot[v], corners):
            self.corner[d] = c

    def build(self) -> ClosedMap:
        verts = {
            v: VertexRec(self.kind[v], tuple(r), tuple(self.corner[d] for d in r), self.interior[v])
            for v, r in self.rot.items()
        }
        return ClosedMap(verts, dict(self.twin), self.ctx)
