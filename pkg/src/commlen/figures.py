"""Figure fixtures: the torus diagram for (ab)^3 and the path-label example.

Both are transcriptions of drawings, shipped as JSON under
``fixtures/figures``.  The labels printed next to the drawings are stored
alongside and serve as the oracle for the transcription.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .fpword import Word, parse
from .surfmap import ClosedMap

FIGURE_DIR = Path(__file__).parent / "fixtures" / "figures"


def _load(name: str) -> dict:
    return json.loads((FIGURE_DIR / name).read_text())


@dataclass(frozen=True)
class TorusFigure:
    map: ClosedMap
    face_label: Word
    genus: int


def fig1() -> TorusFigure:
    data = _load("fig1_torus.json")
    m = ClosedMap.from_json(data["map"])
    return TorusFigure(m, parse(data["face_label"], m.ctx), data["genus"])


@dataclass(frozen=True)
class PathFigure:
    map: ClosedMap
    corner_names: dict[int, list[str]]
    paths: dict[str, list[tuple[int, int]]]
    labels: dict[str, list[str]]

    def read(self, path: str) -> list[str]:
        """Names of the corners read by an auxiliary path."""
        steps = self.paths[path]
        return [self.corner_names[v][i] for v, i in self.map.path_corners(steps)]


def fig4() -> PathFigure:
    data = _load("fig4_paths.json")
    return PathFigure(
        ClosedMap.from_json(data["map"]),
        {int(v): names for v, names in data["corner_names"].items()},
        {p: [tuple(s) for s in steps] for p, steps in data["paths"].items()},
        dict(data["labels"]),
    )


@dataclass(frozen=True)
class FigureCheck:
    name: str
    expected: str
    got: str

    @property
    def ok(self) -> bool:
        return self.expected == self.got


def figure_checks() -> list[FigureCheck]:
    """Every printed label of the two figures against its recomputation."""
    from .fpword import are_conjugate
    from .surfmap import is_valid_diagram

    f1 = fig1()
    m = f1.map
    faces = m.faces()
    label = m.face_label(faces[0]) if faces else None
    out = [
        FigureCheck("fig1 faces", "1", str(len(faces))),
        FigureCheck("fig1 genus", str(f1.genus), str(m.genus())),
        FigureCheck("fig1 face label", str(f1.face_label),
                    str(f1.face_label) if label is not None and are_conjugate(label, f1.face_label) else str(label)),
        FigureCheck("fig1 valid", "True", str(is_valid_diagram(m).ok)),
    ]
    f4 = fig4()
    for p, want in f4.labels.items():
        out.append(FigureCheck(f"fig4 l({p})", " ".join(want), " ".join(f4.read(p))))
    return out


def canonical_form(m: ClosedMap) -> tuple:
    """Isomorphism invariant of a map with its vertex kinds and corners.

    Relabels darts in breadth-first order from every possible root dart and
    keeps the least encoding; two connected maps are isomorphic (by an
    orientation-preserving map respecting kinds and corners) exactly when
    their forms agree.
    """
    best = None
    for root in m.darts:
        order = {root: 0}
        queue = [root]
        while queue:
            d = queue.pop(0)
            for nxt in (m.succ(d), m.twin[d]):
                if nxt not in order:
                    order[nxt] = len(order)
                    queue.append(nxt)
        if len(order) != len(m.darts):
            continue
        code = tuple(
            (order[m.succ(d)], order[m.twin[d]], m.vertices[m.origin(d)].kind, m.corner_exp(d))
            for d in sorted(order, key=order.get)
        )
        if best is None or code < best:
            best = code
    return best or ()


def equivalent(m1: ClosedMap, m2: ClosedMap) -> bool:
    return canonical_form(m1) == canonical_form(m2)
