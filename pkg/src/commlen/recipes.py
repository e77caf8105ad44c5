"""Drawing recipes for the base strips.

Each recipe reproduces one figure of the base library as coordinates,
polylines and a few routed edges.  The shipped fixtures under
``fixtures/strips`` are the output of these functions (regenerated by
``python3 -m commlen.recipes``); a test keeps the two in sync.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

from .fpword import A, T, GroupCtx
from .stripdiag import (Drawing, StripDiagram, compose_vv, draw, invert, normalize_corners,
                        route_edge, strip_to_json)

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "strips"


def _set_corners(sd: StripDiagram, v: int, exps) -> None:
    for d, c in zip(sd.pm.rot[v], exps):
        sd.pm.corner[d] = c


def d11() -> StripDiagram:
    """The degenerate single t-arc on a sphere, A+ above A-."""
    return draw(Drawing(
        k=0,
        vertices={"P": (A, (0.5, 0.7)), "T": (T, (0.5, 0.5)), "M": (A, (0.5, 0.3))},
        edges=[["P", "T"], ["T", "M"]],
        aplus=["P"], aminus=["M"]), GroupCtx(), "D1,1")


def d11_inv() -> StripDiagram:
    sd = invert(d11())
    sd.marks["borders"] = True
    return sd


def d33() -> StripDiagram:
    """Three t-arcs between one A+ and one A- vertex on the torus."""
    sd = draw(Drawing(
        k=1,
        vertices={"P": (A, (0.5, 0.3)), "M": (A, (0.5, 0.7)), "T1": (T, (0.5, 0.5)),
                  "T2": (T, (1.5, 0.2)), "T3": (T, (1.5, 0.8))},
        edges=[["P", "T1"], ["T1", "M"],
               ["M", ("up", 0.5, 1.5), "T2"], ["T2", "P"],
               ["P", ("down", 0.5, 1.5), "T3"], ["T3", "M"]],
        aplus=["P"], aminus=["M"]), GroupCtx(), "D3,3")
    # the figure has A+ on top; the drawing above is its mirror in the labels
    sd = invert(sd)
    sd.name = "D3,3"
    sd.marks["central_t"] = sd.marks["names"]["T1"]
    return sd


def d22() -> StripDiagram:
    sd = draw(Drawing(
        k=1,
        vertices={"P": (A, (0.5, 0.3)), "T": (T, (0.5, 0.5)), "M": (A, (0.5, 0.7))},
        edges=[["P", "T"], ["T", "M"], ["P", ("up", 1.5, 0.5), "T"]],
        aplus=["P"], aminus=["M"]), GroupCtx(), "D2,2")
    pm, names = sd.pm, sd.marks["names"]
    route_edge(sd, pm.rot[names["M"]][0], pm.rot[names["T"]][1], [("bottom", 1)])
    _set_corners(sd, names["T"], (1, -1, 1, -1))
    normalize_corners(sd)
    return sd


def d32() -> StripDiagram:
    """A 4-cycle P, T, M, t through the handle with an a-vertex doubly joined to T."""
    sd = draw(Drawing(
        k=1,
        vertices={"P": (A, (0.5, 0.3)), "M": (A, (0.5, 0.7)), "T0": (T, (0.3, 0.5)),
                  "T": (T, (0.7, 0.5)), "A0": (A, (1.5, 0.5))},
        edges=[["P", "T0"], ["T0", "M"], ["P", "T"], ["T", ("up", 0.5, 1.5), "M"], ["A0", "T"]],
        aplus=["P"], aminus=["M"]), GroupCtx(), "D3,2")
    pm, names = sd.pm, sd.marks["names"]
    route_edge(sd, pm.rot[names["A0"]][0], pm.rot[names["T"]][1], [("top", 2)])
    _set_corners(sd, names["T"], (-1, 1, 1, -1))
    _set_corners(sd, names["T0"], (1, -1))
    _set_corners(sd, names["A0"], (-1, 1))
    return sd


def dplus2() -> StripDiagram:
    """Two faces, each labelled [a,t]."""
    sd = draw(Drawing(
        k=1,
        vertices={"A": (A, (0.5, 0.5)), "T": (T, (1.5, 0.5))},
        edges=[["A", "T"], ["A", ("up", 0.5, 1.5), "T"], ["A", ("down", 0.5, 1.5), "T"]],
        corners={"A": (1, 1, -1), "T": (1, 1, -1)}), GroupCtx(), "D+2")
    pm, names = sd.pm, sd.marks["names"]
    av, tv = names["A"], names["T"]
    route_edge(sd, pm.rot[av][1], pm.rot[tv][2])
    _set_corners(sd, av, (1, -1, -1, 1))
    _set_corners(sd, tv, (1, -1, -1, 1))
    return sd


def d_odd(N: int) -> StripDiagram:
    """D_{N,N} for odd N as a chain of D3,3 under vertex-pair gluing."""
    if N == 1:
        return d11()
    out = base33 = d33()
    for _ in range((N - 3) // 2):
        out = compose_vv(out, base33)
    out.name = f"D{N},{N}"
    return out


def dplus_n(N: int) -> StripDiagram:
    """D+N+1,N: a loop at the central T of D_{N,N}^- winding once around."""
    if N < 3 or N % 2 == 0:
        raise ValueError("D+N+1,N needs odd N >= 3")
    sd = invert(d_odd(N))
    sd.name = f"D+{N + 1},{N}"
    pm = sd.pm
    tv = sd.marks["central_t"]
    d0, d1 = pm.rot[tv]
    via = []
    for i in range(1, N - 1, 2):
        via += [("bottom", i + 1), ("top", i)]
    pieces = route_edge(sd, d0, d1, via)
    av, _, _ = pm.split_edge(pieces[0], A, pm.pos[tv])
    _set_corners(sd, tv, (1, 1, -1, -1))
    _set_corners(sd, av, (1, -1))
    return sd


RECIPES = {
    "D1,1": d11,
    "D1,1-": d11_inv,
    "D3,3": d33,
    "D2,2": d22,
    "D3,2": d32,
    "D+2": dplus2,
}
# odd N shipped for D+N+1,N; larger N are drawn on demand
SHIPPED_DPLUS = (3, 5, 7, 9)


def fixture_name(name: str) -> str:
    return name.replace(",", "_").replace("+", "plus").replace("-", "inv") + ".json"


def all_recipes() -> dict[str, StripDiagram]:
    out = {name: fn() for name, fn in RECIPES.items()}
    for N in SHIPPED_DPLUS:
        out[f"D+{N + 1},{N}"] = dplus_n(N)
    return out


def write_fixtures(directory: Path = FIXTURE_DIR) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, sd in all_recipes().items():
        path = directory / fixture_name(name)
        path.write_text(json.dumps(strip_to_json(sd), sort_keys=True, indent=1) + "\n")
        written.append(path)
    return written


if __name__ == "__main__":
    for p in write_fixtures(Path(sys.argv[1]) if len(sys.argv) > 1 else FIXTURE_DIR):
        print(p)
