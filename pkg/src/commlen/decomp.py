"""Commutator decompositions of [a,t]^n.

Three ingredients:

* :func:`extract_commutators` turns a one-face diagram of genus ``k`` into
  ``k`` commutator pairs.  The face boundary is read as a quadratic word in
  edge symbols interleaved with corner labels; contracting a spanning tree
  leaves one symbol per generator of the fundamental group of the graph, and
  the classical cut-and-paste normalization rewrites that word as a product
  of commutators.  Every symbol carries the label of its loop, so each step
  can be checked against the face label.
* :func:`decompose` plans a decomposition for any ``(n, N)`` following the
  upper-bound argument: Culler-type decompositions below ``N``, the closed
  form for ``N = 2``, builder diagrams, and the two splittings for odd ``N``
  with even ``n``.
* :func:`search_diagrams` enumerates one-face diagrams with a given face
  label by gluing the sides of a labelled polygon.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .builder import BuildRefused, build_diagram, k_hat
from .fpword import (A, FREE, INF, T, GroupCtx, Order, Word, at_power, commutator, conjugate,
                     conjugator_between, cyclic_reduce, parse, product)
from .surfmap import ClosedMap, MapStructureError, VertexRec, interior_ok


class ExtractionError(ValueError):
    """The map does not satisfy the hypotheses of the extraction."""


class VerificationError(AssertionError):
    """A computed decomposition failed its own check (a defect, never expected)."""


# ---------------------------------------------------------------- decompositions

@dataclass
class Decomposition:
    """Pairs ``(X_i, Y_i)`` with ``prod [X_i, Y_i] == target`` in ``ctx``."""
    target: Word
    pairs: list[tuple[Word, Word]]
    method: str
    k_hat: int | None = None
    transcript: list[dict] = field(default_factory=list)

    @property
    def ctx(self) -> GroupCtx:
        return self.target.ctx

    @property
    def count(self) -> int:
        return len(self.pairs)

    @property
    def optimal(self) -> bool:
        return self.k_hat is not None and self.count == self.k_hat

    def product(self) -> Word:
        return product((commutator(x, y) for x, y in self.pairs), self.ctx)

    def holds(self, ctx: GroupCtx | None = None) -> bool:
        """Check the identity, optionally after mapping into another context."""
        if ctx is None:
            return self.product() == self.target
        got = product((commutator(x.with_ctx(ctx), y.with_ctx(ctx)) for x, y in self.pairs), ctx)
        return got == self.target.with_ctx(ctx)

    def verify(self) -> "Decomposition":
        if not self.holds():
            raise VerificationError(f"{self.method}: product of commutators differs from {self.target}")
        return self

    def identity_text(self) -> str:
        rhs = " ".join(f"[{x}, {y}]" for x, y in self.pairs) or "1"
        return f"{self.target} = {rhs}"

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "ctx": self.ctx.to_json(),
            "pairs": [[str(x), str(y)] for x, y in self.pairs],
            "count": self.count,
            "k_hat": self.k_hat,
            "optimal": self.optimal,
            "method": self.method,
            "transcript": self.transcript,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        ctx = GroupCtx.from_json(data["ctx"])
        pairs = [(parse(x, ctx), parse(y, ctx)) for x, y in data["pairs"]]
        return cls(parse(data["target"], ctx), pairs, data["method"], data.get("k_hat"),
                   list(data.get("transcript", [])))


def _concat(parts: Sequence[Decomposition], target: Word, method: str) -> Decomposition:
    pairs = [p for d in parts for p in d.pairs]
    transcript = [{"step": "factor", "method": d.method, "target": str(d.target), "count": d.count}
                  for d in parts]
    return Decomposition(target, pairs, method, None, transcript)


# ---------------------------------------------------------------- quadratic words

@dataclass(frozen=True)
class Sym:
    edge: int
    sign: int

    def __str__(self):
        return f"e{self.edge}" + ("" if self.sign == 1 else "^-1")


@dataclass
class QuadraticWord:
    """Cyclic sequence of edge symbols and group labels.

    Each edge symbol occurs exactly twice, once with each sign.  Deleting the
    symbols and multiplying the labels gives the face label.
    """
    items: list[Sym | Word]
    ctx: GroupCtx

    def symbols(self) -> list[Sym]:
        return [x for x in self.items if isinstance(x, Sym)]

    def is_quadratic(self) -> bool:
        seen: dict[int, list[int]] = {}
        for s in self.symbols():
            seen.setdefault(s.edge, []).append(s.sign)
        return all(sorted(v) == [-1, 1] for v in seen.values())

    def eliminate(self) -> Word:
        return product((x for x in self.items if isinstance(x, Word)), self.ctx)

    def __str__(self):
        return " ".join(str(x) if isinstance(x, Sym) else f"({x})" for x in self.items)


def _the_face(m: ClosedMap) -> list[int]:
    faces = m.faces()
    if len(faces) != 1:
        raise ExtractionError(f"expected one face, found {len(faces)}")
    return faces[0]


def boundary_word(m: ClosedMap) -> QuadraticWord:
    """The face boundary: each corner label followed by the edge leaving it."""
    face = _the_face(m)
    items: list[Sym | Word] = []
    for d in face:
        items.append(m.corner_word(d))
        e = min(d, m.twin[d])
        items.append(Sym(e, 1 if d == e else -1))
    return QuadraticWord(items, m.ctx)


# ---------------------------------------------------------------- extraction

_BASE = "base"


class _Walker:
    """Labels of closed walks based at the first corner of the face.

    The base point sits just clockwise of the first face dart ``d0`` (inside
    the corner owned by it), modelled as a virtual dart with trivial corner.
    """

    def __init__(self, m: ClosedMap, d0: int):
        self.m = m
        self.v0 = m.origin(d0)
        rot = list(m.vertices[self.v0].rotation)
        i = rot.index(d0)
        self.rot0 = rot[:i + 1] + [_BASE] + rot[i + 1:]
        self.identity = Word.identity(m.ctx)

    def _pred(self, d):
        if d == _BASE or self.m.origin(d) == self.v0:
            i = self.rot0.index(d)
            return self.rot0[i - 1]
        return self.m.pred(d)

    def _corner(self, d) -> Word:
        return self.identity if d == _BASE else self.m.corner_word(d)

    def sweep(self, start, end) -> Word:
        """Corners passed clockwise after arriving along ``start`` until leaving along ``end``."""
        out = self.identity
        x = start
        while True:
            x = self._pred(x)
            out = out * self._corner(x)
            if x == end:
                return out

    def loop(self, darts: Sequence[int]) -> Word:
        if not darts:
            return self.identity
        out = self.sweep(_BASE, darts[0])
        for d, nxt in zip(darts, darts[1:]):
            out = out * self.sweep(self.m.twin[d], nxt)
        return out * self.sweep(self.m.twin[darts[-1]], _BASE)


def _spanning_tree(m: ClosedMap, root: int) -> dict[int, list[int]]:
    """Breadth-first tree: vertex -> darts of the tree path from the root."""
    paths = {root: []}
    queue = [root]
    while queue:
        v = queue.pop(0)
        for d in m.vertices[v].rotation:
            w = m.head(d)
            if w not in paths:
                paths[w] = paths[v] + [d]
                queue.append(w)
    return paths


def _check_hypotheses(m: ClosedMap) -> list[int]:
    face = _the_face(m)
    bad = [v for v in m.vertices if not interior_ok(m, v)]
    if bad:
        raise ExtractionError(f"vertices with nontrivial label: {sorted(bad)}")
    label = m.face_label(face)
    core, _ = cyclic_reduce(label)
    if len(core) < 2:
        raise ExtractionError("face label lies in a free factor")
    if core != label:
        raise ExtractionError("face label is not cyclically reduced")
    return face


def extract_commutators(m: ClosedMap, target: Word | None = None) -> Decomposition:
    """``genus(m)`` commutators whose product is the face label (or ``target``, a conjugate of it)."""
    face = _check_hypotheses(m)
    ctx = m.ctx
    one = Word.identity(ctx)
    label = m.face_label(face)
    transcript: list[dict] = []

    qw = boundary_word(m)
    if qw.eliminate() != label or not qw.is_quadratic():
        raise VerificationError("boundary word does not reproduce the face label")
    transcript.append({"step": "boundary", "length": len(qw.symbols()), "label": str(label)})

    walker = _Walker(m, face[0])
    if walker.loop(face) != label:
        raise VerificationError("face walk from the base point does not read the face label")
    paths = _spanning_tree(m, walker.v0)
    tree = {min(d, m.twin[d]) for p in paths.values() for d in p}
    val: dict[int, Word] = {}
    for d, e in m.edges():
        if d in tree:
            continue
        back = [m.twin[x] for x in reversed(paths[m.head(d)])]
        val[d] = walker.loop(paths[m.origin(d)] + [d] + back)

    word = []
    for d in face:
        e = min(d, m.twin[d])
        if e not in tree:
            word.append((e, 1 if d == e else -1))

    handles: list[tuple[Word, Word]] = []
    conj = one

    def ev(part) -> Word:
        out = one
        for e, s in part:
            out = out * (val[e] if s == 1 else ~val[e])
        return out

    def conserved() -> bool:
        mid = product((commutator(x, y) for x, y in handles), ctx) * ev(word)
        return conj * mid * ~conj == label

    if not conserved():
        raise VerificationError("tree contraction changed the boundary label")
    transcript.append({"step": "contract", "tree_edges": sorted(tree), "generators": sorted(val),
                       "word": _fmt(word), "conserved": True})

    while word:
        x, i, y = _least_linked(word)
        # rotate the remainder so that x comes first; the handles absorb the rotation
        g = ev(word[:i])
        handles = [(conjugate(hx, g), conjugate(hy, g)) for hx, hy in handles]
        conj = conj * g
        word = word[i:] + word[:i]
        for sym in (x, y):
            first = next(s for e, s in word if e == sym)
            if first == -1:
                val[sym] = ~val[sym]
                word = [(e, -s if e == sym else s) for e, s in word]
        # word = x A y B x^-1 C y^-1 D
        k_y1 = next(j for j, (e, _) in enumerate(word) if e == y)
        k_x2 = next(j for j, (e, s) in enumerate(word) if e == x and s == -1)
        k_y2 = next(j for j, (e, s) in enumerate(word) if e == y and s == -1)
        pa, pb = word[1:k_y1], word[k_y1 + 1:k_x2]
        pc, pd = word[k_x2 + 1:k_y2], word[k_y2 + 1:]
        ea, eb, ec = ev(pa), ev(pb), ev(pc)
        x1 = val[x] * ea
        y1 = val[y] * eb * ea
        z = ec * eb * ea
        handles.append((z * ~x1, z * ~y1 * ~z))
        word = pc + pb + pa + pd
        del val[x], val[y]
        # the remainder now starts right after the new handle
        ok = conserved()
        transcript.append({"step": "handle", "edges": [x, y], "remainder": _fmt(word), "conserved": ok})
        if not ok:
            raise VerificationError("cut-and-paste step broke conservation")

    pairs = [(conjugate(hx, ~conj), conjugate(hy, ~conj)) for hx, hy in handles]
    result = label
    if target is not None:
        w = conjugator_between(label, target)
        if w is None:
            raise ExtractionError(f"face label {label} is not conjugate to {target}")
        pairs = [(conjugate(px, w), conjugate(py, w)) for px, py in pairs]
        result = target
        transcript.append({"step": "absorb", "conjugator": str(w)})
    dec = Decomposition(result, pairs, "diagram-extraction", None, transcript)
    dec.verify()
    if dec.count != m.genus():
        raise VerificationError(f"{dec.count} pairs from a genus {m.genus()} map")
    return dec


def _fmt(word) -> str:
    return " ".join(f"e{e}" + ("" if s == 1 else "^-1") for e, s in word)


def _least_linked(word) -> tuple[int, int, int]:
    """Least edge ``x`` linked with some edge ``y``; returns (x, index of its first occurrence, least y)."""
    pos: dict[int, list[int]] = {}
    for j, (e, _) in enumerate(word):
        pos.setdefault(e, []).append(j)
    for x in sorted(pos):
        i, k = pos[x]
        linked = [y for y, (p, q) in pos.items() if y != x and (i < p < k) != (i < q < k)]
        if linked:
            return x, i, min(linked)
    raise ExtractionError("boundary word has no linked pair; the map is not a one-vertex reduction")


# ---------------------------------------------------------------- identities

def _w(text: str, ctx: GroupCtx) -> Word:
    return parse(text, ctx)


def culler_cube(ctx: GroupCtx = FREE) -> Decomposition:
    """[a,t]^3 = [a^-1 t a, a^-2 t a t^-1][t a t^-1, t^2], valid in every context."""
    pairs = [(_w("a^-1 t a", ctx), _w("a^-2 t a t^-1", ctx)), (_w("t a t^-1", ctx), _w("t^2", ctx))]
    return Decomposition(at_power(3, ctx), pairs, "culler-cube").verify()


def z3_cube(ctx: GroupCtx) -> Decomposition:
    """[a,t]^3 = [t^-1 a t a, a t^-1 a t] when a^3 = 1."""
    if ctx.order_a != 3:
        raise ValueError("the single-commutator cube needs ord(a) = 3")
    pairs = [(_w("t^-1 a t a", ctx), _w("a t^-1 a t", ctx))]
    return Decomposition(at_power(3, ctx), pairs, "identity").verify()


def n2_closed_form(n: int, ctx: GroupCtx) -> Decomposition:
    """[a,t]^n = [a, t^((-1)^(n+1)) a t^((-1)^n) ... a t^((-1)^2)] when a^2 = 1."""
    if ctx.order_a != 2:
        raise ValueError("the closed form needs ord(a) = 2")
    letters = []
    for j in range(n + 1, 1, -1):
        letters.append((T, (-1) ** j))
        if j > 2:
            letters.append((A, 1))
    y = product((Word.gen(g, e, ctx) for g, e in letters), ctx)
    return Decomposition(at_power(n, ctx), [(Word.gen(A, 1, ctx), y)], "closed-form-N2").verify()


# ---------------------------------------------------------------- odd powers in the free group

def swap_sum(x: ClosedMap, y: ClosedMap, fx: tuple[int, int], fy: tuple[int, int]) -> ClosedMap:
    """Cross-connect edge ``fx`` of ``x`` with edge ``fy`` of ``y``.

    Each edge is given as ``(dart at its T end, dart at its A end)``; the
    result joins the T end of each edge to the A end of the other.  This is
    the closed-surface form of the strip operation that attaches D+2.
    """
    vo = max(x.vertices) + 1
    do = max(x.twin) + 1
    verts = dict(x.vertices)
    for v, rec in y.vertices.items():
        verts[v + vo] = VertexRec(rec.kind, tuple(d + do for d in rec.rotation), rec.corners, rec.interior)
    twin = dict(x.twin)
    twin.update({d + do: e + do for d, e in y.twin.items()})
    (t1, a1), (t2, a2) = fx, (fy[0] + do, fy[1] + do)
    twin[t1], twin[a2] = a2, t1
    twin[t2], twin[a1] = a1, t2
    return ClosedMap(verts, twin, x.ctx)


def _te_edges(m: ClosedMap) -> list[tuple[int, int]]:
    out = []
    for d, e in m.edges():
        out.append((d, e) if m.vertices[m.origin(d)].kind == T else (e, d))
    return out


def _plus2_map() -> ClosedMap:
    from .stripdiag import base
    return base("D+2").close()


@lru_cache(maxsize=None)
def odd_power_map(s: int) -> ClosedMap:
    """One-face diagram over the free group with label conjugate to [a,t]^(2s+1) and genus s+1.

    The genus-2 cube diagram comes from polygon-gluing search; each further
    step cross-connects the previous map with D+2 at the first edge pair
    whose result has one face with the right label.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    if s == 1:
        found = search_diagrams(at_power(3), 2, FREE, SearchBounds(max_edges=6)).maps
        if not found:
            raise VerificationError("no genus-2 diagram for the cube")
        return found[0]
    prev = odd_power_map(s - 1)
    plus = _plus2_map()
    want = at_power(2 * s + 1)
    for fx in _te_edges(prev):
        for fy in _te_edges(plus):
            m = swap_sum(prev, plus, fx, fy)
            if m.num_faces() == 1 and _conj(m.face_label(m.faces()[0]), want):
                return m
    raise VerificationError(f"no cross-connection reaches [a,t]^{2 * s + 1}")


def _conj(u: Word, v: Word) -> bool:
    return conjugator_between(u, v) is not None


@lru_cache(maxsize=None)
def _odd_power_free(s: int) -> Decomposition:
    if s == 0:
        return Decomposition(at_power(1), [(Word.gen(A, 1), Word.gen(T, 1))], "identity").verify()
    if s == 1:
        return culler_cube()
    m = odd_power_map(s)
    dec = extract_commutators(m, at_power(2 * s + 1))
    dec.method = "search"
    return dec


def odd_power_free(s: int) -> Decomposition:
    """[a,t]^(2s+1) as s+1 commutators, valid in the free group and hence everywhere."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    dec = _odd_power_free(s)
    return Decomposition(dec.target, list(dec.pairs), dec.method, s + 1, list(dec.transcript))


# ---------------------------------------------------------------- planner

def _in_ctx(dec: Decomposition, ctx: GroupCtx) -> Decomposition:
    pairs = [(x.with_ctx(ctx), y.with_ctx(ctx)) for x, y in dec.pairs]
    return Decomposition(dec.target.with_ctx(ctx), pairs, dec.method, dec.k_hat, list(dec.transcript))


def _free_power(n: int, ctx: GroupCtx) -> Decomposition:
    """Culler-type bound floor(n/2)+1 from odd powers, in any context."""
    if n % 2:
        return _in_ctx(odd_power_free(n // 2), ctx)
    parts = [_in_ctx(odd_power_free(n // 2 - 1), ctx), _in_ctx(odd_power_free(0), ctx)]
    return _concat(parts, at_power(n, ctx), "assembly")


def _diagram(n: int, N: int) -> Decomposition:
    m = build_diagram(n, N).close()
    dec = extract_commutators(m, at_power(n, m.ctx))
    dec.transcript.insert(0, {"step": "build", "n": n, "N": N, "genus": m.genus()})
    return dec


def decompose(n: int, N: Order, M: Order = INF) -> Decomposition:
    """Verified decomposition of [a,t]^n in Z_N * Z_M with k_hat(n, N) pairs where attainable."""
    if n < 1:
        raise ValueError("n must be positive")
    ctx = GroupCtx(N, M)
    N = ctx.order_a
    if N == 2:
        dec = n2_closed_form(n, ctx)
    elif N == INF or n < N:
        dec = _free_power(n, ctx)
    elif N % 2 == 0 or n % 2:
        dec = _in_ctx(_diagram(n, N), ctx) if M != INF else _diagram(n, N)
    else:
        r, q = divmod(n, N)
        if q % 2 == 0:
            # r even: (r-1)N + q is odd and N is odd, both built directly
            parts = [decompose((r - 1) * N + q, N, M), decompose(N, N, M)]
        else:
            parts = [decompose(r * N, N, M), _in_ctx(odd_power_free(q // 2), ctx)]
        dec = _concat(parts, at_power(n, ctx), "assembly")
    dec.k_hat = k_hat(n, N)
    return dec.verify()


# ---------------------------------------------------------------- search

@dataclass(frozen=True)
class SearchBounds:
    max_edges: int = 10
    max_vertex_degree: int | None = None
    time_budget: float | None = None

    def __post_init__(self):
        if self.max_edges < 1 or (self.max_vertex_degree is not None and self.max_vertex_degree < 1):
            raise ValueError("bounds must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


@dataclass
class SearchResult:
    maps: list[ClosedMap]
    complete: bool
    explored: int
    reason: str = ""

    @property
    def status(self) -> str:
        if not self.complete:
            return "budget-exhausted"
        return "found" if self.maps else "completed-empty"


def search_diagrams(target: Word, genus: int, ctx: GroupCtx | None = None,
                    bounds: SearchBounds = SearchBounds()) -> SearchResult:
    """All one-face, all-interior diagrams of the given genus whose face label is conjugate to ``target``.

    Corners carry exponents +1 or -1, so the face of a diagram with ``E``
    edges reads ``2E`` alternating syllables and ``E`` is fixed by the
    target.  Diagrams are enumerated as side pairings of the polygon whose
    corners spell the target; results are deduplicated up to rotations of
    the polygon preserving the labels and returned in canonical order.
    """
    ctx = ctx or target.ctx
    target = target.with_ctx(ctx)
    core, _ = cyclic_reduce(target)
    if len(core) < 2:
        raise ValueError("target must not lie in a free factor")
    letters = list(core.syllables)
    L = len(letters)
    E = L // 2
    if E > bounds.max_edges:
        return SearchResult([], True, 0, f"a face of {L} syllables needs {E} edges")
    options = []
    for g, e in letters:
        opts = [c for c in (1, -1) if ctx.normalize(g, c) == e]
        if not opts:
            return SearchResult([], True, 0, "target has syllables no single corner can carry")
        options.append(opts)
    V = E - 2 * genus + 1
    if V < 2:
        return SearchResult([], True, 0, "genus too large for the number of edges")

    deadline = None if bounds.time_budget is None else time.monotonic() + bounds.time_budget
    kinds = [g for g, _ in letters]
    a_pos = [i for i in range(L) if kinds[i] == A]
    t_pos = [i for i in range(L) if kinds[i] == T]
    shifts = [r for r in range(1, L) if letters[r:] + letters[:r] == letters]
    found: dict[tuple, ClosedMap] = {}
    explored = 0
    complete = True
    fixed = [o[0] for o in options] if all(len(o) == 1 for o in options) else None
    balanced = _vertex_test(kinds, fixed, ctx) if fixed else None
    try:
        for twin in _matchings(a_pos, t_pos, L, V, bounds.max_vertex_degree, balanced, deadline):
            explored += 1
            for exps in _corner_choices(options):
                m = _polygon_map(twin, kinds, exps, ctx)
                if not all(interior_ok(m, v) for v in m.vertices):
                    continue
                key = _canonical(twin, exps, shifts, L)
                found.setdefault(key, m)
    except _OutOfBudget:
        complete = False
    maps = [found[k] for k in sorted(found)]
    return SearchResult(maps, complete, explored, "" if complete else "time budget exhausted")


def _corner_choices(options: list[list[int]]) -> Iterator[tuple[int, ...]]:
    if all(len(o) == 1 for o in options):
        yield tuple(o[0] for o in options)
        return
    import itertools
    yield from itertools.product(*options)


class _OutOfBudget(Exception):
    pass


def _vertex_test(kinds, exps, ctx: GroupCtx):
    """Whether the corners at polygon positions ``cycle`` multiply to 1."""
    def ok(cycle: list[int]) -> bool:
        return ctx.normalize(kinds[cycle[0]], sum(exps[i] for i in cycle)) == 0
    return ok


def _matchings(a_pos, t_pos, L, V, max_deg, balanced=None, deadline=None) -> Iterator[list[int]]:
    """Side pairings (as twin arrays) whose vertex count is exactly ``V``.

    Vertices are orbits of ``succ(i) = twin(i - 1)``; cycles are checked as
    soon as their links are known, so surplus, oversized or (when the corner
    exponents are fixed) unbalanced vertices prune early.
    """
    twin = [-1] * L
    used = [False] * L
    nodes = [0]

    def closed_cycles() -> tuple[int, bool]:
        seen = [False] * L
        count = 0
        for i in range(L):
            if seen[i]:
                continue
            j, length, closed = i, 0, True
            path = []
            while not seen[j]:
                seen[j] = True
                path.append(j)
                length += 1
                nxt = twin[(j - 1) % L]
                if nxt < 0:
                    closed = False
                    break
                j = nxt
            if closed and j == i:
                count += 1
                if max_deg is not None and length > max_deg:
                    return count, False
                if balanced is not None and not balanced(path):
                    return count, False
            elif max_deg is not None and length > max_deg:
                return count, False
        return count, True

    def rec(k: int):
        nodes[0] += 1
        if deadline is not None and nodes[0] % 512 == 0 and time.monotonic() > deadline:
            raise _OutOfBudget
        if k == len(a_pos):
            count, ok = closed_cycles()
            if ok and count == V:
                yield list(twin)
            return
        i = a_pos[k]
        for j in t_pos:
            if used[j]:
                continue
            used[j] = True
            twin[i], twin[j] = j, i
            count, ok = closed_cycles()
            if ok and count <= V:
                yield from rec(k + 1)
            twin[i], twin[j] = -1, -1
            used[j] = False

    yield from rec(0)


def _polygon_map(twin: list[int], kinds: list[str], exps: Sequence[int], ctx: GroupCtx) -> ClosedMap:
    L = len(twin)
    succ = {i: twin[(i - 1) % L] for i in range(L)}
    verts = {}
    seen = set()
    vid = 0
    for i in range(L):
        if i in seen:
            continue
        rot = []
        j = i
        while j not in seen:
            seen.add(j)
            rot.append(j)
            j = succ[j]
        verts[vid] = VertexRec(kinds[i], tuple(rot), tuple(exps[d] for d in rot))
        vid += 1
    return ClosedMap(verts, {i: twin[i] for i in range(L)}, ctx)


def _canonical(twin: list[int], exps: Sequence[int], shifts: list[int], L: int) -> tuple:
    best = (tuple(twin), tuple(exps))
    for r in shifts:
        t = tuple((twin[(i + r) % L] - r) % L for i in range(L))
        e = tuple(exps[(i + r) % L] for i in range(L))
        best = min(best, (t, e))
    return best
