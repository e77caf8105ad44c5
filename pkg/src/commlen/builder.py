"""Genus formula and the strip builder producing one-face diagrams for [a,t]^n.

The four parity cases write ``n = rN + q`` with ``s = q // 2``:

* N odd, r odd:  ``n = rN + 2s``, seeded by D_{N,N} and D_{N-2,N-2}^-;
* N odd, r even: ``n = rN + 2s + 1``, via D+N+1,N;
* N even:        ``n = rN + 2s`` from D2,2, ``n = rN + 2s + 1`` from D3,2.

The remaining combination (N odd, n even) has no single diagram here; the
planner in :mod:`commlen.decomp` splits it algebraically.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .fpword import INF, GroupCtx, at_power, conjugator_between, Order
from .stripdiag import StripDiagram, StripError, base, compose_arc, compose_arc3, compose_swap, compose_vv, invert
from .surfmap import interior_ok


def k_hat(n: int, N: Order) -> int:
    """``floor(n/2) - floor(n/N) + 1``; the second term vanishes for infinite N."""
    if n < 1:
        raise ValueError("n must be positive")
    if N != INF and N < 2:
        raise ValueError("N must be at least 2")
    return n // 2 - (0 if N == INF else n // N) + 1


class Case(enum.Enum):
    ODD_N_ODD_R = "OddN-OddR"
    ODD_N_EVEN_R = "OddN-EvenR"
    EVEN_N_EVEN = "EvenN-Even"
    EVEN_N_ODD = "EvenN-Odd"


class BuildRefused(ValueError):
    """(n, N) lies outside the diagrammatic cases."""


@dataclass(frozen=True)
class CaseParams:
    n: int
    N: int
    r: int
    q: int
    s: int
    case: Case

    @classmethod
    def of(cls, n: int, N: int) -> "CaseParams":
        if N == INF or N < 3 or n < N:
            raise BuildRefused(f"the builder needs n >= N >= 3 with N finite (got n={n}, N={N})")
        if N % 2 and n % 2 == 0:
            raise BuildRefused("N odd, n even: use decompose")
        r, q = divmod(n, N)
        s = q // 2
        if N % 2:
            case = Case.ODD_N_ODD_R if r % 2 else Case.ODD_N_EVEN_R
        else:
            case = Case.EVEN_N_EVEN if q % 2 == 0 else Case.EVEN_N_ODD
        return cls(n, N, r, q, s, case)


def _named(sd: StripDiagram, name: str) -> StripDiagram:
    sd.name = name
    return sd


# Every helper takes the ambient order ``M`` of ``a`` so that all pieces of a
# build share one context.  Results are cached; callers only ever read them
# (compositions never mutate their operands).

@lru_cache(maxsize=None)
def _square(N: int, M: int) -> StripDiagram:
    """D_{N,N}: a D3,3 chain for odd N, D2,2 followed by D3,3 for even N."""
    ctx = GroupCtx(M, INF)
    if N == 1:
        return base("D1,1", ctx=ctx)
    d33 = base("D3,3", ctx=ctx)
    out = d33 if N % 2 else base("D2,2", ctx=ctx)
    for _ in range((N - 3) // 2 if N % 2 else (N - 2) // 2):
        out = compose_vv(out, d33)
    return _named(out, f"D{N},{N}")


@lru_cache(maxsize=None)
def _odd_multiple(r: int, N: int) -> StripDiagram:
    """D_{rN,N} for odd N and odd r: D_{(r-2)N,N} ] D_{N-2,N-2}^- [ D_{N,N}."""
    square = _square(N, N)
    if r == 1:
        return square
    middle = base("D1,1-", ctx=GroupCtx(N, INF)) if N == 3 else invert(_square(N - 2, N))
    out = compose_arc3(_odd_multiple(r - 2, N), middle, square)
    return _named(out, f"D{r * N},{N}")


@lru_cache(maxsize=None)
def _build(n: int, N: int) -> StripDiagram:
    p = CaseParams.of(n, N)
    ctx = GroupCtx(N, INF)
    if p.case is Case.ODD_N_EVEN_R:
        rest = _build((p.r - 1) * N + 2 * p.s, N)
        return _named(compose_swap(base("D+N+1,N", N, ctx=ctx), rest), f"D{n},{N}")
    if p.case is Case.ODD_N_ODD_R:
        out = _odd_multiple(p.r, N)
    else:
        if p.case is Case.EVEN_N_EVEN:
            out = _square(N, N)
        else:
            out, d33 = base("D3,2", ctx=ctx), base("D3,3", ctx=ctx)
            for _ in range((N - 2) // 2):
                out = compose_vv(out, d33)
        for _ in range(p.r - 1):
            out = compose_arc(out, _square(N - 1, N), "left")
    for _ in range(p.s):
        out = _swap_plus2(out, ctx)
    return _named(out, f"D{n},{N}")


def _swap_plus2(d: StripDiagram, ctx: GroupCtx) -> StripDiagram:
    """``d ≍ D+2``, falling back to the mirrored D+2.

    Both drawings have two faces labelled [a,t]; which one fits depends on
    the exponent at the chosen border edge of ``d``.
    """
    plus = base("D+2", ctx=ctx)
    try:
        return compose_swap(d, plus)
    except StripError:
        return compose_swap(d, invert(plus))


def build_diagram(n: int, N: int) -> StripDiagram:
    """One-face strip with label conjugate to ``[a,t]^n`` and genus ``k_hat(n, N)``.

    Needs ``n >= N >= 3`` and either N even or n odd; raises
    :class:`BuildRefused` otherwise.
    """
    CaseParams.of(n, N)
    return _build(n, N).copy()


@dataclass
class Certificate:
    """Face count, genus, a conjugator onto [a,t]^n and the corner sums per vertex."""
    n: int
    N: int
    faces: int
    genus: int
    expected_genus: int
    witness: str | None
    interior_sums: dict[int, int]
    interior: dict[int, bool]

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "one_face": self.faces == 1,
            "genus": self.genus == self.expected_genus,
            "label": self.witness is not None,
            "interior": all(self.interior.values()),
        }

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "n": self.n, "N": self.N, "faces": self.faces, "genus": self.genus,
            "expected_genus": self.expected_genus, "witness": self.witness,
            "interior_sums": {str(v): s for v, s in sorted(self.interior_sums.items())},
            "checks": self.checks, "ok": self.ok,
        }


def certify(sd: StripDiagram, n: int, N: int) -> Certificate:
    m = sd.close()
    faces = m.faces()
    witness = None
    if len(faces) == 1:
        w = conjugator_between(m.face_label(faces[0]), at_power(n, m.ctx))
        witness = None if w is None else str(w)
    sums = {v: sum(rec.corners) for v, rec in m.vertices.items()}
    return Certificate(n, N, len(faces), m.genus(), k_hat(n, N), witness, sums,
                       {v: interior_ok(m, v) for v in m.vertices})


def diagram_certificate(n: int, N: int) -> Certificate:
    return certify(build_diagram(n, N), n, N)
