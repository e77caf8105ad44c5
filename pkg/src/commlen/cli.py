"""Command line: construct, decompose, table, verify, render and search.

Exit codes: 0 when every produced object verified, 1 when a check failed
(or a search ran out of budget), 2 for bad arguments or unmet preconditions.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .builder import BuildRefused, CaseParams, build_diagram, certify, k_hat
from .decomp import (SearchBounds, culler_cube, decompose, extract_commutators,
                     n2_closed_form, odd_power_free, search_diagrams, z3_cube)
from .fpword import FREE, INF, GroupCtx, WordSyntaxError, at_power, order_str, parse, parse_order
from .render import FORMATS, render
from .stripdiag import StripDiagram, strip_from_json
from .surfmap import ClosedMap

OUT_DIR_ENV = "COMMLEN_OUT_DIR"
SUITES = ("identities", "figures", "builder-grid", "extraction-grid", "search-evidence")


class UsageError(Exception):
    """Bad input; reported with exit status 2."""


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    N: int | float | None = None
    M: int | float = INF
    fmt: str = "text"
    out: Path | None = None

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        if self.n is not None and self.n < 1:
            raise UsageError("--n must be positive")
        if self.N is not None and self.N != INF and self.N < 2:
            raise UsageError("--N must be at least 2 or inf")
        if self.N is not None and self.M != INF and self.M < self.N:
            raise UsageError("--M must be at least --N")


def _order(text: str):
    try:
        return parse_order(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    if not out.is_absolute() and os.environ.get(OUT_DIR_ENV):
        out = Path(os.environ[OUT_DIR_ENV]) / out
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)


# ---------------------------------------------------------------- construct

def cmd_construct(cfg: RunConfig) -> int:
    try:
        CaseParams.of(cfg.n, cfg.N)
    except BuildRefused as exc:
        print(str(exc), file=sys.stderr)
        return 2
    sd = build_diagram(cfg.n, cfg.N)
    cert = certify(sd, cfg.n, cfg.N)
    if cfg.fmt == "json":
        payload = {"strip": json.loads(render(sd, "json")), "map": sd.close().to_json(),
                   "certificate": cert.to_json()}
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    else:
        text = render(sd, cfg.fmt)
        note = json.dumps(cert.to_json(), sort_keys=True)
        prefix = {"tikz": "% ", "text": "# ", "dot": "// "}.get(cfg.fmt)
        text = (f"{prefix}certificate {note}\n" + text) if prefix else text.replace(
            "</svg>", f"<!-- certificate {note} -->\n</svg>")
    _emit(text, cfg.out)
    if not cert.ok:
        print(f"certificate failed: {cert.checks}", file=sys.stderr)
    return 0 if cert.ok else 1


# ---------------------------------------------------------------- decompose

def cmd_decompose(cfg: RunConfig) -> int:
    dec = decompose(cfg.n, cfg.N, cfg.M)
    ok = dec.holds()
    if cfg.fmt == "json":
        text = json.dumps(dec.to_json(), sort_keys=True, indent=1) + "\n"
    else:
        text = (f"{dec.identity_text()}\n"
                f"count {dec.count}  k_hat {dec.k_hat}  optimal {str(dec.optimal).lower()}  "
                f"method {dec.method}  verified {str(ok).lower()}\n")
    _emit(text, cfg.out)
    return 0 if ok else 1


# ---------------------------------------------------------------- table

def cmd_table(n_max: int, orders: list, verify: bool, csv: bool, out: Path | None) -> int:
    if n_max < 1:
        raise UsageError("--n-max must be positive")
    rows = []
    ok = True
    for n in range(1, n_max + 1):
        row = [str(n)]
        for N in orders:
            cell = str(k_hat(n, N))
            if verify:
                dec = decompose(n, N)
                good = dec.holds() and dec.optimal
                ok &= dec.holds()
                cell += f" {dec.method}" + ("" if good else "!")
            row.append(cell)
        rows.append(row)
    head = ["n"] + [f"N={order_str(N)}" for N in orders]
    if csv:
        text = "\n".join(",".join(r) for r in [head] + rows) + "\n"
    else:
        widths = [max(len(r[i]) for r in [head] + rows) for i in range(len(head))]
        text = "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in [head] + rows) + "\n"
    _emit(text, out)
    return 0 if ok else 1


# ---------------------------------------------------------------- verify

def _identities() -> list[dict]:
    items = []

    def add(name, fn):
        try:
            ok = bool(fn())
            err = ""
        except Exception as exc:  # a failing item is reported, not fatal
            ok, err = False, f"{type(exc).__name__}: {exc}"
        items.append({"item": name, "ok": ok, **({"error": err} if err else {})})

    add("culler cube in (inf,inf)", lambda: culler_cube(FREE).holds())
    add("Z3 cube in (3,inf)", lambda: z3_cube(GroupCtx(3, INF)).holds())
    for n in range(1, 41):
        add(f"N=2 closed form n={n}", lambda n=n: n2_closed_form(n, GroupCtx(2, INF)).holds())
    for s in range(3):
        add(f"odd power s={s}", lambda s=s: (lambda d: d.holds() and d.count == s + 1)(odd_power_free(s)))
    return items


def _figures() -> list[dict]:
    from .figures import fig1, figure_checks

    items = [{"item": c.name, "ok": c.ok, "expected": c.expected, "got": c.got} for c in figure_checks()]
    m = fig1().map
    dec = extract_commutators(m, fig1().face_label)
    items.append({"item": "fig1 extraction", "ok": dec.holds() and dec.count == 1})
    return items


def _grid(n_max: int):
    for N in range(3, 10):
        for n in range(N, n_max + 1):
            if N % 2 == 0 or n % 2:
                yield n, N


def _builder_grid(n_max: int) -> list[dict]:
    items = []
    for n, N in _grid(n_max):
        cert = certify(build_diagram(n, N), n, N)
        items.append({"item": f"build n={n} N={N}", "ok": cert.ok, "genus": cert.genus})
    return items


def _extraction_grid(n_max: int) -> list[dict]:
    items = []
    for n, N in _grid(n_max):
        m = build_diagram(n, N).close()
        dec = extract_commutators(m, at_power(n, m.ctx))
        conserved = all(s.get("conserved", True) for s in dec.transcript)
        ok = dec.holds() and dec.count == m.genus() and conserved
        items.append({"item": f"extract n={n} N={N}", "ok": ok, "pairs": dec.count})
    return items


def _search_evidence() -> list[dict]:
    from .figures import equivalent, fig1

    items = []
    r = search_diagrams(at_power(3), 1, FREE, SearchBounds(max_edges=10))
    items.append({"item": "[a,t]^3 genus 1 free", "ok": r.status == "completed-empty", "status": r.status})
    for ctx in (FREE, GroupCtx(2, INF), GroupCtx(3, 3), GroupCtx(5, 7)):
        r = search_diagrams(at_power(1, ctx), 0, ctx)
        items.append({"item": f"[a,t] genus 0 ctx {ctx}", "ok": r.status == "completed-empty",
                      "status": r.status})
    f1 = fig1()
    r = search_diagrams(f1.face_label, 1, f1.map.ctx)
    items.append({"item": "(ab)^3 genus 1 ctx (3,3)", "status": r.status,
                  "ok": any(equivalent(m, f1.map) for m in r.maps)})
    again = search_diagrams(f1.face_label, 1, f1.map.ctx)
    items.append({"item": "deterministic rerun",
                  "ok": [m.dumps() for m in again.maps] == [m.dumps() for m in r.maps]})
    return items


def run_suite(suite: str, n_max: int = 40) -> list[dict]:
    if suite == "identities":
        items = _identities()
    elif suite == "figures":
        items = _figures()
    elif suite == "builder-grid":
        items = _builder_grid(n_max)
    elif suite == "extraction-grid":
        items = _extraction_grid(n_max)
    elif suite == "search-evidence":
        items = _search_evidence()
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return [{"suite": suite, **it} for it in items]


def cmd_verify(suites: list[str], n_max: int, out: Path | None) -> int:
    items = []
    for suite in suites:
        t0 = time.monotonic()
        part = run_suite(suite, n_max)
        items += part
        print(f"{suite}: {sum(i['ok'] for i in part)}/{len(part)} passed in {time.monotonic() - t0:.1f}s",
              file=sys.stderr)
    _emit("".join(json.dumps(i, sort_keys=True) + "\n" for i in items), out)
    return 0 if all(i["ok"] for i in items) else 1


# ---------------------------------------------------------------- render

def load_drawable(path: Path) -> tuple[StripDiagram | ClosedMap, str]:
    """A strip, closed map, construct output or figure fixture read from JSON."""
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        if "certificate" in data:
            if not data["certificate"].get("ok"):
                raise UsageError(f"{path}: embedded certificate does not pass")
            return strip_from_json(data["strip"]), data["strip"].get("name", "")
        if "top" in data:
            return strip_from_json(data), data.get("name", "")
        if "map" in data:
            return ClosedMap.from_json(data["map"]), path.stem
        return ClosedMap.from_json(data), path.stem
    except UsageError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: malformed input ({exc})") from None


def cmd_render(path: Path, fmt: str, out: Path | None) -> int:
    obj, name = load_drawable(path)
    _emit(render(obj, fmt, name), out)
    return 0


# ---------------------------------------------------------------- search

def cmd_search(target: str, genus: int, ctx: GroupCtx, bounds: SearchBounds, out: Path | None) -> int:
    try:
        word = parse(target, ctx)
    except WordSyntaxError as exc:
        raise UsageError(str(exc)) from None
    try:
        r = search_diagrams(word, genus, ctx, bounds)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"target": str(word), "genus": genus, "ctx": ctx.to_json(), "status": r.status,
               "explored": r.explored, "reason": r.reason, "maps": [m.to_json() for m in r.maps]}
    _emit(json.dumps(payload, sort_keys=True, indent=1) + "\n", out)
    print(f"{r.status}: {len(r.maps)} diagram(s), {r.explored} pairing(s) explored", file=sys.stderr)
    return 0 if r.complete else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="commlen", description="Commutator length of [a,t]^n in Z_N * Z_M.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build and certify the one-face diagram for [a,t]^n")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--fmt", choices=FORMATS, default="json")
    c.add_argument("--out", type=Path)

    d = sub.add_parser("decompose", help="verified commutator decomposition of [a,t]^n")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--N", type=_order, required=True, help="order of a (integer or inf)")
    d.add_argument("--M", type=_order, default=INF, help="order of t (default inf)")
    d.add_argument("--fmt", choices=("text", "json"), default="text")
    d.add_argument("--out", type=Path)

    t = sub.add_parser("table", help="table of k_hat(n, N)")
    t.add_argument("--n-max", type=int, default=12)
    t.add_argument("--N", dest="orders", default="2,3,4,5,6,7,8,9,inf",
                   help="comma separated orders of a (default 2..9,inf)")
    t.add_argument("--verify", action="store_true", help="decompose every cell and tag it with the method")
    t.add_argument("--csv", action="store_true")
    t.add_argument("--out", type=Path)

    v = sub.add_parser("verify", help="run golden suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--n-max", type=int, default=40)
    v.add_argument("--out", type=Path)

    r = sub.add_parser("render", help="draw a strip or map JSON file")
    r.add_argument("input", type=Path)
    r.add_argument("--fmt", choices=FORMATS, default="tikz")
    r.add_argument("--out", type=Path)

    s = sub.add_parser("search", help="bounded search for one-face diagrams")
    s.add_argument("--target", required=True, help="word such as '[a,t]^3' or '(ab)^3'")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--N", type=_order, default=INF)
    s.add_argument("--M", type=_order, default=INF)
    s.add_argument("--max-edges", type=int, default=10)
    s.add_argument("--max-degree", type=int)
    s.add_argument("--time-budget", type=float, help="seconds")
    s.add_argument("--out", type=Path)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "construct":
            return cmd_construct(RunConfig("construct", args.n, args.N, INF, args.fmt, args.out))
        if args.command == "decompose":
            cfg = RunConfig("decompose", args.n, args.N, args.M, args.fmt, args.out)
            return cmd_decompose(cfg)
        if args.command == "table":
            orders = [_order(x.strip()) for x in args.orders.split(",") if x.strip()]
            if any(N != INF and N < 2 for N in orders):
                raise UsageError("orders must be at least 2")
            return cmd_table(args.n_max, orders, args.verify, args.csv, args.out)
        if args.command == "verify":
            suites = list(SUITES) if args.suite == "all" else [args.suite]
            return cmd_verify(suites, args.n_max, args.out)
        if args.command == "render":
            return cmd_render(args.input, args.fmt, args.out)
        if args.command == "search":
            if args.genus < 0:
                raise UsageError("--genus must be nonnegative")
            try:
                ctx = GroupCtx(args.N, args.M)
                bounds = SearchBounds(args.max_edges, args.max_degree, args.time_budget)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            return cmd_search(args.target, args.genus, ctx, bounds, args.out)
    except (UsageError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
