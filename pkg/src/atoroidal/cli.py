"""Command-line interface: ``atoro <command> ...``.

Exit codes: 0 success, 1 usage or rejected request, 2 unreadable input,
3 size limit exceeded, 4 a structural invariant failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from typing import List, Optional, Sequence

from . import __version__
from .canon import CanonicalCode, Chirality, canonical_code, canonical_key, from_canonical_code
from .curves import find_nontrivial_curve, is_atoroidal, is_irreducible
from .decompose import decompose, leaves, tree_to_text
from .enumeration import (
    DEFAULT_LIMIT,
    EnumerationStore,
    GluingChoice,
    RecombinationMode,
    enumerate_atoroidal,
    enumerate_recombinations,
    recombine,
)
from .errors import AtoroidalError, InvariantViolation, LimitExceeded, ParseError
from .planemap import ExceptionKind, PlaneMap, exception, face_vector, min_face_size, parse_planar_codes, to_planar_code
from .render import layout, to_svg
from .surgery import SplitMove, SurgeryMove, apply_surgery, legal_surgeries, simple_vertices, split_at

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_LIMIT, EXIT_INVARIANT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ----------------------------------------------------------------- input
def read_graphs(path: str) -> List[PlaneMap]:
    """Planar-code text, or one hex canonical code per line."""
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    body = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    if any(ln.startswith("AG") for ln in body):
        return parse_planar_codes(text)
    maps = []
    for lineno, ln in enumerate(body, start=1):
        if not ln:
            continue
        try:
            maps.append(from_canonical_code(CanonicalCode.fromhex(ln)))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return maps


def _one_graph(path: str, index: int) -> PlaneMap:
    maps = read_graphs(path)
    if not 0 <= index < len(maps):
        raise UsageError(f"{path} holds {len(maps)} graphs; index {index} is out of range")
    return maps[index]


_EXCEPTION_NAMES = {
    ExceptionKind.UNKNOT_PROJECTION: "unknot projection",
    ExceptionKind.FIGURE_EIGHT: "figure-eight graph",
    ExceptionKind.HOPF_PROJECTION: "Hopf link projection",
    ExceptionKind.TREFOIL_PROJECTION: "trefoil projection",
}


def _exception_kind(g: PlaneMap) -> Optional[ExceptionKind]:
    if not g.is_connected or g.vertex_count > 3:
        return None
    code = canonical_code(g)
    for k in ExceptionKind:
        if canonical_code(exception(k)) == code:
            return k
    return None


# --------------------------------------------------------------- classify
def classify_report(g: PlaneMap) -> dict:
    connected = g.is_connected
    irreducible = is_irreducible(g)
    atoroidal = irreducible and is_atoroidal(g)
    kind = _exception_kind(g) if atoroidal else None
    hyperbolic = atoroidal and kind is None
    if atoroidal and hyperbolic != (min_face_size(g) >= 3):
        raise InvariantViolation("hyperbolicity routes disagree")
    witness = find_nontrivial_curve(g, 4)
    return {
        "vertex_count": g.vertex_count,
        "free_loops": g.free_loops,
        "connected": connected,
        "irreducible": irreducible,
        "atoroidal": atoroidal,
        "hyperbolic": hyperbolic,
        "exception": kind.name.lower() if kind else None,
        "face_vector": {str(k): v for k, v in face_vector(g).items()},
        "canonical_code": [c.hex() for c in canonical_key(g)] if (g.vertex_count or g.free_loops) else [],
        "nontrivial_curve": None if witness is None else {"n": witness[0], "code": str(witness[1])},
    }


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _classify_text(i: int, r: dict) -> str:
    hyper = _yes(r["hyperbolic"])
    if r["atoroidal"] and not r["hyperbolic"]:
        hyper += " (exception)"
    fv = " ".join(f"{k}:{v}" for k, v in r["face_vector"].items())
    lines = [
        f"graph {i}: V={r['vertex_count']} free_loops={r['free_loops']}",
        f"  connected: {_yes(r['connected'])}, irreducible: {_yes(r['irreducible'])}",
        f"  atoroidal: {_yes(r['atoroidal'])}, hyperbolic: {hyper}",
        f"  face vector: {fv}",
    ]
    if r["exception"]:
        lines.append(f"  exception: {_EXCEPTION_NAMES[ExceptionKind[r['exception'].upper()]]}")
    if r["nontrivial_curve"]:
        lines.append(f"  non-trivial curve: {r['nontrivial_curve']['code']}")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    graphs = read_graphs(args.input)
    reports = [classify_report(g) for g in graphs]
    if args.format == "json":
        print(json.dumps({"graphs": [dict(index=i, **r) for i, r in enumerate(reports)]}, indent=2))
    else:
        print("\n".join(_classify_text(i, r) for i, r in enumerate(reports)))
    return EXIT_OK


# -------------------------------------------------------------- enumerate
def _counts_table(counts: dict) -> str:
    rows = ["   V  count"] + [f"{v:4d}  {c:5d}" for v, c in sorted(counts.items())]
    rows.append(f"total  {sum(counts.values()):4d}")
    return "\n".join(rows)


def cmd_enumerate(args) -> int:
    n = args.max_crossings
    if n > DEFAULT_LIMIT:
        raise LimitExceeded(f"--max-crossings {n} exceeds the limit {DEFAULT_LIMIT}")
    chir = Chirality(args.chirality)
    resume_text = None
    if args.resume:
        try:
            with open(args.resume, encoding="ascii") as fh:
                resume_text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.resume}: {exc.strerror}") from None
    start = time.perf_counter()
    if args.mode == "atoroidal":
        store = enumerate_atoroidal(n, chir, resume=resume_text, checkpoint=args.out)
        counts = store.counts()
        codes = {v: [c.hex() for c in store.levels[v]] for v in store.levels}
    else:
        if resume_text is not None:
            raise UsageError("--resume is only supported with --mode atoroidal")
        store = enumerate_atoroidal(n, chir)
        found = enumerate_recombinations(store, n, RecombinationMode(args.mode))
        result = EnumerationStore(max_v=n, chirality=chir)
        for c in sorted(found):
            result.levels.setdefault(c.vertex_count, []).append(c)
        for v in range(n + 1):
            result.levels.setdefault(v, [])
        counts = result.counts()
        codes = {v: [c.hex() for c in result.levels[v]] for v in result.levels}
        if args.out:
            result.write_checkpoint(args.out)
    elapsed = time.perf_counter() - start
    if args.format == "json":
        report = {
            "command": "enumerate",
            "max_crossings": n,
            "mode": args.mode,
            "chirality": chir.value,
            "counts": {str(v): c for v, c in sorted(counts.items())},
            "codes": {str(v): codes[v] for v in sorted(codes)},
        }
        print(json.dumps(report, indent=2))
    else:
        print(f"# {args.mode} graphs with at most {n} crossings ({chir.value})")
        print(_counts_table(counts))
    print(f"elapsed {elapsed:.2f}s", file=sys.stderr)
    return EXIT_OK


# -------------------------------------------------------------- decompose
def cmd_decompose(args) -> int:
    graphs = read_graphs(args.input)
    out = []
    for i, g in enumerate(graphs):
        t = decompose(g)
        if args.format == "json":
            out.append(
                {
                    "index": i,
                    "tree": tree_to_text(t),
                    "leaves": [to_planar_code(l) for l in leaves(t)],
                    "leaf_codes": sorted(c.hex() for l in leaves(t) for c in canonical_key(l) if l.vertex_count),
                }
            )
        else:
            out.append(f"# graph {i}\n{tree_to_text(t)}")
    print(json.dumps({"trees": out}, indent=2) if args.format == "json" else "\n".join(out))
    return EXIT_OK


# ---------------------------------------------------------------- surgery
def cmd_surgery(args) -> int:
    g = _one_graph(args.input, args.index)
    if args.apply:
        h = apply_surgery(g, SurgeryMove.parse(args.apply))
        sys.stdout.write(to_planar_code(h))
    elif args.split:
        h = split_at(g, SplitMove.parse(args.split))
        sys.stdout.write(to_planar_code(h))
    elif args.simple:
        for v, f in simple_vertices(g):
            print(f"v{v} triangle f{f}")
    else:
        moves = legal_surgeries(g)
        if args.format == "json":
            print(json.dumps({"moves": [str(m) for m in moves]}, indent=2))
        else:
            for m in moves:
                print(m)
    return EXIT_OK


# -------------------------------------------------------------- recombine
def cmd_recombine(args) -> int:
    g1 = _one_graph(args.first, 0)
    g2 = _one_graph(args.second, 0)
    mode = RecombinationMode(args.mode) if args.mode != "atoroidal" else RecombinationMode.PRIME_PROJECTIONS
    h = recombine(g1, args.v1, g2, args.v2, GluingChoice(args.rotation, args.reflected), mode)
    sys.stdout.write(to_planar_code(h))
    return EXIT_OK


# ----------------------------------------------------------------- render
def cmd_render(args) -> int:
    graphs = read_graphs(args.input)
    if args.out and len(graphs) > 1:
        os.makedirs(args.out, exist_ok=True)
    for i, g in enumerate(graphs):
        svg = to_svg(g, layout(g), title=f"graph {i}")
        if not args.out:
            sys.stdout.write(svg)
        elif len(graphs) == 1 and not os.path.isdir(args.out):
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(svg)
        else:
            with open(os.path.join(args.out, f"graph_{i:04d}.svg"), "w", encoding="utf-8") as fh:
                fh.write(svg)
    return EXIT_OK


# ------------------------------------------------------------------ main
def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="atoro", description="Atoroidal link projections: classify, enumerate, decompose.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="report irreducible/atoroidal/hyperbolic flags")
    c.add_argument("input", help="planar-code or hex-code file ('-' for stdin)")
    c.add_argument("--format", choices=["code", "json"], default="code")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", help="enumerate graphs up to a crossing number")
    e.add_argument("--max-crossings", type=int, required=True)
    e.add_argument("--mode", choices=["atoroidal", "basic-polyhedra", "prime-projections"], default="atoroidal")
    e.add_argument("--chirality", choices=[c.value for c in Chirality], default=Chirality.MOD_REFLECTION.value)
    e.add_argument("--out", help="checkpoint file to write")
    e.add_argument("--resume", help="checkpoint file to continue from")
    e.add_argument("--format", choices=["code", "json"], default="code")
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("decompose", help="cut into atoroidal pieces")
    d.add_argument("input")
    d.add_argument("--format", choices=["code", "json"], default="code")
    d.set_defaults(func=cmd_decompose)

    s = sub.add_parser("surgery", help="list or apply surgeries and splits")
    s.add_argument("input")
    s.add_argument("--index", type=int, default=0, help="which graph of the file")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--list", action="store_true", help="list legal surgeries (default)")
    grp.add_argument("--apply", metavar="MOVE", help="e.g. 'surgery f3 e5 2 7'")
    grp.add_argument("--split", metavar="MOVE", help="e.g. 'split v4'")
    grp.add_argument("--simple", action="store_true", help="list simple vertices")
    s.add_argument("--format", choices=["code", "json"], default="code")
    s.set_defaults(func=cmd_surgery)

    r = sub.add_parser("recombine", help="glue two vertex complements")
    r.add_argument("first")
    r.add_argument("v1", type=int)
    r.add_argument("second")
    r.add_argument("v2", type=int)
    r.add_argument("--rotation", type=int, choices=range(4), default=0)
    r.add_argument("--reflected", action="store_true")
    r.add_argument("--mode", choices=["atoroidal", "basic-polyhedra", "prime-projections"], default="prime-projections")
    r.set_defaults(func=cmd_recombine)

    v = sub.add_parser("render", help="draw graphs as SVG")
    v.add_argument("input")
    v.add_argument("--out", help="SVG file, or directory for several graphs")
    v.add_argument("--format", choices=["svg"], default="svg")
    v.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except InvariantViolation as exc:
        print(f"INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, AtoroidalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
