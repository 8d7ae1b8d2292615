"""Command line interface: ``extriples <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import diagrams
from .castling import CastlingError, castle_reduce, candidate_moves
from .classifier import Verdict, classify
from .factorization import (FactorizationUndecidable, Subalgebra, check_table_o, is_factorization_simple,
                            numeric_factorization_check, subalgebra_basis, whole)
from .groups import GroupSpec, ModelError, TripleSpec, parse_factor
from .lie import LieError
from .oracle import DEFAULT_SAMPLES, OracleError, default_dim_cap, is_exceptional_oracle
from .realize import RealizationError
from .specio import SpecError, format_document, format_group_module, format_summand, format_triple, load_spec
from .trees import sgp_projection_full, yak_predicate

EXIT_DECIDED, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_triple(path: str) -> TripleSpec:
    doc = load_spec(path)
    if doc.kind == "tree":
        raise SpecError("expected a triple or a group, got a tree")
    return doc.as_triple()


# ----------------------------------------------------------------------
# text rendering


def render_diagram(t: TripleSpec) -> str:
    """Three rows: H factors, G factors, module summands, with the links spelled out."""
    lines = []
    hs = []
    for k, (f, m) in enumerate(zip(t.H.factors, t.embedding.maps)):
        arrow = "=" if m.label in ("id", "diag") else f"-{m.label}-"
        hs.append(f"[{f}] {arrow}> " + ",".join(f"G{x + 1}" for x in m.targets))
    if t.H.torus_rank:
        hs.append(f"[torus({t.H.torus_rank})]")
    lines.append("H:  " + ("   ".join(hs) or "1"))
    gs = [f"G{i + 1}={f}" for i, f in enumerate(t.G.factors)]
    if t.G.torus_rank:
        gs.append(f"torus({t.G.torus_rank})")
    lines.append("G:  " + ("   ".join(gs) or "1"))
    for s, mult in t.V.terms:
        links = ",".join(f"G{i + 1}" for i in s.support) or "-"
        mult_txt = f"{mult} x " if mult > 1 else ""
        lines.append(f"V:  {mult_txt}{format_summand(t.G, s)}   <- {links}")
    return "\n".join(lines)


def render_verdict(t: TripleSpec, v: Verdict) -> str:
    out = [render_diagram(t), ""]
    out.append(f"exceptional: {v.exceptional}")
    if v.nu is not None:
        out.append(f"nu: {v.nu}")
    if v.matched:
        params = ", ".join(f"{k}={val}" for k, val in v.matched["params"].items())
        out.append(f"matched: {v.matched['id']}" + (f" ({params})" if params else ""))
    out.append(f"route: {v.route}")
    if v.oracle:
        o = v.oracle
        out.append(f"oracle: G-orbit {o.g_orbit_dim}, H-orbit {o.h_orbit_dim}, codim {o.codim}")
    for w in v.warnings:
        out.append(f"note: {w}")
    return "\n".join(out)


# ----------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    t = _load_triple(args.file)
    v = classify(t, verify=args.verify, seed=args.seed, samples=args.samples, dim_cap=args.dim_cap)
    print(render_verdict(t, v) if args.text else _dump(v.as_dict()))
    return EXIT_UNKNOWN if v.exceptional == "unknown" else EXIT_DECIDED


def cmd_oracle(args) -> int:
    t = _load_triple(args.file)
    o = is_exceptional_oracle(t, args.seed, args.samples, args.dim_cap)
    d = {"verdict": "yes" if o.exceptional else "no", "nu": o.codim if o.exceptional else None,
         "dim_V": o.dim_V, "oracle": o.as_dict()}
    if args.text:
        print(f"{render_diagram(t)}\n\nG-orbit {o.g_orbit_dim}, H-orbit {o.h_orbit_dim}, dim V {o.dim_V}, "
              f"codim {o.codim}: {'exceptional' if o.exceptional else 'not exceptional'}")
    else:
        print(_dump(d))
    return EXIT_DECIDED


def cmd_castle(args) -> int:
    doc = load_spec(args.file)
    if doc.kind == "tree":
        raise SpecError("castling needs a group or a triple")
    x = doc.triple if doc.triple is not None else (doc.group, doc.module)
    moves = candidate_moves(x)
    reduced = castle_reduce(x)
    text = format_triple(reduced) if isinstance(reduced, TripleSpec) else format_group_module(*reduced)
    if args.text:
        print(text, end="")
    else:
        print(_dump({"reduced": text,
                     "moves": [{"summand": m.summand + 1, "factor": None if m.factor is None else m.factor + 1,
                                "dim_U": m.dim_u, "dim_W": m.dim_w, "dim_W_new": m.dim_w_check} for m in moves]}))
    return EXIT_DECIDED


def _subalgebra(text: str, g) -> Subalgebra:
    """``so(7)[spin]``, ``sp(4)*sl(2)[tensor]`` or ``whole``."""
    text = text.strip()
    if text == "whole":
        return whole(g)
    if not text.endswith("]") or "[" not in text:
        raise SpecError(f"expected 'factor[label]', got {text!r}")
    body, label = text[:-1].split("[", 1)
    parts = tuple(parse_factor(p) for p in body.split("*"))
    return Subalgebra(parts, label.strip())


def cmd_factorize(args) -> int:
    if args.table_o:
        rows = check_table_o()
        print(_dump({"rows": rows, "all_ok": all(r["ok"] for r in rows)}))
        return EXIT_DECIDED
    if not (args.g and args.h and args.s):
        raise SpecError("give G, H and S, or --table-o")
    g = parse_factor(args.g)
    h, s = _subalgebra(args.h, g), _subalgebra(args.s, g)
    out: dict = {"g": str(g), "h": str(h), "s": str(s)}
    try:
        out["structural"] = is_factorization_simple(g, h, s)
    except FactorizationUndecidable as exc:
        out["structural"] = None
        out["note"] = str(exc)
    if args.numeric or out["structural"] is None:
        out["numeric"] = numeric_factorization_check(subalgebra_basis(g, whole(g)), subalgebra_basis(g, h),
                                                     subalgebra_basis(g, s))
    print(_dump(out))
    decided = out["structural"] if out["structural"] is not None else out.get("numeric")
    return EXIT_DECIDED if decided is not None else EXIT_UNKNOWN


def cmd_tree_check(args) -> int:
    doc = load_spec(args.file)
    if doc.tree is None:
        raise SpecError("expected a TREE document")
    y = yak_predicate(doc.tree)
    s = sgp_projection_full(doc.tree, args.seed, args.samples, args.dim_cap)
    print(_dump({"yak": y, "sgp_projection_full": s, "agree": y == s}))
    return EXIT_DECIDED


def cmd_tables(args) -> int:
    if args.show:
        e = diagrams.entry(args.show)
        d = e.as_dict()
        if args.text:
            print(f"{e.id} ({e.family}): {e.summary}")
            if d["nu"] is not None:
                print(f"nu = {d['nu']}")
            if e.degrees is not None:
                print("degrees {" + ",".join(map(str, e.degrees)) + "}")
            if e.side_conditions:
                print(f"conditions: {e.side_conditions}")
            print(d["instance"], end="")
        else:
            print(_dump(d))
        return EXIT_DECIDED
    if args.export is not None:
        text = _dump(diagrams.export_tables())
        if args.export == "-":
            print(text)
        else:
            with open(args.export, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        return EXIT_DECIDED
    for e in diagrams.ENTRIES:
        nu = e.as_dict()["nu"]
        print(f"{e.id:4s} {e.family}  nu={'-' if nu is None else nu:<3}  {e.summary}")
    return EXIT_DECIDED


def cmd_print(args) -> int:
    print(format_document(load_spec(args.file)), end="")
    return EXIT_DECIDED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extriples", description="Exceptional triples of reductive groups")
    sub = p.add_subparsers(dest="command", required=True)

    def oracle_flags(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        sp.add_argument("--dim-cap", type=int, default=None,
                        help=f"largest module dimension for the oracle (default {default_dim_cap()})")
        sp.add_argument("--text", action="store_true", help="human-readable output")

    c = sub.add_parser("classify", help="decide exceptionality from the tables")
    c.add_argument("file")
    c.add_argument("--verify", action="store_true", help="also run the orbit oracle and cross-check")
    oracle_flags(c)
    c.set_defaults(fn=cmd_classify)

    o = sub.add_parser("oracle", help="compare generic orbit dimensions numerically")
    o.add_argument("file")
    oracle_flags(o)
    o.set_defaults(fn=cmd_oracle)

    k = sub.add_parser("castle", help="reduce by castling transforms")
    k.add_argument("file")
    k.add_argument("--text", action="store_true")
    k.set_defaults(fn=cmd_castle)

    f = sub.add_parser("factorize", help="test g = h + s")
    f.add_argument("g", nargs="?")
    f.add_argument("h", nargs="?")
    f.add_argument("s", nargs="?")
    f.add_argument("--numeric", action="store_true", help="also check ranks numerically")
    f.add_argument("--table-o", action="store_true", help="verify every listed factorization numerically")
    f.set_defaults(fn=cmd_factorize)

    t = sub.add_parser("tree-check", help="root-projection criterion on a weighted tree")
    t.add_argument("file")
    oracle_flags(t)
    t.set_defaults(fn=cmd_tree_check)

    tb = sub.add_parser("tables", help="list, show or export the diagram database")
    g = tb.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--show", metavar="ID")
    g.add_argument("--export", metavar="PATH", nargs="?", const="-")
    tb.add_argument("--text", action="store_true")
    tb.set_defaults(fn=cmd_tables)

    pr = sub.add_parser("print", help="parse a document and print it in canonical form")
    pr.add_argument("file")
    pr.set_defaults(fn=cmd_print)
    return p


_HANDLED = (SpecError, ModelError, LieError, OracleError, RealizationError, CastlingError, KeyError, OSError,
            ValueError)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _HANDLED as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(_dump({"error": type(exc).__name__, "message": msg}), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
