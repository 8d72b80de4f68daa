"""Command line front end: JSON on stdout, a short human summary on stderr.

Exit codes: 0 success, 2 input error, 3 budget or size error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import errors
from .conjugate import conjugate_from_realizer, find_realizer
from .enumerate import enumerate_posets
from .greene import (
    GreeneDiagram,
    c_decomposition,
    d_decomposition,
    greene_diagram,
    is_rectangular,
    merge_diagrams,
)
from .named import BUILTINS, resolve
from .poset import format_poset, height, width
from .product import (
    dual_gap,
    gap,
    max_semiantichain,
    min_unichain_cover,
    product,
    rectangular_duality,
    saks_cover,
)
from .scan import ScanConfig, scan_products, verify_blowup_gaps

INPUT_ERRORS = (errors.UnknownRef, errors.ParseError, errors.CycleDetected, errors.IndexOutOfRange,
                errors.EmptyLevel, errors.NotRectangular, errors.NotARealizer, errors.NotWeakOrder)
SIZE_ERRORS = (errors.TooLarge, errors.BudgetExceeded, errors.SearchBudgetExceeded)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1) + "\n")


def _note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _witness_status(fn, p, budget):
    try:
        w = fn(p, budget)
    except errors.SearchBudgetExceeded:
        return "budget-exceeded", None
    return ("yes", w.to_json()) if w is not None else ("no", None)


def cmd_greene(args) -> None:
    p = resolve(args.poset)
    g = greene_diagram(p)
    d_status, d_w = _witness_status(d_decomposition, p, args.budget)
    c_status, c_w = _witness_status(c_decomposition, p, args.budget)
    _emit({"poset": p.name or args.poset, "height": height(p), "width": width(p),
           "greene": g.to_json(), "ferrers": g.ferrers().splitlines(),
           "d_decomposable": d_status, "d_witness": d_w,
           "c_decomposable": c_status, "c_witness": c_w})
    _note(f"lambda={list(g.lam)} mu={list(g.mu)} d-decomposable: {d_status}, c-decomposable: {c_status}")
    _note(g.ferrers())


def cmd_gap(args) -> None:
    p, q = resolve(args.p), resolve(args.q)
    r = dual_gap(p, q) if args.dual else gap(p, q)
    _emit(r.to_json())
    what = "semichain/uniantichain" if args.dual else "semiantichain/unichain"
    _note(f"{what}: alpha={r.alpha} theta={r.theta} gap={r.gap}")


def cmd_cover(args) -> None:
    p, q = resolve(args.p), resolve(args.q)
    lines = min_unichain_cover(product(p, q))
    _emit({"size": len(lines), "unichain_cover": [ln.to_json() for ln in lines]})
    _note(f"minimum unichain covering: {len(lines)} lines")


def cmd_semiantichain(args) -> None:
    p, q = resolve(args.p), resolve(args.q)
    s = max_semiantichain(product(p, q))
    _emit({"size": len(s), "semiantichain": [list(v) for v in s]})
    _note(f"maximum semiantichain: {len(s)}")


def cmd_saks_cover(args) -> None:
    q = resolve(args.q)
    lines = saks_cover(args.k, q)
    _emit({"size": len(lines), "unichain_cover": [ln.to_json() for ln in lines]})
    _note(f"chain({args.k}) x {q.name or args.q}: {len(lines)} lines")


def cmd_rectangular(args) -> None:
    p = resolve(args.p)
    ok, w, h = is_rectangular(p)
    out = {"rectangular": ok, "w": w, "h": h}
    if args.q is not None:
        if not ok:
            raise errors.NotRectangular(f"{args.p} is not rectangular")
        r = rectangular_duality(p, resolve(args.q))
        out["report"] = r.to_json()
    _emit(out)
    _note(f"rectangular={ok} w={w} h={h}")


def _diagram(ref: str) -> GreeneDiagram:
    if all(c.isdigit() or c == "," for c in ref):
        return GreeneDiagram.from_lambda(int(x) for x in ref.split(","))
    return greene_diagram(resolve(ref))


def cmd_merge(args) -> None:
    gp, gq = _diagram(args.p), _diagram(args.q)
    m = merge_diagrams(gp, gq)
    _emit({"boxes": m.boxes, "slices_by_i": list(m.slices_by_i), "slices_by_j": list(m.slices_by_j)})
    _note(f"merge diagram: {m.boxes} boxes")


def cmd_scan(args) -> None:
    if args.max_product > 27:
        raise errors.TooLarge("scans are limited to products with at most 27 elements")
    cfg = ScanConfig(max_product_size=args.max_product, out_dir=args.out, resume=args.resume,
                     jobs=args.jobs, max_seconds=args.max_seconds)
    s = scan_products(cfg)
    _emit({"max_product": args.max_product, "pairs": s.pairs_total, "filtered": s.filtered,
           "solved": s.solved, "audited": s.audited,
           "counterexamples": [{k: v for k, v in r.to_json().items() if k not in ("millis", "nodes")}
                               for r in s.counterexamples]})
    _note(f"{s.pairs_total} pairs, {s.solved} solved exactly, {len(s.counterexamples)} counterexamples")


def cmd_blowup_verify(args) -> None:
    res = verify_blowup_gaps(args.k_max)
    _emit([{"k": k, "gap": g} for k, g in res])
    for k, g in res:
        _note(f"k={k}: gap {g}")


def cmd_conjugate(args) -> None:
    p = resolve(args.poset)
    r = find_realizer(p)
    if r is None:
        _emit({"two_dimensional": False})
        _note("not two-dimensional")
        return
    c = conjugate_from_realizer(r[0], r[1], p)
    _emit({"two_dimensional": True, "realizer": [r[0], r[1]], "conjugate_covers": c.covers(),
           "text": format_poset(c)})
    _note(format_poset(c).rstrip())


def cmd_enumerate(args) -> None:
    ps = enumerate_posets(args.n)
    if args.out:
        Path(args.out).write_text("".join(format_poset(p) for p in ps))
    _emit({"n": args.n, "count": len(ps)})
    _note(f"{len(ps)} posets on {args.n} elements")


def build_parser() -> argparse.ArgumentParser:
    epilog = "poset references: " + ", ".join(BUILTINS) + ", or a file in the poset text format"
    ap = argparse.ArgumentParser(prog="pdl", description=__doc__, epilog=epilog)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("greene", help="Greene diagram and decomposability", epilog=epilog)
    s.add_argument("poset")
    s.add_argument("--budget", type=int, default=10**7)
    s.set_defaults(fn=cmd_greene)

    s = sub.add_parser("gap", help="exact semiantichain / unichain covering optima", epilog=epilog)
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--dual", action="store_true", help="semichains and uniantichain coverings")
    s.set_defaults(fn=cmd_gap)

    for name, fn, text in (("cover", cmd_cover, "minimum unichain covering"),
                           ("semiantichain", cmd_semiantichain, "maximum semiantichain")):
        s = sub.add_parser(name, help=text, epilog=epilog)
        s.add_argument("p")
        s.add_argument("q")
        s.set_defaults(fn=fn)

    s = sub.add_parser("saks-cover", help="cover of chain(k) x Q with d_k(Q) unichains", epilog=epilog)
    s.add_argument("k", type=int)
    s.add_argument("q")
    s.set_defaults(fn=cmd_saks_cover)

    s = sub.add_parser("rectangular", help="rectangularity test, optionally the duality for P x Q",
                       epilog=epilog)
    s.add_argument("p")
    s.add_argument("q", nargs="?")
    s.set_defaults(fn=cmd_rectangular)

    s = sub.add_parser("merge", help="merge of two Greene diagrams (refs or lambda lists like 9,5,5,2)",
                       epilog=epilog)
    s.add_argument("p")
    s.add_argument("q")
    s.set_defaults(fn=cmd_merge)

    s = sub.add_parser("scan", help="exhaustive search for duality gaps")
    s.add_argument("--max-product", type=int, default=16)
    s.add_argument("--out", type=Path, default=None)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--max-seconds", type=float, default=None)
    s.set_defaults(fn=cmd_scan)

    s = sub.add_parser("blowup-verify", help="exact gaps of the blown-up counterexamples")
    s.add_argument("--k-max", type=int, default=1)
    s.set_defaults(fn=cmd_blowup_verify)

    s = sub.add_parser("conjugate", help="2-realizer and conjugate", epilog=epilog)
    s.add_argument("poset")
    s.set_defaults(fn=cmd_conjugate)

    s = sub.add_parser("enumerate", help="posets on n elements up to isomorphism")
    s.add_argument("n", type=int)
    s.add_argument("--out", default=None)
    s.set_defaults(fn=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        args.fn(args)
    except INPUT_ERRORS as exc:
        _note(f"error: {exc}")
        return 2
    except SIZE_ERRORS as exc:
        _note(f"error: {exc}")
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
