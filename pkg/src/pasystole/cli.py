"""Command line: ``pasystole <command> ...``.

Exit status is 0 on success, 2 when the result is empty or infeasible and
1 on errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .lefschetz import DEFAULT_HORIZON, EXTENSION_HORIZON, enumerate_strata, lefschetz_sequence, stratum_feasible
from .numfield import integer_charpoly
from .parsing import (
    ParseError,
    parse_path,
    parse_permutation,
    parse_polynomial,
    parse_reciprocal,
    parse_stratum,
    parse_word,
)
from .pipeline import (
    CheckpointMismatch,
    CorruptCheckpoint,
    filter_polynomial,
    format_table,
    lefschetz_table,
    run_pipeline,
    seed_bound,
)
from .polycore import format_poly, negate_variable
from .rauzy import RauzyLoop, loop_matrix, search_loops, veech_certificate
from .search import RootBound, enumerate_candidates
from .twist import casson_bleiler, search_words, word_action, word_charpoly

EXIT_OK, EXIT_ERROR, EXIT_EMPTY = 0, 1, 2


def _bound(args, genus):
    if args.bound_value is not None:
        return RootBound(args.bound_value)
    if args.bound is not None:
        return RootBound.from_poly(parse_polynomial(args.bound))
    return seed_bound(genus)


def _emit(args, doc, rows=None, header=None):
    """Write ``doc`` as JSON, or ``rows`` as csv / aligned table."""
    fmt = args.format
    if fmt == "json" or rows is None:
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    else:
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
        lines = ["  ".join(str(x).ljust(n) for x, n in zip(r, widths)).rstrip()
                 for r in [header, *rows]]
        lines.insert(1, "  ".join("-" * n for n in widths))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_enumerate(args):
    bound = _bound(args, args.genus)
    cs = enumerate_candidates(args.genus, bound, workers=args.workers)
    doc = {"schema": "pa-systole/1", "genus": args.genus, "bound": bound.describe(),
           "stats": cs.stats, "boundary": cs.boundary, "review": cs.review,
           "candidates": [{"coefficients": list(p.coefficients), "text": str(p), "root": r}
                          for p, r in cs.candidates]}
    rows = [(f"{r:.6f}", str(p)) for p, r in cs.candidates]
    _emit(args, doc, rows, ("root", "polynomial"))
    return EXIT_OK if cs.candidates else EXIT_EMPTY


def cmd_filter(args):
    poly = parse_reciprocal(args.polynomial)
    genus = poly.genus
    strata = [parse_stratum(args.stratum, genus)] if args.stratum else enumerate_strata(genus)
    N = args.max_iter
    verdicts = filter_polynomial(poly.coefficients, genus, N, strata, args.extend)
    if args.sign:
        verdicts = [v for v in verdicts if v["sign"] == args.sign]
    doc = {"schema": "pa-systole/1", "polynomial": list(poly.coefficients), "horizon": N,
           "verdicts": verdicts}
    if args.table and args.stratum and args.sign:
        cp = poly.coefficients if args.sign == 1 else negate_variable(poly.coefficients)
        st = strata[0]
        ws = stratum_feasible(cp, st, N, profile=lefschetz_sequence(cp, N))
        if not ws:
            print("infeasible", file=sys.stderr)
            return EXIT_EMPTY
        text = format_table(lefschetz_table(cp, ws[0], N)) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    rows = [("+" if v["sign"] > 0 else "-", ",".join(map(str, v["stratum"])),
             "feasible" if v["feasible"] else "eliminated", v["witnesses"]) for v in verdicts]
    _emit(args, doc, rows, ("sign", "stratum", "verdict", "witnesses"))
    return EXIT_OK if any(v["feasible"] for v in verdicts) else EXIT_EMPTY


def cmd_pipeline(args):
    if args.genus >= 6 and not (args.extended and args.checkpoint):
        print("error: genus 6-8 needs --extended and --checkpoint", file=sys.stderr)
        return EXIT_ERROR
    bound = _bound(args, args.genus)
    rep = run_pipeline(args.genus, bound, N=args.max_iter, shards=args.shards,
                       checkpoint_dir=args.checkpoint, workers=args.workers,
                       extended=args.extended, extend=args.extend or None)
    rows = []
    for c in rep.data["candidates"] + rep.data.get("lifted", {}).get("candidates", []):
        strata = " ".join(("+" if s["sign"] > 0 else "-") + "(" + ",".join(map(str, s["stratum"])) + ")"
                          for s in c["feasible_strata"])
        rows.append((f"{c['root']:.6f}", c["text"], strata or "-", c["flag"] or ""))
    _emit(args, json.loads(rep.to_json()), rows, ("root", "polynomial", "feasible", "note"))
    m = rep.minimum
    print(f"minimum: {m['text']} @ {m['root']:.6f} ({m['source']})", file=sys.stderr)
    return EXIT_OK if m["coefficients"] else EXIT_EMPTY


def cmd_report(args):
    with open(args.input, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema") != "pa-systole/1":
        print(f"error: unknown report schema {data.get('schema')!r}", file=sys.stderr)
        return EXIT_ERROR
    rows = []
    for c in data.get("candidates", []):
        feas = " ".join(("+" if s["sign"] > 0 else "-") + "(" + ",".join(map(str, s["stratum"])) + ")"
                        for s in c.get("feasible_strata", []))
        rows.append((f"{c['root']:.6f}", c["text"], feas or "-", c.get("flag") or ""))
    _emit(args, data, rows, ("root", "polynomial", "feasible", "note"))
    m = data.get("minimum")
    if m:
        print(f"minimum: {m['text']} @ {m['root']:.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_rauzy_verify(args):
    loop = RauzyLoop(parse_permutation(args.perm), parse_path(args.path))
    cert = veech_certificate(loop)
    doc = {"schema": "pa-systole/1", "certificate": cert.to_json()}
    rows = [(" ".join(map(str, r))) for r in cert.R.tolist()]
    _emit(args, doc, [(r,) for r in rows], ("matrix",))
    print(f"dilatation {cert.perron_value():.9f}, stratum {cert.stratum}", file=sys.stderr)
    return EXIT_OK


def cmd_rauzy_search(args):
    target = parse_polynomial(args.target)
    loops = search_loops(parse_permutation(args.perm), target, args.max_len)
    doc = {"schema": "pa-systole/1", "loops": [
        {"base_perm": list(lp.base_perm), "path": list(lp.path),
         "charpoly": list(integer_charpoly(loop_matrix(lp).tolist()))} for lp in loops]}
    rows = [(",".join(map(str, lp.path)),) for lp in loops]
    _emit(args, doc, rows, ("path",))
    return EXIT_OK if loops else EXIT_EMPTY


def cmd_twist_act(args):
    word = parse_word(args.word, args.genus)
    act = word_action(word)
    cp = word_charpoly(word)
    verdict = casson_bleiler(cp)
    doc = {"schema": "pa-systole/1", "word": str(word), "genus": word.genus,
           "matrix": act.matrix.tolist(), "charpoly": list(cp.coefficients),
           "symplectic": act.is_symplectic(), "verdict": verdict.status,
           "failed": list(verdict.failed)}
    rows = [(" ".join(f"{x:3d}" for x in r),) for r in act.matrix.tolist()]
    _emit(args, doc, rows, ("matrix",))
    print(f"charpoly {format_poly(cp.coefficients)}: {verdict.status}", file=sys.stderr)
    return EXIT_OK


def cmd_twist_search(args):
    target = parse_reciprocal(args.target)
    words = search_words(target.genus, target, args.max_len, mode=args.mode)
    doc = {"schema": "pa-systole/1", "target": list(target.coefficients),
           "words": [str(w) for w in words]}
    _emit(args, doc, [(str(w),) for w in words], ("word",))
    return EXIT_OK if words else EXIT_EMPTY


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file (UTF-8)")
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")

    bound = argparse.ArgumentParser(add_help=False)
    bound.add_argument("--genus", type=int, required=True)
    bound.add_argument("--bound", help="polynomial whose Perron root is the bound")
    bound.add_argument("--bound-value", type=float, help="numeric bound on the Perron root")
    bound.add_argument("--workers", type=int, default=None)

    p = argparse.ArgumentParser(prog="pasystole", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common, bound], help="candidate polynomials")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("filter", parents=[common], help="Lefschetz filter one polynomial")
    s.add_argument("polynomial")
    s.add_argument("--stratum")
    s.add_argument("--sign", type=int, choices=(1, -1))
    s.add_argument("--max-iter", type=int, default=DEFAULT_HORIZON,
                   help="largest iterate n checked (horizon N)")
    s.add_argument("--extend", type=int, help="recheck feasible verdicts up to this iterate")
    s.add_argument("--table", action="store_true",
                   help="print the Lefschetz decomposition (needs --stratum and --sign)")
    s.set_defaults(func=cmd_filter)

    s = sub.add_parser("pipeline", parents=[common, bound], help="enumerate, filter, report")
    s.add_argument("--max-iter", type=int, default=DEFAULT_HORIZON,
                   help="largest iterate n checked (horizon N)")
    s.add_argument("--extend", type=int, default=EXTENSION_HORIZON,
                   help="recheck survivors up to this iterate (0 disables)")
    s.add_argument("--shards", type=int)
    s.add_argument("--checkpoint", help="checkpoint directory")
    s.add_argument("--extended", action="store_true", help="allow genus 6-8")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("report", parents=[common], help="render a saved pipeline report")
    s.add_argument("input")
    s.set_defaults(func=cmd_report)

    r = sub.add_parser("rauzy", help="Rauzy-Veech loops").add_subparsers(dest="rauzy_cmd", required=True)
    s = r.add_parser("verify", parents=[common])
    s.add_argument("--perm", required=True)
    s.add_argument("--path", required=True)
    s.set_defaults(func=cmd_rauzy_verify)
    s = r.add_parser("search", parents=[common])
    s.add_argument("--perm", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--max-len", type=int, default=10)
    s.set_defaults(func=cmd_rauzy_search)

    t = sub.add_parser("twist", help="Dehn twist words").add_subparsers(dest="twist_cmd", required=True)
    s = t.add_parser("act", parents=[common])
    s.add_argument("word")
    s.add_argument("--genus", type=int)
    s.set_defaults(func=cmd_twist_act)
    s = t.add_parser("search", parents=[common])
    s.add_argument("--target", required=True)
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--mode", choices=("exhaustive", "chain"), default="exhaustive")
    s.set_defaults(func=cmd_twist_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CheckpointMismatch, CorruptCheckpoint, ValueError, ArithmeticError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
