"""Command-line surface for evaluation, zero/Gram analytics, and x-rays.

Conventions, also documented per-subcommand in --help:
- Gram indices start at -1 (g_-1 = 9.6669...), matching theta(g_n) = n*pi.
- Index ranges "lo..hi" include lo and exclude hi; t ranges are inclusive.
- Formats: table-text (aligned columns or point-cloud rows), structured
  (line-delimited JSON, fixed key order), vector (SVG).
- Exit codes: 0 success, 2 domain or range error, 3 numeric non-convergence.
"""

import argparse
import json
import sys

from . import backend, engine, gram, render, xray
from .gallery import ORACLE_NAMES, get_oracle

_EPILOG = ("Gram indices start at -1 (the first point g_-1 is near t = 9.667). "
           "Index ranges lo..hi include lo, exclude hi; real t ranges are inclusive.")


def _parse_complex(text):
    s = text.strip().replace(" ", "")
    s = s.replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise engine.DomainError("cannot parse complex number %r; use forms like 2+0i or 0.5+14.1i" % text)


def _parse_index_range(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise engine.DomainError("index range must look like lo..hi, got %r" % text)
    if hi <= lo:
        raise engine.DomainError("empty index range %r" % text)
    return lo, hi


def _parse_t_range(text):
    try:
        lo, hi = text.split("..")
        lo, hi = float(lo), float(hi)
    except ValueError:
        raise engine.DomainError("t range must look like lo..hi, got %r" % text)
    if hi <= lo:
        raise engine.DomainError("empty t range %r" % text)
    return lo, hi


def _parse_rect(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise engine.DomainError("--rect needs sigma_min,sigma_max,t_min,t_max")
    a, b, c, d = (float(p) for p in parts)
    return xray.Rectangle(a, b, c, d)


def _emit(args, text):
    data = text.encode("utf-8")
    if getattr(args, "out", None):
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(text)


def _progress_printer(args, label):
    if args.quiet:
        return None

    def cb(k):
        print("%s: %d points done" % (label, k), file=sys.stderr)

    return cb


def _jsonl(records):
    return "\n".join(json.dumps(r, separators=(",", ":")) for r in records) + "\n"


def cmd_eval(args):
    s = _parse_complex(args.s)
    r = engine.zeta(s, target_accuracy=args.target)
    if args.format == "structured":
        _emit(args, _jsonl([{
            "s": [s.real, s.imag],
            "value": [r.value.real, r.value.imag],
            "error_bound": r.error_bound,
            "method": r.method,
            "flags": list(r.flags),
        }]))
    else:
        flags = (" flags=" + ",".join(r.flags)) if r.flags else ""
        _emit(args, "zeta(%s) = %.12g%+.12gi  [method=%s, error<=%.3g%s]\n"
              % (args.s, r.value.real, r.value.imag, r.method, r.error_bound, flags))
    return 0


def cmd_zeros(args):
    lo, hi = _parse_t_range(args.t)
    scan = gram.find_zeros(lo, hi)
    if args.format == "structured":
        recs = [{
            "ordinal": z.ordinal,
            "t": round(z.t, 9),
            "bracket": [round(z.bracket[0], 9), round(z.bracket[1], 9)],
            "width": z.refinement_width,
        } for z in scan]
        _emit(args, _jsonl(recs))
    else:
        lines = ["# %d zeros of Z(t) in [%g, %g]" % (len(scan), lo, hi)]
        for z in scan:
            lines.append("%6d  %18.9f  width %.2e" % (z.ordinal, z.t, z.refinement_width))
        for w in scan.warnings:
            lines.append("# warning: %s" % w)
        _emit(args, "\n".join(lines) + "\n")
    for w in scan.warnings:
        print("warning: %s" % w, file=sys.stderr)
    return 0


def cmd_gram(args):
    lo, hi = _parse_index_range(args.n)
    pts = gram.gram_points(lo, hi, progress=_progress_printer(args, "gram"))
    if args.format == "structured":
        recs = [{
            "index": p.index,
            "t": round(p.t, 9),
            "z_value": p.z_value,
            "good": bool(p.good),
        } for p in pts]
        _emit(args, _jsonl(recs))
    else:
        lines = ["# Gram points g_n for n in [%d, %d)" % (lo, hi),
                 "#    n              t            Z(g_n)  quality"]
        for p in pts:
            lines.append("%6d  %16.6f  %16.6e  %s" % (p.index, p.t, p.z_value,
                                                      "good" if p.good else "bad"))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_audit(args):
    lo, hi = _parse_index_range(args.gram)
    rep = gram.audit_laws(lo, hi, progress=_progress_printer(args, "audit"))
    # summary on stdout regardless of --out (the full report goes to --out)
    summary = ["audit of Gram indices [%d, %d):" % (lo, hi),
               "  gram-law violations: %d" % len(rep.gram_violations)]
    for v in rep.gram_violations:
        summary.append("    interval (%d, %d) holds %d zeros; %s"
                       % (v["interval"][0], v["interval"][1], v["count"], v["note"]))
    summary.append("  rosser-rule violations: %d" % len(rep.rosser_violations))
    for v in rep.rosser_violations:
        b = v["block"]
        summary.append("    block (%d, %d) with %d intervals: %s"
                       % (b.start_index, b.end_index, b.interval_count, v["note"]))
    for w in rep.warnings:
        summary.append("  warning: %s" % w)
    print("\n".join(summary))
    if args.format == "structured":
        recs = []
        for p in rep.points:
            rec = {
                "index": p.index,
                "t": round(p.t, 9),
                "z_value": p.z_value,
                "good": bool(p.good),
            }
            if p.index in rep.interval_counts:
                rec["zeros_to_next"] = rep.interval_counts[p.index]
            recs.append(rec)
        text = _jsonl(recs)
    else:
        lines = ["#    n              t            Z(g_n)  quality  block  zeros_to_next"]
        for (n, t, z, good, blk) in rep.table_rows():
            cnt = rep.interval_counts.get(n, "-")
            lines.append("%9d  %16.6f  %12.4e  %7s  %5s  %s"
                         % (n, t, z, "good" if good else "bad", blk, cnt))
        text = "\n".join(lines) + "\n"
    if args.out:
        _emit(args, text)
    return 0


def cmd_s(args):
    rep = gram.s_of_t(float(args.t))
    if args.format == "structured":
        _emit(args, _jsonl([{"T": rep.T, "N": rep.n_of_t, "S": rep.s_value}]))
    else:
        _emit(args, "T = %.6f   N(T) = %d   S(T) = %.9f\n" % (rep.T, rep.n_of_t, rep.s_value))
    return 0


def cmd_sigma0(args):
    v = gram.van_de_lune_sigma0(digits=args.digits)
    if args.format == "structured":
        _emit(args, _jsonl([{"sigma0": v, "digits": args.digits}]))
    else:
        _emit(args, "sigma0 = %.*g\n" % (args.digits, v))
    return 0


def cmd_xray(args):
    rect = _parse_rect(args.rect)
    coeffs = [float(c) for c in args.coeffs.split(",")] if args.coeffs else None
    oracle = get_oracle(args.function, coeffs=coeffs)
    if args.grid:
        try:
            nx, ny = (int(v) for v in args.grid.split(","))
        except ValueError:
            raise engine.DomainError("--grid needs NX,NY")
        grid = xray.GridSpec(nx=nx, ny=ny, max_refinement_depth=args.depth)
    else:
        grid = xray.GridSpec.for_rect(rect, depth=args.depth)
    res = xray.trace_rectangle(oracle, rect, grid)
    for w in res.warnings:
        if not args.quiet:
            print("warning: %s" % w, file=sys.stderr)
    if args.format == "vector":
        text = render.render_svg(res.curves, rect, singularities=res.singularities)
    elif args.format == "structured":
        text = render.curve_inventory(res.curves)
    else:
        text = render.point_cloud(res.curves)
    _emit(args, text)
    return 0


def cmd_sheet_perm(args):
    perm, sheets = xray.sheet_permutation(count=args.count, start=args.start)
    if args.format == "structured":
        recs = []
        for rank, sh in zip(perm, sheets):
            recs.append({
                "gram_index": sh.gram_point_index,
                "zero_rank": rank,
                "zero_t": None if sh.zero is None else round(sh.zero.imag, 9),
                "degenerate": bool(sh.degenerate),
                "line_numbers": list(sh.line_numbers) if sh.line_numbers else None,
                "flags": list(sh.flags),
            })
        _emit(args, _jsonl(recs))
    else:
        lines = ["permutation: %s" % " ".join("?" if p is None else str(p) for p in perm),
                 "# gram_index  zero_rank        zero_t  degenerate  lines"]
        for rank, sh in zip(perm, sheets):
            lines.append("%11d  %9s  %12s  %10s  %s"
                         % (sh.gram_point_index,
                            "?" if rank is None else rank,
                            "-" if sh.zero is None else "%.6f" % sh.zero.imag,
                            "yes" if sh.degenerate else "no",
                            sh.line_numbers if sh.line_numbers else "-"))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="zetascope",
        description="Riemann zeta evaluation, critical-line zero analytics, "
                    "Gram-law audits, and x-ray level-set plots.",
        epilog=_EPILOG)
    p.add_argument("--threads", type=int, default=None,
                   help="cap worker threads (default: backend decides); output is identical at any setting")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, fmt_default="table-text", fmts=("table-text", "structured")):
        sp.add_argument("--format", choices=fmts, default=fmt_default,
                        help="output format (default %(default)s)")
        sp.add_argument("--out", default=None, help="write output to this file instead of stdout")
        sp.add_argument("--quiet", action="store_true", help="suppress progress on stderr")

    sp = sub.add_parser("eval", help="evaluate zeta(s) with method and error bound",
                        epilog=_EPILOG)
    sp.add_argument("--s", required=True, help="complex point, e.g. 2+0i or 0.5+14.134725i")
    sp.add_argument("--target", type=float, default=1e-12, help="requested absolute accuracy")
    common(sp)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("zeros", help="locate critical-line zeros in a t range",
                        epilog=_EPILOG)
    sp.add_argument("--t", required=True, help="t range lo..hi (inclusive reals)")
    common(sp)
    sp.set_defaults(fn=cmd_zeros)

    sp = sub.add_parser("gram", help="Gram points g_n over an index range",
                        epilog=_EPILOG)
    sp.add_argument("--n", required=True, help="index range lo..hi (lo included, hi excluded; g_-1 is the first)")
    common(sp)
    sp.set_defaults(fn=cmd_gram)

    sp = sub.add_parser("audit", help="audit Gram's law and Rosser's rule over Gram indices",
                        epilog=_EPILOG + " Progress prints to stderr every 1000 points unless --quiet.")
    sp.add_argument("--gram", required=True, help="Gram index range lo..hi")
    common(sp)
    sp.set_defaults(fn=cmd_audit)

    sp = sub.add_parser("s", help="S(T) and N(T) by the argument walk", epilog=_EPILOG)
    sp.add_argument("--t", required=True, type=float, help="height T >= 10")
    common(sp)
    sp.set_defaults(fn=cmd_s)

    sp = sub.add_parser("sigma0", help="van de Lune's constant sigma0", epilog=_EPILOG)
    sp.add_argument("--digits", type=int, default=13, help="significant digits (1..14)")
    common(sp)
    sp.set_defaults(fn=cmd_sigma0)

    sp = sub.add_parser("xray", help="trace Re f = 0 (thin) and Im f = 0 (thick) over a rectangle",
                        epilog=_EPILOG + " vector = SVG; structured = curve inventory (JSON lines: "
                        "kind, line_number, closed, n_points, start, end, crossing_numbers, "
                        "singularities, flags); table-text = 'sigma t kind' vertex rows.")
    sp.add_argument("--function", default="zeta", choices=ORACLE_NAMES,
                    help="oracle to trace (default zeta)")
    sp.add_argument("--coeffs", default=None,
                    help="comma-separated coefficients (highest degree first) for user_polynomial")
    sp.add_argument("--rect", required=True, help="sigma_min,sigma_max,t_min,t_max")
    sp.add_argument("--grid", default=None, help="NX,NY cells (default: 8 per unit)")
    sp.add_argument("--depth", type=int, default=5, help="max refinement depth (0..8)")
    common(sp, fmt_default="vector", fmts=("table-text", "structured", "vector"))
    sp.set_defaults(fn=cmd_xray)

    sp = sub.add_parser("sheet-perm", help="zero-Gram pairing by tracing sheets",
                        epilog=_EPILOG)
    sp.add_argument("--count", type=int, default=20, help="number of Gram points to pair")
    sp.add_argument("--start", type=int, default=-1, help="first Gram index (default -1)")
    common(sp)
    sp.set_defaults(fn=cmd_sheet_perm)
    return p


_DASH_VALUE_FLAGS = ("--n", "--gram", "--t", "--s", "--rect", "--coeffs")


def _merge_dash_values(argv):
    """Rewrite ["--n", "-1..5"] as ["--n=-1..5"] so argparse accepts it."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _DASH_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(a + "=" + argv[i + 1])
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_dash_values(list(argv)))
    if args.threads is not None:
        backend.set_threads(args.threads)
    try:
        return args.fn(args) or 0
    except ValueError as exc:  # DomainError, RangeError included
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ArithmeticError as exc:  # ConvergenceError included
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
