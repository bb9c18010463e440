"""Command-line interface: ``bergman-hypo {seq,hypo,comm,region,bounds}``.

Exit codes: 0 certified-positive result, 1 certified-negative result,
2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Optional

from . import commutator as comm
from . import hypotest as ht
from .numerics.rational import to_rational
from .sequences import (
    ModeError,
    SymbolParams,
    asymptotic_leading,
    delta,
    omega,
    sigma,
)

EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- number parsing and serialization ---------------------------------------


class Num:
    """A numeric flag value: exact for ``p/q`` or integer syntax, else binary64."""

    def __init__(self, text: str):
        text = text.strip()
        self.text = text
        try:
            if "/" in text or _is_int(text):
                self.value: Any = Fraction(text)
                self.exact = True
            else:
                self.value = float(text)
                self.exact = False
        except (ValueError, ZeroDivisionError) as e:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from e

    def __repr__(self):
        return self.text


def _is_int(text: str) -> bool:
    try:
        int(text)
        return True
    except ValueError:
        return False


def _plain(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def ser(x: Any) -> Any:
    """JSON-ready form; Fractions become numerator/denominator string pairs."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator), "decimal": repr(float(x))}
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, Num):
        return x.text
    if isinstance(x, dict):
        return {str(k): ser(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [ser(v) for v in x]
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):  # enums
        return x.value
    return str(x)


def _cell(x: Any) -> str:
    """CSV cell: exact rationals as ``p/q``."""
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


class Output:
    def __init__(self, args):
        self.args = args
        self.t0 = time.perf_counter()

    def envelope(self, command: str, inputs: dict, results: Any, mode: str) -> dict:
        env = {
            "command": command,
            "inputs": ser(inputs),
            "mode": mode,
            "results": ser(results),
        }
        if self.args.timing:
            env["timing_ms"] = round((time.perf_counter() - self.t0) * 1000, 3)
        return env

    def emit_text(self, text: str) -> None:
        if getattr(self.args, "out", None):
            with open(self.args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def emit_json(self, env: dict) -> None:
        self.emit_text(json.dumps(env, indent=2, ensure_ascii=False) + "\n")


def _mode(*nums: Optional[Num]) -> str:
    return "exact" if all(x is None or x.exact for x in nums) else "float"


def _val(x: Optional[Num], default=0):
    return default if x is None else x.value


# -- seq --------------------------------------------------------------------


def cmd_seq(args, out: Output) -> int:
    mode = _mode(args.s, args.t)
    params = SymbolParams(args.n, args.m, _val(args.s), _val(args.t))
    params = params.exact() if mode == "exact" else params.floating()
    if args.kmax < 0:
        raise UsageError("--kmax must be nonnegative")
    rows = []
    for k in range(args.kmax + 1):
        row = {"k": k, "sigma": sigma(params, k), "omega": omega(params, k), "delta": delta(params, k)}
        for kind in ("sigma", "omega", "delta"):
            if k >= 1 and not (kind == "delta" and params.t == 0):
                row[f"{kind}_leading"] = asymptotic_leading(kind, params, k)
            else:
                row[f"{kind}_leading"] = None
        rows.append(row)
    inputs = {"n": args.n, "m": args.m, "s": args.s, "t": args.t, "kmax": args.kmax}
    if args.format == "csv":
        cols = ["k", "sigma", "omega", "delta", "sigma_leading", "omega_leading", "delta_leading"]
        if mode == "exact":
            cols[4:4] = ["sigma_decimal", "omega_decimal", "delta_decimal"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            r = dict(r)
            for kind in ("sigma", "omega", "delta"):
                r[f"{kind}_decimal"] = float(r[kind])
            w.writerow([_cell(r[c]) for c in cols])
        out.emit_text(buf.getvalue())
    else:
        out.emit_json(out.envelope("seq", inputs, {"rows": rows}, mode))
    return EXIT_POSITIVE


# -- hypo -------------------------------------------------------------------


def _verdict_payload(v: ht.HypoVerdict) -> dict:
    out: dict = {"status": v.status.value}
    if v.witness is not None:
        out["witness"] = {
            "kind": v.witness.kind,
            "support_start": v.witness.support_start,
            "support_length": len(v.witness.values),
            "values": list(v.witness.values) if len(v.witness.values) <= 64 else "omitted (long)",
            "form_value": v.witness_value,
        }
    if v.certificate is not None:
        out["certificate"] = v.certificate
    diag = {k: val for k, val in v.diagnostics.items() if k != "tried"}
    out["diagnostics"] = diag
    return out


_STATUS_EXIT = {
    ht.Status.CERTIFIED_HYPONORMAL: EXIT_POSITIVE,
    ht.Status.CERTIFIED_NOT_HYPONORMAL: EXIT_NEGATIVE,
    ht.Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def cmd_hypo(args, out: Output) -> int:
    s = _val(args.s)
    mode = _mode(args.s, args.t, args.a, args.c, getattr(args, "tol", None))
    inputs = {k: getattr(args, k, None) for k in ("n", "m", "s", "t", "a", "c", "K")}
    if args.action == "window":
        if args.c is None:
            raise UsageError("hypo window needs --c (a(t) = c/t)")
        v = ht.refute_window(args.n, args.m, to_rational(s), to_rational(args.c.value))
        payload = _verdict_payload(v)
        if v.refuted:
            d = v.diagnostics
            payload["window"] = {"t": d["t"], "a": d["a"], "k1": d["k1"], "k2": d["k2"]}
        payload["tried"] = v.diagnostics.get("tried", [])
        out.emit_json(out.envelope("hypo window", inputs, payload, mode))
        return _STATUS_EXIT[v.status]
    if args.t is None:
        raise UsageError("--t is required")
    t = to_rational(args.t.value)
    if args.action == "sweep":
        r = ht.boundary_sweep(args.n, args.m, to_rational(s), t, to_rational(args.tol.value), K=args.K)
        payload = {
            "status": r.status,
            "a_lo": r.a_lo,
            "a_hi": r.a_hi,
            "width": r.width,
            "evaluations": [[a, st] for a, st in r.evaluations],
        }
        out.emit_json(out.envelope("hypo sweep", inputs, payload, mode))
        return EXIT_POSITIVE if r.status == "bracketed" else EXIT_INCONCLUSIVE
    # check
    if args.a is not None and args.c is not None:
        raise UsageError("give either --a or --c, not both")
    if args.c is not None:
        if t == 0:
            raise UsageError("--c needs t > 0")
        a = to_rational(args.c.value) / t
    else:
        a = to_rational(_val(args.a))
    params = SymbolParams(args.n, args.m, to_rational(s), t, a)
    v = ht.decide(params, K=args.K)
    payload = _verdict_payload(v)
    payload["a_used"] = a
    out.emit_json(out.envelope("hypo check", inputs, payload, mode))
    return _STATUS_EXIT[v.status]


# -- comm -------------------------------------------------------------------


def cmd_comm(args, out: Output) -> int:
    m, n = args.m, args.n
    if not (m > n >= 1):
        raise UsageError(f"need m > n >= 1, got m={m}, n={n}")
    inputs = {"m": m, "n": n}
    if args.action == "classify":
        r = comm.classify_monotonicity(m, n)
        payload = {
            "classification": r.classification.value,
            "d": r.d,
            "critical_point": None
            if r.critical_point is None
            else {"lo": r.critical_point.lo, "hi": r.critical_point.hi},
            "cubic_coefficients": list(comm.cubic_coefficients(m, n)),
        }
        code = EXIT_POSITIVE
    elif args.action == "norm":
        r = comm.commutator_norm(m, n)
        payload = {
            "norm": r.norm,
            "argmax_k": r.argmax_k,
            "head_max": None if r.head_max is None else {"k": r.head_max[0], "value": r.head_max[1]},
            "tail_max": {"k": r.tail_max[0], "value": r.tail_max[1]},
            "classification": r.monotonicity.classification.value,
            "d": r.monotonicity.d,
        }
        code = EXIT_POSITIVE
    else:
        try:
            rec = comm.verify_half_bound(m, n, check_expansion=True)
            q = rec.quartic
            payload = {
                "holds": rec.holds,
                "quartic": {"alpha": q.alpha, "beta": q.beta, "gamma": q.gamma, "delta": q.delta},
                "coefficients_positive": rec.coefficients_positive,
                "head_max": rec.head_max,
                "norm": rec.norm,
            }
            code = EXIT_POSITIVE if rec.holds else EXIT_NEGATIVE
        except comm.CoefficientSignFailure as e:
            payload = {"holds": False, "error": str(e)}
            code = EXIT_NEGATIVE
    out.emit_json(out.envelope(f"comm {args.action}", inputs, payload, "exact"))
    return code


# -- region -----------------------------------------------------------------


def write_pbm(path: str, scan: comm.RegionScan) -> None:
    """Plain PBM (P1); row ``i`` is ``n = i + 1``, column ``j`` is ``m = j + 1``."""
    B = scan.bitmap()
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("P1\n")
        fh.write(f"# d(m,n) > 0 cells; row i (top first) is n = i+1, column j (left first) is m = j+1\n")
        fh.write(f"{B.shape[1]} {B.shape[0]}\n")
        for row in B:
            line = "".join("1" if b else "0" for b in row)
            for i in range(0, len(line), 70):
                fh.write(line[i : i + 70] + "\n")


def write_region_csv(path: str, scan: comm.RegionScan) -> None:
    """Shaded cells (``d > 0``) and any ``d = 0`` cells; all other cells have ``d < 0``."""
    zeros = set(scan.zero_cells)
    rows = [(m, n, 1) for m, n in scan.shaded_pairs()] + [(m, n, 0) for m, n in zeros]
    rows.sort()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["m", "n", "d_sign"])
        w.writerows(rows)


def read_pbm(path: str):
    import numpy as np

    with open(path, encoding="ascii") as fh:
        tokens = []
        for line in fh:
            line = line.split("#", 1)[0]
            tokens.append(line)
    text = "".join(tokens).split()
    if text[0] != "P1":
        raise ValueError("not a plain PBM file")
    w, h = int(text[1]), int(text[2])
    bits = "".join(text[3:])
    return np.array([b == "1" for b in bits], dtype=bool).reshape(h, w)


def cmd_region(args, out: Output) -> int:
    if args.mmax < 2:
        raise UsageError("--mmax must be at least 2")
    scan = comm.scan_region(args.mmax, threads=args.threads)
    if args.out_bitmap:
        write_pbm(args.out_bitmap, scan)
    if args.out_csv:
        write_region_csv(args.out_csv, scan)
    root = comm.boundary_slope()
    alpha = root.mid
    ratio = scan.slope_at(args.mmax)
    fitted = scan.fitted_slope() if scan.boundary_samples else None
    payload = {
        "cells": args.mmax * (args.mmax - 1) // 2,
        "shaded": len(scan.shaded_pairs()),
        "zero_cells": [list(c) for c in scan.zero_cells],
        "boundary_ratio_at_mmax": ratio,
        "fitted_slope": fitted,
        "slope_root": {"lo": root.lo, "hi": root.hi, "decimal": repr(float(alpha))},
        "ratio_deviation": None if ratio is None else abs(ratio - float(alpha)) / float(alpha),
        "contiguity_violations": scan.contiguity_violations()[:50],
        "bitmap": args.out_bitmap,
        "csv": args.out_csv,
    }
    out.emit_json(out.envelope("region", {"mmax": args.mmax}, payload, "exact"))
    return EXIT_POSITIVE


# -- bounds -----------------------------------------------------------------


def cmd_bounds(args, out: Output) -> int:
    if args.kl:
        if args.m is None or args.q is None:
            raise UsageError("--kl needs --m and --q")
        if args.m < args.q + 1:
            raise UsageError("need m >= q + 1")
        b = ht.kl_ratio_bound(args.m, args.q)
        payload = {
            "bound_abs_a_squared": b.value,
            "first_term": b.first_term,
            "ratio_term": b.ratio_term,
            "min_attained_by_first_term": b.min_is_first,
        }
        if b.min_is_first:
            payload["bound_abs_a"] = Fraction(args.m - args.q + 1, args.m + 1)
        out.emit_json(out.envelope("bounds kl", {"m": args.m, "q": args.q}, payload, "exact"))
        return EXIT_POSITIVE
    if args.n is None or args.m is None:
        raise UsageError("bounds needs --n and --m (or --kl --m --q)")
    mode = _mode(args.s, args.t)
    s, t = to_rational(_val(args.s)), to_rational(_val(args.t))
    params = SymbolParams(args.n, args.m, s, t)
    bb = ht.basis_vector_bound(params, K_scan=args.kscan)
    payload = {
        "basis_bound_abs_a_squared": bb.value,
        "attained_at_k": bb.argmin_k,
        "limit": bb.limit,
        "k0_term": bb.first,
        "scan_min": bb.scan_min,
        "scan_argmin": bb.scan_argmin,
        "K_scan": bb.K_scan,
    }
    if t == 0:
        payload["two_term_bound"] = ht.tzero_bound(args.n, args.m, s)
    inputs = {"n": args.n, "m": args.m, "s": args.s, "t": args.t}
    out.emit_json(out.envelope("bounds", inputs, payload, mode))
    return EXIT_POSITIVE


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="json")
    common.add_argument("--out", help="write the main output to this file")
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: $BERGMAN_HYPO_THREADS or CPU count)",
    )
    common.add_argument("--timing", action="store_true", help="add timing_ms to the JSON envelope")

    p = _Parser(prog="bergman-hypo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("seq", parents=[common], help="tabulate sigma, omega, delta")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--s", type=Num, default=Num("0"))
    sp.add_argument("--t", type=Num, default=Num("0"))
    sp.add_argument("--kmax", type=int, default=10)
    sp.set_defaults(func=cmd_seq)

    hp = sub.add_parser("hypo", parents=[common], help="hyponormality check / sweep / window")
    hp.add_argument("action", choices=["check", "sweep", "window"])
    hp.add_argument("--n", type=int, required=True)
    hp.add_argument("--m", type=int, required=True)
    hp.add_argument("--s", type=Num, default=Num("0"))
    hp.add_argument("--t", type=Num, default=None)
    hp.add_argument("--a", type=Num, default=None)
    hp.add_argument("--c", type=Num, default=None, help="coefficient rule a(t) = c/t")
    hp.add_argument("--K", type=int, default=ht.DEFAULT_K)
    hp.add_argument("--tol", type=Num, default=Num("1/1000"))
    hp.set_defaults(func=cmd_hypo)

    cp = sub.add_parser("comm", parents=[common], help="commutator of T_{z^m zbar^n}")
    cp.add_argument("action", choices=["norm", "classify", "halfbound"])
    cp.add_argument("--m", type=int, required=True)
    cp.add_argument("--n", type=int, required=True)
    cp.set_defaults(func=cmd_comm)

    rp = sub.add_parser("region", parents=[common], help="scan the (m, n) monotonicity region")
    rp.add_argument("--mmax", type=int, required=True)
    rp.add_argument("--out-bitmap", default=None)
    rp.add_argument("--out-csv", default=None)
    rp.set_defaults(func=cmd_region)

    bp = sub.add_parser("bounds", parents=[common], help="closed-form necessary bounds")
    bp.add_argument("--n", type=int)
    bp.add_argument("--m", type=int)
    bp.add_argument("--s", type=Num, default=Num("0"))
    bp.add_argument("--t", type=Num, default=Num("0"))
    bp.add_argument("--kl", action="store_true")
    bp.add_argument("--q", type=int)
    bp.add_argument("--kscan", type=int, default=4096)
    bp.set_defaults(func=cmd_bounds)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        env = os.environ.get("BERGMAN_HYPO_THREADS")
        args.threads = int(env) if env else (os.cpu_count() or 1)
    out = Output(args)
    try:
        return args.func(args, out)
    except (UsageError, ValueError, ModeError, TypeError) as e:
        print(f"bergman-hypo: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"bergman-hypo: io error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
