"""Command-line front end: ``shiftdigits <command> ...``.

Exit codes: 0 success, 2 invalid usage or parameters, 3 a proven statement
failed (the witness is printed as JSON), 4 file I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import nullcontext

from . import identities as ids
from .config import ConfigurationError, get_config, load_config, override, set_config
from .digitmap import InvalidBaseError, InvalidInputError, b_mod, base_shift, digits
from .errors import InvalidParametersError, TheoremViolation
from .periodicity import NotPeriodicError, analyze, conjecture_scan
from .polyring import MultiPoly
from .pte import build_partition, certify, enumerate_solutions

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_IO = 0, 2, 3, 4

VERIFY_ALIASES = {"S_k": "S_k-vanishing", "convolutions": "convolution-forward"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def _int_range(text: str) -> list[int]:
    """'2-20', '2:20' or '2,3,5' -> list of ints (ranges inclusive)."""
    text = text.strip()
    if not text:
        return []
    for sep in ("-", ":"):
        if sep in text and "," not in text:
            lo, hi = text.split(sep, 1)
            return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",")]


def _p_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(","))


# -- commands -------------------------------------------------------------------

def cmd_map(args, out):
    M, N, n = args.base, args.target, args.n
    value = base_shift(n, M, N)
    _emit({"n": n, "M": M, "N": N, "B": value, "b": b_mod(n, M, N), "digits": list(digits(n, M))}, out)
    return EXIT_OK


def cmd_period(args, out):
    if args.M < 2 or args.N < 1:
        raise UsageError("period needs M >= 2 and N >= 1")
    rep = analyze(args.M, args.N)
    if not rep.periodic:
        _emit({"periodic": False}, out)
        return EXIT_OK
    _emit(rep.to_json(), out)
    if rep.theorem_violation:
        _emit({"theorem_violation": True, "witness": rep.to_json()}, sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_pte(args, out):
    if args.enumerate:
        sols = enumerate_solutions(args.M, args.p, workers=get_config().worker_count)
        if args.csv:
            for s in sols:
                out.write(f"# N={s.N}\n" + s.power_sums_csv())
        else:
            _emit({"M": args.M, "p": args.p, "count": len(sols), "solutions": [s.to_json() for s in sols]}, out)
        return EXIT_OK
    N = 1 if args.N is None else args.N
    sol = certify(build_partition(args.M, N, args.p))
    if args.csv:
        out.write(sol.power_sums_csv())
    else:
        _emit(sol.to_json(), out)
    return EXIT_OK


def _run_verify(identity, a):
    M, N = a.M, a.N
    if identity in ("fd-multi", "first-closed-form", "second-closed-form"):
        ps = _p_list(a.p)
    else:
        if "," in a.p:
            raise InvalidParametersError(f"{identity} takes a single p")
        ps = (int(a.p),)
    p = ps[0]
    u = MultiPoly.var("u")
    D = sum(q + 1 for q in ps)
    d = D if a.d is None else a.d
    table = {
        "G-multiplicity": lambda: ids.verify_G_multiplicity(p, M, N),
        "S_k-vanishing": lambda: ids.verify_S_k_vanishing(p, M, N, a.k),
        "convolution-forward": lambda: ids.verify_convolutions(p, M, N),
        "convolution-inverse": lambda: ids.verify_convolution_inverse(p, M, N),
        "moment-0": lambda: ids.verify_moment0(p, M, N),
        "moment-1": lambda: ids.verify_moment1(p, M, N),
        "fd-single": lambda: ids.verify_fd_single(p, M, N, u**d),
        "fd-multi": lambda: ids.verify_fd_multi(ps, M, N, u**d),
        "poly-vanishing": lambda: ids.verify_poly_vanishing(p, M, N, a.a, a.b),
        "S_pl-closed-form": lambda: ids.verify_S_closed_form(p, M, N),
        "first-closed-form": lambda: ids.verify_first_closed_form(ps, M, N),
        "second-closed-form": lambda: ids.verify_second_closed_form(ps, M, N),
    }
    res = table[identity]()
    return res if isinstance(res, list) else [res]


def _report_all(reports, out):
    failed = [r for r in reports if not r.verified]
    for r in reports:
        _emit(r.to_json(), out)
    if failed:
        _emit({"theorem_violation": True, "witness": [r.to_json() for r in failed]}, sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify(args, out):
    identity = VERIFY_ALIASES.get(args.identity, args.identity)
    if identity not in ids.IDENTITY_IDS:
        raise UsageError(f"unknown identity {args.identity!r}; choose from {', '.join(ids.IDENTITY_IDS)}")
    return _report_all(_run_verify(identity, args), out)


def cmd_verify_all(args, out):
    cfg = get_config()
    M_cap = args.M_cap if args.M_cap is not None else cfg.identity_M_cap
    p_cap = args.p_cap if args.p_cap is not None else cfg.p_cap
    r_cap = args.r_cap if args.r_cap is not None else cfg.r_cap
    failed = 0
    total = 0
    for r in ids.verify_all(M_cap, p_cap, r_cap, args.N_cap):
        total += 1
        _emit(r.to_json(), out)
        if not r.verified:
            failed += 1
            _emit({"theorem_violation": True, "witness": r.to_json()}, sys.stderr)
    _emit({"summary": True, "checks": total, "failed": failed}, out)
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_scan(args, out):
    Ms = _int_range(args.M_range)
    target = args.out or get_config().output_path
    with (open(target, "w", encoding="utf-8") if target else nullcontext(out)) as sink:
        report = conjecture_scan(Ms, args.N_limit, sink=sink, workers=get_config().worker_count)
    if target:
        _emit(report.summary(), out)
    if report.counterexamples:
        sys.stderr.write(f"COUNTEREXAMPLES FOUND: {report.summary()['counterexamples']}\n")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="shiftdigits", description="Base-shifting digit map toolkit.")
    ap.add_argument("--config", help="JSON config file (default: $SHIFTDIGITS_CONFIG)")
    ap.add_argument("--workers", type=int, help="worker processes for scans and enumeration")
    ap.add_argument("--sampled", action="store_true", help="check identities by exact evaluation on an integer grid")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("map", help="evaluate B_{M,N}(n)")
    s.add_argument("n", type=int)
    s.add_argument("--base", type=int, required=True, help="M, the base the digits are read in")
    s.add_argument("--target", type=int, required=True, help="N, the base the digits are evaluated in")
    s.set_defaults(func=cmd_map)

    s = sub.add_parser("period", help="periodicity report for b(n) = B_{M,N}(n) mod M")
    s.add_argument("M", type=int)
    s.add_argument("N", type=int)
    s.set_defaults(func=cmd_period)

    s = sub.add_parser("pte", help="equal power sum partition of [0, M^(p+1))")
    s.add_argument("M", type=int)
    s.add_argument("N", type=int, nargs="?")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--enumerate", action="store_true", help="one solution per N coprime to M")
    s.add_argument("--csv", action="store_true", help="print the power-sum table as CSV")
    s.set_defaults(func=cmd_pte)

    s = sub.add_parser("verify", help="check one identity exactly")
    s.add_argument("identity", help=f"one of {', '.join(ids.IDENTITY_IDS)} (aliases: S_k, convolutions)")
    s.add_argument("--p", required=True, help="p, or a comma list p1,p2,... for multi-sum identities")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--a", type=int, default=0)
    s.add_argument("--b", type=int, default=0)
    s.add_argument("--d", type=int, help="degree of f = u^d for the finite-difference identities")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("verify-all", help="check every identity over a parameter grid")
    s.add_argument("--M-cap", dest="M_cap", type=int)
    s.add_argument("--N-cap", dest="N_cap", type=int)
    s.add_argument("--p-cap", dest="p_cap", type=int)
    s.add_argument("--r-cap", dest="r_cap", type=int)
    s.set_defaults(func=cmd_verify_all)

    s = sub.add_parser("scan", help="compare conjectured and brute-force periods")
    s.add_argument("--M-range", dest="M_range", required=True, help="e.g. 2-20 or 4,8,9")
    s.add_argument("--N-limit", dest="N_limit", type=int, default=400)
    s.add_argument("--out", help="JSON-lines output file (default: stdout)")
    s.set_defaults(func=cmd_scan)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    previous = get_config()
    try:
        args = build_parser().parse_args(argv)
        set_config(load_config(args.config))
        changes = {}
        if args.workers is not None:
            changes["worker_count"] = args.workers
        if args.sampled:
            changes["mode"] = "sampled"
        with override(**changes):
            return args.func(args, out)
    except TheoremViolation as exc:
        _emit({"theorem_violation": True, "message": str(exc), "witness": exc.witness}, sys.stderr)
        return EXIT_VIOLATION
    except (UsageError, InvalidParametersError, InvalidInputError, InvalidBaseError,
            NotPeriodicError, ConfigurationError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_IO
    finally:
        set_config(previous)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
