"""kummer-cert command line.

Data goes to standard output or files; diagnostics go to standard error.
Exit codes: 0 success, 1 verification failure, 2 no certificate found,
3 invalid input, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import certio
from .catalog import find_entry, load_catalog
from .curve import count_points, new_curve, splitting_degree, weierstrass_points
from .errors import BudgetExceeded, KummerError, NotFound, ValidationError
from .field import build_ambient
from .kummer import certify_kummer_point, to_kummer
from .runs import jacobian_stats, read_verify, run_cover, run_probe
from .search import MIN_TRACE_LENGTH, find_certificate, session_field, threads_from_env, verify_certificate
from .jacobian import zeta_data

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_NOT_FOUND = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _curve(args):
    if args.p is not None or args.f is not None:
        if args.p is None or args.f is None:
            raise ValidationError("--p and --f must be given together")
        return new_curve(args.p, args.f, args.label or f"p{args.p}")
    entries, rejected = load_catalog(args.catalog, skip_invalid=True)
    for exc in rejected:
        print(f"catalog: {exc}", file=sys.stderr)
    return find_entry(entries, args.curve).curve()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- subcommands --

def cmd_info(args) -> int:
    C = _curve(args)
    d = splitting_degree(C)
    F = build_ambient(C.p, d)
    obj = {
        "label": C.label,
        "p": C.p,
        "f": list(C.f),
        "genus": 2,
        "curve": str(C),
        "splitting_degree": d,
        "splitting_modulus": list(F.modulus),
        "weierstrass_points": [certio.point_obj(P) for P in weierstrass_points(C, F)],
    }
    _emit(certio.dumps_pretty(obj), args.out)
    return EXIT_OK


def cmd_count(args) -> int:
    C = _curve(args)
    rows = []
    ok = True
    for m in args.m:
        N = count_points(C, m)
        bound = 4 * C.p ** (m / 2)
        within = abs(N - C.p**m - 1) <= bound
        ok &= within
        rows.append({"m": m, "N": N, "weil_bound": round(bound, 6), "within_weil_bound": within})
    _emit(certio.dumps_pretty({"label": C.label, "p": C.p, "counts": rows}), args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_zeta(args) -> int:
    C = _curve(args)
    obj = {"label": C.label, **zeta_data(C).as_dict()}
    _emit(certio.dumps_pretty(obj), args.out)
    return EXIT_OK


def cmd_jac_enumerate(args) -> int:
    C = _curve(args)
    stats = jacobian_stats(C, samples=args.samples, seed=args.seed)
    _emit(certio.dumps_pretty(stats), args.out)
    laws = ("match", "identity_law", "inverse_law", "associativity", "commutativity")
    return EXIT_OK if all(stats[k] for k in laws) else EXIT_VERIFY


def cmd_certify(args) -> int:
    C = _curve(args)
    F = session_field(C, args.m, args.n)
    x = certio.parse_divisor_text(C, F, args.x)
    cert = find_certificate(C, x, n=args.n, m=args.m, relaxed=args.relaxed, workers=args.threads)
    report = verify_certificate(C, cert)
    lines = [certio.header_obj(C, F), certio.cert_obj(cert, report)]
    _emit("".join(certio.dumps(o) + "\n" for o in lines), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_kummer_certify(args) -> int:
    C = _curve(args)
    F = session_field(C, args.m, args.n)
    s = to_kummer(C, certio.parse_divisor_text(C, F, args.x))
    kc = certify_kummer_point(C, s, n=args.n, m=args.m, relaxed=args.relaxed, workers=args.threads)
    if kc.notice:
        print(kc.notice, file=sys.stderr)
    lines = [certio.header_obj(C, F), certio.kummer_obj(kc, kc.report)]
    _emit("".join(certio.dumps(o) + "\n" for o in lines), args.out)
    ok = kc.report is None or kc.report.passed
    ok &= kc.sigma_check != "fail" and kc.two_torsion_check != "fail"
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    results = read_verify(args.file)
    _emit("".join(certio.dumps(r) + "\n" for r in results), args.out)
    bad = [r["index"] for r in results if not (r["passed"] and r.get("roundtrip", False))]
    if bad:
        print(f"verification failed for certificate(s) {bad}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_cover(args) -> int:
    C = _curve(args)
    report, obj, _ = run_cover(C, args.m, args.n, args.relaxed, args.threads, args.out_dir)
    if args.out_dir is None:
        sys.stdout.write(certio.dumps_pretty(obj))
    print(
        f"{C.label}: certified {report.certified}/{report.total} with n = {args.n} "
        f"in {report.wall_time:.1f}s",
        file=sys.stderr,
    )
    return EXIT_OK if obj["all_certificates_pass"] else EXIT_VERIFY


def cmd_probe(args) -> int:
    f = args.f if args.f is not None else [1, 0, 0, 0, 0, 1]
    table = run_probe(f, args.q_grid, args.n_grid, args.m, args.relaxed, args.threads, args.out_dir)
    if args.out_dir is None:
        sys.stdout.write(certio.dumps_pretty(table))
    if table["finding"] == "threshold-not-reached":
        print("threshold not reached: no (q, n) cell attained full coverage", file=sys.stderr)
    return EXIT_OK


# -- parser --

def _curve_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    g = parent.add_argument_group("curve selection")
    g.add_argument("--catalog", help="catalog JSON file (default: bundled catalog)")
    g.add_argument("--curve", default="k7a", help="catalog label (default: k7a)")
    g.add_argument("--p", type=int, help="characteristic, with --f instead of a catalog label")
    g.add_argument("--f", type=_int_list, help="ascending coefficients of the monic quintic, e.g. 1,0,0,0,0,1")
    g.add_argument("--label", help="label for a curve given by --p/--f")
    parent.add_argument("--out", help="write the primary output here instead of standard output")
    parent.add_argument("--threads", type=int, default=None, help="worker processes (default: KUMMER_THREADS or 1)")
    return parent


def _search_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, default=1, help="base field degree (default 1)")
    p.add_argument("--n", type=int, default=MIN_TRACE_LENGTH, help="closed-point degree (default 5)")
    p.add_argument("--relaxed", action="store_true", help="allow n < 5 and orbits shorter than n")


def build_parser() -> argparse.ArgumentParser:
    common = _curve_options()
    parser = argparse.ArgumentParser(prog="kummer-cert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common], help="validate a curve and list Weierstrass points").set_defaults(
        func=cmd_info
    )
    p = sub.add_parser("count", parents=[common], help="point counts with the Weil bound check")
    p.add_argument("--m", type=_int_list, default=[1, 2, 3], help="extension degrees (default 1,2,3)")
    p.set_defaults(func=cmd_count)
    sub.add_parser("zeta", parents=[common], help="L-polynomial, group order, Newton polygon").set_defaults(
        func=cmd_zeta
    )

    jac = sub.add_parser("jac", help="Jacobian group utilities")
    jsub = jac.add_subparsers(dest="jac_command", required=True)
    p = jsub.add_parser("enumerate", parents=[common], help="enumerate J(GF(p)) and spot-check the group law")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_jac_enumerate)

    p = sub.add_parser("certify", parents=[common], help="certificate for one Jacobian class")
    p.add_argument("--x", required=True, help="divisor as 'u;v'")
    _search_options(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="re-verify a certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cover", parents=[common], help="coverage report over J(GF(p^m))")
    _search_options(p)
    p.add_argument("--out-dir", help="directory for report, certificates and metadata")
    p.set_defaults(func=cmd_cover)

    km = sub.add_parser("kummer", help="Kummer surface certificates")
    ksub = km.add_subparsers(dest="kummer_command", required=True)
    p = ksub.add_parser("certify", parents=[common], help="rational-curve certificate for a Kummer point")
    p.add_argument("--x", required=True, help="a lift of the Kummer point, as 'u;v'")
    _search_options(p)
    p.set_defaults(func=cmd_kummer_certify)

    p = sub.add_parser("probe", parents=[common], help="coverage table over a (q, n) grid")
    p.add_argument("--q-grid", type=_int_list, default=[7, 11, 13])
    p.add_argument("--n-grid", type=_int_list, default=[5, 6, 7])
    _search_options(p)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads is None:
            args.threads = threads_from_env()
        elif args.threads < 1:
            raise ValidationError("--threads must be positive")
        return args.func(args)
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValidationError as exc:
        print(f"invalid input ({exc.code}): {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KummerError as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
