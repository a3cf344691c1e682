"""Command-line front end; every command writes CSV.

Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from . import figures
from .oracle import MAX_FIDELITY_M, MAX_FIDELITY_N, sample_instrument
from .purifiers import (
    fidelity_max,
    fidelity_one_max_inf,
    fidelity_one_max_zero,
)
from .states import make_noise, weight_table
from .verification import run_checks

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"qpurify: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _parse_lambdas(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _check_lambda(parser, flag: str, lam: float, allow_one: bool = False) -> None:
    ok = 0 < lam < 1 or (allow_one and lam == 1)
    if not ok:
        bound = "(0, 1]" if allow_one else "(0, 1)"
        parser.error(f"argument {flag}: lambda must lie in {bound}, got {lam:g}")


def _positive(parser, flag: str, value) -> None:
    if value is not None and value < 1:
        parser.error(f"argument {flag}: must be >= 1, got {value}")


def cmd_fidelity(args, parser) -> int:
    _check_lambda(parser, "--lambda", args.lam)
    _positive(parser, "--n", args.n)
    m = args.m.strip().lower()
    if m in ("inf", "infinity"):
        M = None
    else:
        try:
            M = int(m)
        except ValueError:
            parser.error(f"argument --m: expected a non-negative integer or 'inf', got {args.m!r}")
        if M < 0:
            parser.error(f"argument --m: must be >= 0, got {M}")
    if (M is None or M == 0) and args.criterion != "one":
        parser.error("argument --m: 0 and inf are only defined for --criterion one")

    noise = make_noise(lam=args.lam)
    if M == 0:
        if args.per_block:
            parser.error("argument --per-block: not available for --m 0")
        value = fidelity_one_max_zero(args.n, noise)
        return _emit(to_csv(["n", "m", "lambda", "criterion", "value"],
                            [[args.n, 0, args.lam, "one", value]]), args.out)

    report = fidelity_one_max_inf(args.n, noise) if M is None else fidelity_max(args.n, M, noise, args.criterion)
    m_label = "inf" if M is None else M
    if not args.per_block:
        return _emit(to_csv(["n", "m", "lambda", "criterion", "value"],
                            [[args.n, m_label, args.lam, args.criterion, report.value]]), args.out)
    rows = [
        [args.n, m_label, args.lam, args.criterion, t, w, f]
        for t, w, f in report.per_block
    ]
    total_w = math.fsum(w for _, w, _ in report.per_block)
    rows.append([args.n, m_label, args.lam, args.criterion, "total", total_w, report.value])
    header = ["n", "m", "lambda", "criterion", "two_s", "weight", "block_fidelity"]
    return _emit(to_csv(header, rows), args.out)


def cmd_curve(args, parser) -> int:
    fig = args.figure
    if fig == "fig2":
        lambdas = figures.FIG2_LAMBDAS if args.lambdas is None else _parse_lambdas(args.lambdas)
        if not lambdas:
            parser.error("argument --lambdas: empty list")
        for lam in lambdas:
            _check_lambda(parser, "--lambdas", lam, allow_one=True)
        if args.mu_max is not None and not args.mu_max > 0:
            parser.error(f"argument --mu-max: must be > 0, got {args.mu_max}")
        _positive(parser, "--points", args.points)
        header, rows = figures.fig2(lambdas, args.mu_max or 3.0, args.points or 300)
    else:
        _check_lambda(parser, "--lambda", args.lam)
        if fig == "fig1":
            _positive(parser, "--n-max", args.n_max)
            header, rows = figures.fig1(args.lam, args.n_max or 100)
        elif fig == "fig3":
            Ns = [10, 100, 1000] if args.ns is None else _parse_ints(args.ns)
            if not Ns or min(Ns) < 1:
                parser.error("argument --ns: need a list of positive integers")
            header, rows = figures.fig3(args.lam, Ns)
        else:
            if args.mu_max is not None and not args.mu_max > 0:
                parser.error(f"argument --mu-max: must be > 0, got {args.mu_max}")
            _positive(parser, "--points", args.points)
            header, rows = figures.fig4(args.lam, args.mu_max or 3.0, args.points or 200)
    return _emit(to_csv(header, rows), args.out)


def cmd_verify(args, parser) -> int:
    if not 1 <= args.max_n <= MAX_FIDELITY_N:
        parser.error(f"argument --max-n: must be in 1..{MAX_FIDELITY_N}, got {args.max_n}")
    if not 1 <= args.max_m <= MAX_FIDELITY_M:
        parser.error(f"argument --max-m: must be in 1..{MAX_FIDELITY_M}, got {args.max_m}")
    if not args.tol > 0:
        parser.error(f"argument --tol: must be > 0, got {args.tol}")
    lambdas = _parse_lambdas(args.lambdas)
    for lam in lambdas:
        _check_lambda(parser, "--lambdas", lam)
    results = run_checks(args.max_n, args.max_m, lambdas, args.tol)
    rows = [[r.name, r.residual, r.tolerance, "pass" if r.passed else "FAIL"] for r in results]
    code = _emit(to_csv(["check", "max_residual", "tolerance", "status"], rows), args.out)
    failed = sum(not r.passed for r in results)
    print(f"{len(results)} checks, {failed} failed", file=sys.stderr)
    if code != EXIT_OK:
        return code
    return EXIT_FAILED if failed else EXIT_OK


def cmd_sample(args, parser) -> int:
    _check_lambda(parser, "--lambda", args.lam)
    if not 1 <= args.n <= 2000:
        parser.error(f"argument --n: must be in 1..2000, got {args.n}")
    _positive(parser, "--count", args.count)
    noise = make_noise(lam=args.lam)
    hist = sample_instrument(args.n, noise, args.seed, args.count)
    weights = weight_table(args.n, noise).probabilities()
    rows = [
        [t, c, c / args.count, float(w)]
        for (t, c), w in zip(hist.items(), weights)
    ]
    return _emit(to_csv(["two_s", "count", "frequency", "weight"], rows), args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qpurify",
        description="Optimal purification of depolarized qubits.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fidelity", help="optimal fidelity F_max(N, M)")
    f.add_argument("--n", type=int, required=True, help="number of inputs N")
    f.add_argument("--m", required=True, help="number of outputs M (0 and inf allowed for --criterion one)")
    f.add_argument("--lambda", dest="lam", type=float, required=True)
    f.add_argument("--criterion", choices=["one", "all"], default="one")
    f.add_argument("--per-block", action="store_true", help="one row per spin block")
    f.add_argument("--out")
    f.set_defaults(handler=cmd_fidelity, subparser=f)

    c = sub.add_parser("curve", help="CSV data for the standard figures")
    c.add_argument("--figure", choices=["fig1", "fig2", "fig3", "fig4"], required=True)
    c.add_argument("--lambda", dest="lam", type=float, default=0.5)
    c.add_argument("--lambdas", help="fig2 only: comma-separated, default 0.1,...,1")
    c.add_argument("--n-max", type=int, help="fig1: largest N (default 100)")
    c.add_argument("--ns", help="fig3: comma-separated N values (default 10,100,1000)")
    c.add_argument("--mu-max", type=float, help="fig2/fig4: largest rate (default 3)")
    c.add_argument("--points", type=int, help="fig2/fig4: grid points")
    c.add_argument("--out")
    c.set_defaults(handler=cmd_curve, subparser=c)

    v = sub.add_parser("verify", help="check closed forms against the dense oracle")
    v.add_argument("--max-n", type=int, default=MAX_FIDELITY_N)
    v.add_argument("--max-m", type=int, default=MAX_FIDELITY_M)
    v.add_argument("--lambdas", default="0.3,0.5,0.9")
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--out")
    v.set_defaults(handler=cmd_verify, subparser=v)

    s = sub.add_parser("sample", help="sample the natural purifier's outcomes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(handler=cmd_sample, subparser=s)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args, args.subparser)


if __name__ == "__main__":
    sys.exit(main())
