"""Command-line interface.

Exit codes: 0 success, 1 numerical check failure, 2 usage or hypothesis
violation.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import os
import sys
from concurrent.futures import ThreadPoolExecutor


from . import __version__
from ._errors import ConvergenceError, HypothesisError
from .cauchy import TwoPointContext, scaled_cauchy
from .kernel import KernelEvaluator, scaled_kernel
from .limits import cauchy_limit, sinc_kernel
from .oracle import MAX_BRUTE_N, brute_ratio_average, mcmc_ratio_average
from .orthopoly import load_weight_spec, recurrence
from .ratios import RatioQuery, limit_ratio_average, ratio_average, scaled_ratio_average
from .report import ConvergenceReport, ConvergenceRow, fmt, spec_digest

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
ORACLE_RTOL = 1e-7


class UsageError(Exception):
    pass


def parse_complex(token):
    tok = token.strip().replace(" ", "").replace("−", "-").replace("i", "j")
    if not tok:
        raise UsageError("empty number")
    try:
        return complex(tok)
    except ValueError:
        raise UsageError(f"cannot parse {token!r} as a complex number (use re+imj)") from None


def parse_list(text):
    return [parse_complex(t) for t in text.split(",") if t.strip()]


def _label(z):
    z = complex(z)
    return f"{z.real:g}" if z.imag == 0 else f"{z.real:g}{z.imag:+g}i"


def parse_pairs(text):
    pairs = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        vals = parse_list(chunk)
        if len(vals) != 2:
            raise UsageError(f"pair {chunk!r} must have exactly two entries a,b")
        pairs.append(tuple(vals))
    return pairs


def parse_ints(text):
    try:
        vals = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise UsageError(f"--n-list must be comma-separated integers, got {text!r}") from None
    if not vals or vals[0] < 1:
        raise UsageError("--n-list needs positive integers")
    return vals


def _load_spec(path):
    try:
        return load_weight_spec(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot load weight spec {path!r}: {exc}") from None


def _query(args):
    if args.alphas is None or args.betas is None:
        raise UsageError("--alphas and --betas are required")
    return RatioQuery(tuple(parse_list(args.alphas)), tuple(parse_list(args.betas)))


def _threads():
    try:
        return max(1, int(os.environ.get("OPKE_THREADS", "1")))
    except ValueError:
        return 1


def _print(*parts, file=None):
    print(*parts, file=file or sys.stdout)


def cmd_recurrence(args):
    spec = _load_spec(args.spec)
    _print("k,a_k,b_k,gamma_k")
    if args.n == 0:
        return EXIT_OK
    rec = recurrence(spec, args.n)
    gam = rec.gammas()
    for k in range(1, args.n + 1):
        _print(f"{k},{fmt(rec.a[k - 1])},{fmt(rec.b[k - 1])},{fmt(gam[k])}")
    return EXIT_OK


def _context(spec, n, tol):
    return TwoPointContext.for_spec(spec, n, tol=tol)


def cmd_ratio(args):
    spec = _load_spec(args.spec)
    q = _query(args)
    if not 1 <= q.k <= args.n:
        raise HypothesisError(f"need 1 ≤ k ≤ n (got k={q.k}, n={args.n})")
    val = ratio_average(_context(spec, args.n, args.tol), q)
    _print(f"{val.real + 0.0:.12f} {val.imag + 0.0:.12f}")
    return EXIT_OK


def cmd_oracle(args):
    if args.n > MAX_BRUTE_N:
        raise HypothesisError(f"brute-force oracle supports n ≤ {MAX_BRUTE_N} (cost guard)")
    spec = _load_spec(args.spec)
    q = _query(args)
    if not 1 <= q.k <= args.n:
        raise HypothesisError(f"need 1 ≤ k ≤ n (got k={q.k}, n={args.n})")
    formula = ratio_average(_context(spec, args.n, args.tol), q)
    brute = brute_ratio_average(spec, args.n, q, args.m)
    disc = abs(formula - brute) / max(abs(brute), 1e-300)
    _print(f"formula {fmt(formula.real)} {fmt(formula.imag)}")
    _print(f"brute   {fmt(brute.real)} {fmt(brute.imag)}")
    _print(f"relative_discrepancy {fmt(disc)}")
    if args.steps:
        est, err = mcmc_ratio_average(spec, args.n, q, args.steps, args.seed)
        _print(f"mcmc    {fmt(est.real)} {fmt(est.imag)} stderr {fmt(err)}")
    return EXIT_OK if disc <= ORACLE_RTOL else EXIT_CHECK


def _run_rows(tasks):
    """Evaluate ``tasks`` (callables returning rows); stop at the first failure."""
    rows = []
    failure = None
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        futures = [pool.submit(t) for t in tasks]
        for fut in futures:
            if failure is not None:
                fut.cancel()
                continue
            try:
                rows.append(fut.result())
            except (ConvergenceError, ValueError, ArithmeticError) as exc:
                failure = exc
    return rows, failure


def _emit(report, args, failure):
    report.complete = failure is None
    text = report.to_text()
    if args.out:
        report.write(args.out)
        _print(report.summary())
    else:
        sys.stdout.write(text)
        print(report.summary(), file=sys.stderr)
    if failure is not None:
        print(f"error: row failed, report marked incomplete: {failure}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _metadata(spec, args, **extra):
    meta = {
        "spec": f"{spec.family} params={list(spec.params)} support={list(spec.support)}",
        "spec_sha256": spec_digest(spec),
        "x": repr(float(args.x)),
    }
    meta.update(extra)
    meta["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    meta["version"] = __version__
    return meta


def _query_text(q):
    return "alphas=" + ";".join(map(_label, q.alphas)) + " betas=" + ";".join(map(_label, q.betas))


def cmd_converge(args):
    spec = _load_spec(args.spec)
    q = _query(args)
    if not q.alphas_real():
        raise HypothesisError("the scaled limit needs real alphas")
    ns = parse_ints(args.n_list)
    if q.k > ns[0]:
        raise HypothesisError(f"need 1 ≤ k ≤ n (got k={q.k}, smallest n={ns[0]})")
    limit = limit_ratio_average(q)

    def task(n):
        return lambda: ConvergenceRow(
            f"k={q.k}", n, scaled_ratio_average(_context(spec, n, args.tol), args.x, q), limit
        )

    rows, failure = _run_rows([task(n) for n in ns])
    report = ConvergenceReport("converge", _metadata(spec, args, query=_query_text(q)), rows)
    return _emit(report, args, failure)


def cmd_cauchy_converge(args):
    spec = _load_spec(args.spec)
    q = _query(args)
    if not q.alphas_real():
        raise HypothesisError("the scaled limit needs real alphas")
    ns = parse_ints(args.n_list)
    tasks = []
    for a, b in zip(q.alphas, q.betas):
        lim = cauchy_limit(a.real, b)
        for n in ns:
            tasks.append(
                lambda n=n, a=a, b=b, lim=lim: ConvergenceRow(
                    f"alpha={a.real:g};beta={_label(b)}",
                    n,
                    scaled_cauchy(_context(spec, n, args.tol), args.x, a.real, b),
                    lim,
                )
            )
    rows, failure = _run_rows(tasks)
    report = ConvergenceReport("cauchy-converge", _metadata(spec, args, query=_query_text(q)), rows)
    return _emit(report, args, failure)


def cmd_kernel_converge(args):
    spec = _load_spec(args.spec)
    pairs = parse_pairs(args.pairs)
    if not pairs:
        raise UsageError("--pairs needs at least one a,b pair")
    ns = parse_ints(args.n_list)
    tasks = []
    for a, b in pairs:
        lim = sinc_kernel(a, b)
        for n in ns:
            tasks.append(
                lambda n=n, a=a, b=b, lim=lim: ConvergenceRow(
                    f"a={_label(a)};b={_label(b)}",
                    n,
                    scaled_kernel(KernelEvaluator.for_spec(spec, n), args.x, a, b),
                    lim,
                )
            )
    rows, failure = _run_rows(tasks)
    pairs_text = ";".join(f"{_label(a)},{_label(b)}" for a, b in pairs)
    report = ConvergenceReport("kernel-converge", _metadata(spec, args, pairs=pairs_text), rows)
    return _emit(report, args, failure)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="opke",
        description="Ratios of random characteristic polynomials for orthogonal polynomial ensembles.",
    )
    parser.add_argument("--version", action="version", version=f"opke {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_x=False):
        p.add_argument("--spec", required=True, help="weight-spec file (key=value lines)")
        p.add_argument("--tol", type=float, default=1e-13,
                       help="tolerance for Stieltjes transforms without closed form")
        if need_x:
            p.add_argument("--x", type=float, required=True, help="bulk point")
            p.add_argument("--n-list", required=True, help="comma-separated sizes")
            p.add_argument("--out", help="report file (default: stdout)")

    p = sub.add_parser("recurrence", help="print recurrence coefficients")
    common(p)
    p.add_argument("--n", type=int, required=True, help="depth N")
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("ratio", help="evaluate the determinantal ratio average")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphas", required=True)
    p.add_argument("--betas", required=True)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("oracle", help="compare the formula with brute-force quadrature")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphas", required=True)
    p.add_argument("--betas", required=True)
    p.add_argument("--m", type=int, default=80, help="Gauss nodes per axis")
    p.add_argument("--steps", type=int, default=0, help="also run MCMC with this many steps")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("converge", help="scaled ratio averages versus the universal limit")
    common(p, need_x=True)
    p.add_argument("--alphas", required=True)
    p.add_argument("--betas", required=True)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("cauchy-converge", help="scaled Cauchy transform versus its limit")
    common(p, need_x=True)
    p.add_argument("--alphas", required=True)
    p.add_argument("--betas", required=True)
    p.set_defaults(func=cmd_cauchy_converge)

    p = sub.add_parser("kernel-converge", help="scaled kernel versus the sine kernel")
    common(p, need_x=True)
    p.add_argument("--pairs", required=True, help="a,b pairs separated by ';'")
    p.set_defaults(func=cmd_kernel_converge)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HypothesisError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
