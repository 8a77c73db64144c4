"""Command-line interface: ``randsts {inspect,exact,sample,char,classes,verify}``.

Exit codes: 0 success, 1 internal error, 2 usage or parse error, 3 feasibility
gate exceeded, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import exactdist, verify
from .characters import mn_character
from .exactdist import HR, FeasibilityError, Standard
from .montecarlo import ExperimentConfig, run_experiment
from .partitions import format_partition, largest_classes, max_parts_for_exponent, parse_partition
from .permcore import CycleSyntaxError, PermutationError, parse_cycles
from .surface import analyze

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_GATE, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _approx(x) -> str:
    return f"≈{float(x):.6g}"


def _row(*cells) -> str:
    return ",".join(str(c) for c in cells)


def _partition_arg(text: str) -> tuple:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _perm(text: str, n: int, flag: str):
    try:
        return parse_cycles(text, n)
    except CycleSyntaxError as exc:
        raise UsageError(f"{flag}: {exc}\n  {exc.caret().replace(chr(10), chr(10) + '  ')}") from None
    except PermutationError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def cmd_inspect(args) -> int:
    sigma = _perm(args.sigma, args.n, "--sigma")
    tau = _perm(args.tau, args.n, "--tau")
    rep = analyze(sigma, tau)
    if args.json:
        print(rep.to_json(indent=2))
        return EXIT_OK
    d = rep.to_dict()
    print(f"squares         {rep.n}")
    print(f"sigma           {d['sigma'] or '()'}")
    print(f"tau             {d['tau'] or '()'}")
    print(f"commutator      {d['commutator'] or '()'}")
    print(f"vertex profile  {d['vertex_profile']}  ({rep.vertex_count} vertices)")
    print(f"connected       {'yes' if rep.connected else 'no'} ({len(rep.components)} components)")
    print(f"genus           {rep.genus}")
    if not rep.connected:
        for (ni, vi, gi), comp in zip(rep.per_component, rep.components):
            print(f"  component {format_partition(comp)}: n={ni} V={vi} genus={gi}")
    print(f"stratum         H({d['stratum'] if rep.stratum.orders else ''}) "
          f"with {rep.stratum.marked_points} marked points")
    print(f"cylinders       {len(rep.cylinders)}")
    for c in rep.cylinders:
        print(f"  squares {list(c.squares)} circumference {c.circumference} height {c.height}")
    label = {"H": "holonomy torus", "V": "visibility (certified)", "U": "undetermined"}
    print(f"holonomy        {rep.holonomy.value} ({label[rep.holonomy.value]})")
    return EXIT_OK


def _exact_model(args):
    if args.model == "hr":
        if args.mu is None:
            raise UsageError("--model hr needs --mu")
        if sum(args.mu) != args.n:
            raise UsageError(f"--mu {format_partition(args.mu)} is not a partition of n={args.n}")
        return HR(args.mu)
    if args.mu is not None:
        raise UsageError("--mu only applies to --model hr")
    return Standard()


def cmd_exact(args) -> int:
    model = _exact_model(args)
    n = args.n
    if n > exactdist.MAX_EXACT_N:
        raise FeasibilityError(
            "MAX_EXACT_N", f"exact pipelines support n <= {exactdist.MAX_EXACT_N}, got n={n}"
        )
    stat = args.stat
    if stat == "classdist":
        dist = exactdist.commutator_class_distribution(model, n)
        print("class,mass,approx")
        for g, p in dist.items():
            print(_row(format_partition(g), p, _approx(p)))
    elif stat == "vertices":
        pgf = exactdist.vertex_count_pgf(model, n)
        print("vertices,probability,approx")
        for x, p in enumerate(pgf.coefficients):
            if p:
                print(_row(x, p, _approx(p)))
    elif stat == "tv":
        tv = exactdist.tv_distance(
            exactdist.commutator_class_distribution(model, n), exactdist.uniform_an_distribution(n)
        )
        print("statistic,value,approx")
        print(_row("tv", tv, _approx(tv)))
    elif stat == "bounds":
        dist = exactdist.commutator_class_distribution(model, n)
        tv = exactdist.tv_distance(dist, exactdist.uniform_an_distribution(n))
        rows = [("tv", tv), ("tv_squared", tv * tv)]
        if n >= 2:
            rows.append(("l2_discrepancy", exactdist.l2_discrepancy(model, n)))
        if isinstance(model, HR):
            if n >= 5:
                rows.append(("tv_squared_upper_bound", exactdist.tv_upper_bound(model.mu)))
            pgf = exactdist.vertex_count_pgf(model)
            for t in range(1, n + 1):
                rows.append((f"tail_ge_{t}", pgf.tail(t)))
                rows.append((f"tail_bound_ge_{t}", exactdist.tail_bound(model.mu, t)))
        print("statistic,value,approx")
        for name, v in rows:
            print(_row(name, v, _approx(v)))
    elif stat == "moments":
        pgf = exactdist.vertex_count_pgf(model, n)
        ref = exactdist.uniform_an_cycle_pgf(n)
        mean, var = pgf.mean(), pgf.variance()
        rows = [
            ("vertices_mean", mean),
            ("vertices_variance", var),
            ("genus_mean", Fraction(n, 2) - mean / 2 + 1),
            ("genus_variance", var / 4),
            ("uniform_an_cycles_mean", ref.mean()),
            ("uniform_an_cycles_variance", ref.variance()),
        ]
        print("statistic,value,approx")
        for name, v in rows:
            print(_row(name, v, _approx(v)))
    return EXIT_OK


def _parse_alpha(text: str) -> tuple:
    num, _, den = text.partition("/")
    try:
        return int(num), int(den or 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"alpha must be a rational a/b, got {text!r}") from None


def cmd_sample(args) -> int:
    n = args.n
    mu = max_parts = None
    if args.model == "standard":
        if args.mu is not None or args.mu_max_parts is not None or args.alpha is not None:
            raise UsageError("--mu/--mu-max-parts/--alpha only apply to --model hr")
        model = "standard"
    else:
        given = sum(x is not None for x in (args.mu, args.mu_max_parts, args.alpha))
        if given != 1:
            raise UsageError("--model hr needs exactly one of --mu, --mu-max-parts, --alpha")
        if args.mu is not None:
            model, mu = "hr", args.mu
        else:
            model = "hr_random"
            max_parts = args.mu_max_parts
            if args.alpha is not None:
                max_parts = max(1, max_parts_for_exponent(n, *args.alpha))
    try:
        config = ExperimentConfig(
            model=model, n=n, trials=args.trials, seed=args.seed, mu=mu, max_parts=max_parts,
            workers=args.workers, csv_path=args.out, summary_path=args.summary,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = run_experiment(config)
    print(json.dumps(summary.to_json_dict(), indent=2))
    return EXIT_OK


def cmd_char(args) -> int:
    if sum(args.lam) != sum(args.mu):
        raise UsageError(
            f"size mismatch: |lambda|={sum(args.lam)}, |mu|={sum(args.mu)}"
        )
    if sum(args.mu) > exactdist.MAX_EXACT_N:
        raise FeasibilityError("MAX_EXACT_N", f"character queries support n <= {exactdist.MAX_EXACT_N}")
    print(mn_character(args.lam, args.mu))
    return EXIT_OK


def cmd_classes(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    rows = largest_classes(args.n, args.top if args.top is not None else 10**9)
    print("class,size")
    for mu, size in rows:
        print(_row(format_partition(mu), size))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    failed = 0
    for name in names:
        for check in verify.run_suite(name, args.max_n):
            if check.ok:
                print(f"PASS  {check.name}")
            else:
                failed += 1
                print(f"FAIL  {check.name}: {check.detail}")
    print(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="randsts", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("inspect", help="topology and geometry of one surface S(sigma, tau)")
    s.add_argument("--n", type=int, required=True, help="number of squares")
    s.add_argument("--sigma", required=True, help='horizontal gluing, cycle notation, e.g. "(1,2)(3,4,5)"')
    s.add_argument("--tau", required=True, help="vertical gluing, cycle notation")
    s.add_argument("--json", action="store_true", help="emit the SurfaceReport JSON")
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("exact", help="exact distributions and bounds from characters")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--model", choices=("hr", "standard"), required=True)
    s.add_argument("--mu", type=_partition_arg, help="class of sigma for --model hr, dot notation")
    s.add_argument("--stat", choices=("classdist", "vertices", "tv", "bounds", "moments"), required=True)
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("sample", help="seeded Monte Carlo experiment")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--model", choices=("hr", "standard"), required=True)
    s.add_argument("--mu", type=_partition_arg, help="fixed class of sigma (dot notation)")
    s.add_argument("--mu-max-parts", type=int, help="resample mu uniformly with at most this many parts")
    s.add_argument("--alpha", type=_parse_alpha, help="like --mu-max-parts with k = floor(n^alpha), alpha = a/b")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True, help="CSV path for per-trial records")
    s.add_argument("--summary", help="JSON path for the summary")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("char", help="irreducible character value chi^lambda(mu)")
    s.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    s.add_argument("--mu", type=_partition_arg, required=True)
    s.set_defaults(func=cmd_char)

    s = sub.add_parser("classes", help="conjugacy classes of S_n by size")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--top", type=int, help="only the K largest")
    s.set_defaults(func=cmd_classes)

    s = sub.add_parser("verify", help="run an invariant suite")
    s.add_argument("--suite", choices=verify.SUITES + ("all",), required=True)
    s.add_argument("--max-n", type=int, help="largest n checked (suite-specific default)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"randsts {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FeasibilityError as exc:
        print(f"randsts {args.command}: feasibility gate exceeded: {exc}", file=sys.stderr)
        return EXIT_GATE
    except OSError as exc:
        print(f"randsts {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"randsts {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
