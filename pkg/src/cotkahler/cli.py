"""Command line entry point: ``cotkahler verify`` and ``cotkahler list-scenarios``."""
import argparse
import os
import sys

from . import harness as hs


def _tolerance(s):
    name, _, value = s.partition("=")
    if not value:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {s!r}")
    return name.strip(), float(value)


def _expectation(s):
    suite, _, mode = s.partition("=")
    if not mode:
        raise argparse.ArgumentTypeError(f"expected SUITE=MODE, got {s!r}")
    return suite.strip(), mode.strip()


def build_parser():
    ap = argparse.ArgumentParser(prog="cotkahler", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and write a report")
    v.add_argument("--config", help="INI file with one [section] per scenario")
    v.add_argument("--scenario", action="append", default=[],
                   help="built-in scenario name (repeatable); 'all' runs every one")
    v.add_argument("--n", type=int)
    v.add_argument("--c", type=float)
    v.add_argument("--case", help="case1, case2, case3, flat or custom")
    v.add_argument("--B", type=float)
    v.add_argument("--k", type=float)
    v.add_argument("--a1", help="expression in t for a custom a1")
    v.add_argument("--lambda", dest="lam", help="expression in t for lambda")
    v.add_argument("--b1-offset")
    v.add_argument("--mu-offset")
    v.add_argument("--t-range", nargs=2, type=float, metavar=("LO", "HI"))
    v.add_argument("--samples", type=int)
    v.add_argument("--oracle-samples", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--suites", help="comma separated subset of: " + ", ".join(hs.SUITES))
    v.add_argument("--tol", type=_tolerance, action="append", default=[], metavar="NAME=VALUE")
    v.add_argument("--expect", type=_expectation, action="append", default=[], metavar="SUITE=MODE")
    v.add_argument("--k-hol", type=float)
    v.add_argument("--report", help="JSON report path (default: $COTKAHLER_REPORT)")
    v.add_argument("--csv", help="optional flat CSV export of all residuals")
    v.add_argument("--quiet", action="store_true")

    sub.add_parser("list-scenarios", help="print the built-in scenarios")
    return ap


def _adhoc(args, env):
    m = {"n": args.n, "c": args.c if args.c is not None else 0.0}
    for key, val in (("case", args.case), ("B", args.B), ("k", args.k), ("a1", args.a1),
                     ("lambda", args.lam), ("b1_offset", args.b1_offset),
                     ("mu_offset", args.mu_offset), ("samples", args.samples),
                     ("oracle_samples", args.oracle_samples), ("seed", args.seed),
                     ("suites", args.suites), ("k_hol", args.k_hol)):
        if val is not None:
            m[key] = val
    if args.t_range:
        m["t_range"] = f"{args.t_range[0]}, {args.t_range[1]}"
    elif str(args.case).lower() in ("case3", "3"):
        m["t_range"] = "0.1, 1.5"
    for name, value in args.tol:
        m[f"tol.{name}"] = value
    for suite, mode in args.expect:
        m[f"expect.{suite}"] = mode
    return hs.scenario_from_mapping("cli", m, env)


def _override(cfg, args, env):
    """Command-line flags win over config-file and built-in values."""
    changes = {}
    if args.samples is not None:
        changes["samples"] = args.samples
    if args.oracle_samples is not None:
        changes["oracle_samples"] = args.oracle_samples
    if args.seed is not None:
        changes["seed"] = args.seed
    elif hs.ENV_SEED in env:
        changes["seed"] = int(env[hs.ENV_SEED])
    if args.suites:
        changes["suites"] = tuple(s.strip() for s in args.suites.split(",") if s.strip())
    if args.tol:
        changes["tolerances"] = {**cfg.tolerances, **dict(args.tol)}
    if args.expect:
        changes["expect"] = {**cfg.expect, **dict(args.expect)}
    if args.t_range:
        changes["t_range"] = tuple(args.t_range)
    return hs.replace(cfg, **changes) if changes else cfg


def collect_scenarios(args, env):
    if args.config:
        cfgs = hs.load_config(args.config, env)
    elif args.scenario:
        builtin = {c.name: c for c in hs.default_scenarios()}
        names = list(builtin) if "all" in args.scenario else args.scenario
        missing = [nm for nm in names if nm not in builtin]
        if missing:
            raise ValueError(f"unknown scenario(s): {', '.join(missing)}")
        cfgs = [builtin[nm] for nm in names]
    elif args.n is not None:
        return [_adhoc(args, env)]
    else:
        cfgs = hs.default_scenarios()
    return [_override(c, args, env) for c in cfgs]


def main(argv=None, env=None, out=None):
    env = os.environ if env is None else env
    out = sys.stdout if out is None else out
    ap = build_parser()
    args = ap.parse_args(argv)

    if args.command == "list-scenarios":
        for cfg in hs.default_scenarios():
            expect = ", ".join(f"{k}={v}" for k, v in sorted(cfg.expect.items())) or "-"
            print(f"{cfg.name:20} n={cfg.n} c={cfg.c:g} suites={','.join(cfg.suites)} "
                  f"expect={expect}", file=out)
        return 0

    try:
        cfgs = collect_scenarios(args, env)
    except (ValueError, KeyError, OSError) as exc:
        print(f"cotkahler: configuration error: {exc}", file=sys.stderr)
        return 2

    reports = []
    for cfg in cfgs:
        rep = hs.run_scenario(cfg)
        reports.append(rep)
        if not args.quiet:
            for line in rep.lines():
                print(line, file=out)

    path = args.report or hs.report_path_from_env(env=env)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(hs.reports_to_json(reports))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(hs.reports_to_csv(reports))
    ok = all(r.passed for r in reports)
    print(f"overall: {'pass' if ok else 'fail'} ({len(reports)} scenario(s))", file=out)
    return 0 if ok else 1


def main_entry():
    sys.exit(main())
