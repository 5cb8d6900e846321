"""Command-line entry point: ``approxadd <command> --n N --k K --l L [options]``.

Exit codes: 0 success, 2 usage error, 3 invalid configuration, 4 a pattern or
oracle cap was exceeded, 5 output could not be written. Diagnostics go to
stderr only; data goes to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import serialize as ser
from .distribution import (
    DEFAULT_MAX_PATTERNS,
    PatternCapExceeded,
    count_patterns,
    enumerate_distribution,
    pattern_count_sequence,
)
from .error_rate import prefix_correct_probs
from .metrics import analytic_metrics, leading_one_histogram, metrics_from_distribution
from .model import ConfigError, Mode, validate_config
from .oracle import (
    DEFAULT_MAX_ORACLE_N,
    EmpiricalDistribution,
    OracleCapExceeded,
    exhaustive_distribution,
    monte_carlo_distribution,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_CAP = 4
EXIT_IO = 5

COMMANDS = ("analyze", "rate", "count", "oracle", "sample", "compare", "bars", "sweep")


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="adder width in bits")
    common.add_argument("--exact", action="store_true", help="exact dyadic probabilities")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--max-patterns", type=int, default=DEFAULT_MAX_PATTERNS, metavar="CAP")
    common.add_argument("--max-oracle-n", type=int, default=DEFAULT_MAX_ORACLE_N, metavar="CAP")
    common.add_argument("--samples", type=int, default=100_000, metavar="M")
    common.add_argument("--seed", type=int, default=0, metavar="S")

    kl = argparse.ArgumentParser(add_help=False)
    kl.add_argument("--k", type=int, required=True, help="block size in bits")
    kl.add_argument("--l", type=int, required=True, help="carry-generator length in bits")

    p = argparse.ArgumentParser(prog="approxadd", description="Exact error statistics of block-based approximate adders.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common, kl], help="full error distribution and metrics")
    sub.add_parser("rate", parents=[common, kl], help="error rate and prefix-correct probabilities")
    sub.add_parser("count", parents=[common, kl], help="number of error patterns")
    sub.add_parser("oracle", parents=[common, kl], help="exhaustive simulation histogram")
    sub.add_parser("sample", parents=[common, kl], help="Monte Carlo histogram")
    cmp_ = sub.add_parser("compare", parents=[common, kl], help="analytical vs simulated metrics")
    cmp_.add_argument("--source", choices=("auto", "oracle", "sample"), default="auto")
    cmp_.add_argument("--runs", type=int, default=1, help="Monte Carlo repetitions (seeds S, S+1, ...)")
    sub.add_parser("bars", parents=[common, kl], help="leading-one histogram")
    sw = sub.add_parser("sweep", parents=[common], help="metrics for every (k, l) combination")
    sw.add_argument("--k-list", type=_int_list, required=True)
    sw.add_argument("--l-list", type=_int_list, required=True)
    return p


def _config(args):
    try:
        return validate_config(args.n, args.k, args.l)
    except ConfigError as exc:
        raise CliError(EXIT_CONFIG, f"invalid configuration: {exc}")


def _analyze(args, mode):
    cfg = _config(args)
    try:
        dist = enumerate_distribution(cfg, mode, args.max_patterns)
    except PatternCapExceeded as exc:
        raise CliError(EXIT_CAP, str(exc))
    if args.format == "csv":
        return ser.to_csv(ser.DIST_COLUMNS, ser.distribution_rows(dist))
    return ser.to_json(ser.distribution_to_json(dist, metrics_from_distribution(dist)))


def _rate(args, mode):
    cfg = _config(args)
    d = prefix_correct_probs(cfg, mode=mode)
    er = d.miss[-1]
    if args.format == "csv":
        rows = []
        for i, di in enumerate(d.d):
            f = ser.prob_fields(di)
            rows.append(["d", i, repr(f["float"]), f["num"], f["exp"]])
        f = ser.prob_fields(er)
        rows.append(["er", "", repr(f["float"]), f["num"], f["exp"]])
        return ser.to_csv(["quantity", "index", "prob_float", "prob_num", "prob_exp"], rows)
    return ser.to_json(
        {
            "command": "rate",
            "config": cfg.as_dict(),
            "numeric_mode": mode.value,
            "er": ser.prob_fields(er),
            "d": [ser.prob_fields(x) for x in d.d],
        }
    )


def _count(args, mode):
    cfg = _config(args)
    xs = pattern_count_sequence(cfg.t, cfg.m)
    if args.format == "csv":
        return ser.to_csv(["i", "x_i"], [[i, str(x)] for i, x in enumerate(xs, 1)])
    return ser.to_json({"command": "count", "config": cfg.as_dict(), "count": xs[-1], "x": xs})


def _empirical_json(emp: EmpiricalDistribution, command: str) -> dict:
    out = {
        "command": command,
        "config": emp.config.as_dict(),
        "source": emp.source,
        "total": emp.total,
        "sign_violations": emp.sign_violations,
    }
    if emp.seed is not None:
        out["seed"] = emp.seed
    out["counts"] = [
        {"magnitude": str(e), "count": c, "prob_float": c / emp.total} for e, c in emp.counts.items()
    ]
    return out


def _empirical_out(emp, args, command):
    if args.format == "csv":
        rows = [[str(e), c, repr(c / emp.total)] for e, c in emp.counts.items()]
        return ser.to_csv(["magnitude", "count", "prob_float"], rows)
    return ser.to_json(_empirical_json(emp, command))


def _oracle(args, mode):
    cfg = _config(args)
    try:
        emp = exhaustive_distribution(cfg, max_n=args.max_oracle_n)
    except OracleCapExceeded as exc:
        raise CliError(EXIT_CAP, str(exc))
    return _empirical_out(emp, args, "oracle")


def _sample(args, mode):
    cfg = _config(args)
    if args.samples < 1:
        raise CliError(EXIT_USAGE, "--samples must be >= 1")
    emp = monte_carlo_distribution(cfg, args.samples, args.seed)
    return _empirical_out(emp, args, "sample")


def _rel_err(ref: Fraction, val: Fraction) -> Fraction:
    if ref == 0:
        return Fraction(0) if val == 0 else Fraction(1)
    return abs(val - ref) / ref


def _compare(args, mode):
    cfg = _config(args)
    ana = analytic_metrics(cfg, mode)
    ref = {"er": Fraction(ana.er) if mode is Mode.FLOAT else ana.er.to_fraction(), "med": ana.med, "mse": ana.mse}
    source = args.source
    if source == "auto":
        source = "oracle" if cfg.n <= args.max_oracle_n else "sample"
    if source == "oracle":
        try:
            emps = [exhaustive_distribution(cfg, max_n=args.max_oracle_n)]
        except OracleCapExceeded as exc:
            raise CliError(EXIT_CAP, str(exc))
    else:
        if args.runs < 1 or args.samples < 1:
            raise CliError(EXIT_USAGE, "--runs and --samples must be >= 1")
        emps = [monte_carlo_distribution(cfg, args.samples, args.seed + r) for r in range(args.runs)]
    rows = []
    for name, getter in (("er", "error_rate"), ("med", "med"), ("mse", "mse")):
        vals = [getattr(e, getter)() for e in emps]
        rels = [_rel_err(ref[name], v) for v in vals]
        mean_val = sum(vals, Fraction(0)) / len(vals)
        mean_rel = sum(rels, Fraction(0)) / len(rels)
        rows.append((name, ref[name], mean_val, mean_rel))
    if args.format == "csv":
        return ser.to_csv(
            ["metric", "analytical_float", "empirical_float", "relative_error", "relative_error_percent"],
            [[n, repr(float(a)), repr(float(e)), repr(float(r)), repr(float(r) * 100)] for n, a, e, r in rows],
        )
    return ser.to_json(
        {
            "command": "compare",
            "config": cfg.as_dict(),
            "numeric_mode": mode.value,
            "source": source,
            "runs": len(emps),
            "samples": emps[0].total,
            "sign_violations": sum(e.sign_violations for e in emps),
            "rows": [
                {
                    "metric": n,
                    "analytical": ser.rational_fields(a),
                    "empirical": ser.rational_fields(e),
                    "relative_error": ser.rational_fields(r),
                }
                for n, a, e, r in rows
            ],
        }
    )


def _bars(args, mode):
    h = leading_one_histogram(_config(args), mode)
    if args.format == "csv":
        return ser.to_csv(ser.BAR_COLUMNS, ser.histogram_rows(h))
    return ser.to_json(ser.histogram_to_json(h))


SWEEP_COLUMNS = [
    "n", "k", "l", "m", "t", "k_prime", "pattern_count", "predicted_nodes",
    "er_float", "er_num", "er_exp", "med_exact", "med_float", "mse_exact", "mse_float",
]


def _sweep(args, mode):
    rows = []
    for k in args.k_list:
        for l in args.l_list:
            try:
                cfg = validate_config(args.n, k, l)
            except ConfigError as exc:
                print(f"skipping k={k} l={l}: {exc}", file=sys.stderr)
                continue
            r = analytic_metrics(cfg, mode)
            n_pat = count_patterns(cfg)
            rows.append((cfg, n_pat, r))
    if not rows:
        raise CliError(EXIT_CONFIG, "no valid (k, l) combination in the sweep")
    if args.format == "csv":
        out = []
        for cfg, n_pat, r in rows:
            er = ser.prob_fields(r.er)
            out.append([
                cfg.n, cfg.k, cfg.l, cfg.m, cfg.t, cfg.k_prime, str(n_pat), str(2 * n_pat - 1),
                repr(er["float"]), er["num"], er["exp"], str(r.med), repr(float(r.med)),
                str(r.mse), repr(float(r.mse)),
            ])
        return ser.to_csv(SWEEP_COLUMNS, out)
    return ser.to_json(
        {
            "command": "sweep",
            "numeric_mode": mode.value,
            "rows": [
                {
                    "config": cfg.as_dict(),
                    "pattern_count": n_pat,
                    "predicted_nodes": 2 * n_pat - 1,
                    **ser.metrics_record(r),
                }
                for cfg, n_pat, r in rows
            ],
        }
    )


HANDLERS = {
    "analyze": _analyze,
    "rate": _rate,
    "count": _count,
    "oracle": _oracle,
    "sample": _sample,
    "compare": _compare,
    "bars": _bars,
    "sweep": _sweep,
}


def run(args: argparse.Namespace) -> tuple[int, str]:
    """Execute a parsed command; returns ``(exit_code, payload)``."""
    mode = Mode.of(args.exact)
    return EXIT_OK, HANDLERS[args.command](args, mode)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _, payload = run(args)
    except CliError as exc:
        print(f"approxadd: {exc}", file=sys.stderr)
        return exc.code
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"approxadd: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(payload)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
