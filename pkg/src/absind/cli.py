"""Command-line entry point: ``absind <command> [--flag value]...``.

Exit codes: 0 success (and, for ``test``, no rejection), 1 ``test`` rejected
the sequence, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formatting
from .boolean import FORMATS, BooleanFunction, parse, serialize
from .errors import AbsindError
from .experiments import (
    ExperimentConfig,
    exhaustive_oracle,
    rows_to_csv,
    rows_to_json,
    run_experiment,
)
from .generators import disturb, random_function, two_period_extend
from .randtest import TestConfig, run_test
from .spectra import analyze

GEN_KINDS = ("random", "two-period", "disturbed", "constant", "affine")
CLI_EXPERIMENTS = ("ratio", "tail", "single-u-tail", "pair-tail", "concentration",
                   "exhaustive", "sos-mean")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _uint64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _n_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid --n-list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="absind", allow_abbrev=False,
                     description="Boolean function indicators and the absolute-indicator randomness test.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_input(p, required=True):
        p.add_argument("--in", dest="inp", required=required)
        p.add_argument("--format", choices=FORMATS, default="raw")
        p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("analyze", allow_abbrev=False, help="spectral indicators of a function file")
    common_input(p)

    p = sub.add_parser("test", allow_abbrev=False, help="randomness test of a sequence file")
    common_input(p)
    p.add_argument("--alpha", type=float, default=0.01)

    p = sub.add_parser("gen", allow_abbrev=False, help="write a generated function file")
    p.add_argument("--kind", choices=GEN_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=_uint64, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=FORMATS, default="raw")
    p.add_argument("--in", dest="inp")
    p.add_argument("--inner-in")
    p.add_argument("--inner-seed", type=_uint64)
    p.add_argument("--r", type=int, default=0)

    p = sub.add_parser("experiment", allow_abbrev=False, help="Monte Carlo / exhaustive audits (CSV)")
    p.add_argument("--experiment", choices=CLI_EXPERIMENTS, required=True)
    p.add_argument("--n-list", type=_n_list, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=_uint64, default=0)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=300.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="also write the rows as a JSON array")

    p = sub.add_parser("oracle", allow_abbrev=False, help="exact distributions by enumeration (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="also write the full result as JSON")
    return parser


def _read_function(path: str, fmt: str, n: int) -> BooleanFunction:
    return parse(Path(path).read_bytes(), fmt, n)


def _summary_dict(f: BooleanFunction) -> dict:
    s = analyze(f)
    return {
        "n": s.n,
        "nonlinearity": s.nonlinearity,
        "absolute_indicator": s.absolute_indicator,
        "argmax_u": s.argmax_u,
        "sum_of_squares": s.sum_of_squares,
        "ai_ratio": s.ai_ratio,
        "table_sha256": f.sha256(),
    }


def report_dict(f: BooleanFunction, alpha: float) -> dict:
    rep = run_test(f, TestConfig(alpha=alpha))
    th = rep.thresholds
    return {
        "n": rep.n,
        "nonlinearity": rep.nonlinearity,
        "absolute_indicator": rep.absolute_indicator,
        "argmax_u": rep.argmax_u,
        "sum_of_squares": rep.sum_of_squares,
        "ai_ratio": rep.ai_ratio,
        "thresholds": {
            "nl_low": th.nl_low,
            "nl_high": th.nl_high,
            "nl_high_clamped": th.nl_high_clamped,
            "ai_expected": th.ai_expected,
            "ai_upper": th.ai_upper,
            "ai_epsilon": th.ai_epsilon,
        },
        "verdicts": {"nl": rep.nl_verdict, "ai": rep.ai_verdict},
        "alpha": rep.alpha,
        "failures": [
            {"statistic": x.statistic, "value": x.value, "threshold": x.threshold,
             "relation": x.relation}
            for x in rep.failures
        ],
        "table_sha256": f.sha256(),
    }


def _generate(args) -> BooleanFunction:
    kind = args.kind
    if kind == "random":
        return random_function(args.n, args.seed)
    if kind == "constant":
        return BooleanFunction.constant(args.n)
    if kind == "affine":
        # mask and constant are read off the seed: x -> (seed mod 2^n).x + bit n of seed
        return BooleanFunction.affine(args.n, args.seed % (1 << args.n), (args.seed >> args.n) & 1)

    def two_period():
        if args.inner_in is not None:
            g = _read_function(args.inner_in, args.format, args.n - 1)
        elif args.inner_seed is not None:
            g = random_function(args.n - 1, args.inner_seed)
        else:
            raise UsageError(f"--kind {kind} needs --inner-in or --inner-seed")
        return two_period_extend(g)

    if kind == "two-period":
        return two_period()
    # disturbed
    base = _read_function(args.inp, args.format, args.n) if args.inp else two_period()
    return disturb(base, args.r, args.seed)


def _oracle_csv(n: int) -> tuple[str, dict]:
    res = exhaustive_oracle(n)
    rows = [{"n": n, "statistic": "absolute_indicator", "value": k, "count": c}
            for k, c in res.delta_histogram.items()]
    rows += [{"n": n, "statistic": "nonlinearity", "value": k, "count": c}
             for k, c in res.nl_histogram.items()]
    full = {
        "n": n,
        "functions": res.count,
        "mean_absolute_indicator": str(res.mean_delta),
        "mean_sum_of_squares": str(res.mean_sum_of_squares),
        "absolute_indicator_histogram": {str(k): c for k, c in res.delta_histogram.items()},
        "nonlinearity_histogram": {str(k): c for k, c in res.nl_histogram.items()},
    }
    return formatting.to_csv(("n", "statistic", "value", "count"), rows), full


def _run(args) -> tuple[int, str]:
    cmd = args.command
    if cmd == "analyze":
        f = _read_function(args.inp, args.format, args.n)
        return 0, formatting.dumps(_summary_dict(f)) + "\n"
    if cmd == "test":
        f = _read_function(args.inp, args.format, args.n)
        rep = report_dict(f, args.alpha)
        rejected = "fail" in rep["verdicts"].values()
        return (1 if rejected else 0), formatting.dumps(rep) + "\n"
    if cmd == "gen":
        f = _generate(args)
        Path(args.out).write_bytes(serialize(f, args.format))
        info = {"kind": args.kind, "n": f.n, "seed": args.seed, "format": args.format,
                "table_sha256": f.sha256()}
        if args.kind == "disturbed":
            info["r"] = args.r
        if args.inner_seed is not None:
            info["inner_seed"] = args.inner_seed
        return 0, formatting.dumps(info) + "\n"
    if cmd == "experiment":
        config = ExperimentConfig(
            kind=args.experiment.replace("-", "_"), n_values=args.n_list, trials=args.trials,
            seed=args.seed, epsilon=args.epsilon, theta=args.theta, workers=args.workers,
        )
        rows = run_experiment(config)
        if args.out:
            Path(args.out).write_text(rows_to_json(rows))
        return 0, rows_to_csv(rows)
    if cmd == "oracle":
        text, full = _oracle_csv(args.n)
        if args.out:
            Path(args.out).write_text(formatting.dumps(full) + "\n")
        return 0, text
    raise UsageError(f"unknown command {cmd!r}")


def dispatch(argv: list[str]) -> tuple[int, bytes]:
    """Run one invocation; returns the exit code and the standard-output bytes.

    Diagnostics for exit code 2 go to stderr as a single line.
    """
    try:
        args = build_parser().parse_args(argv)
        code, text = _run(args)
    except (UsageError, AbsindError, OSError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"absind: error: {msg}", file=sys.stderr)
        return 2, b""
    return code, text.encode()


def main(argv: list[str] | None = None) -> int:
    code, out = dispatch(sys.argv[1:] if argv is None else argv)
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
