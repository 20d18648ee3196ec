"""Command-line front end.

    sigdigits predict  [--base B] [--width K] [--position I]
    sigdigits oracle   --dist SPEC [--d D --l L]
    sigdigits error    --dist SPEC [--d D --l L]
    sigdigits scan     [--d D --l L] [--samples N]
    sigdigits analyze  (--input PATH [--column C] | --dist SPEC [--n N])
    sigdigits selftest

Every command accepts ``--base``, ``--width``, ``--tol``, ``--seed`` and
``--format {table,kv}``. The ``kv`` format prints one ``key=value`` line per
field with stable key names and ``repr`` floats, so equal inputs give
byte-identical output.
"""

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import acceptance
from .digitlaw import DigitBlock, block_table, ith_digit_table
from .dists import parse_dist_spec
from .empirics import Thresholds, conformity, histogram, read_column, transform_data
from .errors import DomainError, NumericalError, UnsupportedError
from .laplace import kernel_weighted_error, scan_delta_extrema, total_error
from .oracle import exact_block_prob, exact_table

COMMANDS = ("predict", "oracle", "error", "scan", "analyze", "selftest")


@dataclass
class RunConfig:
    command: str
    base: int = 10
    width: int = 1
    block: Optional[DigitBlock] = None
    dist_spec: Optional[str] = None
    input_path: Optional[str] = None
    column: object = 0
    tol: float = 1e-9
    seed: int = 42
    output_format: str = "table"
    position: int = 1
    samples: int = 4096
    n: int = 100_000
    transform: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise DomainError(f"--tol must be positive, got {self.tol}")
        if self.base < 2:
            raise DomainError(f"--base must be >= 2, got {self.base}")
        if self.width < 1:
            raise DomainError(f"--width must be >= 1, got {self.width}")


@dataclass
class Report:
    title: str
    fields: list = field(default_factory=list)
    headers: tuple = ()
    rows: list = field(default_factory=list)
    row_key: str = ""
    ok: bool = True

    def add(self, key, value):
        self.fields.append((key, value))


def _kv_value(value):
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render_kv(report):
    lines = [f"{k}={_kv_value(v)}" for k, v in report.fields]
    for row in report.rows:
        key = row[0]
        for header, value in zip(report.headers[1:], row[1:]):
            lines.append(f"{report.row_key}.{key}.{header}={_kv_value(value)}")
    return "\n".join(lines) + "\n"


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.10f}" if abs(value) >= 1e-4 or value == 0 else f"{value:.4e}"
    return _kv_value(value)


def render_table(report):
    out = [report.title, "=" * len(report.title)]
    width = max((len(k) for k, _ in report.fields), default=0)
    out += [f"{k.ljust(width)}  {_fmt(v)}" for k, v in report.fields]
    if report.rows:
        cells = [list(report.headers)] + [[_fmt(c) for c in row] for row in report.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(report.headers))]
        out.append("")
        for i, row in enumerate(cells):
            out.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
            if i == 0:
                out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def _block(config):
    if config.block is None:
        raise DomainError("this command needs --d (and optionally --l)")
    return config.block


def _dist(config):
    if not config.dist_spec:
        raise DomainError("this command needs --dist")
    return parse_dist_spec(config.dist_spec)


def cmd_predict(config):
    if config.position > 1:
        table = ith_digit_table(config.base, config.position)
        rep = Report(f"Significant digit {config.position} law, base {config.base}")
        rep.headers, rep.row_key = ("digit", "probability"), "p"
    else:
        table = block_table(config.base, config.width)
        rep = Report(f"General digit law, base {config.base}, width {config.width}")
        rep.headers, rep.row_key = ("lead", "probability"), "p"
    rep.add("command", "predict")
    rep.add("base", config.base)
    rep.add("width", config.width)
    rep.add("position", config.position)
    rep.add("source", table.source.value)
    rep.add("total", table.total())
    rep.rows = [(k, table[k]) for k in sorted(table.probabilities)]
    return rep


def cmd_oracle(config):
    dist = _dist(config)
    rep = Report(f"Exact digit probabilities of {dist.spec}, base {config.base}")
    rep.add("command", "oracle")
    rep.add("dist", dist.spec)
    rep.add("base", config.base)
    rep.add("tol", config.tol)
    if config.block is not None:
        res = exact_block_prob(dist, config.block, config.tol)
        b = config.block
        rep.add("block", f"{b.base},{b.lead},{b.span},{b.width}")
        rep.add("probability", res.probability)
        rep.add("truncation_lo", res.truncation_lo)
        rep.add("truncation_hi", res.truncation_hi)
        rep.add("tail_bound", res.tail_bound)
        return rep
    table = exact_table(dist, config.base, config.width, config.tol)
    law = block_table(config.base, config.width)
    rep.add("width", config.width)
    rep.add("total", table.total())
    rep.headers, rep.row_key = ("lead", "oracle", "law", "difference"), "p"
    rep.rows = [(k, table[k], law[k], table[k] - law[k]) for k in sorted(table.probabilities)]
    return rep


def cmd_error(config):
    dist, block = _dist(config), _block(config)
    er = total_error(dist, block, config.tol, config.samples)
    rep = Report(f"Total error of the digit law for {dist.spec}")
    rep.add("command", "error")
    rep.add("dist", dist.spec)
    rep.add("block", f"{block.base},{block.lead},{block.span},{block.width}")
    rep.add("oracle_prob", er.oracle_prob)
    rep.add("benford_term", er.benford_term)
    rep.add("total_error", er.total_error)
    rep.add("periodic_max", er.periodic_max)
    rep.add("bound_M", er.bound_M)
    rep.add("bound_value", er.bound_value)
    rep.add("bound_certified", er.bound_certified)
    kernel_route = None
    if dist.inverse_laplace is not None:
        kernel_route = kernel_weighted_error(dist, block, config.tol)
    rep.add("kernel_route", kernel_route)
    return rep


def cmd_scan(config):
    block = _block(config)
    ext = scan_delta_extrema(block, config.samples)
    rep = Report(f"Extrema of the periodic error over one period, block {block.lead}+{block.span}")
    rep.add("command", "scan")
    rep.add("block", f"{block.base},{block.lead},{block.span},{block.width}")
    rep.add("samples_per_period", config.samples)
    rep.add("max_abs", ext.max_abs)
    rep.add("argmax_s", ext.argmax_s)
    rep.add("value_at_argmax", ext.value)
    return rep


def cmd_analyze(config):
    skipped = 0
    if config.input_path:
        data, skipped = read_column(config.input_path, config.column)
        source = config.input_path
    elif config.dist_spec:
        dist = _dist(config)
        data = dist.sample(np.random.default_rng(config.seed), config.n)
        source = f"{dist.spec} n={config.n} seed={config.seed}"
    else:
        raise DomainError("analyze needs --input or --dist")
    if config.transform:
        kind, _, param = config.transform.partition(":")
        try:
            value = float(param) if param else None
        except ValueError:
            raise DomainError(f"bad transform parameter {param!r}") from None
        data = transform_data(data, kind, value)
    hist = histogram(data, config.base, config.width)
    hist.skipped = skipped
    law = block_table(config.base, config.width)
    rep_c = conformity(hist, law, Thresholds())
    rep = Report(f"Digit conformity of {source}")
    rep.add("command", "analyze")
    rep.add("source", source)
    rep.add("base", config.base)
    rep.add("width", config.width)
    rep.add("total", hist.total)
    rep.add("dropped_zeros", hist.dropped_zeros)
    rep.add("negatives_folded", hist.negatives_folded)
    rep.add("skipped_rows", hist.skipped)
    rep.add("chi_square", rep_c.chi_square)
    rep.add("degrees_of_freedom", rep_c.degrees_of_freedom)
    rep.add("p_value", rep_c.p_value)
    rep.add("mad", rep_c.mad)
    rep.add("max_abs_dev", rep_c.max_abs_dev)
    rep.add("verdict", rep_c.verdict.value)
    props = hist.proportions()
    rep.headers, rep.row_key = ("lead", "count", "observed", "expected"), "d"
    rep.rows = [(k, hist.counts[k], props[k], law[k]) for k in sorted(hist.counts)]
    return rep


def cmd_selftest(config):
    rep = Report("Acceptance self-test")
    rep.add("command", "selftest")
    results = acceptance.run_all()
    for r in results:
        rep.add(f"check.{r.number}", "pass" if r.passed else "fail")
    rep.headers, rep.row_key = ("criterion", "result", "detail"), "check"
    rep.rows = [(r.number, "PASS" if r.passed else "FAIL", f"{r.name}: {r.detail}") for r in results]
    rep.ok = all(r.passed for r in results)
    return rep


HANDLERS = {
    "predict": cmd_predict,
    "oracle": cmd_oracle,
    "error": cmd_error,
    "scan": cmd_scan,
    "analyze": cmd_analyze,
    "selftest": cmd_selftest,
}


def run(config, stream=None):
    """Execute ``config``, write the report to ``stream`` and return the exit status."""
    stream = stream or sys.stdout
    report = HANDLERS[config.command](config)
    render = render_kv if config.output_format == "kv" else render_table
    stream.write(render(report))
    return 0 if report.ok else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="sigdigits", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", type=int, default=10)
    common.add_argument("--width", type=int, default=1)
    common.add_argument("--d", type=int, help="block lead (first WIDTH digits)")
    common.add_argument("--l", type=int, default=1, help="block span")
    common.add_argument("--dist", help="distribution, e.g. exp:rate=1 or loguniform:decades=6")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", choices=("table", "kv"), default="table")
    common.add_argument("--samples", type=int, default=4096, help="grid points per period for scans")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("predict", parents=[common], help="closed-form digit law table")
    p.add_argument("--position", type=int, default=1, help="marginal of the i-th significant digit")
    sub.add_parser("oracle", parents=[common], help="exact digit probabilities of a distribution")
    sub.add_parser("error", parents=[common], help="total error of the law for a distribution")
    sub.add_parser("scan", parents=[common], help="extrema of the periodic error function")
    p = sub.add_parser("analyze", parents=[common], help="conformity of data to the law")
    p.add_argument("--input", help="comma- or tab-delimited file")
    p.add_argument("--column", default="0", help="column name or zero-based index")
    p.add_argument("--n", type=int, default=100_000, help="sample size when using --dist")
    p.add_argument("--transform", help="scale:C, power:P or rebase")
    sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    return parser


def config_from_args(args):
    block = None
    if args.d is not None:
        block = DigitBlock(args.base, args.d, args.l, args.width)
    column = getattr(args, "column", "0")
    if isinstance(column, str) and column.isdigit():
        column = int(column)
    return RunConfig(
        command=args.command,
        base=args.base,
        width=args.width,
        block=block,
        dist_spec=args.dist,
        input_path=getattr(args, "input", None),
        column=column,
        tol=args.tol,
        seed=args.seed,
        output_format=args.format,
        position=getattr(args, "position", 1),
        samples=args.samples,
        n=getattr(args, "n", 100_000),
        transform=getattr(args, "transform", None),
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return run(config_from_args(args))
    except (DomainError, UnsupportedError, NumericalError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"sigdigits: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
