"""Command-line front end.

    coherence-tradeoffs figure --figure 1 [--theta-steps 61] [--p-steps 41]
    coherence-tradeoffs verify [--samples 10000] [--seed N] [--state bell|PATH]
    coherence-tradeoffs compute (--theta X | --state bell|PATH) [--p X]

Output goes to ``--output`` or stdout. Exit codes: 0 success, 1 inequality
violation, 2 usage error or invalid state, 3 I/O error.
"""

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass

from .exceptions import QuantumInputError
from .states import bell_state, densify, resource_state
from .verify import (
    check_ef_coherence,
    check_theorem1,
    check_theorem2,
    compute_record,
    deserialize_density,
    margin_report,
    sweep,
)

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
DEFAULT_SEED = 20170605

FIGURE_COLUMNS = {
    1: ("theta", "p", "sum", "coherence_b", "capacity"),
    2: ("theta", "sum", "coherence_b", "capacity"),
    3: ("theta", "p", "sum", "h_of_f", "coherence_a"),
    4: ("theta", "sum", "h_of_f", "coherence_a"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    figure_id: int = None
    theta_steps: int = 61
    p_steps: int = 41
    samples: int = 10_000
    seed: int = DEFAULT_SEED
    format: str = "csv"
    output_path: str = None
    theta: float = None
    p: float = 0.0
    state: str = None

    def validate(self):
        if self.command not in ("figure", "verify", "compute"):
            raise UsageError(f"unknown command {self.command!r}")
        if (self.figure_id is not None) != (self.command == "figure"):
            raise UsageError("--figure is required for, and only for, the figure command")
        if self.figure_id is not None and self.figure_id not in FIGURE_COLUMNS:
            raise UsageError(f"--figure must be 1-4, got {self.figure_id}")
        if self.theta_steps < 2 or self.p_steps < 2:
            raise UsageError("grid steps must be at least 2")
        if self.samples < 1:
            raise UsageError("--samples must be at least 1")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if not 0.0 <= self.p <= 1.0:
            raise UsageError(f"--p must lie in [0, 1], got {self.p}")
        if self.command == "compute" and (self.theta is None) == (self.state is None):
            raise UsageError("compute needs exactly one of --theta or --state")
        return self


def format_number(x):
    if x is None:
        return "NA"
    return format(float(x), ".12g")


def write_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(row[c]) for c in columns])
    return buf.getvalue()


def write_json(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def figure_rows(figure_id, theta_steps=61, p_steps=41):
    """Rows (dicts keyed by column name) for one of the four figures.

    Figures 1 and 3 cover the (theta, p) grid; 2 and 4 are the p = 0 cuts.
    Teleportation rows with F below 2/3 carry None for the bound and the sum.
    """
    p_values = [0.0] if figure_id in (2, 4) else None
    rows = []
    for rec in sweep(theta_steps, p_steps, p_values=p_values):
        if figure_id in (1, 2):
            row = {"sum": rec.sum_t1, "coherence_b": rec.coherence_b, "capacity": rec.capacity}
        else:
            row = {"sum": rec.sum_t2, "h_of_f": rec.h_of_f, "coherence_a": rec.coherence_a}
        row.update(theta=rec.theta, p=rec.p)
        rows.append(row)
    return rows


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


def _load_state(spec):
    if spec == "bell":
        return densify(bell_state("phi+"))
    try:
        with open(spec, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise IOError(f"cannot read state file {spec}: {exc}") from exc
    try:
        return deserialize_density(json.loads(raw))
    except (ValueError, KeyError, TypeError) as exc:
        raise QuantumInputError(f"malformed state file {spec}: {exc}") from exc


def run_figure(config):
    columns = FIGURE_COLUMNS[config.figure_id]
    rows = figure_rows(config.figure_id, config.theta_steps, config.p_steps)
    if config.format == "csv":
        text = write_csv(columns, rows)
    else:
        text = write_json({"figure": config.figure_id, "columns": list(columns),
                           "rows": [{c: r[c] for c in columns} for r in rows]})
    _emit(text, config.output_path)
    return EXIT_OK


def run_verify(config):
    checks = (
        ("theorem1", check_theorem1),
        ("theorem2", check_theorem2),
        ("ef_coherence", check_ef_coherence),
    )
    if config.state is not None:
        fixed = _load_state(config.state)
        samples, sampler = 1, (lambda seed, index: fixed)
    else:
        samples, sampler = config.samples, None
    reports = {}
    for name, check in checks:
        kwargs = {} if sampler is None else {"sampler": sampler, "max_draws": 1}
        report = margin_report(check, samples, config.seed, name=name, **kwargs)
        if report.samples == 0:
            report.min_margin = None
        reports[name] = report.to_dict()
        log.info("%s: %d samples, min margin %s, %d violations",
                 name, report.samples, report.min_margin, report.violations)
    _emit(write_json(reports), config.output_path)
    violated = any(r["violations"] for r in reports.values())
    return EXIT_VIOLATION if violated else EXIT_OK


def run_compute(config):
    if config.state is not None:
        rho, theta = _load_state(config.state), None
    else:
        rho, theta = densify(resource_state(config.theta)), config.theta
    record = compute_record(rho, config.p, theta)
    payload = record.to_dict()
    payload.update(sum_t1=record.sum_t1, sum_t2=record.sum_t2)
    if config.format == "json":
        text = write_json(payload)
    else:
        text = write_csv(sorted(payload), [payload])
    _emit(text, config.output_path)
    return EXIT_OK


COMMANDS = {"figure": run_figure, "verify": run_verify, "compute": run_compute}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coherence-tradeoffs",
        description="Coherence vs dense coding / teleportation trade-offs: figure data and checks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        p.add_argument("--output", dest="output_path", metavar="PATH")

    fig = sub.add_parser("figure", help="regenerate the data behind one figure")
    fig.add_argument("--figure", dest="figure_id", type=int, required=True, choices=(1, 2, 3, 4))
    fig.add_argument("--theta-steps", type=int, default=61)
    fig.add_argument("--p-steps", type=int, default=41)
    common(fig, "csv")

    ver = sub.add_parser("verify", help="Monte Carlo margin checks of the three inequalities")
    ver.add_argument("--samples", type=int, default=10_000)
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--state", metavar="PATH|bell")
    common(ver, "json")

    comp = sub.add_parser("compute", help="all quantities for one state")
    comp.add_argument("--theta", type=float, help="resource-state angle in radians")
    comp.add_argument("--state", metavar="PATH|bell")
    comp.add_argument("--p", type=float, default=0.0, help="depolarizing noise in [0, 1]")
    common(comp, "json")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fields = {k: v for k, v in vars(args).items() if k != "verbose"}
    try:
        config = RunConfig(**fields).validate()
        return COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuantumInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
