"""
Command-line entry point.

    qgnsa synth --features 12 --self 2000 --nonself 500 --output data/
    qgnsa preprocess --input metaverse.csv --spec metaverse --output data/
    qgnsa run --config experiment.yaml
    qgnsa report --input out/report.json --format table

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 engine error.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, SyntheticSource, dump_config, load_config
from .data import PRESETS, PreprocessSpec, generate_synthetic, load_csv, preprocess, write_dataset
from .errors import DataError, EngineError, InvalidInputError, QgnsaError
from .evaluation import METRICS, AggregateReport, config_hash, run_protocol

log = logging.getLogger("qgnsa")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_ENGINE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump_json(path, payload):
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


# -- preprocess ---------------------------------------------------------------

def _load_spec(name_or_path):
    if name_or_path in PRESETS:
        return PRESETS[name_or_path]
    path = Path(name_or_path)
    if not path.is_file():
        raise UsageError(f"--spec {name_or_path!r} is neither a preset ({', '.join(PRESETS)}) nor a file")
    try:
        return PreprocessSpec.from_dict(json.loads(path.read_text()))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid preprocess spec {path}: {exc}") from None


def cmd_preprocess(args):
    spec = _load_spec(args.spec)
    table = load_csv(args.input)
    if len(table) == 0:
        raise DataError(f"{args.input} has a header but no data rows")
    dataset = preprocess(table, spec)
    manifest = write_dataset(dataset, args.output, {
        "source": str(args.input),
        "config_hash": config_hash(spec.to_dict()),
        "preprocess": spec.to_dict(),
    })
    print(f"self rows: {manifest['self_rows']}")
    print(f"nonself rows: {manifest['nonself_rows']}")
    print(f"features: {manifest['features']}")
    return EXIT_OK


# -- synth --------------------------------------------------------------------

def cmd_synth(args):
    params = {"m": args.features, "n_self": args.self_count, "n_nonself": args.nonself_count,
              "separation": args.separation, "seed": args.seed}
    try:
        dataset = generate_synthetic(args.features, args.self_count, args.nonself_count,
                                     args.separation, args.seed)
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None
    for note in dataset.notes:
        log.warning(note)
    manifest = write_dataset(dataset, args.output, {
        "source": "synthetic",
        "synthetic": params,
        "config_hash": config_hash(params),
    })
    print(f"wrote {manifest['self_rows']} self and {manifest['nonself_rows']} nonself rows "
          f"({manifest['features']} features) to {args.output}")
    return EXIT_OK


# -- run ----------------------------------------------------------------------

def _build_dataset(config):
    src = config.dataset
    if isinstance(src, SyntheticSource):
        seed = config.seed if src.seed is None else src.seed
        return generate_synthetic(src.m, src.n_self, src.n_nonself, src.separation, seed)
    return preprocess(load_csv(src.path), src.spec)


def _write_confusion(path, cm, digest):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["config_hash", "tp", "tn", "fp", "fn"])
        writer.writerow([digest, cm.tp, cm.tn, cm.fp, cm.fn])


def _format_value(v):
    return "" if v is None else repr(float(v))


def execute_config(config, output_dir=None, jobs=1):
    """Run every block of ``config`` and write all artifacts; returns the report dict."""
    out = Path(output_dir or config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataset = _build_dataset(config)
    digest = config.hash
    reports = {}
    for block in config.runs:
        log.info("running %s (%s)", block.name, block.algorithm)
        agg = run_protocol(
            dataset, block.algorithm, block.config,
            folds=config.protocol.folds,
            repetitions=config.protocol.repetitions,
            master_seed=config.seed,
            holdout_nonself=config.protocol.holdout_nonself,
            jobs=jobs,
        )
        for run in agg.runs:
            _write_confusion(out / "runs" / block.name / run.run_id / "confusion.csv",
                             run.confusion, digest)
        reports[block.name] = agg.to_dict()

    report = {
        "schema": 1,
        "config_hash": digest,
        "config": config.to_dict(),
        "dataset": {"features": dataset.m, "self_rows": len(dataset.self_samples),
                    "nonself_rows": len(dataset.nonself_samples), "notes": dataset.notes},
        "results": reports,
    }
    _dump_json(out / "report.json", report)

    with open(out / "metrics_long.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["run_id", "name", "algorithm", "fold", "repetition", "metric", "value", "config_hash"])
        for name, agg in reports.items():
            for run in agg["runs"]:
                run_id = f"{name}/{run['fold']}_{run['repetition']}"
                for metric in METRICS:
                    writer.writerow([run_id, name, agg["algorithm"], run["fold"], run["repetition"],
                                     metric, _format_value(run["metrics"][metric]), digest])
    return report


def cmd_run(args):
    try:
        config = load_config(args.config)
    except FileNotFoundError:
        raise UsageError(f"config file not found: {args.config}") from None
    execute_config(config, args.output, args.jobs)
    print(f"wrote report to {Path(args.output or config.output_dir) / 'report.json'}")
    return EXIT_OK


# -- report -------------------------------------------------------------------

def _summary_rows(report):
    results = report["results"]
    rows = []
    for metric in METRICS:
        cells = {}
        for name, agg in results.items():
            s = AggregateReport.from_dict(agg).summary[metric]
            cells[name] = (s["mean"], s["std"], s["defined"])
        rows.append((metric, cells))
    return list(results), rows


def render_report(report, fmt="table"):
    try:
        names, rows = _summary_rows(report)
    except (KeyError, TypeError) as exc:
        raise DataError(f"malformed report: missing {exc}") from None
    single = all(len(report["results"][n]["runs"]) <= 1 for n in names)
    fmt_num = lambda v: "n/a" if v is None else f"{v:.4f}"

    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["metric", "name", "mean"] + ([] if single else ["std"]) + ["defined"])
        for metric, cells in rows:
            for name in names:
                mean, std, defined = cells[name]
                writer.writerow([metric, name, _format_value(mean)]
                                + ([] if single else [_format_value(std)]) + [defined])
        return buf.getvalue()

    header = ["metric"]
    for name in names:
        header += [name] if single else [f"{name} mean", f"{name} std"]
    body = []
    for metric, cells in rows:
        line = [metric]
        for name in names:
            mean, std, _ = cells[name]
            line += [fmt_num(mean)] if single else [fmt_num(mean), fmt_num(std)]
        body.append(line)
    widths = [max(len(str(r[i])) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header] + body]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def cmd_report(args):
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"report file not found: {path}")
    try:
        report = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(report, dict) or "results" not in report:
            raise DataError("malformed report: no 'results' section")
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed report: {exc}") from None
    sys.stdout.write(render_report(report, args.format))
    return EXIT_OK


# -- wiring -------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="qgnsa", description="Quantum genetic negative selection experiments.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("preprocess", help="turn a raw CSV into self/nonself feature files")
    p.add_argument("--input", required=True)
    p.add_argument("--spec", default="metaverse", help="preset name or JSON spec file")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("synth", help="write a synthetic labelled dataset")
    p.add_argument("--features", type=int, default=12)
    p.add_argument("--self", dest="self_count", type=int, default=2000)
    p.add_argument("--nonself", dest="nonself_count", type=int, default=500)
    p.add_argument("--separation", type=float, default=0.6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("run", help="run the K-fold protocol described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None, help="override the config's output_dir")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="render a report file as a comparison table")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EngineError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except (DataError, InvalidInputError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except QgnsaError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
