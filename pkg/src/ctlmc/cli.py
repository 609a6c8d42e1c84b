"""Command-line interface.

Exit codes: 0 property holds (or command succeeded), 1 property fails,
2 usage, parse or validation error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import bench, corpus
from .checker import CheckError, check
from .ctl import CTLSyntaxError, atoms, format_ctl, parse_ctl
from .kripke import (
    KripkeSyntaxError, complete_sinks, parse_kripke, serialize_kripke, size_metrics, validate,
)
from .workflow import BlockExpansion, WorkflowError, WorkflowSyntaxError, expand, parse_workflow

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_model(path: str):
    try:
        return parse_kripke(_read(path))
    except KripkeSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_check(args) -> int:
    ks = _load_model(args.model)
    try:
        f = parse_ctl(_read(args.property))
    except CTLSyntaxError as exc:
        raise UsageError(f"{args.property}: {exc}") from exc
    report = validate(ks, atoms(f))
    for code, msg, _ in report.warnings:
        print(f"warning[{code}]: {msg}", file=sys.stderr)
    if report.totality_violations:
        sinks = ", ".join(report.totality_violations)
        if args.strict_total:
            raise UsageError(f"transition relation not total; sinks: {sinks}")
        print(f"warning: adding self-loops to sink states: {sinks}", file=sys.stderr)
        ks = complete_sinks(ks)
    try:
        v = check(ks, f, args.at, with_labels=args.labels)
    except CheckError as exc:
        raise UsageError(str(exc)) from exc
    print(f"verdict={'TRUE' if v.holds else 'FALSE'}")
    print(f"state={v.queried_state}")
    print(f"sat_count={v.sat_count}")
    print(f"ticks={v.elapsed_ticks}")
    if v.labels is not None:
        for sub, sat in v.labels.items():
            print(f"label {format_ctl(sub)} = {{{', '.join(s for s in ks.states if s in sat)}}}")
    return EXIT_HOLDS if v.holds else EXIT_FAILS


def cmd_expand(args) -> int:
    try:
        spec = parse_workflow(_read(args.workflow))
        stats: list[BlockExpansion] = []
        ks = expand(spec, force=args.force, stats=stats)
    except (WorkflowSyntaxError, WorkflowError) as exc:
        raise UsageError(f"{args.workflow}: {exc}") from exc
    text = serialize_kripke(ks)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    out = sys.stderr if not args.out else sys.stdout
    for b in stats:
        print(f"block {b.block}: interleavings={b.interleavings} states={b.states} "
              f"internal_transitions={b.internal_transitions} entry_transitions={b.entry_transitions} "
              f"exit_transitions={b.exit_transitions}", file=out)
    s, r = size_metrics(ks)
    print(f"total: states={s} transitions={r} size={s + r}", file=out)
    return EXIT_HOLDS


def cmd_validate(args) -> int:
    ks = _load_model(args.model)
    report = validate(ks)
    for line in report.lines():
        print(line)
    return EXIT_HOLDS if report.ok else EXIT_ERROR


def cmd_info(args) -> int:
    ks = _load_model(args.model)
    s, r = size_metrics(ks)
    print(f"states={s}")
    print(f"transitions={r}")
    print(f"size={s + r}")
    print(f"start={ks.start}")
    print(f"sinks={len(ks.sinks())}")
    counts = {p: sum(p in ks.labeling[st] for st in ks.states) for p in sorted(ks.propositions)}
    print("propositions=" + " ".join(f"{p}:{n}" for p, n in counts.items()))
    return EXIT_HOLDS


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --sizes value {text!r}") from exc


def _bench_config(args, **extra) -> bench.BenchConfig:
    try:
        return bench.BenchConfig(trials=args.trials, warmup_runs=args.warmup, seed=args.seed,
                                 inner_runs=args.inner, **extra)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _finish_bench(args, report: bench.BenchReport, xlabel: str) -> int:
    text = bench.emit_csv(report)
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if args.plot:
        bench.plot_report(report, args.plot, xlabel)
    for row in report.rows:
        if row.error:
            print(f"error: {row.label}: {row.error}", file=sys.stderr)
    return EXIT_HOLDS


def cmd_bench_formula(args) -> int:
    cfg = _bench_config(args, formula_sizes=_parse_sizes(args.sizes))
    model = args.model or str(corpus.entry("workflow_diagram").kripke)
    ks = _load_model(model)
    if ks.sinks():
        if args.strict_total:
            raise UsageError("transition relation not total")
        ks = complete_sinks(ks)
    try:
        report = bench.bench_formula_scaling(ks, cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _finish_bench(args, report, "CTL formula length (subformulas)")


def cmd_bench_structure(args) -> int:
    if args.pairs:
        if len(args.pairs) % 2:
            raise UsageError("structure bench takes MODEL PROPERTY pairs")
        pairs = list(zip(args.pairs[::2], args.pairs[1::2]))
    else:
        try:
            pairs = [(e.kripke, e.ctl) for e in corpus.load_manifest(args.manifest)]
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load manifest: {exc}") from exc
    cfg = _bench_config(args, corpus_paths=pairs)
    report = bench.bench_structure_scaling(pairs, cfg)
    return _finish_bench(args, report, "transitions + nodes")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict-total", action="store_true",
                        help="refuse structures with sink states instead of adding self-loops")
    common.add_argument("--out", help="write output to this path")

    benchopts = argparse.ArgumentParser(add_help=False)
    benchopts.add_argument("--trials", type=int, default=3)
    benchopts.add_argument("--warmup", type=int, default=1)
    benchopts.add_argument("--inner", type=int, default=1, help="checks per trial; the trial reports their median")
    benchopts.add_argument("--seed", type=int, default=0)
    benchopts.add_argument("--plot", help="write an SVG plot of average ticks against size")

    p = argparse.ArgumentParser(prog="ctlmc", description="Explicit-state CTL model checker")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a property at a state")
    c.add_argument("model")
    c.add_argument("property")
    c.add_argument("--at", help="state to query (default: the init state)")
    c.add_argument("--labels", action="store_true", help="print satisfying sets of every subformula")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("expand", parents=[common], help="compile a workflow to a Kripke structure")
    e.add_argument("workflow")
    e.add_argument("--force", action="store_true", help="allow blocks beyond the interleaving guard")
    e.set_defaults(func=cmd_expand)

    v = sub.add_parser("validate", parents=[common], help="report structural problems")
    v.add_argument("model")
    v.set_defaults(func=cmd_validate)

    i = sub.add_parser("info", parents=[common], help="print sizes and propositions")
    i.add_argument("model")
    i.set_defaults(func=cmd_info)

    b = sub.add_parser("bench", help="timing experiments")
    bsub = b.add_subparsers(dest="experiment", required=True)
    bf = bsub.add_parser("formula", parents=[common, benchopts], help="time against subformula count")
    bf.add_argument("--model", help="structure to check (default: shipped workflow diagram)")
    bf.add_argument("--sizes", default="1,5,10,15,20")
    bf.set_defaults(func=cmd_bench_formula)
    bs = bsub.add_parser("structure", parents=[common, benchopts], help="time against structure size")
    bs.add_argument("pairs", nargs="*", metavar="MODEL PROPERTY",
                    help="model/property pairs (default: shipped corpus)")
    bs.add_argument("--manifest", default=None, help="corpus manifest JSON")
    bs.set_defaults(func=cmd_bench_structure)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
