"""Time the checker across the shipped corpus, ordered by structure size.

    python3 scripts/run_structure_scaling.py --out results/
"""

import argparse
from pathlib import Path

from ctlmc.bench import BenchConfig, bench_structure_scaling, emit_csv, plot_report
from ctlmc.corpus import load_manifest


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--inner", type=int, default=25)
    args = ap.parse_args()

    manifest = load_manifest()
    report = bench_structure_scaling([(e.kripke, e.ctl) for e in manifest],
                                     BenchConfig(trials=args.trials, inner_runs=args.inner))

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "structure_scaling.csv").write_text(emit_csv(report))
    plot_report(report, args.out / "structure_scaling.svg", "transitions + nodes")
    print(emit_csv(report), end="")
    for e, row in zip(manifest, report.rows):
        status = "ok" if row.verdict == e.expected else "MISMATCH"
        print(f"# {e.title}: expected {e.expected}, got {row.verdict} ({status})")
    print(f"# {report.tick_unit}")


if __name__ == "__main__":
    main()
