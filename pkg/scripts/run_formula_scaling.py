"""Time the checker on the shipped workflow diagram for growing formula sizes.

    python3 scripts/run_formula_scaling.py --out results/
"""

import argparse
from pathlib import Path

from ctlmc.bench import BenchConfig, bench_formula_scaling, emit_csv, plot_report
from ctlmc.corpus import entry
from ctlmc.kripke import complete_sinks, parse_kripke


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--inner", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ks = complete_sinks(parse_kripke(entry("workflow_diagram").kripke.read_text()))
    cfg = BenchConfig(trials=args.trials, inner_runs=args.inner, seed=args.seed)
    report = bench_formula_scaling(ks, cfg)

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "formula_scaling.csv").write_text(emit_csv(report))
    plot_report(report, args.out / "formula_scaling.svg", "CTL formula length (subformulas)")
    print(emit_csv(report), end="")
    print(f"# {report.tick_unit}")


if __name__ == "__main__":
    main()
