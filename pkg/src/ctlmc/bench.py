"""Timing experiments: verification time against property size and against
structure size. Times are reported in ticks of 100 ns."""

from __future__ import annotations

import csv
import gc
import io
import random
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .checker import check
from .ctl import AF, AG, AX, EF, EG, EX, Atom, Formula, Or, count_subformulas, parse_ctl
from .kripke import KripkeStructure, complete_sinks, parse_kripke, size_metrics

TICK_UNIT = "1 tick = 100 ns"

# Applied around the disjunction core, in this order, to reach the exact
# count; the one-pass image operators come first.
_WRAPPERS = (EX, AX, EF, AG, EG, AF)


@dataclass
class BenchConfig:
    trials: int = 3
    warmup_runs: int = 1
    formula_sizes: Sequence[int] = (1, 5, 10, 15, 20)
    corpus_paths: Sequence[tuple[str, str]] = ()
    seed: int = 0
    # checks per trial; the trial's ticks are their median
    inner_runs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.inner_runs < 1:
            raise ValueError("inner_runs must be >= 1")
        if self.warmup_runs < 0:
            raise ValueError("warmup_runs must be >= 0")
        sizes = list(self.formula_sizes)
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("formula_sizes must be strictly increasing")
        if any(k < 1 for k in sizes):
            raise ValueError("formula sizes must be >= 1")


@dataclass
class BenchRow:
    label: str
    size: int
    ticks: list[int] = field(default_factory=list)
    verdict: Optional[bool] = None
    error: Optional[str] = None

    @property
    def average(self) -> int:
        return round(sum(self.ticks) / len(self.ticks)) if self.ticks else 0


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    tick_unit: str = TICK_UNIT


def gen_formula_of_size(k: int, atoms: Sequence[str], seed: int = 0) -> Formula:
    """A formula with exactly ``k`` distinct subformulas.

    The core is AF over a left-nested disjunction of distinct atoms, the
    shape of the long ordering properties; temporal wrappers make up the
    remainder when there are not enough atoms. For a fixed seed the atoms
    are a prefix of one shuffled order, so a larger k extends the
    disjunction of a smaller one.
    """
    if k < 1:
        raise ValueError(f"subformula count must be >= 1, got {k}")
    pool = sorted(set(atoms))
    if not pool:
        raise ValueError("need at least one atom")
    rng = random.Random(seed)
    rng.shuffle(pool)
    if k == 1:
        return Atom(pool[0])
    m = max(1, min(len(pool), k // 2))
    core: Formula = Atom(pool[0])
    for a in pool[1:m]:
        core = Or(core, Atom(a))
    f: Formula = AF(core)
    for i in range(k - 2 * m):
        f = _WRAPPERS[i % len(_WRAPPERS)](f)
    n = count_subformulas(f)
    if n != k:
        raise AssertionError(f"generator produced {n} subformulas, wanted {k}")
    return f


def _measure(jobs: list[tuple[BenchRow, KripkeStructure, Formula]], cfg: BenchConfig) -> None:
    """Fill in ticks and verdict for every job.

    Trials go round-robin over the jobs so slow drift of the machine is
    spread across rows instead of landing on one. A trial's ticks are the
    median of its ``inner_runs`` checks, which discards scheduler outliers.
    Measured regions never overlap.
    """
    for _ in range(cfg.warmup_runs):
        for _, ks, f in jobs:
            check(ks, f)
    verdicts: list[set[bool]] = [set() for _ in jobs]
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(cfg.trials):
            for (row, ks, f), seen in zip(jobs, verdicts):
                samples = []
                for _ in range(cfg.inner_runs):
                    v = check(ks, f)
                    samples.append(v.elapsed_ticks)
                    seen.add(v.holds)
                row.ticks.append(round(statistics.median(samples)))
    finally:
        if gc_was_enabled:
            gc.enable()
    for (row, _, _), seen in zip(jobs, verdicts):
        if len(seen) != 1:
            raise RuntimeError(f"{row.label}: verdict changed between trials")
        row.verdict = seen.pop()


def bench_formula_scaling(ks: KripkeStructure, cfg: BenchConfig,
                          atoms: Optional[Sequence[str]] = None) -> BenchReport:
    pool = sorted(ks.propositions) if atoms is None else list(atoms)
    jobs = [(BenchRow(f"subformulas={k}", k), ks, gen_formula_of_size(k, pool, cfg.seed))
            for k in cfg.formula_sizes]
    _measure(jobs, cfg)
    return BenchReport([row for row, _, _ in jobs])


def bench_structure_scaling(corpus: Sequence[tuple[str | Path, str | Path]], cfg: BenchConfig) -> BenchReport:
    """One row per (model, property) pair; size is states + transitions of
    the model file as written, before sink completion. Entries that fail to
    load keep their error and are skipped."""
    report = BenchReport()
    jobs = []
    for model_path, prop_path in corpus:
        model_path = Path(model_path)
        row = BenchRow(model_path.stem, 0)
        report.rows.append(row)
        try:
            ks = parse_kripke(model_path.read_text())
            row.size = sum(size_metrics(ks))
            f = parse_ctl(Path(prop_path).read_text())
            ks = complete_sinks(ks)
            check(ks, f)
        except (OSError, ValueError) as exc:
            row.error = str(exc)
            continue
        jobs.append((row, ks, f))
    _measure(jobs, cfg)
    return report


def emit_csv(report: BenchReport) -> str:
    n = max((len(r.ticks) for r in report.rows), default=0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "size", *(f"trial{i}" for i in range(1, n + 1)), "avg", "verdict"])
    for r in report.rows:
        trials = [str(t) for t in r.ticks] + [""] * (n - len(r.ticks))
        if r.error is not None:
            verdict = "ERROR"
        else:
            verdict = "TRUE" if r.verdict else "FALSE"
        w.writerow([r.label, r.size, *trials, r.average if r.ticks else "", verdict])
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def plot_report(report: BenchReport, path: str | Path, xlabel: str = "size") -> None:
    """Scatter plus line of average ticks against size, written as SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = sorted((r for r in report.rows if r.ticks), key=lambda r: r.size)
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [r.size for r in rows]
    ys = [r.average for r in rows]
    ax.plot(xs, ys, "-o")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(f"average time (ticks, {TICK_UNIT})")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
