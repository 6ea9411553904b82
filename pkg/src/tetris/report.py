"""Comparison tables across compile modes, as CSV files and PNG charts."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .compiler import MODES, CompileOptions, compile_kernel  # noqa: E402
from .pauli import Kernel  # noqa: E402
from .topology import CouplingGraph  # noqa: E402


@dataclass(frozen=True)
class Row:
    benchmark: str
    mode: str
    gcr: float | None
    logical_cnots: int
    swap_cnots: int
    total_cnots: int
    depth: int


def collect(benchmarks: Sequence[tuple[str, Kernel]], graph: CouplingGraph,
            base: CompileOptions | None = None, modes: Sequence[str] = MODES) -> list[Row]:
    base = base or CompileOptions()
    rows = []
    for name, kernel in benchmarks:
        for mode in modes:
            opts = CompileOptions(mode, base.swap_weight, base.lookahead_k, base.bridging,
                                  base.leaf_trees, base.reclaim, base.seed, base.layout)
            m = compile_kernel(kernel, graph, opts).metrics
            rows.append(Row(name, mode, m.gcr, m.logical_cnots, m.swap_induced_cnots, m.cnot_count, m.depth))
    return rows


def write_csvs(rows: Sequence[Row], out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    canc = out / "cancellation.csv"
    with canc.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["benchmark", "mode", "gcr"])
        for r in rows:
            w.writerow([r.benchmark, r.mode, "" if r.gcr is None else f"{r.gcr:.6f}"])
    brk = out / "cnot_breakdown.csv"
    with brk.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["benchmark", "series", "cnots"])
        for r in rows:
            w.writerow([r.benchmark, r.mode, r.logical_cnots])
            w.writerow([r.benchmark, f"{r.mode}_S", r.swap_cnots])
    return [canc, brk]


def _grouped(rows: Sequence[Row]):
    names = list(dict.fromkeys(r.benchmark for r in rows))
    modes = list(dict.fromkeys(r.mode for r in rows))
    table = {(r.benchmark, r.mode): r for r in rows}
    return names, modes, table


def plot(rows: Sequence[Row], out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names, modes, table = _grouped(rows)
    width = 0.8 / max(len(modes), 1)
    xs = range(len(names))
    paths = []

    fig, ax = plt.subplots(figsize=(max(5, 1.5 * len(names)), 4))
    for j, mode in enumerate(modes):
        vals = [table[(n, mode)].gcr or 0.0 for n in names]
        ax.bar([x + j * width for x in xs], vals, width, label=mode)
    ax.set_xticks([x + width * (len(modes) - 1) / 2 for x in xs], names)
    ax.set_ylabel("gate cancellation ratio")
    ax.legend(fontsize="small", loc="upper center", bbox_to_anchor=(0.5, -0.12), ncol=len(modes), frameon=False)
    fig.tight_layout()
    paths.append(out / "cancellation.png")
    fig.savefig(paths[-1], dpi=120, metadata={"Software": None})
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(max(5, 1.5 * len(names)), 4))
    for j, mode in enumerate(modes):
        pos = [x + j * width for x in xs]
        logical = [table[(n, mode)].logical_cnots for n in names]
        swaps = [table[(n, mode)].swap_cnots for n in names]
        bars = ax.bar(pos, logical, width, label=mode)
        ax.bar(pos, swaps, width, bottom=logical, label=f"{mode}_S",
               color=bars.patches[0].get_facecolor(), alpha=0.45, hatch="//")
    ax.set_xticks([x + width * (len(modes) - 1) / 2 for x in xs], names)
    ax.set_ylabel("CNOT count")
    ax.legend(fontsize="small", loc="upper center", bbox_to_anchor=(0.5, -0.12), ncol=len(modes), frameon=False)
    fig.tight_layout()
    paths.append(out / "cnot_breakdown.png")
    fig.savefig(paths[-1], dpi=120, metadata={"Software": None})
    plt.close(fig)
    return paths
