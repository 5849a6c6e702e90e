"""Benchmark sweep: delimited metrics plus rendered comparison figures."""

from __future__ import annotations

import csv
import os
import sys
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .circuit_ir import CostModel, metrics
from .hamlib import HEISENBERG, ISING, LatticeSpec, generate
from .pipeline import compile_terms

PAPER_SUITE = [
    ("ising-2d-30", ISING, (5, 6)),
    ("ising-2d-60", ISING, (6, 10)),
    ("ising-3d-30", ISING, (2, 3, 5)),
    ("ising-3d-60", ISING, (3, 4, 5)),
    ("heisenberg-2d-30", HEISENBERG, (5, 6)),
    ("heisenberg-2d-60", HEISENBERG, (6, 10)),
    ("heisenberg-3d-30", HEISENBERG, (2, 3, 5)),
    ("heisenberg-3d-60", HEISENBERG, (3, 4, 5)),
]

SMALL_SUITE = [
    ("ising-2d-6", ISING, (2, 3)),
    ("heisenberg-2d-6", HEISENBERG, (2, 3)),
]

MODES = ("baseline", "ncf1q", "ncf2q")

CSV_FIELDS = [
    "benchmark", "model", "dims", "qubits", "n_terms", "mode", "window",
    "unitary_count", "unitary_depth", "structural_clifford_count",
    "eps_per_unitary", "est_t_count", "est_t_depth", "est_total_clifford",
    "compile_seconds",
]


def _bar_figure(rows: list[dict], metric: str, path: str) -> None:
    benchmarks = sorted({r["benchmark"] for r in rows})
    fig, ax = plt.subplots(figsize=(max(7, 1.3 * len(benchmarks)), 4.2))
    width = 0.8 / len(MODES)
    for mi, mode in enumerate(MODES):
        xs, ys = [], []
        for bi, bench in enumerate(benchmarks):
            row = next(r for r in rows if r["benchmark"] == bench and r["mode"] == mode)
            xs.append(bi + (mi - (len(MODES) - 1) / 2) * width)
            ys.append(row[metric])
        ax.bar(xs, ys, width=width, label=mode)
    ax.set_xticks(range(len(benchmarks)))
    ax.set_xticklabels(benchmarks, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel(metric)
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _ratio_figure(rows: list[dict], path: str) -> None:
    benchmarks = sorted({r["benchmark"] for r in rows})
    fig, ax = plt.subplots(figsize=(max(7, 1.3 * len(benchmarks)), 4.2))
    for mode, marker in (("ncf1q", "o"), ("ncf2q", "s")):
        ys = []
        for bench in benchmarks:
            base = next(r for r in rows if r["benchmark"] == bench and r["mode"] == "baseline")
            fused = next(r for r in rows if r["benchmark"] == bench and r["mode"] == mode)
            ys.append(fused["est_t_count"] / base["est_t_count"] if base["est_t_count"] else 0.0)
        ax.plot(range(len(benchmarks)), ys, marker=marker, label=f"{mode} / baseline")
    ax.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax.set_xticks(range(len(benchmarks)))
    ax.set_xticklabels(benchmarks, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("modeled T-count ratio")
    ax.set_ylim(bottom=0)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def run_report(
    out_dir: str = "reports",
    eps: float = 0.001,
    dt: float = 1.0,
    suite: str = "paper",
    window_1q: int = 4,
    window_2q: int = 128,
) -> list[str]:
    """Compile the suite in all modes; write metrics.csv and PNG figures."""
    os.makedirs(out_dir, exist_ok=True)
    model = CostModel(eps_base=eps)
    benches = PAPER_SUITE if suite == "paper" else SMALL_SUITE
    rows: list[dict] = []
    for name, kind, dims in benches:
        terms = generate(LatticeSpec(dims, kind, dt=dt))
        for mode in MODES:
            window = {"baseline": None, "ncf1q": window_1q, "ncf2q": window_2q}[mode]
            t0 = time.monotonic()
            program = compile_terms(terms, mode, window=window)
            elapsed = time.monotonic() - t0
            rep = metrics(program, model, len(terms))
            row = {
                "benchmark": name,
                "model": kind,
                "dims": "x".join(map(str, dims)),
                "qubits": program.n,
                "n_terms": len(terms),
                "mode": mode,
                "window": "" if window is None else window,
                "compile_seconds": round(elapsed, 4),
                **rep.to_dict(),
            }
            rows.append(row)
            print(
                f"{name:>18} {mode:>8}: {rep.unitary_count:4d} unitaries, "
                f"modeled T {rep.est_t_count:9.1f} ({elapsed:.2f}s)",
                file=sys.stderr,
            )
    csv_path = os.path.join(out_dir, "metrics.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    outputs = [csv_path]
    for metric in ("est_t_count", "est_t_depth", "est_total_clifford", "unitary_count"):
        path = os.path.join(out_dir, f"{metric}.png")
        _bar_figure(rows, metric, path)
        outputs.append(path)
    ratio_path = os.path.join(out_dir, "t_count_ratio.png")
    _ratio_figure(rows, ratio_path)
    outputs.append(ratio_path)
    return outputs
