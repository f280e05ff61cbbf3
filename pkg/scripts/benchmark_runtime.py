#!/usr/bin/env python3
"""Benchmark the end-to-end pipeline on synthetic fixture pairs.

Prints per-stage timings and the total wall-clock time for a few image
sizes, plus CG iteration counts for the smoothing solver.

Usage: python3 scripts/benchmark_runtime.py [--sizes 128 224 320] [--runs 3]
"""

from __future__ import annotations

import argparse
import statistics
import tempfile
from pathlib import Path

from makeuplab.pipeline import PipelineConfig, run_pipeline
from makeuplab.synthetic import make_fixture_pair, write_fixture


def bench_size(side: int, runs: int) -> None:
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        plain, makeup = make_fixture_pair(side, side, seed=0)
        in_paths = write_fixture(tmp, "input", plain)
        ref_paths = write_fixture(tmp, "reference", makeup)
        config = PipelineConfig(
            input_image=in_paths["image"],
            input_landmarks=in_paths["landmarks"],
            input_labels=in_paths["labels"],
            reference_image=ref_paths["image"],
            reference_landmarks=ref_paths["landmarks"],
            reference_labels=ref_paths["labels"],
            out_path=tmp / "out.png",
        )
        totals = []
        report = None
        for _ in range(runs):
            report = run_pipeline(config)
            totals.append(report.total_seconds)
        assert report is not None
        print(f"\n{side}x{side} ({runs} runs)")
        print(f"  total: median {statistics.median(totals):.3f}s "
              f"min {min(totals):.3f}s max {max(totals):.3f}s")
        for stage in report.stages:
            print(f"  {stage.name:>10s}: {stage.seconds * 1000:8.1f} ms")
        for name, iters in report.solver_iterations.items():
            print(f"  {name}: {iters} CG iterations")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[128, 224, 320])
    parser.add_argument("--runs", type=int, default=3)
    args = parser.parse_args()
    for side in args.sizes:
        bench_size(side, args.runs)


if __name__ == "__main__":
    main()
