#!/usr/bin/env python3
# Copyright 2026 The Hoverride Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Recomputes the RMSE fields of a run from its trajectory CSV.

Usage: recompute_metrics.py RUN_DIR [--tol 1e-9]

Exits 1 when a recomputed value differs from metrics.txt by more than tol.
"""

import argparse
import csv
import math
import pathlib
import sys


def windowed_rmse(rows, err_cols, window_col):
    total = 0.0
    n = 0
    for r in rows:
        if r[window_col] != "1":
            continue
        e = float(r[err_cols[0]]) - float(r[err_cols[1]])
        total += e * e
        n += 1
    return (math.sqrt(total / n) if n else 0.0), n


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("run_dir", type=pathlib.Path)
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args()

    with open(args.run_dir / "trajectory.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    metrics = {}
    with open(args.run_dir / "metrics.txt") as f:
        for line in f:
            key, _, value = line.rstrip("\n").partition("=")
            metrics[key] = value

    checks = {
        "velocity_rmse": windowed_rmse(rows, ("v", "v_d"), "vel_window"),
        "yaw_rate_rmse": windowed_rmse(rows, ("psi_dot", "psi_dot_d"),
                                       "yaw_window"),
    }
    ok = True
    for key, (value, n) in checks.items():
        reported = float(metrics[key])
        diff = abs(value - reported)
        status = "ok" if diff <= args.tol else "MISMATCH"
        ok &= diff <= args.tol
        print(f"{key}: recomputed={value:.17g} reported={reported:.17g} "
              f"samples={n} diff={diff:.3g} {status}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
