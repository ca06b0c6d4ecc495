#!/usr/bin/env python3
# Copyright 2026 The revsep Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Aggregate one or more sweep.csv files into a mean +- std table.

usage: aggregate_sweep.py sweep.csv [more.csv ...] [--metric bss_sdr_db]
"""

import argparse
import csv
import math
import statistics
import sys
from collections import OrderedDict

SCHEMA_VERSION = "1"
METRICS = ("bss_sdr_db", "si_sdr_db", "th_sdr_loss_db", "wdo", "mtfa_error_db")


def load(paths):
    rows = []
    for path in paths:
        with open(path, newline="") as f:
            for row in csv.DictReader(f):
                if row["schema_version"] != SCHEMA_VERSION:
                    sys.exit(f"{path}: unsupported schema_version {row['schema_version']}")
                rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv", nargs="+")
    ap.add_argument("--metric", action="append", choices=METRICS)
    args = ap.parse_args()
    metrics = args.metric or list(METRICS)

    cells = OrderedDict()
    for row in load(args.csv):
        key = (row["stft"], row["mask_kind"], row["mask_mode"], row["condition_t60"])
        cells.setdefault(key, []).append(row)

    print("stft\tmask\tmode\tt60\tn\t" + "\t".join(metrics))
    for (stft, kind, mode, t60), rows in cells.items():
        out = [stft, kind, mode, f"{float(t60):g}", str(len(rows))]
        for m in metrics:
            vals = [float(r[m]) for r in rows if r[m] != "nan"]
            vals = [v for v in vals if not math.isnan(v)]
            if not vals:
                out.append("-")
                continue
            sd = statistics.stdev(vals) if len(vals) > 1 else 0.0
            out.append(f"{statistics.fmean(vals):.2f}+-{sd:.2f}")
        print("\t".join(out))


if __name__ == "__main__":
    main()
