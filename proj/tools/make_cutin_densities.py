# Copyright 2026 The scenlib Authors
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

"""Writes data/cutin_densities.json: per-parameter KDEs for the cut-in preset.

Samples are drawn once from fixed, seeded source distributions so the shipped
file is reproducible. Bandwidths follow Silverman's rule.
"""

import argparse
import json

import numpy as np


def silverman(x):
    sd = np.std(x, ddof=1)
    q75, q25 = np.percentile(x, [75, 25])
    spread = min(sd, (q75 - q25) / 1.34) if q75 > q25 else sd
    return 1.06 * spread * len(x) ** -0.2


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data/cutin_densities.json")
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--seed", type=int, default=20260101)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    n = args.samples
    ego = np.clip(rng.normal(25.0, 4.0, n), 8.0, 42.0)
    lead = np.clip(rng.normal(22.0, 4.0, n), 0.5, 42.0)
    gap = np.clip(32.0 * np.exp(0.45 * rng.normal(size=n)), 2.0, 95.0)
    decel = np.abs(rng.normal(0.0, 0.8, n))

    doc = {}
    for name, values in [
        ("ego_speed_0", ego),
        ("cutin_speed", lead),
        ("cutin_gap_0", gap),
        ("cutin_decel", decel),
    ]:
        values = [round(float(v), 4) for v in values]
        doc[name] = {"kernel": "gaussian", "h": round(float(silverman(np.array(values))), 6), "samples": values}
    with open(args.out, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
