#!/usr/bin/env python3
"""Variable selection on the prostate clinical dataset (97 x 9 CSV).

Standardizes the eight clinical covariates and the log-PSA response, fits
OLS, ridge (lambda = sqrt(n)), and adaptive ridge (xi = 1, 5 steps), and
reports the selected relevant set per penalty pair. With --interactions the
design is expanded to all 36 pairwise-product predictors (re-standardized)
and the sizes of the selected sets are reported instead.

The CSV must carry a header with columns
  lcavol, lweight, age, lbph, svi, lcp, gleason, pgg45, lpsa
(the 'train' split column from the classic distribution, if present, must be
removed first).

Usage:
  python scripts/prostate_analysis.py --input data/prostate.csv
  python scripts/prostate_analysis.py --input data/prostate.csv --interactions
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from threshsel import (
    EstimatorConfig,
    PenaltySpec,
    build_empirical_path,
    interaction_expand,
    load_csv,
    select_threshold,
    standardize,
)

PAIRS = [PenaltySpec(0.5, 0.25), PenaltySpec(0.75, 0.4), PenaltySpec(1.0, 0.5)]
ESTIMATORS = ["ols", "ridge", "ar"]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--input", required=True, help="prostate CSV path")
    parser.add_argument("--response", default="lpsa")
    parser.add_argument("--interactions", action="store_true")
    args = parser.parse_args()

    data = load_csv(args.input, response_column=args.response)
    print(f"loaded {data.n_obs} x {data.n_features} from {args.input}")
    data, _ = standardize(data, include_response=True)
    if args.interactions:
        data, _ = interaction_expand(data)
        data, _ = standardize(data)
        print(f"expanded to p = {data.n_features} predictors")

    header = "estimator".ljust(10) + "".join(
        f"(c={p.c:g},r={p.r:g})".rjust(28) for p in PAIRS
    )
    print(header)
    for method in ESTIMATORS:
        beta = EstimatorConfig(method=method).fit(data)
        path = build_empirical_path(beta)
        cells = []
        for pair in PAIRS:
            result = select_threshold(data, beta, path, pair)
            labels = [data.labels[j] for j in result.relevant_set]
            cells.append(
                str(len(labels)) if args.interactions else "{" + ",".join(labels) + "}"
            )
        print(method.ljust(10) + "".join(c.rjust(28) for c in cells))


if __name__ == "__main__":
    main()
