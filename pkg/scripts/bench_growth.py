"""Rewrite-step growth of the direct decomposition against the trace path.

    python scripts/bench_growth.py [--seed 1] [--no-timing]
"""

import argparse
import json
import math

from fuzzysphere.config import BenchConfig
from fuzzysphere.matrep import bench_decompose


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--no-timing", action="store_true")
    args = ap.parse_args()
    cfg = BenchConfig(seed=args.seed, timing=not args.no_timing)

    rows = [bench_decompose(d, trials=cfg.trials, seed=cfg.seed, words=cfg.words) for d in cfg.degrees]
    for prev, cur in zip(rows, rows[1:]):
        # local exponent of steps ~ degree^k
        cur["local_exponent"] = round(
            math.log(cur["direct_rewrite_steps"] / prev["direct_rewrite_steps"]) / math.log(cur["degree"] / prev["degree"]),
            2,
        )
    if not cfg.timing:
        for r in rows:
            r.pop("fast_ms"), r.pop("direct_ms")
    print(json.dumps({"config": {"trials": cfg.trials, "words": cfg.words, "seed": cfg.seed}, "rows": rows}, indent=1))


if __name__ == "__main__":
    main()
