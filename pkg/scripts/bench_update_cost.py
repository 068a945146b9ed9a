#!/usr/bin/env python3
"""Per-symbol verifier cost across universe sizes.

Reports the exact counted field operations per ingested symbol for
m = 2^4 .. 2^12 together with measured wall-clock per symbol, and the growth
ratio against the d^2 reference curve.

Usage:
    python scripts/bench_update_cost.py [--seed S] [--probe N]
"""

import argparse
import json
import time

from f0sip.protocol import VerifierStreamState, derive_params, per_symbol_field_ops


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--probe", type=int, default=64,
                        help="symbols to ingest when timing each m")
    args = parser.parse_args()
    rows = []
    for e in range(4, 13):
        m = 1 << e
        params, instances = derive_params(m, args.seed)
        state = VerifierStreamState(params, instances)
        start = time.perf_counter_ns()
        for k in range(args.probe):
            state.ingest_symbol((k % m) + 1)
        wall = (time.perf_counter_ns() - start) // args.probe
        rows.append({"m": m, "d": params.d,
                     "per_symbol_field_ops": per_symbol_field_ops(instances, params.d),
                     "wall_ns_per_symbol": wall})
    by_m = {r["m"]: r for r in rows}
    print(json.dumps({
        "seed": args.seed,
        "per_symbol": rows,
        "ops_ratio_4096_vs_64": by_m[4096]["per_symbol_field_ops"] / by_m[64]["per_symbol_field_ops"],
        "d_squared_ratio": (12 / 6) ** 2,
    }, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
