#!/usr/bin/env python3
"""Completeness/soundness sweep over universe sizes and adversaries.

Runs seeded protocol trials per (m, adversary) cell and prints one JSON line
per cell: acceptance rates, wrong-accept rate, and mean communication/state
costs.  Everything is deterministic in --seed.

Usage:
    python scripts/run_experiments.py --trials 20 --seed 0
    python scripts/run_experiments.py --sizes 8 64 --adversaries none residue-lie
"""

import argparse
import json
import sys

import numpy as np

from f0sip.adversary import ADVERSARY_TAGS, make_prover
from f0sip.protocol import derive_params, run_interaction
from f0sip.reference import brute_force_f0


def run_cell(m: int, adversary: str, trials: int, seed: int) -> dict:
    accepts = wrong = 0
    comm = []
    state = []
    for t in range(trials):
        rng = np.random.default_rng([seed, m, t])
        stream = rng.integers(1, m + 1, size=4 * m).tolist()
        params, instances = derive_params(m, seed + t)
        prover = make_prover(None if adversary == "none" else adversary, seed=seed + t)
        out = run_interaction(stream, params, instances, prover, record_rounds=False)
        comm.append(out.comm_bits)
        state.append(out.verifier_state_bits)
        if out.verdict == "accept":
            accepts += 1
            if out.f0 != brute_force_f0(stream):
                wrong += 1
    return {
        "m": m, "adversary": adversary, "trials": trials, "seed": seed,
        "accept_rate": accepts / trials,
        "wrong_accept_rate": wrong / trials,
        "mean_comm_bits": sum(comm) / trials,
        "mean_state_bits": sum(state) / trials,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 64, 256])
    parser.add_argument("--adversaries", nargs="+",
                        default=["none", *ADVERSARY_TAGS])
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    for m in args.sizes:
        for adversary in args.adversaries:
            print(json.dumps(run_cell(m, adversary, args.trials, args.seed),
                             sort_keys=True))
            sys.stdout.flush()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
