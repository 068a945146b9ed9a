"""Command-line front end: protocol runs, batch experiments, update-cost bench."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections import Counter

import numpy as np

from .adversary import ADVERSARY_TAGS, make_prover
from .protocol import derive_params, per_symbol_field_ops, run_interaction
from .reference import brute_force_f0


def _default_seed() -> int:
    env = os.environ.get("SIP_F0_SEED")
    return int(env) if env else 0


def _read_stream(path: str, m: int) -> list[int]:
    fh = sys.stdin if path == "-" else open(path)
    try:
        symbols = []
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                a = int(line)
            except ValueError:
                raise SystemExit(f"error: malformed symbol on line {lineno}: {line!r}")
            if not 1 <= a <= m:
                raise SystemExit(f"error: symbol {a} on line {lineno} outside [1..{m}]")
            symbols.append(a)
        return symbols
    finally:
        if fh is not sys.stdin:
            fh.close()


def _single_run(m: int, seed: int, stream, adversary: str | None, delta: int = 1):
    params, instances = derive_params(m, seed)
    prover = make_prover(adversary, delta=delta, seed=seed)
    return run_interaction(stream, params, instances, prover)


def cmd_run(args) -> int:
    stream = _read_stream(args.stream, args.universe)
    transcripts = []
    for rep in range(args.repeat):
        t = _single_run(args.universe, args.seed + rep, stream, args.adversary)
        transcripts.append(t)
    accepted = [t.f0 for t in transcripts if t.verdict == "accept"]
    if accepted:
        value, votes = Counter(accepted).most_common(1)[0]
        ok = votes * 2 > args.repeat if args.repeat > 1 else True
    else:
        value, ok = None, False
    if args.transcript:
        with open(args.transcript, "w") as fh:
            fh.write(transcripts[0].to_json())
    if ok:
        print(f"F0 = {value}")
        print("verdict: accept")
        return 0
    print("F0 = ⊥")
    print("verdict: reject")
    return 2


def cmd_experiment(args) -> int:
    m = args.universe
    n = 4 * m
    honest_accepts = 0
    adv_accepts = 0
    wrong_accepts = 0
    comm = []
    state = []
    for t in range(args.trials):
        rng = np.random.default_rng([args.seed, t])
        stream = rng.integers(1, m + 1, size=n).tolist()
        true_f0 = brute_force_f0(stream)
        honest = _single_run(m, args.seed + t, stream, None)
        if honest.verdict == "accept" and honest.f0 == true_f0:
            honest_accepts += 1
        comm.append(honest.comm_bits)
        state.append(honest.verifier_state_bits)
        if args.adversary not in (None, "none"):
            adv = _single_run(m, args.seed + t, stream, args.adversary)
            if adv.verdict == "accept":
                adv_accepts += 1
                if adv.f0 != true_f0:
                    wrong_accepts += 1
    stats = {
        "m": m, "n": n, "trials": args.trials, "seed": args.seed,
        "adversary": args.adversary or "none",
        "accept_rate_honest": honest_accepts / args.trials,
        "accept_rate_adversary": adv_accepts / args.trials,
        "wrong_accept_rate": wrong_accepts / args.trials,
        "mean_comm_bits": sum(comm) / len(comm),
        "mean_state_bits": sum(state) / len(state),
    }
    payload = json.dumps(stats, sort_keys=True)
    if args.stats:
        with open(args.stats, "w") as fh:
            fh.write(payload)
    print(payload)
    return 0


def cmd_bench(args) -> int:
    rows = []
    for e in range(4, 13):
        m = 1 << e
        params, instances = derive_params(m, args.seed)
        ops = per_symbol_field_ops(instances, params.d)
        # wall-clock for a short per-symbol ingest, informational only
        from .protocol import VerifierStreamState
        state = VerifierStreamState(params, instances)
        n_probe = 32
        start = time.perf_counter_ns()
        for a in ((k % m) + 1 for k in range(n_probe)):
            state.ingest_symbol(a)
        wall = (time.perf_counter_ns() - start) // n_probe
        rows.append({"m": m, "d": params.d, "per_symbol_field_ops": ops,
                     "wall_ns_per_symbol": wall})
    by_m = {r["m"]: r for r in rows}
    report = {
        "seed": args.seed,
        "per_symbol": rows,
        "ops_ratio_4096_vs_64": by_m[4096]["per_symbol_field_ops"] / by_m[64]["per_symbol_field_ops"],
        "d_squared_ratio": (12 / 6) ** 2,
    }
    print(json.dumps(report, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="f0sip",
                                     description="Streaming interactive proof for exact distinct counting")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_universe=True):
        if need_universe:
            p.add_argument("--universe", type=int, required=True, metavar="m")
        p.add_argument("--seed", type=int, default=_default_seed())
        p.add_argument("--adversary", choices=("none",) + ADVERSARY_TAGS, default="none")

    p_run = sub.add_parser("run", help="run the protocol over one stream")
    common(p_run)
    p_run.add_argument("--stream", default="-", help="path to symbol-per-line input, or - for stdin")
    p_run.add_argument("--transcript", default=None, help="write transcript JSON here")
    p_run.add_argument("--repeat", type=int, default=1,
                       help="rerun with fresh seeds and majority-vote the output")
    p_run.set_defaults(func=cmd_run)

    p_exp = sub.add_parser("experiment", help="batch completeness/soundness measurement")
    common(p_exp)
    p_exp.add_argument("--trials", type=int, default=20)
    p_exp.add_argument("--stats", default=None, help="write stats JSON here")
    p_exp.set_defaults(func=cmd_experiment)

    p_bench = sub.add_parser("bench", help="per-symbol verifier cost across universe sizes")
    p_bench.add_argument("--seed", type=int, default=_default_seed())
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "adversary", "none") == "none":
        args.adversary = None
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        raise


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
