"""Per-update operation and space profile across stream lengths.

The insert-only pipeline's charged per-update maximum must not grow with
the stream length (that is the de-amortization claim); the dynamic
pipeline touches exactly (values per key)^2 samplers per update.  This
script prints the measured profiles plus wall-clock time per update.

Usage: python scripts/bench_update_time.py [--lengths 1000,10000,100000]
"""

import argparse
import time

from streammatch.trials import TrialConfig, measure


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lengths", default="1000,10000,100000")
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    lengths = tuple(int(x) for x in args.lengths.split(","))

    config = TrialConfig(model="insert", n=64, k=args.k, weights=5,
                         m=max(lengths), delta=0.5)
    start = time.perf_counter()
    profile = measure(config, lengths, seed=args.seed)
    elapsed = time.perf_counter() - start
    print("insert-only:")
    for m, entry in profile["per_length"].items():
        print(f"  m={m:>7}: max_update_ops={entry['max_update_ops']} "
              f"(budget {entry['budget']}), stored<= {entry['max_stored_edges_per_copy']} "
              f"(cap {entry['stored_bound_5q']})")
    print(f"  ratio of maxima: {profile['update_ops_ratio']:.4f}  "
          f"({elapsed / sum(lengths) * 1e6:.2f} us/update overall)")

    dyn_len = min(2000, max(lengths))
    config = TrialConfig(model="dynamic", n=50, k=args.k, weights=5, m=dyn_len)
    profile = measure(config, (dyn_len,), seed=args.seed)
    entry = profile["per_length"][dyn_len]
    print("dynamic:")
    print(f"  m={dyn_len}: touched/update={entry['touched_per_update']} "
          f"(pairs {entry['pairs_per_update']}), bank={entry['bank_size']} "
          f"(bound {entry['bank_bound']}), words={entry['abstract_words']}")


if __name__ == "__main__":
    main()
