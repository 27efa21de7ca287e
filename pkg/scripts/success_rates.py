"""Success-rate sweep for both pipelines on planted streams.

Prints, per parameter k, the fraction of trials in which the streamed
answer matches the planted optimum, for the dynamic sketch (exact and
rounded weights) and for the insert-only pipeline at several copy counts.

Usage: python scripts/success_rates.py [--trials N] [--seed S]
"""

import argparse

from streammatch.trials import TrialConfig, run_trials


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'model':<16} {'k':>2} {'copies':>6} {'success':>8} {'returned':>8} {'violations':>10}")
    for k in (1, 2, 3, 4):
        for model, eps in (("dynamic", None), ("dynamic-approx", 0.1)):
            config = TrialConfig(model=model, n=50, k=k, weights=5, m=300,
                                 del_rate=0.5, eps=eps)
            rep = run_trials(config, args.trials, seed=args.seed)
            print(f"{model:<16} {k:>2} {'-':>6} {rep.successes / rep.trials:>8.3f} "
                  f"{rep.returned:>8} {rep.one_sided_violations:>10}")
    for k in (1, 2):
        for delta, copies in ((0.5, 1), (0.25, 2), (1 / 16, 4)):
            config = TrialConfig(model="insert", n=50, k=k, weights=5, m=600, delta=delta)
            rep = run_trials(config, args.trials, seed=args.seed)
            print(f"{'insert':<16} {k:>2} {copies:>6} {rep.successes / rep.trials:>8.3f} "
                  f"{rep.returned:>8} {rep.one_sided_violations:>10}")


if __name__ == "__main__":
    main()
