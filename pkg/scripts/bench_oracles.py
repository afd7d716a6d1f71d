"""Wall-clock timings of the exact oracles on random graphs."""
import argparse
import random
import statistics
import time
from dataclasses import dataclass

from widthlab.oracles import (exact_layered_pathwidth, exact_layered_treewidth, exact_pathwidth,
                              exact_row_pathwidth, exact_row_treewidth, exact_treewidth)
from widthlab.sampling import GraphSampler


@dataclass
class BenchConfig:
    samples: int = 20
    seed: int = 0
    p: float = 0.35


CASES = [
    ("tw", exact_treewidth, 16),
    ("pw", exact_pathwidth, 14),
    ("ltw", exact_layered_treewidth, 10),
    ("lpw", exact_layered_pathwidth, 9),
    ("rtw", exact_row_treewidth, 8),
    ("rpw", exact_row_pathwidth, 8),
]


def run(cfg: BenchConfig):
    rng = random.Random(cfg.seed)
    print(f"{'oracle':<6}{'n':>4}{'mean ms':>10}{'max ms':>10}")
    for name, solve, n in CASES:
        sampler = GraphSampler(n, n, cfg.p, connected=True)
        times = []
        for _ in range(cfg.samples):
            g = sampler.draw(rng)
            start = time.perf_counter()
            solve(g)
            times.append(1000 * (time.perf_counter() - start))
        print(f"{name:<6}{n:>4}{statistics.mean(times):>10.1f}{max(times):>10.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=BenchConfig.samples)
    ap.add_argument("--seed", type=int, default=BenchConfig.seed)
    ap.add_argument("--p", type=float, default=BenchConfig.p)
    args = ap.parse_args()
    run(BenchConfig(args.samples, args.seed, args.p))


if __name__ == "__main__":
    main()
