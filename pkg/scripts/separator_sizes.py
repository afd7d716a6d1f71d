"""Vertex counts of the separator family G_{s,k,w} and of the witness graphs."""
import argparse

from widthlab.constructions import copy_count, separator_graph_size, witness_parameters
from widthlab.constructions.separator import DEFAULT_BUDGET


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-s", type=int, default=4)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--w", type=int, default=1)
    args = ap.parse_args()
    print(f"{'s':>3}{'k':>3}{'w':>3}{'N':>10}{'vertices':>26}  fits budget")
    for k in range(1, args.max_k + 1):
        for s in range(args.max_s + 1):
            n = separator_graph_size(s, k, args.w)
            print(f"{s:>3}{k:>3}{args.w:>3}{copy_count(s, k, args.w):>10}{n:>26}  {n <= DEFAULT_BUDGET}")
    print()
    for k in range(1, args.max_k + 1):
        lw, s = witness_parameters(k)
        n = separator_graph_size(s, k, 1)
        print(f"witness({k}): separator layered width {lw}, s = {s}, {n} vertices before subdividing")


if __name__ == "__main__":
    main()
