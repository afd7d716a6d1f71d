"""Exploratory: row pathwidth of complete binary trees T_{2,h} for small h.

Nothing here is a claim; the values are just what the exact oracles report
(with pw alongside, which is known to be ceil(h/2) for binary trees).
"""
import argparse

from widthlab.graph import build_dary_tree
from widthlab.oracles import cap_for, exact_pathwidth, exact_row_pathwidth, exact_row_treewidth


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-h", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    args = ap.parse_args()
    print(f"{'h':>3}{'n':>5}{'pw':>5}{'rtw':>5}{'rpw':>5}")
    for h in range(args.max_h + 1):
        tree, _ = build_dary_tree(args.d, h)
        if tree.n > cap_for("rpw"):
            print(f"{h:>3}{tree.n:>5}  over the rpw cap ({cap_for('rpw')}), stopping")
            break
        pw = exact_pathwidth(tree)[0]
        rtw = exact_row_treewidth(tree)[0]
        rpw = exact_row_pathwidth(tree)[0]
        print(f"{h:>3}{tree.n:>5}{pw:>5}{rtw:>5}{rpw:>5}")


if __name__ == "__main__":
    main()
