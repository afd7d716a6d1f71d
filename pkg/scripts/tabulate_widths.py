"""Print tw, pw, ltw, lpw, rtw, rpw for a handful of small named graphs."""
import argparse
import json

from widthlab.graph import build_dary_tree, complete_graph, cycle_graph, path_graph, product, star_graph
from widthlab.oracles import (cap_for, exact_layered_pathwidth, exact_layered_treewidth, exact_pathwidth,
                              exact_row_pathwidth, exact_row_treewidth, exact_treewidth)

ORACLES = {
    "tw": exact_treewidth, "pw": exact_pathwidth,
    "ltw": exact_layered_treewidth, "lpw": exact_layered_pathwidth,
    "rtw": exact_row_treewidth, "rpw": exact_row_pathwidth,
}


def named_graphs():
    yield "K4", complete_graph(4)
    yield "K6", complete_graph(6)
    yield "C7", cycle_graph(7)
    yield "P8", path_graph(8)
    yield "star5", star_graph(5)
    yield "grid3x3", product(path_graph(3), path_graph(3), "cartesian")
    yield "K3xP3 strong", product(complete_graph(3), path_graph(3), "strong")
    yield "T_{2,2}", build_dary_tree(2, 2)[0]
    yield "T_{3,2}", build_dary_tree(3, 2)[0]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="one JSON object per line")
    args = ap.parse_args()
    if not args.json:
        print(f"{'graph':<14}{'n':>4}" + "".join(f"{k:>6}" for k in ORACLES))
    for name, g in named_graphs():
        row = {k: (f(g)[0] if g.n <= cap_for(k) else None) for k, f in ORACLES.items()}
        if args.json:
            print(json.dumps({"graph": name, "n": g.n, **row}))
        else:
            cells = "".join(f"{'-' if v is None else v:>6}" for v in row.values())
            print(f"{name:<14}{g.n:>4}{cells}")


if __name__ == "__main__":
    main()
