#!/usr/bin/env python3
"""Enumerate diagonal knot grids of size <= N and write one JSON line per grid.

Fields: sigma, size, genus, alexander (offset, coeffs), top / next hat dims,
m (null on grids with an X next to an O), and whether the Alexander
polynomial looks like a (2, q) torus knot.
"""
import argparse
import json
import sys

from gridhom.diagonal import essential_pair_count, top_report
from gridhom.errors import AdjacencyViolation
from gridhom.grid import all_diagonal_grids, to_sigma
from gridhom.planar import fox_alexander_grid


def census(max_n: int, min_n: int = 2):
    for n in range(min_n, max_n + 1):
        for G in all_diagonal_grids(n):
            tr = top_report(G)
            delta = fox_alexander_grid(G)
            off, coeffs = delta.to_list()
            row = {"size": n, "sigma": to_sigma(G), "genus": tr.genus,
                   "alexander": {"offset": off, "coeffs": coeffs},
                   "top": {str(k): v for k, v in sorted(tr.top.items())},
                   "next": {str(k): v for k, v in sorted(tr.next.items())}}
            try:
                ec = essential_pair_count(G, delta)
                row["m"], row["two_bridge_torus"] = ec.m, ec.two_bridge_torus
            except AdjacencyViolation:
                row["m"], row["two_bridge_torus"] = None, None
            yield row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    count = 0
    for row in census(args.max_n, args.min_n):
        out.write(json.dumps(row, separators=(",", ":")) + "\n")
        count += 1
    print(f"{count} diagonal knot grids", file=sys.stderr)
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
