#!/usr/bin/env python3
"""Run the CLI over the bundled example grids and compare (or refresh) the
golden outputs in tests/golden.

    python scripts/corpus_runner.py            # compare, exit 1 on any difference
    python scripts/corpus_runner.py --update   # rewrite the golden files
"""
import argparse
import io
import os
import sys

from gridhom import data_path
from gridhom.cli import run

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
GOLDEN = os.path.join(ROOT, "tests", "golden")

CASES = {
    "trefoil_alexander": ["alexander", data_path("trefoil.json")],
    "trefoil_homology": ["homology", data_path("trefoil.json")],
    "trefoil_info": ["info", data_path("trefoil.json")],
    "t34_homology_top": ["homology", data_path("t34.json"), "--strata", "g,g-1,g-2"],
    "t34_unknot": ["unknot", data_path("t34.json")],
    "13n241_report": ["diagonal-report", data_path("13n241.json"), "--assert-minimal"],
    "13n241_top_strata": ["homology", data_path("13n241.json"), "--strata", "g,g-1,g-2"],
    "10_139_family": ["braid2grid", "--family", "4,3", "--twists", "1"],
    "10_139_alexander": ["alexander", data_path("10_139_diagonal.json"), "--method", "fox"],
    "trefoil_sum": ["connect-sum", data_path("trefoil.json"), data_path("trefoil.json")],
    "partition_6": ["aux", "partition", "6"],
    "planar_example": ["aux", "planar", data_path("planar_example.json")],
}


def produce(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue()


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--update", action="store_true")
    args = ap.parse_args(argv)
    os.makedirs(GOLDEN, exist_ok=True)
    bad = 0
    for name, cmd in CASES.items():
        code, text = produce(cmd)
        path = os.path.join(GOLDEN, name + ".json")
        if code != 0:
            print(f"{name}: exit {code}", file=sys.stderr)
            bad += 1
            continue
        if args.update:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            continue
        with open(path, encoding="utf-8") as fh:
            same = fh.read() == text
        print(f"{name}: {'ok' if same else 'DIFFERS'}")
        bad += not same
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
