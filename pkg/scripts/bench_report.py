#!/usr/bin/env python3
"""Run the motor-vs-matrix micro-benchmarks over a range of iteration counts
and print both report forms."""

import argparse

from cgabp.bench import bench_compose, bench_placement


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--counts", type=int, nargs="+", default=[1000, 5000])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kv", action="store_true", help="also print key=value lines")
    args = ap.parse_args()

    for count in args.counts:
        for report in (bench_compose(count, args.seed), bench_placement(max(count // 10, 1), args.seed)):
            print(report.as_text())
            if args.kv:
                print(report.as_kv_lines())
            print()


if __name__ == "__main__":
    main()
