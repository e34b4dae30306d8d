#!/usr/bin/env python3
"""Benchmark the compiled divisor-scan kernel against the pure-Python twin.

Runs the same classification scans through both lanes, times them, and
checks the reports agree bit for bit.

    python3 benchmarks/bench_scan.py [--kmax 1000000] [--prec 128]
"""

import argparse
import time

from heisencoh import _scan
from heisencoh.diophantine import classify
from heisencoh.precision import PrecisionReal, liouville_constant


def run_case(name, t, kmax):
    times = {}
    reports = {}
    for label, flag in (("pure-python", False), ("compiled", True)):
        if flag and not _scan.compiled_available():
            continue
        t0 = time.perf_counter()
        rep = classify(t, kmax, use_compiled=flag)
        times[label] = time.perf_counter() - t0
        d = rep.to_dict()
        d.pop("lane")
        reports[label] = d
    print(f"\n{name} (kmax = {kmax}):")
    print(f"  pure-python: {times['pure-python']:8.3f} s")
    if "compiled" in times:
        ratio = times["pure-python"] / times["compiled"]
        print(f"  compiled:    {times['compiled']:8.3f} s  ({ratio:.1f}x speedup)")
        same = reports["compiled"] == reports["pure-python"]
        print(f"  reports identical: {same}")
        if not same:
            raise SystemExit("lane mismatch!")
    else:
        print("  compiled:    not built")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=10**6)
    ap.add_argument("--prec", type=int, default=128)
    args = ap.parse_args()

    golden = PrecisionReal.parse("golden", args.prec)
    run_case("golden ratio", golden, args.kmax)
    run_case("base-10 Liouville constant", liouville_constant(args.prec), args.kmax)


if __name__ == "__main__":
    main()
