"""Reproduce the divergence of prefix minimum norms for triangular systems.

Builds two triangular systems (geometric base 2^-j and harmonic base 1/j),
computes the prefix minimum-norm trace, compares it with the certified lower
bounds 1/||row_r||_2, and prints the boundedness verdict at a few levels.

Usage: python scripts/helly_divergence.py [r_max] [out.csv]
"""

import csv
import math
import sys

from ellq import (
    HellySpec,
    PowerLaw,
    certify,
    geometric_base,
    helly_lower_bound,
    helly_system,
    make_conjugate,
    norm_trace,
)


def run(label, base, r_max, writer):
    spec = HellySpec(base, make_conjugate(2), r_max)
    trace = norm_trace(helly_system(spec), r_max, 1e-8)
    print(f"\n{label}: prefix minimum norms")
    for entry in trace.entries:
        lb = helly_lower_bound(spec, entry.r, 1e-9).estimate.real
        print(f"  r={entry.r:2d}  m_r={entry.norm.estimate.real:14.6f}  "
              f"1/||row_r||={lb:14.6f}  status={entry.status}")
        writer.writerow([label, entry.r, repr(entry.norm.estimate.real),
                         repr(entry.norm.error_bound), repr(lb), entry.status])
    for level in (10.0, 1000.0):
        print(f"  certify(M={level:g}): {certify(trace, level).verdict}")


def main():
    r_max = int(sys.argv[1]) if len(sys.argv) > 1 else 12
    out = sys.argv[2] if len(sys.argv) > 2 else "helly_trace.csv"
    with open(out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["base", "r", "min_norm", "error_bound", "lower_bound", "status"])
        run("geometric 2^-j", geometric_base(0.5, 64), r_max, writer)
        run("harmonic 1/j", PowerLaw(1.0), min(r_max, 8), writer)
    print(f"\nwrote {out}")


if __name__ == "__main__":
    main()
