"""Regenerate data/stieltjes.tsv from mpmath.

Usage: python3 tools/gen_stieltjes.py [MAX_INDEX] [DIGITS] > data/stieltjes.tsv
"""
import sys

import mpmath

max_index = int(sys.argv[1]) if len(sys.argv) > 1 else 40
digits = int(sys.argv[2]) if len(sys.argv) > 2 else 80

mpmath.mp.dps = digits + 20
print(f"# Stieltjes constants gamma_n, n = 0..{max_index}, {digits} significant digits")
print("# source: mpmath.stieltjes at %d working digits" % mpmath.mp.dps)
for n in range(max_index + 1):
    print(f"{n}\t{mpmath.nstr(mpmath.stieltjes(n), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)}")
