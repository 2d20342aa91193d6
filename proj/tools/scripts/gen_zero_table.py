#!/usr/bin/env python3
"""Write ordinates of the nontrivial zeta zeros to a text table.

Uses python-flint (arb) rigorous zero isolation. Output is one ordinate
per line, ascending, with a '#' header line.
"""
import argparse
import sys

import flint


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, required=True)
    ap.add_argument("--chunk", type=int, default=2000)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    flint.ctx.prec = 80
    with open(args.out, "w") as fh:
        fh.write(f"# zeta zero ordinates 1..{args.count} (python-flint acb.zeta_zeros)\n")
        n = 1
        while n <= args.count:
            k = min(args.chunk, args.count - n + 1)
            for z in flint.acb.zeta_zeros(n, k):
                fh.write(f"{float(z.imag.mid()):.12f}\n")
            fh.flush()
            n += k
            print(n - 1, file=sys.stderr, flush=True)


if __name__ == "__main__":
    main()
