#!/usr/bin/env python3
"""Independent Kunneth oracle for tensor powers of a curve degeneration.

Computes expected E2 dimensions of the k-fold tensor power of the middle
weight-graded slice of an n-gon page by direct convolution of the per-weight
dimension vector (1 at weight 0, 1 at weight 2), without touching the engine's
page machinery.  Used to cross-check the totally degenerate product tests.

Usage: kunneth_oracle.py [power]
"""

import sys


def convolve(a, b):
    out = {}
    for wa, da in a.items():
        for wb, db in b.items():
            out[wa + wb] = out.get(wa + wb, 0) + da * db
    return out


def curve_h1_weights():
    # one weight-0 class and one weight-2 class on the middle slice
    return {0: 1, 2: 1}


def tensor_power_weights(k):
    acc = {0: 1}
    for _ in range(k):
        acc = convolve(acc, curve_h1_weights())
    return acc


def main():
    k = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    dims = tensor_power_weights(k)
    print(f"expected E2 dims of the {k}-fold power at abutment degree {k}:")
    for w in sorted(dims):
        print(f"  weight {w}: dim {dims[w]}  (cell i={k - w}, j={w})")


if __name__ == "__main__":
    main()
