#!/usr/bin/env python3
# Copyright 2026 The stagegen Authors
# SPDX-License-Identifier: Apache-2.0
"""Reference SplitMix64 written from the published algorithm, independent of
the C++ library. Regenerates the known-answer vectors under tests/data/.

Usage: splitmix_oracle.py <output-dir>
"""

import sys
from pathlib import Path

MASK = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


def mix_gamma(z):
    z = ((z ^ (z >> 33)) * 0xFF51AFD7ED558CCD) & MASK
    z = ((z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53) & MASK
    z = (z ^ (z >> 33)) | 1
    if bin(z ^ (z >> 1)).count("1") < 24:
        z ^= 0xAAAAAAAAAAAAAAAA
    return z


class SplitMix:
    def __init__(self, seed, gamma=GOLDEN_GAMMA):
        self.seed = seed & MASK
        self.gamma = gamma

    def next_seed(self):
        self.seed = (self.seed + self.gamma) & MASK
        return self.seed

    def next_u64(self):
        return mix64(self.next_seed())

    def split(self):
        s = mix64(self.next_seed())
        g = mix_gamma(self.next_seed())
        return SplitMix(s, g)

    def int_in_range(self, lo, hi):
        rng = hi - lo + 1
        if rng == 1 << 64:
            v = self.next_u64()
            return v - (1 << 64) if v >= 1 << 63 else v
        mask = 0
        while mask < rng - 1:
            mask = (mask << 1) | 1
        while True:
            d = self.next_u64() & mask
            if d < rng:
                return lo + d


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "splitmix64_kat.txt", "w") as f:
        for k in range(10):
            g = SplitMix(k)
            for _ in range(1000):
                f.write("%016x\n" % g.next_u64())
    with open(out / "splitmix64_split_kat.txt", "w") as f:
        for k in range(10):
            child = SplitMix(k).split()
            f.write("%016x %016x" % (child.seed, child.gamma))
            for _ in range(4):
                f.write(" %016x" % child.next_u64())
            f.write("\n")
    with open(out / "int_in_range_kat.txt", "w") as f:
        for k in range(10):
            for lo, hi in [(0, 100), (0, 1), (-5, 5), (5, 5), (0, 9), (-(1 << 63), (1 << 63) - 1)]:
                g = SplitMix(k)
                vals = [g.int_in_range(lo, hi) for _ in range(8)]
                f.write("%d %d %d %s %016x\n" % (k, lo, hi, " ".join(map(str, vals)), g.seed))


if __name__ == "__main__":
    main()
