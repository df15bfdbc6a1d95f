#!/usr/bin/env python3
"""Timing sketch for label <-> ideal conversion at large norms.

The DP rank/unrank pair should scale with log N (given the factorization),
not with the number of ideals of that norm.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from idealorder.field_model import load_fixture
from idealorder.ideal_order import IdealContext, count_norm, rank, unrank, parse_label

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    ctx = IdealContext(load_fixture(FIXTURES / "field-3-2.json"))
    for N in (108, 2 ** 10 * 3 ** 5, 2 ** 20 * 3 ** 12, 2 ** 40 * 3 ** 20 * 7 ** 8):
        c = count_norm(ctx, N)
        if c == 0:
            print(f"N={N}: empty fiber")
            continue
        lbl = parse_label(f"{N}.{(c + 1) // 2}")
        t0 = time.perf_counter()
        a = unrank(ctx, lbl)
        mid = time.perf_counter()
        back = rank(ctx, a)
        t1 = time.perf_counter()
        assert (back.norm, back.index) == (lbl.norm, lbl.index)
        print(
            f"N={N} ({c} ideals): unrank {1e3 * (mid - t0):.2f} ms, "
            f"rank {1e3 * (t1 - mid):.2f} ms"
        )


if __name__ == "__main__":
    main()
