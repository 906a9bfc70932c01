"""q-indexed table for the clock-shift model of the rotation algebra.

For each q: how far sampled spectrum points sit from |z0| = |z1|, and the
normalized-trace periods on the outer and inner loops (both 2 pi i). No rate
in q is claimed; the table only shows how the finite models behave.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from projspec.demos import clock_shift_pair, rotation_period_experiment, rotation_spectrum_locus

TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class Config:
    qs: tuple[int, ...] = (2, 4, 8, 16, 32, 64)
    lines: int = 50
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    rows = []
    for q in cfg.qs:
        start = time.perf_counter()
        locus = rotation_spectrum_locus(q, cfg.lines, cfg.seed)
        outer = rotation_period_experiment(q, outer=True)
        inner = rotation_period_experiment(q, outer=False)
        rows.append(
            {
                "q": q,
                "points": len(locus.points),
                "deviation": locus.deviation,
                "commutation": clock_shift_pair(q).commutation_defect(),
                "outer_err": abs(outer.value - TWO_PI_I),
                "inner_err": abs(inner.value - TWO_PI_I),
                "seconds": time.perf_counter() - start,
            }
        )
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, nargs="+", default=list(Config.qs))
    parser.add_argument("--lines", type=int, default=Config.lines)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args()
    rows = run(Config(tuple(args.q), args.lines, args.seed))
    print(f"{'q':>4} {'points':>7} {'max||z0|-|z1||':>15} {'|VU-wUV|':>10} {'outer err':>10} {'inner err':>10} {'sec':>6}")
    for r in rows:
        print(
            f"{r['q']:>4} {r['points']:>7} {r['deviation']:>15.2e} {r['commutation']:>10.1e} "
            f"{r['outer_err']:>10.2e} {r['inner_err']:>10.2e} {r['seconds']:>6.2f}"
        )


if __name__ == "__main__":
    main()
