"""Trace-form periods for the 3x3 tuple with det = (z0 + z1 + z2)(z0^2 + z1^2 + z2^2).

Loops link either the plane z0 + z1 + z2 = 0 or the quadric cone. The
functionals phi1 = e11 and phi2 = e22 + e33 pick out d log of one factor
each, so each row should read (1, 0) or (0, 1) in units of 2 pi i, and Tr
their sum. Each loop also gets a nontriviality certificate for phi1.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from projspec.arrangement import Hyperplane
from projspec.detpoly import HomogeneousPolynomial
from projspec.fixtures import plane_quadric_tuple
from projspec.mcform import LinearFunctional
from projspec.periods import Loop, integrate, linking_loop, nontriviality_certificate

QUADRIC = HomogeneousPolynomial(2, 3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
PLANE = Hyperplane([1, 1, 1])


@dataclass(frozen=True)
class Config:
    loops: int = 4
    radius: float = 0.1
    seed: int = 0


def quadric_loop(rng: np.random.Generator, radius: float) -> Loop:
    """Small circle around a smooth point of the cone z0^2 + z1^2 + z2^2 = 0,
    in the direction of the gradient's conjugate."""
    while True:
        a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        # (a, b, c) with c^2 = -(a^2 + b^2)
        p = np.array([a, b, np.sqrt(-(a**2 + b**2))])
        p /= np.linalg.norm(p)
        if abs(PLANE(p)) > 4 * radius:
            return Loop.circle(p, np.conj(2 * p) / np.linalg.norm(2 * p), radius)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--loops", type=int, default=Config.loops)
    parser.add_argument("--radius", type=float, default=Config.radius)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args()
    cfg = Config(args.loops, args.radius, args.seed)

    A = plane_quadric_tuple()
    phis = {
        "phi1": LinearFunctional.diagonal([1, 0, 0], "phi1"),
        "phi2": LinearFunctional.diagonal([0, 1, 1], "phi2"),
        "Tr": LinearFunctional.trace(3),
    }
    rng = np.random.default_rng(cfg.seed)
    loops = [("plane", linking_loop(PLANE, avoid=[QUADRIC], radius=cfg.radius, seed=cfg.seed + i)) for i in range(cfg.loops)]
    loops += [("quadric", quadric_loop(rng, cfg.radius)) for _ in range(cfg.loops)]

    print(f"{'links':>8} " + " ".join(f"{name + ' / 2 pi i':>22}" for name in phis) + f" {'phi1 verdict':>14}")
    for kind, loop in loops:
        cells = []
        for phi in phis.values():
            w = integrate(A, phi, loop).winding
            cells.append(f"{w.real:+.10f}{w.imag:+.1e}j")
        verdict = nontriviality_certificate(A, phis["phi1"], [loop]).verdict
        print(f"{kind:>8} " + " ".join(f"{c:>22}" for c in cells) + f" {verdict:>14}")


if __name__ == "__main__":
    main()
