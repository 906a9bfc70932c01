"""Hyperplane arrangement of the braid tuple and of random commuting tuples.

For each tuple: the planes recovered from joint eigenvalues, their
multiplicities, the factorization residual of det A(z), and how close sampled
spectrum points lie to the recovered planes.
"""

from __future__ import annotations

import argparse
import warnings
from dataclasses import dataclass

import numpy as np

from projspec.arrangement import braid_tuple, hyperplanes, nearest_plane_distance, verify_factorization
from projspec.linalg import random_unitary
from projspec.pencil import MatrixTuple
from projspec.spectrum import cloud_sample


@dataclass(frozen=True)
class Config:
    random_tuples: int = 3
    k: int = 4
    n: int = 2
    lines: int = 40
    seed: int = 0


def random_commuting(k: int, n: int, rng: np.random.Generator) -> MatrixTuple:
    """Simultaneously diagonalizable tuple Q diag(lambda_j) Q^*, with one repeated character."""
    lam = rng.standard_normal((k, n + 1)) + 1j * rng.standard_normal((k, n + 1))
    lam[-1] = lam[0]
    Q = random_unitary(k, rng)
    return MatrixTuple(np.array([Q @ np.diag(lam[:, j]) @ Q.conj().T for j in range(n + 1)]), label="random commuting")


def report(A: MatrixTuple, lines: int, seed: int) -> None:
    planes = hyperplanes(A, seed)
    fact = verify_factorization(A, planes, seed=seed)
    cloud = cloud_sample(A, lines, seed)
    dist = max((nearest_plane_distance(planes, p.coords) for p in cloud), default=float("nan"))
    print(f"{A.label}: k = {A.k}, n = {A.n}")
    for p in planes:
        normal = p.normal / p.normal[np.argmax(np.abs(p.normal))]
        coords = ", ".join(f"{c.real:+.4f}{c.imag:+.4f}j" for c in normal)
        print(f"  plane ({coords})  multiplicity {p.multiplicity}")
    print(f"  factorization residual {fact.residual:.2e}; {len(cloud)} sampled points, "
          f"max distance to nearest plane {dist:.2e}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--random-tuples", type=int, default=Config.random_tuples)
    parser.add_argument("--lines", type=int, default=Config.lines)
    parser.add_argument("--seed", type=int, default=Config.seed)
    args = parser.parse_args()
    cfg = Config(random_tuples=args.random_tuples, lines=args.lines, seed=args.seed)
    with warnings.catch_warnings():
        # A0 + A1 + A2 = 0 for the braid tuple
        warnings.simplefilter("ignore")
        braid = braid_tuple()
    report(braid, cfg.lines, cfg.seed)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.random_tuples):
        report(random_commuting(cfg.k, cfg.n, rng), cfg.lines, cfg.seed)


if __name__ == "__main__":
    main()
