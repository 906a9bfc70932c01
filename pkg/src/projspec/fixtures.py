"""Named matrix tuples and functionals used throughout the tests and the CLI."""

from __future__ import annotations

import warnings

import numpy as np

from .pencil import DependentTupleWarning, MatrixTuple


def plane_quadric_tuple() -> MatrixTuple:
    """3x3 tuple with det A(z) = (z0 + z1 + z2)(z0^2 + z1^2 + z2^2).

    The generated algebra is C + M_2(C) (block diagonal 1 + 2).
    """
    A0 = [[1, 0, 0], [0, 0, -1], [0, 1, 0]]
    A1 = [[1, 0, 0], [0, 1j, 0], [0, 0, -1j]]
    A2 = np.eye(3)
    return MatrixTuple(np.array([A0, A1, A2], dtype=complex), label="plane_quadric")


def scalar_tuple(*values) -> MatrixTuple:
    """Tuple of 1 x 1 matrices."""
    return MatrixTuple(np.array(values, dtype=complex), label=f"scalar{tuple(values)}")


def diagonal_tuple(*diagonals) -> MatrixTuple:
    return MatrixTuple(np.array([np.diag(d) for d in diagonals], dtype=complex), label="diagonal")


def random_tuple(k: int, n_plus_1: int, rng: np.random.Generator) -> MatrixTuple:
    """Complex Gaussian tuple; generic, hence non-commutative for k >= 2."""
    shape = (n_plus_1, k, k)
    mats = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2 * k)
    return MatrixTuple(mats, label=f"random(k={k}, n={n_plus_1 - 1})")


def named_fixtures(seed: int = 2024) -> dict[str, MatrixTuple]:
    """The standard test tuples, all with det A(z) not identically zero."""
    from .arrangement import braid_tuple
    from .demos import clock_shift_tuple

    rng = np.random.default_rng(seed)
    with warnings.catch_warnings():
        # braid and scalar(1, -1) are linearly dependent by construction
        warnings.simplefilter("ignore", DependentTupleWarning)
        return {
            "plane_quadric": plane_quadric_tuple(),
            "braid": braid_tuple(),
            "diag12": diagonal_tuple([1, 1], [1, 2]),
            "scalar": scalar_tuple(1, -1),
            "clock_shift_4": clock_shift_tuple(4),
            "random_3x3": random_tuple(3, 3, rng),
            "random_4x2": random_tuple(4, 2, rng),
            "random_2x4": random_tuple(2, 4, rng),
        }
