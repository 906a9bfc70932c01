"""Write the JSON inputs used by the CLI examples into fixtures/."""

from __future__ import annotations

import argparse
import warnings
from pathlib import Path

import numpy as np

from projspec import serialize as ser
from projspec.arrangement import braid_tuple
from projspec.demos import clock_shift_pair, clock_shift_tuple
from projspec.equiv import random_equivalent_tuple
from projspec.fixtures import diagonal_tuple, plane_quadric_tuple, scalar_tuple
from projspec.mcform import LinearFunctional
from projspec.pencil import MatrixTuple
from projspec.periods import Loop


def clock_shift_padded() -> MatrixTuple:
    """(U_3, V_3, I): same shape as the braid tuple but a different spectrum."""
    pair = clock_shift_pair(3)
    return MatrixTuple(np.array([pair.U, pair.V, np.eye(3)]), label="clock_shift_padded")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    ex6 = plane_quadric_tuple()
    ex6_moved, _, _ = random_equivalent_tuple(ex6, seed=3)
    # the braid and scalar tuples are linearly dependent by design
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        tuples = {
            "plane_quadric": ex6,
            "plane_quadric_moved": ex6_moved,
            "braid": braid_tuple(),
            "scalar": scalar_tuple(1, -1),
            "diag12": diagonal_tuple([1, 1], [1, 2]),
            "clock_shift_8": clock_shift_tuple(8),
            "clock_shift_padded": clock_shift_padded(),
        }
    for name, A in tuples.items():
        (args.out / f"{name}.json").write_text(ser.dumps(ser.tuple_to_json(A)))

    functionals = {
        "trace3": LinearFunctional.trace(3),
        "phi1": LinearFunctional.diagonal([1, 0, 0], "phi1"),
        "phi2": LinearFunctional.diagonal([0, 1, 1], "phi2"),
        "offdiag": LinearFunctional(np.outer([0, 1, 0], [0, 0, 1]).astype(complex), "E12"),
    }
    for name, phi in functionals.items():
        (args.out / f"{name}.json").write_text(ser.dumps(ser.functional_to_json(phi)))

    loops = {
        "linking_loop": Loop.circle([1, -1, 0], [1, 0, 0], 0.1),
        # passes through z0 + z1 + z2 = 0 at the sample theta = pi
        "touching_loop": Loop.circle([2, -1, 0], [1, 0, 0], 1.0),
    }
    for name, loop in loops.items():
        (args.out / f"{name}.json").write_text(ser.dumps(ser.loop_to_json(loop)))
    print(f"wrote {len(tuples) + len(functionals) + len(loops)} files to {args.out}")


if __name__ == "__main__":
    main()
