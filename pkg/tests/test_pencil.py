import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projspec.demos import clock_shift_tuple
from projspec.errors import DimensionError
from projspec.fixtures import random_tuple
from projspec.pencil import (
    DependentTupleWarning,
    MatrixTuple,
    ProjectivePoint,
    evaluate,
    independence_check,
    is_commutative,
    normalize,
)


def test_evaluate_braid_at_first_basis_vector(braid):
    assert np.array_equal(evaluate(braid, [1, 0, 0]), np.diag([1, -1, 0]))


def test_evaluate_plane_quadric_at_ones(plane_quadric):
    M = evaluate(plane_quadric, [1, 1, 1])
    expected = np.array([[3, 0, 0], [0, 1 + 1j, -1], [0, 1, 1 - 1j]])
    assert np.allclose(M, expected)
    assert np.linalg.det(M) == pytest.approx(9)


def test_evaluate_at_origin_is_zero(plane_quadric):
    assert not np.any(evaluate(plane_quadric, [0, 0, 0]))


def test_evaluate_rejects_wrong_coordinate_count(plane_quadric):
    with pytest.raises(DimensionError):
        evaluate(plane_quadric, [1, 2])


def test_commutativity(plane_quadric, braid):
    assert is_commutative(braid)
    assert not is_commutative(plane_quadric)
    assert not is_commutative(clock_shift_tuple(3))


def test_braid_matrices_sum_to_zero_so_rank_is_two(braid):
    # diag(1,-1,0) + diag(-1,0,1) + diag(0,1,-1) = 0
    assert not np.any(sum(braid.matrices))
    report = independence_check(braid)
    assert report.rank == 2 and not report.independent


def test_rank_of_identity_pairs():
    with pytest.warns(DependentTupleWarning):
        II = MatrixTuple(np.array([np.eye(2), np.eye(2)]))
    assert independence_check(II).rank == 1
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        IA = MatrixTuple(np.array([np.eye(2), np.diag([1.0, 2.0])]))
    assert independence_check(IA).rank == 2


def test_tuple_is_immutable(plane_quadric):
    with pytest.raises(ValueError):
        plane_quadric.matrices[0, 0, 0] = 5


def test_mismatched_shapes_rejected():
    with pytest.raises((DimensionError, ValueError)):
        MatrixTuple([np.eye(2), np.eye(3)])


def test_affine_chart_of_projective_point():
    p = ProjectivePoint([2, 4, 6j])
    assert np.allclose(p.affine(0), [2, 3j])
    assert p.distance([1, 2, 3j]) < 1e-12


point = st.lists(
    st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
    min_size=3,
    max_size=3,
)
scalar = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False)


@settings(max_examples=100, deadline=None)
@given(point, point, scalar, scalar)
def test_evaluate_is_linear(z, w, alpha, beta):
    A = random_tuple(3, 3, np.random.default_rng(0))
    z, w = np.array(z), np.array(w)
    lhs = evaluate(A, alpha * z + beta * w)
    rhs = alpha * evaluate(A, z) + beta * evaluate(A, w)
    scale = (abs(alpha) * np.linalg.norm(z) + abs(beta) * np.linalg.norm(w)) * max(A.norms())
    assert np.linalg.norm(lhs - rhs) <= 1e-13 * scale


@settings(max_examples=100, deadline=None)
@given(point, scalar)
def test_normalize_is_scale_invariant_and_idempotent(z, t):
    z = np.array(z)
    nz = normalize(z)
    assert np.linalg.norm(normalize(t * z) - nz) <= 1e-12
    assert np.linalg.norm(normalize(nz) - nz) <= 1e-12
    assert np.linalg.norm(nz) == pytest.approx(1.0)
