import numpy as np
import pytest

from projspec.demos import clock_shift_pair
from projspec.equiv import (
    find_witness,
    random_equivalent_tuple,
    recover_U,
    solve_form_similarity,
    witness_residual,
)
from projspec.errors import CandidateRejectedError, NotSimilarError
from projspec.fixtures import random_tuple, scalar_tuple
from projspec.linalg import determinant
from projspec.mcform import omega_eval
from projspec.pencil import MatrixTuple
from projspec.spectrum import cloud_sample, margin


def clock_shift_padded():
    pair = clock_shift_pair(3)
    return MatrixTuple(np.array([pair.U, pair.V, np.eye(3)]))


def proportional(X, Y, tol):
    """X = c Y for some scalar c."""
    c = np.vdot(Y, X) / np.vdot(Y, Y)
    return np.linalg.norm(X - c * Y) <= tol * np.linalg.norm(X)


def in_span(X, basis, tol):
    M = np.array([B.reshape(-1) for B in basis]).T
    coef, *_ = np.linalg.lstsq(M, X.reshape(-1), rcond=None)
    return np.linalg.norm(M @ coef - X.reshape(-1)) <= tol * np.linalg.norm(X)


def test_identity_is_a_witness_for_equal_tuples(plane_quadric):
    sol = solve_form_similarity(plane_quadric, plane_quadric)
    assert in_span(np.eye(3), sol.basis, 1e-8)
    w = recover_U(plane_quadric, plane_quadric, np.eye(3))
    assert np.allclose(w.U * w.V[0, 0], np.eye(3), atol=1e-10)
    assert w.residual <= 1e-12


def test_round_trip_recovers_v0_up_to_scale(plane_quadric):
    B, U0, V0 = random_equivalent_tuple(plane_quadric, seed=9)
    sol = solve_form_similarity(plane_quadric, B)
    # the tuple generates C + M_2, so the commutant is 2-dimensional
    assert sol.dimension == 2
    assert in_span(V0, sol.basis, 1e-8)
    w = find_witness(plane_quadric, B)
    assert w.residual <= 1e-8
    assert np.linalg.norm(w.V) == pytest.approx(1.0)


def test_round_trip_on_generic_tuple_is_unique_up_to_scale():
    A = random_tuple(4, 3, np.random.default_rng(1))
    B, U0, V0 = random_equivalent_tuple(A, seed=2)
    sol = solve_form_similarity(A, B)
    assert sol.dimension == 1
    assert proportional(sol.basis[0], V0, 1e-8)
    w = recover_U(A, B, sol.basis[0])
    assert proportional(w.U, U0, 1e-8)
    assert w.residual <= 1e-8


def test_different_spectra_are_not_similar(braid):
    with pytest.raises(NotSimilarError):
        find_witness(braid, clock_shift_padded())


def test_random_v_is_rejected(rng):
    A = random_tuple(3, 3, rng)
    B = random_tuple(3, 3, rng)
    V = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    with pytest.raises(CandidateRejectedError):
        recover_U(A, B, V)


def test_equivalent_tuples_share_their_spectrum(plane_quadric):
    B, U, V = random_equivalent_tuple(plane_quadric, seed=4)
    for p in cloud_sample(B, 10, seed=1):
        assert margin(plane_quadric, p.coords) <= 1e-8
    z = np.array([0.3, 1.1j, -0.7])
    assert determinant(B(z)) == pytest.approx(determinant(U) * determinant(V) * determinant(plane_quadric(z)))


def test_identity_transform_is_a_no_op(plane_quadric):
    B = plane_quadric.transformed(np.eye(3), np.eye(3))
    assert np.array_equal(B.matrices, plane_quadric.matrices)


def test_forms_are_similar_via_v(plane_quadric, rng):
    B, U, V = random_equivalent_tuple(plane_quadric, seed=6)
    Vinv = np.linalg.inv(V)
    for _ in range(5):
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        FA = omega_eval(plane_quadric, z).coeffs
        FB = omega_eval(B, z).coeffs
        for Fa, Fb in zip(FA, FB):
            assert np.linalg.norm(Vinv @ Fa @ V - Fb) <= 1e-9 * max(1.0, np.linalg.norm(Fb))


def test_witness_residual_of_exact_pair(plane_quadric):
    B, U, V = random_equivalent_tuple(plane_quadric, seed=7)
    assert witness_residual(plane_quadric, B, U, V) <= 1e-13


def test_round_trip_for_scalar_tuples():
    # for k = 1 the intertwining system is zero up to roundoff
    A = scalar_tuple(2.0, -1.0 + 1j)
    B, _, _ = random_equivalent_tuple(A, seed=4)
    w = find_witness(A, B)
    assert witness_residual(A, B, w.U, w.V) <= 1e-12
