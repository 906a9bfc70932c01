import numpy as np
import pytest

from conftest import matrix_fixtures
from projspec.demos import clock_shift_tuple
from projspec.errors import DimensionError, SingularPointError
from projspec.fixtures import random_tuple, scalar_tuple
from projspec.linalg import inverse
from projspec.mcform import (
    LinearFunctional,
    apply_functional,
    centrality_check,
    closedness_check,
    convergence_ratio,
    descent_check,
    euler_contraction,
    flatness_check,
    log_derivative_form,
    omega_eval,
    resolvent_derivative_check,
    scalar_form,
)
from projspec.spectrum import margin

PHI1 = LinearFunctional.diagonal([1, 0, 0], "phi1")
PHI2 = LinearFunctional.diagonal([0, 1, 1], "phi2")
# tr(E_12 X) = X_21 reads an off-diagonal entry of the M_2 block: not central there
OFFDIAG = LinearFunctional(np.outer([0, 1, 0], [0, 0, 1]).astype(complex), "E12")


def resolvent_points(A, count, rng, min_margin=1e-2):
    pts = []
    while len(pts) < count:
        z = rng.standard_normal(A.n_plus_1) + 1j * rng.standard_normal(A.n_plus_1)
        if margin(A, z) > min_margin:
            pts.append(z)
    return pts


def test_scalar_form_coefficients():
    F = omega_eval(scalar_tuple(1, -1), [1, 2]).coeffs
    assert np.allclose(F[:, 0, 0], [-1, 1])


def test_braid_form_is_diagonal(braid):
    z = np.array([1, 2, 4])
    F = omega_eval(braid, z).coeffs
    d = np.diag(braid(z))
    for j in range(3):
        assert np.allclose(F[j], np.diag(np.diag(braid[j]) / d))


def test_plane_quadric_coefficient_of_identity_is_resolvent(plane_quadric):
    F = omega_eval(plane_quadric, [1, 1, 1]).coeffs
    assert np.allclose(F[2], inverse(plane_quadric([1, 1, 1])))


def test_singular_point_rejected(plane_quadric):
    with pytest.raises(SingularPointError) as info:
        omega_eval(plane_quadric, [1, -1, 0])
    assert info.value.margin < 1e-12


def test_resolvent_derivative_examples(plane_quadric):
    assert resolvent_derivative_check(scalar_tuple(1, -1), [1, 3], 1e-4) <= 1e-7
    assert resolvent_derivative_check(plane_quadric, [2, 1, 1], 1e-4) <= 1e-6
    assert convergence_ratio(resolvent_derivative_check, plane_quadric, [2, 1, 1], h=1e-2) == pytest.approx(4, rel=0.3)


def test_flatness_examples(plane_quadric):
    assert flatness_check(scalar_tuple(1, -1), [1, 3], 1e-4) <= 1e-10
    assert flatness_check(scalar_tuple(2, 5, -1), [1, 3, 1j], 1e-4) <= 1e-10
    assert flatness_check(plane_quadric, [2, 1, 1], 1e-4) <= 1e-6
    assert flatness_check(clock_shift_tuple(4), [2, 1], 1e-4) <= 1e-6
    assert convergence_ratio(flatness_check, plane_quadric, [2, 1, 1], h=1e-2) == pytest.approx(4, rel=0.3)


def test_richardson_improves_accuracy(plane_quadric):
    plain = flatness_check(plane_quadric, [2, 1, 1], 1e-2)
    extrapolated = flatness_check(plane_quadric, [2, 1, 1], 1e-2, richardson=True)
    assert extrapolated < 1e-2 * plain


def test_euler_contraction_examples(plane_quadric, braid):
    assert np.linalg.norm(euler_contraction(braid, [1, 2, 4]) - np.eye(3)) <= 1e-12
    assert np.linalg.norm(euler_contraction(plane_quadric, [1, 1, 1]) - np.eye(3)) <= 1e-12
    assert np.linalg.norm(euler_contraction(clock_shift_tuple(8), [3, 1]) - np.eye(8)) <= 1e-12


@pytest.mark.parametrize("name", sorted(matrix_fixtures()))
def test_euler_contraction_everywhere(name, rng):
    A = matrix_fixtures()[name]
    for z in resolvent_points(A, 10, rng):
        assert np.linalg.norm(euler_contraction(A, z) - np.eye(A.k)) <= 1e-10


@pytest.mark.parametrize("name", sorted(matrix_fixtures()))
def test_form_has_homogeneity_degree_minus_one(name, rng):
    A = matrix_fixtures()[name]
    for z in resolvent_points(A, 5, rng):
        t = complex(rng.standard_normal(), rng.standard_normal())
        F = omega_eval(A, z).coeffs
        Ft = omega_eval(A, t * z).coeffs
        assert np.max(np.abs(Ft - F / t)) <= 1e-10 * np.max(np.abs(F / t))


def test_trace_of_braid_form_is_log_derivative_of_det(braid):
    z = np.array([1, 2, 4])
    coeffs = scalar_form(braid, LinearFunctional.trace(3), z)
    # det = (z0 - z1)(z2 - z0)(z1 - z2): sum of log-derivatives of the factors
    expected = sum(log_derivative_form(n, z) for n in ([1, -1, 0], [-1, 0, 1], [0, 1, -1]))
    assert np.allclose(coeffs, expected, atol=1e-13)


def test_plane_quadric_trace_forms(plane_quadric, rng):
    for z in resolvent_points(plane_quadric, 10, rng):
        s1 = z.sum()
        s2 = (z**2).sum()
        assert np.allclose(scalar_form(plane_quadric, PHI1, z), np.ones(3) / s1, rtol=1e-10)
        assert np.allclose(scalar_form(plane_quadric, PHI2, z), 2 * z / s2, rtol=1e-10)


def test_zero_functional(plane_quadric):
    zero = LinearFunctional(np.zeros((3, 3)))
    assert not np.any(apply_functional(zero, omega_eval(plane_quadric, [2, 1, 1])).coeffs)


def test_functional_size_mismatch(plane_quadric):
    with pytest.raises(DimensionError):
        apply_functional(LinearFunctional.trace(2), omega_eval(plane_quadric, [2, 1, 1]))


@pytest.mark.parametrize("name", sorted(matrix_fixtures()))
def test_full_trace_is_central(name):
    A = matrix_fixtures()[name]
    report = centrality_check(LinearFunctional.trace(A.k), A)
    assert report.violation <= 1e-12 and report.heuristic


def test_plane_quadric_block_traces_are_central(plane_quadric):
    assert centrality_check(PHI1, plane_quadric).violation <= 1e-10
    assert centrality_check(PHI2, plane_quadric).violation <= 1e-10
    assert centrality_check(OFFDIAG, plane_quadric).violation > 1e-3


def test_closedness_examples(plane_quadric):
    assert closedness_check(plane_quadric, PHI1, [2, 1, 1]) <= 1e-7
    assert closedness_check(clock_shift_tuple(4), LinearFunctional.trace(4), [2, 1]) <= 1e-7
    assert closedness_check(plane_quadric, OFFDIAG, [2, 1, 1]) > 1e-3


def test_central_functionals_give_closed_forms(plane_quadric, rng):
    # the O(h^2) constant grows like margin^-4; 100 h^2 holds well inside the resolvent set
    h = 1e-3
    for phi in (PHI1, PHI2, LinearFunctional.trace(3)):
        for z in resolvent_points(plane_quadric, 5, rng, min_margin=0.3):
            z = z / np.linalg.norm(z)
            assert closedness_check(plane_quadric, phi, z, h) <= 100 * h**2


def test_descent(plane_quadric):
    W = LinearFunctional.diagonal([1, -1, 0])
    assert abs(descent_check(plane_quadric, W, [2, 1, 1])) <= 1e-10
    assert descent_check(plane_quadric, LinearFunctional.trace(3), [2, 1, 1]) == pytest.approx(3, abs=1e-10)
    phi = LinearFunctional(np.arange(9).reshape(3, 3) * (1 + 1j))
    assert descent_check(plane_quadric, phi, [0.3, 2j, 1]) == pytest.approx(phi.at_identity, abs=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_flatness_second_order_on_random_tuples(seed):
    rng = np.random.default_rng(seed)
    A = random_tuple(4, 3, rng)
    z = resolvent_points(A, 1, rng, min_margin=0.05)[0]
    h = 1e-2 / (np.linalg.norm(inverse(A(z)), 2) * np.max(A.norms()))
    assert convergence_ratio(flatness_check, A, z, h=h) == pytest.approx(4, rel=0.3)
    assert convergence_ratio(resolvent_derivative_check, A, z, h=h) == pytest.approx(4, rel=0.3)
