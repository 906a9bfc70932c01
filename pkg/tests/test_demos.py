import numpy as np
import pytest

from projspec.demos import (
    clock_shift_det,
    clock_shift_pair,
    clock_shift_tuple,
    disk_poly_membership,
    rotation_period_experiment,
    rotation_spectrum_locus,
)
from projspec.linalg import determinant
from projspec.mcform import LinearFunctional
from projspec.periods import radial_log_test

TWO_PI_I = 2j * np.pi


def test_clock_shift_q2_explicit():
    pair = clock_shift_pair(2)
    assert np.allclose(pair.U, np.diag([1, -1]))
    assert np.allclose(pair.V, [[0, 1], [1, 0]])


@pytest.mark.parametrize("q", [2, 3, 5, 8, 13])
def test_clock_shift_relations(q):
    pair = clock_shift_pair(q)
    assert pair.commutation_defect() <= 1e-12
    for M in (pair.U, pair.V):
        assert np.allclose(M.conj().T @ M, np.eye(q))


@pytest.mark.parametrize("q", [2, 3, 4, 7])
def test_clock_shift_det_closed_form(q, rng):
    A = clock_shift_tuple(q)
    for _ in range(5):
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert clock_shift_det(q, z) == pytest.approx(determinant(A(z)), rel=1e-10)


def test_q_below_two_rejected():
    with pytest.raises(ValueError):
        clock_shift_pair(1)


@pytest.mark.parametrize("q", [2, 8, 64])
def test_rotation_periods(q):
    for outer in (True, False):
        r = rotation_period_experiment(q, outer)
        assert abs(r.value - TWO_PI_I) <= 1e-6


def test_normalized_trace_is_unital():
    phi = LinearFunctional.normalized_trace(8)
    assert phi.at_identity == pytest.approx(1)
    assert abs(radial_log_test(clock_shift_tuple(8), phi, [2, 0.5j]).value - TWO_PI_I) <= 1e-10


def test_locus_deviation_q8():
    assert rotation_spectrum_locus(8).deviation <= 1e-8


def test_locus_q3_lies_on_three_lines():
    # z0^3 + z1^3 = 0: z1 = -w^j z0 with w a cube root of unity
    rep = rotation_spectrum_locus(3, num_lines=10)
    ratios = rep.points[:, 1] / rep.points[:, 0]
    allowed = -np.exp(2j * np.pi * np.arange(3) / 3)
    assert all(np.min(np.abs(allowed - r)) <= 1e-8 for r in ratios)


def test_locus_q2():
    rep = rotation_spectrum_locus(2, num_lines=10)
    ratios = rep.points[:, 1] / rep.points[:, 0]
    assert np.allclose(np.abs(np.abs(ratios.imag) - 1), 0, atol=1e-8)
    assert np.allclose(ratios.real, 0, atol=1e-8)


def test_disk_examples():
    assert disk_poly_membership([1, 0, 0]).invertible
    v = disk_poly_membership([1, -1])
    assert not v.invertible and v.margin == pytest.approx(0, abs=1e-12)
    v = disk_poly_membership([1, 0, -4])
    assert not v.invertible and np.allclose(np.sort(np.abs(v.roots)), [0.5, 0.5])
    assert disk_poly_membership([3, 1]).invertible
    zero = disk_poly_membership([0, 0])
    assert zero.degenerate and not zero.invertible
