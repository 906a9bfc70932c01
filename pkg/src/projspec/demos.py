"""Finite models of the rotation-algebra and disk-algebra examples.

The rotation algebra is modelled by q x q clock and shift matrices, an exact
rational-angle analogue that keeps unitarity and the commutation relation. It
is an approximation of the irrational case, not that algebra itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .detpoly import UnivariatePolynomial, roots
from .errors import ZeroPolynomialError
from .mcform import LinearFunctional
from .pencil import MatrixTuple
from .periods import Loop, PeriodReport, integrate
from .spectrum import cloud_sample


@dataclass(frozen=True)
class ClockShiftPair:
    q: int
    U: np.ndarray  # diag(1, w, ..., w^{q-1})
    V: np.ndarray  # cyclic shift, V U = w U V
    omega: complex

    def commutation_defect(self) -> float:
        return float(np.linalg.norm(self.V @ self.U - self.omega * self.U @ self.V))


def clock_shift_pair(q: int) -> ClockShiftPair:
    if q < 2:
        raise ValueError("clock and shift matrices need q >= 2")
    omega = np.exp(2j * np.pi / q)
    U = np.diag(omega ** np.arange(q))
    V = np.zeros((q, q), dtype=complex)
    # e_j -> e_{j-1}: this orientation gives V U = omega U V
    V[(np.arange(q) - 1) % q, np.arange(q)] = 1.0
    return ClockShiftPair(q=q, U=U, V=V, omega=complex(omega))


def clock_shift_tuple(q: int) -> MatrixTuple:
    pair = clock_shift_pair(q)
    return MatrixTuple(np.array([pair.U, pair.V]), label=f"clock_shift(q={q})")


def clock_shift_det(q: int, z) -> complex:
    """det(z0 U + z1 V) = w^{q(q-1)/2} z0^q + (-1)^{q-1} z1^q."""
    z0, z1 = z
    omega = np.exp(2j * np.pi / q)
    return complex(omega ** (q * (q - 1) // 2) * z0**q + (-1) ** (q - 1) * z1**q)


def rotation_loop(outer: bool, samples: int = 256) -> Loop:
    """z0 = 2 e^{i theta}, z1 = 1 (outer) or z0 = 1, z1 = 2 e^{i theta} (inner)."""
    if outer:
        return Loop.circle([0, 1], [1, 0], 2.0, samples=samples)
    return Loop.circle([1, 0], [0, 1], 2.0, samples=samples)


def rotation_period_experiment(q: int, outer: bool = True, *, samples: int = 256) -> PeriodReport:
    """Period of (1/q) Tr(omega_A) for the clock-shift pair; 2 pi i on both loops.

    On |z0| > |z1| the form is cohomologous to dz0/z0, on |z0| < |z1| to dz1/z1.
    """
    A = clock_shift_tuple(q)
    return integrate(A, LinearFunctional.normalized_trace(q), rotation_loop(outer, samples))


@dataclass(frozen=True)
class LocusReport:
    q: int
    points: np.ndarray
    deviation: float  # max | |z0| - |z1| | over unit representatives
    skipped_lines: int


def rotation_spectrum_locus(q: int, num_lines: int = 50, seed: int = 0) -> LocusReport:
    cloud = cloud_sample(clock_shift_tuple(q), num_lines, seed)
    pts = cloud.coords()
    dev = float(np.max(np.abs(np.abs(pts[:, 0]) - np.abs(pts[:, 1])))) if len(pts) else 0.0
    return LocusReport(q=q, points=pts, deviation=dev, skipped_lines=cloud.skipped_lines)


@dataclass(frozen=True)
class DiskVerdict:
    invertible: bool
    margin: float  # min |root| - 1; inf for a nonzero constant
    roots: np.ndarray
    degenerate: bool = False


def disk_poly_membership(coeffs, tol: float = 1e-10) -> DiskVerdict:
    """Invertibility of sum_j z_j w^j in the disk algebra.

    Invertible iff no zero in the closed unit disk, i.e. min |root| - 1 > tol.
    The zero polynomial is flagged degenerate (every z then lies in P(A)).
    """
    p = UnivariatePolynomial(np.asarray(coeffs, dtype=complex))
    try:
        r = roots(p, trim_rtol=1e-14)
    except ZeroPolynomialError:
        return DiskVerdict(False, 0.0, np.zeros(0, dtype=complex), degenerate=True)
    if r.size == 0:
        return DiskVerdict(True, float("inf"), r)
    m = float(np.min(np.abs(r)) - 1.0)
    return DiskVerdict(m > tol, m, r)
