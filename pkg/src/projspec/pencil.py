"""Matrix tuples A = (A_0, ..., A_n) and the linear pencil A(z) = sum_j z_j A_j."""

from __future__ import annotations

import itertools
from functools import cached_property
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError


class DependentTupleWarning(UserWarning):
    pass


def as_point(z, nvars: int | None = None) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128).reshape(-1)
    if nvars is not None and z.size != nvars:
        raise DimensionError(f"point has {z.size} coordinates, expected {nvars}")
    if not np.all(np.isfinite(z)):
        raise ValueError("point has non-finite coordinates")
    return z


def normalize(z, *, zero_tol: float = 1e-12) -> np.ndarray:
    """Canonical representative of [z]: unit norm, first nonzero coordinate real positive.

    A coordinate counts as zero when its modulus is <= ``zero_tol`` times the norm,
    so numerically computed points with round-off in a vanishing slot still get a
    stable phase.
    """
    z = as_point(z)
    nrm = np.linalg.norm(z)
    if nrm == 0.0:
        raise ValueError("the zero vector has no projective class")
    z = z / nrm
    idx = int(np.argmax(np.abs(z) > zero_tol))
    phase = z[idx] / abs(z[idx])
    return z / phase


def projective_distance(z, w) -> float:
    """sqrt(1 - |<z, w>|^2) for the unit representatives; 0 iff [z] = [w]."""
    z = as_point(z)
    w = as_point(w)
    c = abs(np.vdot(z, w)) / (np.linalg.norm(z) * np.linalg.norm(w))
    return float(np.sqrt(max(0.0, 1.0 - min(c, 1.0) ** 2)))


@dataclass(frozen=True)
class ProjectivePoint:
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", normalize(self.coords))

    @property
    def nvars(self) -> int:
        return self.coords.size

    def affine(self, chart: int = 0) -> np.ndarray:
        """Affine coordinates z_j / z_chart, j != chart."""
        c = self.coords[chart]
        if abs(c) <= 1e-14:
            raise ValueError(f"point lies at infinity of chart {chart}")
        return np.delete(self.coords, chart) / c

    def distance(self, other) -> float:
        other = other.coords if isinstance(other, ProjectivePoint) else other
        return projective_distance(self.coords, other)


@dataclass(frozen=True)
class RankReport:
    rank: int
    n_plus_1: int
    singular_values: np.ndarray
    tol: float

    @property
    def independent(self) -> bool:
        return self.rank == self.n_plus_1


@dataclass(frozen=True, eq=False)
class MatrixTuple:
    """An (n+1)-tuple of k x k complex matrices, stored as an array (n+1, k, k)."""

    matrices: np.ndarray
    label: str = field(default="")

    def __post_init__(self):
        mats = np.array(self.matrices, dtype=np.complex128)
        if mats.ndim == 1:
            # scalar tuple (a_0, ..., a_n) of 1 x 1 matrices
            mats = mats[:, None, None]
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2] or mats.shape[0] < 1:
            raise DimensionError(
                f"a tuple needs n+1 >= 1 square matrices of equal size, got shape {mats.shape}"
            )
        if not np.all(np.isfinite(mats)):
            raise ValueError("tuple has non-finite entries")
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)
        report = self.independence_check()
        if not report.independent:
            warnings.warn(
                f"tuple matrices are linearly dependent (rank {report.rank} of "
                f"{report.n_plus_1}); accepted as given",
                DependentTupleWarning,
                stacklevel=3,
            )

    @property
    def n_plus_1(self) -> int:
        return self.matrices.shape[0]

    @property
    def n(self) -> int:
        return self.matrices.shape[0] - 1

    @property
    def k(self) -> int:
        return self.matrices.shape[1]

    def __len__(self) -> int:
        return self.n_plus_1

    def __getitem__(self, j: int) -> np.ndarray:
        return self.matrices[j]

    def __iter__(self):
        return iter(self.matrices)

    def evaluate(self, z) -> np.ndarray:
        """A(z) = sum_j z_j A_j."""
        z = as_point(z, self.n_plus_1)
        return np.tensordot(z, self.matrices, axes=1)

    __call__ = evaluate

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrices, axis=(1, 2))

    @cached_property
    def scale(self) -> float:
        """(sum_j ||A_j||_2^2)^(1/2), an upper bound for ||A(z)||_2 on the unit sphere."""
        return float(np.sqrt(np.sum(np.linalg.norm(self.matrices, ord=2, axis=(1, 2)) ** 2)))

    def is_commutative(self, tol: float = 1e-10) -> bool:
        """||A_i A_j - A_j A_i|| <= tol ||A_i|| ||A_j|| for all pairs."""
        norms = self.norms()
        for i, j in itertools.combinations(range(self.n_plus_1), 2):
            Ai, Aj = self.matrices[i], self.matrices[j]
            if np.linalg.norm(Ai @ Aj - Aj @ Ai) > tol * norms[i] * norms[j]:
                return False
        return True

    def independence_check(self, tol: float = 1e-10) -> RankReport:
        """Numerical rank of the (n+1) x k^2 matrix of vectorized A_j."""
        flat = self.matrices.reshape(self.n_plus_1, -1)
        s = np.linalg.svd(flat, compute_uv=False)
        rank = int(np.count_nonzero(s > tol * s[0])) if s.size and s[0] > 0 else 0
        return RankReport(rank=rank, n_plus_1=self.n_plus_1, singular_values=s, tol=tol)

    def transformed(self, U, V) -> MatrixTuple:
        """The tuple (U A_j V)_j."""
        U = np.asarray(U, dtype=np.complex128)
        V = np.asarray(V, dtype=np.complex128)
        return MatrixTuple(U @ self.matrices @ V, label=f"U {self.label} V".strip())

    def with_identity(self) -> MatrixTuple:
        """The enlarged tuple (I, A_0, ..., A_n)."""
        eye = np.eye(self.k, dtype=np.complex128)[None]
        return MatrixTuple(np.concatenate([eye, self.matrices]), label=self.label)


def evaluate(A: MatrixTuple, z) -> np.ndarray:
    return A.evaluate(z)


def is_commutative(A: MatrixTuple, tol: float = 1e-10) -> bool:
    return A.is_commutative(tol)


def independence_check(A: MatrixTuple, tol: float = 1e-10) -> RankReport:
    return A.independence_check(tol)


def random_point(nvars: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform point on the unit sphere of C^nvars."""
    z = rng.standard_normal(nvars) + 1j * rng.standard_normal(nvars)
    return z / np.linalg.norm(z)
