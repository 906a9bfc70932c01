"""Hyperplane decomposition of P(A) for commutative tuples.

For a commuting tuple every character of the generated algebra is a joint
eigenvalue tuple (phi(A_0), ..., phi(A_n)), and P(A) is the union of the
planes sum_j z_j phi(A_j) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DefectiveError, NotCommutativeError, WholeSpaceError
from .linalg import determinant, eig
from .pencil import MatrixTuple, as_point, normalize, projective_distance, random_point


@dataclass(frozen=True)
class Hyperplane:
    """The plane {z : sum_j z_j normal_j = 0}; normal is stored normalized."""

    normal: np.ndarray
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "normal", normalize(self.normal))

    def __call__(self, z) -> complex:
        """Value of the defining linear form at z (bilinear, no conjugation)."""
        return complex(np.dot(as_point(z, self.normal.size), self.normal))

    def same_plane(self, other: Hyperplane, tol: float = 1e-8) -> bool:
        return projective_distance(self.normal, other.normal) <= tol

    def random_point(self, rng: np.random.Generator) -> np.ndarray:
        """A random unit point of the plane."""
        v = random_point(self.normal.size, rng)
        p = v - self(v) * self.normal.conj()
        return p / np.linalg.norm(p)


def braid_tuple() -> MatrixTuple:
    """Diagonal tuple whose spectrum is (z0 - z1)(z1 - z2)(z2 - z0) = 0."""
    A0 = np.diag([1, -1, 0])
    A1 = np.diag([-1, 0, 1])
    A2 = np.diag([0, 1, -1])
    return MatrixTuple(np.array([A0, A1, A2], dtype=complex), label="braid")


def joint_eigen_tuples(
    A: MatrixTuple, seed: int = 0, *, residual_tol: float = 1e-7, reseeds: int = 3
) -> np.ndarray:
    """Joint eigenvalue tuples, one row (lambda_0, ..., lambda_n) per eigenvector.

    A random combination M = sum_j c_j A_j is diagonalized; each eigenvector v
    gives lambda_j through the Rayleigh quotient of A_j. Rows repeat with
    multiplicity, k rows in total.

    Raises
    ------
    NotCommutativeError
        If the tuple does not commute.
    DefectiveError
        If the generic combination is not diagonalizable after ``reseeds``
        fresh combinations.
    """
    if not A.is_commutative():
        raise NotCommutativeError("joint eigenvalues need a commutative tuple")
    rng = np.random.default_rng(seed)
    norms = np.maximum(A.norms(), 1.0)
    last_residual = np.inf
    for _ in range(reseeds + 1):
        c = rng.standard_normal(A.n_plus_1) + 1j * rng.standard_normal(A.n_plus_1)
        _, vecs = eig(A(c))
        vecs = vecs / np.linalg.norm(vecs, axis=0)
        if np.linalg.cond(vecs) > 1e8:
            continue
        # lambda[i, j] = v_i^H A_j v_i
        lam = np.einsum("ai,jab,bi->ij", vecs.conj(), A.matrices, vecs)
        resid = np.linalg.norm(
            A.matrices @ vecs - vecs[None, :, :] * lam.T[:, None, :], axis=1
        )  # (n+1, k)
        last_residual = float(np.max(resid / norms[:, None]))
        if last_residual <= residual_tol:
            return lam
    raise DefectiveError(
        "generic combination is not diagonalizable (residual "
        f"{last_residual:.2e}); exact multiplicities of defective tuples are unsupported"
    )


def hyperplanes(A: MatrixTuple, seed: int = 0, *, dedup_tol: float = 1e-8) -> list[Hyperplane]:
    """Deduplicated planes H_phi with summed multiplicities.

    Raises
    ------
    WholeSpaceError
        If some joint tuple vanishes, in which case P(A) = C^{n+1}.
    """
    lam = joint_eigen_tuples(A, seed)
    scale = max(float(np.max(np.abs(lam))), 1e-300)
    planes: list[Hyperplane] = []
    for row in lam:
        if np.linalg.norm(row) <= 1e-12 * scale:
            raise WholeSpaceError("a joint character vanishes on every A_j, so P(A) = C^{n+1}")
        h = Hyperplane(row)
        for i, q in enumerate(planes):
            if projective_distance(q.normal, h.normal) <= dedup_tol:
                planes[i] = Hyperplane(q.normal, q.multiplicity + 1)
                break
        else:
            planes.append(h)
    return planes


@dataclass(frozen=True)
class FactorizationReport:
    constant: complex
    residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tol


def verify_factorization(
    A: MatrixTuple, planes: list[Hyperplane], *, samples: int = 50, seed: int = 0, tol: float = 1e-6
) -> FactorizationReport:
    """Fit det A(z) = c * prod_i <z, normal_i>^{m_i} at random unit points.

    The residual is max_s |det - c prod| / max_s |det|.
    """
    total = sum(p.multiplicity for p in planes)
    if total != A.k:
        raise ValueError(f"multiplicities sum to {total}, expected k = {A.k}")
    rng = np.random.default_rng(seed)
    Z = [random_point(A.n_plus_1, rng) for _ in range(samples)]
    d = np.array([determinant(A(z)) for z in Z])
    prod = np.array([np.prod([p(z) ** p.multiplicity for p in planes]) for z in Z])
    c = np.vdot(prod, d) / np.vdot(prod, prod)
    residual = float(np.max(np.abs(d - c * prod)) / np.max(np.abs(d)))
    return FactorizationReport(constant=complex(c), residual=residual, tol=tol)


def nearest_plane_distance(planes: list[Hyperplane], z) -> float:
    """min over planes of |<z, normal>| / |z|."""
    z = np.asarray(z, dtype=complex)
    return min(abs(p(z)) for p in planes) / float(np.linalg.norm(z))
