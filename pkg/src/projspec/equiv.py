"""Similarity of Maurer-Cartan forms and recovery of (U, V) with U A_j V = B_j.

If V^{-1} F^A_j(z) V = F^B_j(z) on the common resolvent set then
A(z) V B(z)^{-1} is a constant C, and U = C^{-1} is the left factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CandidateRejectedError, DimensionError, NoAdmissibleSamplesError, NotSimilarError
from .linalg import condition_margin, inverse, null_space, random_unitary, solve
from .mcform import omega_eval
from .pencil import MatrixTuple, random_point
from .spectrum import margin


@dataclass(frozen=True)
class SimilaritySolution:
    basis: list[np.ndarray]  # candidate V matrices, unit Frobenius norm
    singular_values: np.ndarray
    samples: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class EquivalenceWitness:
    U: np.ndarray
    V: np.ndarray
    residual: float


def _common_resolvent_points(A, B, count, rng, min_margin=1e-6, max_tries=None):
    pts = []
    tries = max_tries or 100 * count
    for _ in range(tries):
        z = random_point(A.n_plus_1, rng)
        if margin(A, z) > min_margin and margin(B, z) > min_margin:
            pts.append(z)
            if len(pts) == count:
                return np.array(pts)
    raise NoAdmissibleSamplesError(f"found {len(pts)} of {count} common resolvent points")


def _check_shapes(A: MatrixTuple, B: MatrixTuple) -> None:
    if A.k != B.k or A.n_plus_1 != B.n_plus_1:
        raise DimensionError(f"tuples differ in shape: (k={A.k}, n={A.n}) vs (k={B.k}, n={B.n})")


def solve_form_similarity(
    A: MatrixTuple, B: MatrixTuple, samples: int | None = None, seed: int = 0, *, rtol: float = 1e-8
) -> SimilaritySolution:
    """Near-null space of V -> F^A_j(z_s) V - V F^B_j(z_s), stacked over j and s.

    Raises
    ------
    NotSimilarError
        If the stacked system has trivial null space.
    """
    _check_shapes(A, B)
    k = A.k
    samples = 2 * A.n_plus_1 if samples is None else samples
    rng = np.random.default_rng(seed)
    Z = _common_resolvent_points(A, B, samples, rng)
    eye = np.eye(k)
    blocks = []
    size = 0.0
    for z in Z:
        FA = omega_eval(A, z).coeffs
        FB = omega_eval(B, z).coeffs
        for Fa, Fb in zip(FA, FB):
            # row-major vec: vec(F V) = (F kron I) v, vec(V G) = (I kron G^T) v
            blocks.append(np.kron(Fa, eye) - np.kron(eye, Fb.T))
            size = max(size, np.linalg.norm(Fa, 2) + np.linalg.norm(Fb, 2))
    # relative to the operator size: for k = 1 the stacked system is pure roundoff
    basis, sv = null_space(np.vstack(blocks), rtol=rtol, scale=size)
    if basis.shape[1] == 0:
        raise NotSimilarError("forms are not similar: the intertwining system has trivial null space")
    mats = [_gauge(basis[:, i].reshape(k, k)) for i in range(basis.shape[1])]
    return SimilaritySolution(basis=mats, singular_values=sv, samples=Z)


def _gauge(V: np.ndarray) -> np.ndarray:
    """Unit Frobenius norm, first non-negligible entry real positive."""
    V = V / np.linalg.norm(V)
    flat = V.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > 1e-12))
    return V / (flat[idx] / abs(flat[idx]))


def recover_U(
    A: MatrixTuple, B: MatrixTuple, V, samples: int | None = None, seed: int = 1, *, rtol: float = 1e-8
) -> EquivalenceWitness:
    """Check that C(z) = A(z) V B(z)^{-1} is constant and return U = C^{-1}.

    The witness is normalized so that |V|_F = 1 with its first nonzero entry
    real positive; (U / t, t V) is the same witness.

    Raises
    ------
    CandidateRejectedError
        If V or C is singular, or C varies beyond ``rtol``.
    """
    _check_shapes(A, B)
    V = np.asarray(V, dtype=np.complex128)
    if condition_margin(V) <= 1e-10:
        raise CandidateRejectedError("candidate V is singular")
    V = _gauge(V)
    samples = 2 * A.n_plus_1 if samples is None else samples
    rng = np.random.default_rng(seed)
    Z = _common_resolvent_points(A, B, samples, rng)
    Cs = [solve(B(z).T, (A(z) @ V).T).T for z in Z]
    C0 = Cs[0]
    dev = max(np.linalg.norm(C - C0) / np.linalg.norm(C0) for C in Cs)
    if dev > rtol:
        raise CandidateRejectedError(f"A(z) V B(z)^-1 is not constant (relative deviation {dev:.2e})")
    C = np.mean(Cs, axis=0)
    if condition_margin(C) <= 1e-10:
        raise CandidateRejectedError("A(z) V B(z)^-1 is singular")
    U = inverse(C)
    return EquivalenceWitness(U=U, V=V, residual=witness_residual(A, B, U, V))


def witness_residual(A: MatrixTuple, B: MatrixTuple, U, V) -> float:
    """max_j |U A_j V - B_j|_F / |B_j|_F (absolute where B_j = 0)."""
    out = 0.0
    for Aj, Bj in zip(A, B):
        nb = np.linalg.norm(Bj)
        out = max(out, float(np.linalg.norm(U @ Aj @ V - Bj) / (nb if nb > 0 else 1.0)))
    return out


def find_witness(
    A: MatrixTuple, B: MatrixTuple, samples: int | None = None, seed: int = 0, *, tries: int = 5
) -> EquivalenceWitness:
    """Null-space candidates (each basis matrix, then random combinations) through ``recover_U``.

    Raises
    ------
    NotSimilarError
        If no candidate yields a constant, invertible C.
    """
    sol = solve_form_similarity(A, B, samples, seed)
    candidates = list(sol.basis)
    if sol.dimension > 1:
        rng = np.random.default_rng(seed + 1)
        for _ in range(tries):
            c = rng.standard_normal(sol.dimension) + 1j * rng.standard_normal(sol.dimension)
            candidates.append(sum(ci * Vi for ci, Vi in zip(c, sol.basis)))
    for V in candidates:
        try:
            return recover_U(A, B, V, samples, seed + 2)
        except CandidateRejectedError:
            continue
    raise NotSimilarError(f"none of {len(candidates)} intertwiner candidates is invertible and constant")


def random_invertible(k: int, rng: np.random.Generator, max_cond: float = 100.0) -> np.ndarray:
    """Q1 diag(s) Q2 with Haar unitaries and singular values in [1, max_cond^(1/2)]."""
    s = rng.uniform(1.0, np.sqrt(max_cond), size=k)
    return random_unitary(k, rng) @ np.diag(s) @ random_unitary(k, rng)


def random_equivalent_tuple(A: MatrixTuple, seed: int = 0) -> tuple[MatrixTuple, np.ndarray, np.ndarray]:
    """(B, U, V) with B_j = U A_j V and cond(U), cond(V) <= 100."""
    rng = np.random.default_rng(seed)
    U = random_invertible(A.k, rng)
    V = random_invertible(A.k, rng)
    return A.transformed(U, V), U, V
