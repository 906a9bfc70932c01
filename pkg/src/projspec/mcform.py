"""The matrix-valued 1-form omega_A(z) = A(z)^{-1} dA(z) and scalar functionals of it.

Coefficients are F_j(z) = A(z)^{-1} A_j. The derivative checks below are
diagnostics: they return error magnitudes and leave thresholds to the caller.
Finite differences run in complex coordinate directions, which is valid since
everything here is holomorphic in z.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, SingularMatrixError, SingularPointError
from .linalg import inverse, solve
from .pencil import MatrixTuple, as_point
from .spectrum import DEFAULT_TOL, margin, membership

DEFAULT_REL_STEP = 1e-5


@dataclass(frozen=True)
class OneFormAtPoint:
    base: np.ndarray
    coeffs: np.ndarray  # (n+1, k, k), coeffs[j] = A(z)^{-1} A_j

    def contraction(self) -> np.ndarray:
        """Euler contraction sum_j z_j F_j."""
        return np.tensordot(self.base, self.coeffs, axes=1)


@dataclass(frozen=True)
class LinearFunctional:
    """phi(X) = trace(W X).

    The ``claimed_*`` flags record what the caller asserts; ``centrality_check``
    is what tests them.
    """

    weight: np.ndarray
    label: str = ""
    claimed_central: bool = False
    claimed_trace: bool = False

    def __post_init__(self):
        W = np.asarray(self.weight, dtype=np.complex128)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise DimensionError(f"weight must be square, got shape {W.shape}")
        object.__setattr__(self, "weight", W)

    @property
    def k(self) -> int:
        return self.weight.shape[0]

    def __call__(self, X) -> complex:
        return complex(np.sum(self.weight.T * X))

    def apply_many(self, Xs: np.ndarray) -> np.ndarray:
        return np.einsum("ba,jab->j", self.weight, Xs)

    @property
    def at_identity(self) -> complex:
        """phi(I) = trace(W)."""
        return complex(np.trace(self.weight))

    @classmethod
    def trace(cls, k: int) -> LinearFunctional:
        return cls(np.eye(k), label="Tr", claimed_central=True, claimed_trace=True)

    @classmethod
    def normalized_trace(cls, k: int) -> LinearFunctional:
        return cls(np.eye(k) / k, label="tr/k", claimed_central=True, claimed_trace=True)

    @classmethod
    def diagonal(cls, diag, label: str = "", **flags) -> LinearFunctional:
        return cls(np.diag(np.asarray(diag, dtype=complex)), label=label, **flags)


@dataclass(frozen=True)
class ScalarOneFormAtPoint:
    base: np.ndarray
    coeffs: np.ndarray  # (n+1,)

    def contraction(self) -> complex:
        return complex(np.dot(self.base, self.coeffs))


def omega_eval(A: MatrixTuple, z, tol: float = DEFAULT_TOL) -> OneFormAtPoint:
    """F_j = A(z)^{-1} A_j for all j, from one multi-right-hand-side solve.

    Raises
    ------
    SingularPointError
        If z is in P(A) at tolerance ``tol``.
    """
    z = as_point(z, A.n_plus_1)
    verdict = membership(A, z, tol)
    if not verdict.invertible:
        raise SingularPointError("omega_A is undefined on P(A)", verdict.margin)
    k, m = A.k, A.n_plus_1
    rhs = A.matrices.transpose(1, 0, 2).reshape(k, m * k)
    F = solve(A(z), rhs).reshape(k, m, k).transpose(1, 0, 2)
    return OneFormAtPoint(base=z, coeffs=F)


def _coeffs(A: MatrixTuple, z) -> np.ndarray:
    try:
        return omega_eval(A, z).coeffs
    except SingularMatrixError as exc:
        raise SingularPointError("stencil point is numerically singular", exc.margin) from exc


def default_step(z) -> float:
    return DEFAULT_REL_STEP * max(float(np.linalg.norm(z)), 1e-300)


def _central_diff(f: Callable[[np.ndarray], np.ndarray], z: np.ndarray, i: int, h: float, richardson: bool):
    e = np.zeros_like(z)
    e[i] = 1.0

    def d(step):
        return (f(z + step * e) - f(z - step * e)) / (2 * step)

    if not richardson:
        return d(h)
    return (4 * d(h / 2) - d(h)) / 3


def _safe_inverse(A: MatrixTuple, z) -> np.ndarray:
    if not membership(A, z).invertible:
        raise SingularPointError("stencil point lies in P(A)", margin(A, z))
    return inverse(A(z))


def resolvent_derivative_check(
    A: MatrixTuple, z, h: float | None = None, *, richardson: bool = False
) -> float:
    """max_j || central difference of A^{-1} along z_j + A^{-1} A_j A^{-1} ||_F.

    The identity d/dz_j A^{-1} = -A^{-1} A_j A^{-1} makes this O(h^2)
    (O(h^4) with ``richardson``).
    """
    z = as_point(z, A.n_plus_1)
    h = default_step(z) if h is None else h
    Ainv = _safe_inverse(A, z)
    err = 0.0
    for j in range(A.n_plus_1):
        fd = _central_diff(lambda w: _safe_inverse(A, w), z, j, h, richardson)
        err = max(err, float(np.linalg.norm(fd + Ainv @ A[j] @ Ainv)))
    return err


def flatness_check(A: MatrixTuple, z, h: float | None = None, *, richardson: bool = False) -> float:
    """max_{i<j} || (d_i F_j - d_j F_i) + (F_i F_j - F_j F_i) ||_F, i.e. d omega + omega ^ omega."""
    z = as_point(z, A.n_plus_1)
    h = default_step(z) if h is None else h
    F = _coeffs(A, z)
    dF = [_central_diff(lambda w: _coeffs(A, w), z, i, h, richardson) for i in range(A.n_plus_1)]
    err = 0.0
    for i, j in itertools.combinations(range(A.n_plus_1), 2):
        lhs = (dF[i][j] - dF[j][i]) + (F[i] @ F[j] - F[j] @ F[i])
        err = max(err, float(np.linalg.norm(lhs)))
    return err


def euler_contraction(A: MatrixTuple, z) -> np.ndarray:
    """sum_j z_j F_j(z); identically the identity matrix."""
    return omega_eval(A, z).contraction()


def apply_functional(phi: LinearFunctional, form: OneFormAtPoint) -> ScalarOneFormAtPoint:
    if phi.k != form.coeffs.shape[1]:
        raise DimensionError(f"functional is {phi.k}x{phi.k}, form is {form.coeffs.shape[1]}x{form.coeffs.shape[1]}")
    return ScalarOneFormAtPoint(base=form.base, coeffs=phi.apply_many(form.coeffs))


def scalar_form(A: MatrixTuple, phi: LinearFunctional, z) -> np.ndarray:
    """Coefficients phi(F_j(z)) of phi(omega_A) at z."""
    return apply_functional(phi, omega_eval(A, z)).coeffs


def log_derivative_form(normal, z) -> np.ndarray:
    """Coefficients of d<z, normal> / <z, normal>, the form of a multiplicative functional."""
    normal = np.asarray(normal, dtype=complex)
    z = as_point(z, normal.size)
    return normal / np.dot(z, normal)


@dataclass(frozen=True)
class CentralityReport:
    violation: float
    words: int
    resolvent_samples: int
    # sampled words only probe the generated algebra, so a small violation is evidence, not proof
    heuristic: bool = field(default=True)


def _random_word(gens: list[np.ndarray], max_len: int, rng: np.random.Generator) -> np.ndarray:
    length = int(rng.integers(1, max_len + 1))
    X = gens[int(rng.integers(len(gens)))]
    for _ in range(length - 1):
        X = X @ gens[int(rng.integers(len(gens)))]
    return X


def centrality_check(
    phi: LinearFunctional,
    A: MatrixTuple,
    word_len: int = 3,
    trials: int = 200,
    seed: int = 0,
    *,
    resolvent_samples: int = 2,
) -> CentralityReport:
    """max |phi(XY) - phi(YX)| / (|X| |Y| |W|) over random words X, Y.

    Letters are the A_j and A(z_s)^{-1} at a few seeded resolvent points,
    so words sample the inversion-closed algebra generated by the tuple.
    """
    if phi.k != A.k:
        raise DimensionError("functional and tuple sizes differ")
    rng = np.random.default_rng(seed)
    gens = [m for m in A.matrices if np.any(m)]
    found = 0
    for _ in range(50 * resolvent_samples):
        if found == resolvent_samples:
            break
        z = rng.standard_normal(A.n_plus_1) + 1j * rng.standard_normal(A.n_plus_1)
        if margin(A, z) > 1e-6:
            gens.append(inverse(A(z)))
            found += 1
    wnorm = np.linalg.norm(phi.weight)
    worst = 0.0
    if wnorm == 0.0 or not gens:
        return CentralityReport(0.0, trials, found)
    for _ in range(trials):
        X = _random_word(gens, word_len, rng)
        Y = _random_word(gens, word_len, rng)
        denom = np.linalg.norm(X) * np.linalg.norm(Y) * wnorm
        if denom == 0.0:
            continue
        worst = max(worst, abs(phi(X @ Y) - phi(Y @ X)) / denom)
    return CentralityReport(float(worst), trials, found)


def closedness_check(
    A: MatrixTuple, phi: LinearFunctional, z, h: float | None = None, *, richardson: bool = False
) -> float:
    """max_{i<j} |d_i phi(F_j) - d_j phi(F_i)| by central differences."""
    z = as_point(z, A.n_plus_1)
    h = default_step(z) if h is None else h

    def g(w):
        return phi.apply_many(_coeffs(A, w))

    dg = [_central_diff(g, z, i, h, richardson) for i in range(A.n_plus_1)]
    err = 0.0
    for i, j in itertools.combinations(range(A.n_plus_1), 2):
        err = max(err, float(abs(dg[i][j] - dg[j][i])))
    return err


def descent_check(A: MatrixTuple, phi: LinearFunctional, z) -> complex:
    """sum_j z_j phi(F_j(z)), which equals phi(I).

    When phi(I) = 0 the form has zero Euler contraction and descends to the
    projective resolvent set.
    """
    return apply_functional(phi, omega_eval(A, z)).contraction()


def convergence_ratio(check: Callable[..., float], *args, h: float, **kwargs) -> float:
    """check(h) / check(h/2); about 4 for a second-order difference."""
    return check(*args, h=h, **kwargs) / check(*args, h=h / 2, **kwargs)
