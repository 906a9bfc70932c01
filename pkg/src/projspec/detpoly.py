"""det A(z) as a homogeneous polynomial, and its restriction to lines."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .errors import DependentPointsError, InterpolationError, ZeroPolynomialError
from .linalg import determinant, eigenvalues
from .pencil import MatrixTuple, as_point, random_point

Exponent = tuple[int, ...]


def monomial_exponents(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total ``degree`` in ``nvars`` variables, z_0-heavy first."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def _monomial_matrix(Z: np.ndarray, exps: np.ndarray) -> np.ndarray:
    # Z: (N, nvars), exps: (M, nvars) -> (N, M)
    return np.prod(Z[:, None, :] ** exps[None, :, :], axis=2)


@dataclass(frozen=True)
class HomogeneousPolynomial:
    degree: int
    nvars: int
    coefficients: dict[Exponent, complex]
    residual: float | None = field(default=None, compare=False)

    def __post_init__(self):
        for e in self.coefficients:
            if len(e) != self.nvars or sum(e) != self.degree:
                raise ValueError(f"exponent {e} does not match degree {self.degree}, nvars {self.nvars}")

    @classmethod
    def linear(cls, coeffs) -> HomogeneousPolynomial:
        coeffs = np.asarray(coeffs, dtype=complex)
        nv = coeffs.size
        return cls(1, nv, {tuple(int(i == j) for i in range(nv)): complex(c) for j, c in enumerate(coeffs)})

    def __call__(self, z) -> complex:
        z = as_point(z, self.nvars)
        total = 0j
        for e, c in self.coefficients.items():
            total += c * np.prod(z ** np.array(e))
        return complex(total)

    def __mul__(self, other: HomogeneousPolynomial) -> HomogeneousPolynomial:
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        out: dict[Exponent, complex] = {}
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0j) + c1 * c2
        return HomogeneousPolynomial(self.degree + other.degree, self.nvars, out)

    def __pow__(self, m: int) -> HomogeneousPolynomial:
        result = HomogeneousPolynomial(0, self.nvars, {(0,) * self.nvars: 1 + 0j})
        for _ in range(m):
            result = result * self
        return result

    def scaled(self, c: complex) -> HomogeneousPolynomial:
        return HomogeneousPolynomial(
            self.degree, self.nvars, {e: c * v for e, v in self.coefficients.items()}
        )

    def coefficient(self, exponent: Exponent) -> complex:
        return self.coefficients.get(tuple(exponent), 0j)

    def coefficient_vector(self) -> np.ndarray:
        """Coefficients in ``monomial_exponents`` order, zeros filled in."""
        return np.array(
            [self.coefficient(e) for e in monomial_exponents(self.nvars, self.degree)]
        )

    def trimmed(self, rtol: float = 1e-12) -> HomogeneousPolynomial:
        scale = max((abs(c) for c in self.coefficients.values()), default=0.0)
        kept = {e: c for e, c in self.coefficients.items() if abs(c) > rtol * scale}
        return HomogeneousPolynomial(self.degree, self.nvars, kept, residual=self.residual)


def det_scale(A: MatrixTuple, *, samples: int = 8, seed: int = 0) -> float:
    """max |det A(z)| over a few seeded points of the unit sphere."""
    rng = np.random.default_rng(seed)
    return max(abs(determinant(A(random_point(A.n_plus_1, rng)))) for _ in range(samples))


def interpolate_det(
    A: MatrixTuple,
    *,
    seed: int = 0,
    oversample: int = 2,
    samples: int | None = None,
    max_monomials: int = 10_000,
    rtol: float = 1e-8,
    cond_limit: float = 1e12,
) -> HomogeneousPolynomial:
    """Least-squares fit of the degree-k form det A(z) from samples on the unit sphere.

    ``oversample * C(k+n, n)`` nodes (or exactly ``samples``) are drawn
    uniformly on the complex unit sphere. The monomial matrix is
    column-equilibrated before solving.

    Raises
    ------
    InterpolationError
        If the system is rank deficient or ill-conditioned (try a larger
        ``oversample``), or the relative residual exceeds ``rtol``.
    """
    k, nv = A.k, A.n_plus_1
    count = math.comb(k + nv - 1, nv - 1)
    if count > max_monomials:
        raise InterpolationError(f"{count} monomials exceed the desk-scale bound {max_monomials}")
    exps = monomial_exponents(nv, k)
    rng = np.random.default_rng(seed)
    nsamples = oversample * count if samples is None else samples
    Z = np.array([random_point(nv, rng) for _ in range(nsamples)])
    d = np.array([determinant(A(z)) for z in Z])
    dnorm = np.linalg.norm(d)
    if dnorm == 0.0:
        return HomogeneousPolynomial(k, nv, {e: 0j for e in exps}, residual=0.0)

    V = _monomial_matrix(Z, np.array(exps))
    colscale = np.linalg.norm(V, axis=0)
    coef, _, rank, sv = np.linalg.lstsq(V / colscale, d, rcond=None)
    cond = sv[0] / sv[-1] if sv[-1] > 0 else np.inf
    if rank < count or cond > cond_limit:
        raise InterpolationError(
            f"interpolation system is ill-conditioned (rank {rank}/{count}, cond {cond:.2e}); "
            "increase the number of samples"
        )
    coef = coef / colscale
    residual = float(np.linalg.norm(V @ coef - d) / dnorm)
    if residual > rtol:
        raise InterpolationError(
            f"relative interpolation residual {residual:.2e} exceeds {rtol:.0e}; "
            "increase the number of samples"
        )
    return HomogeneousPolynomial(k, nv, {e: complex(c) for e, c in zip(exps, coef)}, residual=residual)


@dataclass(frozen=True)
class UnivariatePolynomial:
    """c_0 + c_1 t + ... + c_d t^d."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def trimmed(self, rtol: float = 1e-12, atol: float = 0.0) -> UnivariatePolynomial:
        """Zero out coefficients below ``max(atol, rtol * max|c|)`` and drop the top zeros."""
        c = self.coeffs.copy()
        c[np.abs(c) <= max(atol, rtol * np.max(np.abs(c)))] = 0
        nz = np.flatnonzero(c)
        return UnivariatePolynomial(c[: nz[-1] + 1] if nz.size else c[:1])

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(t, self.coeffs)

    def derivative(self) -> UnivariatePolynomial:
        return UnivariatePolynomial(np.polynomial.polynomial.polyder(self.coeffs))

    @classmethod
    def from_roots(cls, roots, leading: complex = 1.0) -> UnivariatePolynomial:
        return cls(leading * np.polynomial.polynomial.polyfromroots(roots))


def restrict_to_line(
    A: MatrixTuple, a, b, *, scale: float | None = None, zero_rtol: float = 1e-12, trim_rtol: float = 1e-10
) -> UnivariatePolynomial:
    """Coefficients of t -> det A(a + t b).

    Sampled at the k+1 roots of unity and inverted with a DFT, which is exact
    interpolation for degree <= k. Returns the zero polynomial when every sample
    is below ``zero_rtol * scale * (|a| + |b|)^k``.
    """
    a = as_point(a, A.n_plus_1)
    b = as_point(b, A.n_plus_1)
    s = np.linalg.svd(np.vstack([a, b]), compute_uv=False)
    if s[0] == 0.0 or s[1] <= 1e-12 * s[0]:
        raise DependentPointsError("line needs two linearly independent points")
    k = A.k
    nodes = np.exp(2j * np.pi * np.arange(k + 1) / (k + 1))
    values = np.array([determinant(A(a + t * b)) for t in nodes])
    if scale is None:
        scale = det_scale(A)
    floor = zero_rtol * scale * (np.linalg.norm(a) + np.linalg.norm(b)) ** k
    if np.max(np.abs(values)) <= floor:
        return UnivariatePolynomial(np.zeros(1))
    coeffs = np.fft.fft(values) / (k + 1)
    return UnivariatePolynomial(coeffs).trimmed(rtol=trim_rtol, atol=floor)


def companion(p: UnivariatePolynomial) -> np.ndarray:
    c = p.coeffs
    d = c.size - 1
    C = np.zeros((d, d), dtype=np.complex128)
    C[1:, :-1] = np.eye(d - 1)
    C[:, -1] = -c[:-1] / c[-1]
    return C


def roots(p: UnivariatePolynomial, *, trim_rtol: float = 1e-12, cluster_gap: float = 1e-2) -> np.ndarray:
    """All complex roots with multiplicity: companion eigenvalues, then one
    Newton step for each isolated root.

    Roots within ``cluster_gap`` (relative) of another root are left as
    eigenvalues; stepping cluster members one at a time spoils the
    cancellation that keeps their symmetric functions accurate.
    """
    p = p.trimmed(rtol=trim_rtol)
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no isolated roots")
    if p.degree == 0:
        return np.zeros(0, dtype=np.complex128)
    r = eigenvalues(companion(p))
    dp = p.derivative()
    gaps = np.abs(r[:, None] - r[None, :]) + np.diag(np.full(r.size, np.inf))
    isolated = gaps.min(axis=1) > cluster_gap * np.maximum(1.0, np.abs(r))
    for i, x in enumerate(r):
        if not isolated[i]:
            continue
        slope = dp(x)
        if slope != 0:
            y = x - p(x) / slope
            if abs(p(y)) < abs(p(x)):
                r[i] = y
    return r


def group_roots(values, rel: float = 1e-6) -> list[tuple[complex, int]]:
    """Cluster nearly equal roots; returns (cluster mean, multiplicity) pairs."""
    values = list(np.asarray(values, dtype=complex))
    clusters: list[list[complex]] = []
    for v in values:
        for cl in clusters:
            if any(abs(v - w) <= rel * max(1.0, abs(w)) for w in cl):
                cl.append(v)
                break
        else:
            clusters.append([v])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]
