"""Membership in P(A) and sampling of the projective spectrum.

A point z lies in P(A) when A(z) is not invertible. Numerically this means the
margin sigma_min(A(z / |z|)) / scale(A) is at most ``tol``, where
scale(A) = (sum_j ||A_j||_2^2)^(1/2). The margin is the relative size of the
smallest tuple perturbation that puts [z] in the spectrum, and it stays
meaningful for 1 x 1 tuples where sigma_min / sigma_max is always 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .detpoly import group_roots, restrict_to_line, roots
from .errors import DependentPointsError, LineInSpectrumError, ZeroPolynomialError
from .linalg import eigenvalues, sigma_min, solve
from .pencil import MatrixTuple, ProjectivePoint, as_point, random_point

DEFAULT_TOL = 1e-8
POLISH_ABOVE = 1e-13


@dataclass(frozen=True)
class MembershipVerdict:
    invertible: bool
    margin: float
    tol: float
    degenerate: bool = False

    @property
    def in_spectrum(self) -> bool:
        return not self.invertible


def margin(A: MatrixTuple, z) -> float:
    """sigma_min(A(z / |z|)) / scale(A); 0 at the origin and for a zero tuple."""
    z = as_point(z, A.n_plus_1)
    nrm = np.linalg.norm(z)
    if nrm == 0.0 or A.scale == 0.0:
        return 0.0
    return sigma_min(A(z / nrm)) / A.scale


def membership(A: MatrixTuple, z, tol: float = DEFAULT_TOL) -> MembershipVerdict:
    z = as_point(z, A.n_plus_1)
    if not np.any(z):
        return MembershipVerdict(invertible=False, margin=0.0, tol=tol, degenerate=True)
    m = margin(A, z)
    return MembershipVerdict(invertible=m > tol, margin=m, tol=tol)


@dataclass(frozen=True)
class SpectrumPoint:
    point: ProjectivePoint
    multiplicity: int
    margin: float
    # line parameter t of a + t b; inf for the point [b]
    parameter: complex = complex(np.inf)

    @property
    def coords(self) -> np.ndarray:
        return self.point.coords

    @property
    def at_infinity(self) -> bool:
        return not np.isfinite(self.parameter)


def _check_line(A: MatrixTuple, a, b) -> tuple[np.ndarray, np.ndarray]:
    a = as_point(a, A.n_plus_1)
    b = as_point(b, A.n_plus_1)
    s = np.linalg.svd(np.vstack([a, b]), compute_uv=False)
    if s[0] == 0.0 or s[1] <= 1e-12 * s[0]:
        raise DependentPointsError("line needs two linearly independent points")
    return a, b


def _resolvent_base(A: MatrixTuple, a, b) -> tuple[complex, np.ndarray]:
    """A shift s with a + s b in the resolvent set, preferring s = 0."""
    best = (0.0, 0j)
    rng = np.random.default_rng(7)
    candidates = [0j] + list(rng.standard_normal(24) + 1j * rng.standard_normal(24))
    for s in candidates:
        m = margin(A, a + s * b)
        if m > 1e-6:
            return s, a + s * b
        best = max(best, (m, s), key=lambda x: x[0])
    m, s = best
    if m <= 1e-10:
        raise LineInSpectrumError("det A vanishes identically on the line")
    return s, a + s * b


def _line_points_pencil(A, a, b, cluster_rel, polish):
    s, base = _resolvent_base(A, a, b)
    Abase, Ab = A(base), A(b)
    M = solve(Abase, Ab)
    mu = eigenvalues(M)
    inf_tol = 1e-12 * max(1.0, np.linalg.norm(M, 2))
    mu = np.where(np.abs(mu) <= inf_tol, 0, mu)

    # det A(mu*base - b) vanishes at each eigenvalue mu of M
    def point(m):
        return m * base - b

    P = mu[:, None] * base[None, :] - b[None, :]
    P /= np.linalg.norm(P, axis=1, keepdims=True)
    overlap = np.minimum(np.abs(P.conj() @ P.T), 1.0)
    dist = np.sqrt(1.0 - overlap**2)
    leaders: list[int] = []
    groups: list[list[complex]] = []
    for i, m in enumerate(mu):
        for lead, g in zip(leaders, groups):
            if dist[i, lead] <= cluster_rel:
                g.append(m)
                break
        else:
            leaders.append(i)
            groups.append([m])

    out = []
    for g in groups:
        m = complex(np.mean(g)) if any(x != 0 for x in g) else 0j
        mg = margin(A, point(m))
        # simple points already at round-off are left alone
        if polish and len(g) == 1 and m != 0 and mg > POLISH_ABOVE:
            m = _newton_polish(A, base, b, m)
            mg = margin(A, point(m))
        t = complex(np.inf) if m == 0 else s - 1.0 / m
        out.append((point(m), len(g), t, mg))
    return out


def _newton_polish(A, base, b, m, steps=2):
    # Newton on mu -> det A(mu*base - b) using d log det = tr(A^{-1} dA);
    # steps are kept only while the scale-free |det| keeps dropping.
    Abase = A(base)

    def log_size(z, lu):
        with np.errstate(divide="ignore"):
            return np.sum(np.log(np.abs(np.diag(lu)))) - A.k * np.log(np.linalg.norm(z))

    best_m, best = m, np.inf
    for _ in range(steps + 1):
        z = m * base - b
        with warnings.catch_warnings():
            # an exactly singular iterate is a hit, not a failure
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = lu_factor(A(z), check_finite=False)
        size = log_size(z, lu)
        if not size < best:
            break
        best_m, best = m, size
        if not np.isfinite(size):
            break
        g = np.trace(lu_solve((lu, piv), Abase, check_finite=False))
        if g == 0 or not np.isfinite(g):
            break
        m = m - 1.0 / g
    return best_m


def _line_points_polynomial(A, a, b, cluster_rel, scale):
    p = restrict_to_line(A, a, b, scale=scale)
    try:
        r = roots(p)
    except ZeroPolynomialError as exc:
        raise LineInSpectrumError("det A vanishes identically on the line") from exc
    out = [(a + t * b, mult, t) for t, mult in group_roots(r, rel=cluster_rel)]
    if p.degree < A.k:
        out.append((b, A.k - p.degree, complex(np.inf)))
    return [(z, mult, t, margin(A, z)) for z, mult, t in out]


def line_sample(
    A: MatrixTuple,
    a,
    b,
    *,
    tol: float = DEFAULT_TOL,
    method: str = "pencil",
    cluster_rel: float = 1e-6,
    polish: bool = True,
    scale: float | None = None,
) -> list[SpectrumPoint]:
    """Points where the projective line through [a], [b] meets p(A).

    ``method="pencil"`` (default) takes eigenvalues of A(a')^{-1} A(b) for a
    resolvent base point a' on the line, which stays accurate at large k.
    ``method="polynomial"`` roots the restriction t -> det A(a + t b) through
    its companion matrix. Either way a degree drop appears as the point [b]
    with multiplicity k - deg. Multiplicities sum to k.

    Raises
    ------
    LineInSpectrumError
        If the whole line lies in P(A).
    """
    a, b = _check_line(A, a, b)
    if method == "pencil":
        raw = _line_points_pencil(A, a, b, cluster_rel, polish)
    elif method == "polynomial":
        raw = _line_points_polynomial(A, a, b, cluster_rel, scale)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [
        SpectrumPoint(ProjectivePoint(z), mult, mg, complex(t))
        for z, mult, t, mg in raw
    ]


@dataclass
class PointCloud:
    points: list[SpectrumPoint] = field(default_factory=list)
    lines: int = 0
    skipped_lines: int = 0
    rejected_points: int = 0

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def coords(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, 0), dtype=complex)
        return np.array([p.coords for p in self.points])


def random_line(nvars: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    return random_point(nvars, rng), random_point(nvars, rng)


def cloud_sample(
    A: MatrixTuple, num_lines: int, seed: int = 0, *, tol: float = DEFAULT_TOL, method: str = "pencil"
) -> PointCloud:
    """Concatenated ``line_sample`` over seeded random lines.

    Lines contained in the spectrum are skipped and counted; points whose
    re-verified margin exceeds ``tol`` are dropped and counted.
    """
    if A.n_plus_1 < 2:
        raise ValueError("sampling lines needs n >= 1")
    rng = np.random.default_rng(seed)
    cloud = PointCloud()
    for _ in range(num_lines):
        a, b = random_line(A.n_plus_1, rng)
        cloud.lines += 1
        try:
            pts = line_sample(A, a, b, tol=tol, method=method)
        except LineInSpectrumError:
            cloud.skipped_lines += 1
            continue
        for p in pts:
            if p.margin <= tol:
                cloud.points.append(p)
            else:
                cloud.rejected_points += 1
    return cloud


@dataclass(frozen=True)
class AffineSlice:
    """Margins of A on a grid of the affine chart {z_chart = 1}.

    For n = 1 the grid covers the complex plane of the single affine
    coordinate (x + iy). For n = 2 it covers real values (x, y) of the two
    affine coordinates.
    """

    chart: int
    xs: np.ndarray
    ys: np.ndarray
    points: np.ndarray  # (ny, nx, n+1) homogeneous coordinates
    margins: np.ndarray  # (ny, nx)

    def rows(self):
        ny, nx = self.margins.shape
        for iy in range(ny):
            for ix in range(nx):
                yield self.points[iy, ix], self.margins[iy, ix]


def affine_slice(
    A: MatrixTuple,
    chart: int = 0,
    bounds: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0),
    resolution: tuple[int, int] = (101, 101),
) -> AffineSlice:
    if A.n not in (1, 2):
        raise ValueError("affine slices are defined for n = 1 or n = 2")
    if not 0 <= chart <= A.n:
        raise ValueError(f"chart must be in 0..{A.n}")
    xmin, xmax, ymin, ymax = bounds
    xs = np.linspace(xmin, xmax, resolution[0])
    ys = np.linspace(ymin, ymax, resolution[1])
    X, Y = np.meshgrid(xs, ys)
    if A.n == 1:
        affine = (X + 1j * Y)[..., None]
    else:
        affine = np.stack([X, Y], axis=-1).astype(complex)
    pts = np.insert(affine, chart, 1.0, axis=-1)
    margins = np.empty(X.shape)
    for idx in np.ndindex(X.shape):
        margins[idx] = margin(A, pts[idx])
    return AffineSlice(chart=chart, xs=xs, ys=ys, points=pts, margins=margins)
