"""Periods of scalar 1-forms phi(omega_A) over closed loops in the resolvent set.

A nonzero period of a closed form certifies that it is not exact, hence a
nontrivial class in H^1. Circles use the trapezoid rule, which converges
geometrically for periodic analytic integrands; polygons use Gauss-Legendre
per edge. The node count doubles until two successive values agree.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .arrangement import Hyperplane
from .errors import (
    ConvergenceError,
    GeometricError,
    InconsistentWindingError,
    LoopTouchesSpectrumError,
)
from .linalg import determinant
from .mcform import LinearFunctional, centrality_check, closedness_check
from .pencil import MatrixTuple, as_point
from .spectrum import DEFAULT_TOL

TWO_PI_I = 2j * np.pi
DEFAULT_SAMPLES = 256
MAX_SAMPLES = 2**16


@dataclass(frozen=True)
class Loop:
    """A closed path in C^{n+1}.

    ``kind="circle"``: z(theta) = center + radius * e^{i theta} * direction.
    ``kind="polygon"``: straight edges through ``vertices``, closed back to the
    first vertex; ``samples`` is then the Gauss node count per edge.
    """

    kind: str
    center: np.ndarray | None = None
    direction: np.ndarray | None = None
    radius: float = 0.0
    vertices: np.ndarray | None = None
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if self.kind == "circle":
            c = as_point(self.center)
            d = as_point(self.direction, c.size)
            object.__setattr__(self, "center", c)
            object.__setattr__(self, "direction", d)
            if self.radius < 0:
                raise ValueError("radius must be nonnegative")
        elif self.kind == "polygon":
            v = np.asarray(self.vertices, dtype=np.complex128)
            if v.ndim != 2 or v.shape[0] < 2:
                raise ValueError("a polygon needs at least two vertices")
            object.__setattr__(self, "vertices", v)
        else:
            raise ValueError(f"unknown loop kind {self.kind!r}")
        if self.samples < 2:
            raise ValueError("samples must be at least 2")

    @classmethod
    def circle(cls, center, direction, radius: float, samples: int = DEFAULT_SAMPLES) -> Loop:
        return cls("circle", center=center, direction=direction, radius=radius, samples=samples)

    @classmethod
    def polygon(cls, vertices, samples: int = 16) -> Loop:
        return cls("polygon", vertices=vertices, samples=samples)

    @property
    def nvars(self) -> int:
        return self.center.size if self.kind == "circle" else self.vertices.shape[1]

    def start(self) -> np.ndarray:
        if self.kind == "circle":
            return self.center + self.radius * self.direction
        return self.vertices[0]

    def quadrature(self, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(parameters, points, weighted tangents) such that the integral of
        sum_j g_j dz_j is approximately sum_s sum_j g_j(points_s) tangents_s,j."""
        if self.kind == "circle":
            theta = 2 * np.pi * np.arange(n) / n
            e = np.exp(1j * theta)[:, None]
            pts = self.center[None, :] + self.radius * e * self.direction[None, :]
            dz = (2 * np.pi / n) * 1j * self.radius * e * self.direction[None, :]
            return theta, pts, dz
        x, w = np.polynomial.legendre.leggauss(n)
        verts = self.vertices
        params, pts, dz = [], [], []
        for i in range(len(verts)):
            p0, p1 = verts[i], verts[(i + 1) % len(verts)]
            u = (1 + x) / 2
            params.append(i + u)
            pts.append(p0[None, :] + u[:, None] * (p1 - p0)[None, :])
            dz.append((w / 2)[:, None] * (p1 - p0)[None, :])
        return np.concatenate(params), np.vstack(pts), np.vstack(dz)

    def path(self, n: int) -> np.ndarray:
        """Ordered points around the loop (n per edge for polygons)."""
        if self.kind == "circle":
            theta = 2 * np.pi * np.arange(n) / n
            return self.center[None, :] + self.radius * np.exp(1j * theta)[:, None] * self.direction[None, :]
        verts = self.vertices
        u = np.arange(n) / n
        return np.vstack(
            [verts[i][None, :] + u[:, None] * (verts[(i + 1) % len(verts)] - verts[i])[None, :] for i in range(len(verts))]
        )

    def describe(self) -> dict:
        if self.kind == "circle":
            return {
                "kind": "circle",
                "center": self.center,
                "direction": self.direction,
                "radius": self.radius,
                "samples": self.samples,
            }
        return {"kind": "polygon", "vertices": self.vertices, "samples": self.samples}


@dataclass(frozen=True)
class PeriodReport:
    value: complex
    error: float
    samples: int
    quantized: int | None = None
    distance: float | None = None
    loop: Loop | None = field(default=None, compare=False)

    @property
    def winding(self) -> complex:
        """value / (2 pi i)."""
        return self.value / TWO_PI_I


def _batched_margins(A: MatrixTuple, pts: np.ndarray, Az: np.ndarray) -> np.ndarray:
    """spectrum.margin at many points at once."""
    s = np.linalg.svd(Az, compute_uv=False)
    denom = np.linalg.norm(pts, axis=1) * A.scale
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(denom > 0, s[:, -1] / denom, 0.0)


def _quadrature_sum(A, phi, loop, n, admissible):
    params, pts, dz = loop.quadrature(n)
    Az = np.tensordot(pts, A.matrices, axes=1)  # (N, k, k)
    margins = _batched_margins(A, pts, Az)
    bad = int(np.argmin(margins))
    if margins[bad] <= admissible:
        raise LoopTouchesSpectrumError("loop meets the projective spectrum", float(params[bad]), float(margins[bad]))
    Adz = np.tensordot(dz, A.matrices, axes=1)
    # sum_j phi(F_j) dz_j = phi(A(z)^{-1} A(dz))
    X = np.linalg.solve(Az, Adz)
    return complex(np.einsum("ba,sab->", phi.weight, X))


def integrate(
    A: MatrixTuple,
    phi: LinearFunctional,
    loop: Loop,
    *,
    tol: float = 1e-10,
    max_samples: int = MAX_SAMPLES,
    membership_tol: float = DEFAULT_TOL,
) -> PeriodReport:
    """Period of phi(omega_A) around ``loop``.

    Every node must have margin above ``10 * membership_tol``. The estimated
    error is |I_N - I_2N|; nodes double until it is <= ``tol`` or the cap is hit.

    Raises
    ------
    LoopTouchesSpectrumError
        Naming the loop parameter of the offending node.
    """
    if loop.nvars != A.n_plus_1:
        raise ValueError(f"loop lives in C^{loop.nvars}, tuple needs C^{A.n_plus_1}")
    if phi.k != A.k:
        raise ValueError("functional and tuple sizes differ")
    admissible = 10 * membership_tol
    n = loop.samples
    prev = _quadrature_sum(A, phi, loop, n, admissible)
    while True:
        n *= 2
        cur = _quadrature_sum(A, phi, loop, n, admissible)
        err = abs(cur - prev)
        if err <= tol or n >= max_samples:
            break
        prev = cur
    w = cur / TWO_PI_I
    q = int(np.rint(w.real))
    return PeriodReport(value=cur, error=float(err), samples=n, quantized=q, distance=float(abs(w - q)), loop=loop)


def _phase_winding(f: Callable[[np.ndarray], complex], loop: Loop, start: int, cap: int = 2**18) -> float:
    """Total change of arg f around the loop / 2 pi, from sampled phase increments."""
    n = start
    last = None
    while n <= cap:
        vals = np.array([f(z) for z in loop.path(n)])
        if np.any(vals == 0):
            raise LoopTouchesSpectrumError("function vanishes on the loop", float("nan"), 0.0)
        steps = np.angle(np.roll(vals, -1) / vals)
        w = float(np.sum(steps) / (2 * np.pi))
        if np.max(np.abs(steps)) < np.pi / 4:
            if last is not None and abs(w - last) < 1e-9:
                return w
            last = w
        n *= 2
    raise ConvergenceError(f"phase sampling did not resolve the loop with {cap} points")


@dataclass(frozen=True)
class WindingReport:
    period: PeriodReport
    phase_winding: float
    winding: int
    distance: float

    @property
    def trace_winding(self) -> float:
        return float(self.period.winding.real)


def winding_of_det(
    A: MatrixTuple, loop: Loop, *, tol: float = 1e-10, agree_tol: float = 1e-4, membership_tol: float = DEFAULT_TOL
) -> WindingReport:
    """Winding number of det A(z) around ``loop``, computed two independent ways.

    One route integrates Tr(omega_A) = d log det A; the other unwraps the
    sampled phase of det A(z).

    Raises
    ------
    InconsistentWindingError
        If the two routes differ by more than ``agree_tol``.
    """
    period = integrate(A, LinearFunctional.trace(A.k), loop, tol=tol, membership_tol=membership_tol)
    start = loop.samples if loop.kind == "circle" else max(loop.samples, 16)
    phase = _phase_winding(lambda z: determinant(A(z)), loop, start)
    trace_w = period.winding
    if abs(trace_w - phase) > agree_tol:
        raise InconsistentWindingError(
            f"trace-form winding {trace_w:.8g} disagrees with det phase winding {phase:.8g}"
        )
    q = int(np.rint(trace_w.real))
    return WindingReport(period=period, phase_winding=phase, winding=q, distance=float(abs(trace_w - q)))


@dataclass(frozen=True)
class Certificate:
    verdict: str  # "NONTRIVIAL" or "INCONCLUSIVE"
    centrality: float
    closedness: float
    periods: list[PeriodReport]

    @property
    def nontrivial(self) -> bool:
        return self.verdict == "NONTRIVIAL"


def nontriviality_certificate(
    A: MatrixTuple,
    phi: LinearFunctional,
    loops: Sequence[Loop],
    h: float | None = None,
    *,
    closed_tol: float = 1e-6,
    period_tol: float = 1e-4,
    seed: int = 0,
) -> Certificate:
    """NONTRIVIAL when phi(omega_A) is numerically closed at every loop's start
    point and some period exceeds ``period_tol`` in modulus.

    Zero periods over the supplied loops prove nothing, so the only other
    verdict is INCONCLUSIVE.
    """
    central = centrality_check(phi, A, seed=seed).violation
    closed = 0.0
    for loop in loops:
        closed = max(closed, closedness_check(A, phi, loop.start(), h, richardson=True))
    periods = [integrate(A, phi, loop) for loop in loops]
    nontrivial = bool(loops) and closed <= closed_tol and any(abs(p.value) > period_tol for p in periods)
    return Certificate(
        verdict="NONTRIVIAL" if nontrivial else "INCONCLUSIVE",
        centrality=central,
        closedness=closed,
        periods=periods,
    )


def radial_log_test(
    A: MatrixTuple, phi: LinearFunctional, z, *, samples: int = DEFAULT_SAMPLES, tol: float = 1e-10
) -> PeriodReport:
    """Period of phi(omega_A) along theta -> e^{i theta} z; equals 2 pi i phi(I).

    A holomorphic primitive f would have to satisfy f(tz) - f(z) = phi(I) log t,
    so a nonzero value here rules out exactness whenever phi(I) != 0.
    """
    z = as_point(z, A.n_plus_1)
    loop = Loop.circle(np.zeros_like(z), z, 1.0, samples=samples)
    return integrate(A, phi, loop, tol=tol)


def _loop_clear(f: Callable, loop: Loop, n: int, floor: float) -> bool:
    vals = np.array([f(z) for z in loop.path(n)])
    mags = np.abs(vals)
    if mags.max() == 0 or mags.min() <= floor * mags.max():
        return False
    steps = np.angle(np.roll(vals, -1) / vals)
    if np.max(np.abs(steps)) >= np.pi / 4:
        return False
    return abs(np.sum(steps)) < np.pi


def linking_loop(
    plane,
    avoid: Sequence[Callable] = (),
    radius: float = 0.1,
    seed: int = 0,
    *,
    samples: int = DEFAULT_SAMPLES,
    max_tries: int = 50,
    floor: float = 1e-3,
) -> Loop:
    """A small circle around a random unit point of ``plane`` in the transverse
    direction conj(normal), so the plane's linear form winds exactly once.

    Each function in ``avoid`` (a Hyperplane, a HomogeneousPolynomial, any
    callable of z) must stay away from zero on the circle and have winding
    number zero there, i.e. no zero on the spanned disk.
    """
    if not isinstance(plane, Hyperplane):
        plane = Hyperplane(plane)
    rng = np.random.default_rng(seed)
    direction = plane.normal.conj()
    for _ in range(max_tries):
        base = plane.random_point(rng)
        loop = Loop.circle(base, direction, radius, samples=samples)
        if all(_loop_clear(f, loop, 512, floor) for f in avoid):
            return loop
    raise GeometricError(f"no admissible linking loop after {max_tries} tries")
