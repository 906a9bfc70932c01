"""JSON and CSV formats.

Complex numbers are written as [re, im] pairs; matrices as nested row lists
of pairs. Floats keep full precision (17 significant digits in CSV).
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable

import numpy as np

from .arrangement import Hyperplane
from .detpoly import HomogeneousPolynomial
from .equiv import EquivalenceWitness
from .mcform import LinearFunctional
from .pencil import MatrixTuple
from .periods import Certificate, Loop, PeriodReport, WindingReport


def encode_complex(c) -> list[float]:
    c = complex(c)
    return [c.real, c.imag]


def decode_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    re, im = v
    return complex(float(re), float(im))


def encode_vector(v) -> list[list[float]]:
    return [encode_complex(x) for x in np.asarray(v).reshape(-1)]


def decode_vector(v) -> np.ndarray:
    return np.array([decode_complex(x) for x in v], dtype=np.complex128)


def encode_matrix(M) -> list:
    return [encode_vector(row) for row in np.asarray(M)]


def decode_matrix(rows) -> np.ndarray:
    return np.array([decode_vector(r) for r in rows], dtype=np.complex128)


def tuple_to_json(A: MatrixTuple) -> dict:
    return {"k": A.k, "n": A.n, "matrices": [encode_matrix(M) for M in A]}


def tuple_from_json(data: dict) -> MatrixTuple:
    mats = np.array([decode_matrix(M) for M in data["matrices"]])
    A = MatrixTuple(mats, label=data.get("label", ""))
    if "k" in data and data["k"] != A.k:
        raise ValueError(f"declared k = {data['k']} but matrices are {A.k} x {A.k}")
    if "n" in data and data["n"] != A.n:
        raise ValueError(f"declared n = {data['n']} but {A.n_plus_1} matrices given")
    return A


def functional_to_json(phi: LinearFunctional) -> dict:
    return {"label": phi.label, "weight": encode_matrix(phi.weight)}


def functional_from_json(data: dict) -> LinearFunctional:
    return LinearFunctional(decode_matrix(data["weight"]), label=data.get("label", ""))


def loop_to_json(loop: Loop) -> dict:
    d = loop.describe()
    for key in ("center", "direction"):
        if key in d:
            d[key] = encode_vector(d[key])
    if "vertices" in d:
        d["vertices"] = [encode_vector(v) for v in d["vertices"]]
    return d


def loop_from_json(data: dict) -> Loop:
    kind = data.get("kind", "circle")
    samples = int(data.get("samples", 256 if kind == "circle" else 16))
    if kind == "circle":
        return Loop.circle(
            decode_vector(data["center"]), decode_vector(data["direction"]), float(data["radius"]), samples
        )
    if kind == "polygon":
        return Loop.polygon(np.array([decode_vector(v) for v in data["vertices"]]), samples)
    raise ValueError(f"unknown loop kind {kind!r}")


def polynomial_to_json(p: HomogeneousPolynomial) -> dict:
    coeffs = {",".join(map(str, e)): encode_complex(c) for e, c in p.coefficients.items()}
    out = {"degree": p.degree, "nvars": p.nvars, "coefficients": coeffs}
    if p.residual is not None:
        out["residual"] = p.residual
    return out


def polynomial_from_json(data: dict) -> HomogeneousPolynomial:
    coeffs = {
        tuple(int(x) for x in key.split(",")): decode_complex(v) for key, v in data["coefficients"].items()
    }
    return HomogeneousPolynomial(int(data["degree"]), int(data["nvars"]), coeffs, residual=data.get("residual"))


def arrangement_to_json(planes: Iterable[Hyperplane]) -> list[dict]:
    return [{"normal": encode_vector(p.normal), "multiplicity": p.multiplicity} for p in planes]


def arrangement_from_json(data: list[dict]) -> list[Hyperplane]:
    return [Hyperplane(decode_vector(d["normal"]), int(d["multiplicity"])) for d in data]


def period_to_json(report: PeriodReport) -> dict:
    out = {
        "value": encode_complex(report.value),
        "error": report.error,
        "samples": report.samples,
        "quantized": report.quantized,
        "distance": report.distance,
    }
    if report.loop is not None:
        out["loop"] = loop_to_json(report.loop)
    return out


def winding_to_json(report: WindingReport) -> dict:
    return {
        "period": period_to_json(report.period),
        "trace_winding": report.trace_winding,
        "phase_winding": report.phase_winding,
        "winding": report.winding,
        "distance": report.distance,
    }


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "verdict": cert.verdict,
        "centrality": cert.centrality,
        "closedness": cert.closedness,
        "periods": [period_to_json(p) for p in cert.periods],
    }


def witness_to_json(w: EquivalenceWitness) -> dict:
    return {"U": encode_matrix(w.U), "V": encode_matrix(w.V), "residual": w.residual}


def witness_from_json(data: dict) -> EquivalenceWitness:
    return EquivalenceWitness(decode_matrix(data["U"]), decode_matrix(data["V"]), float(data["residual"]))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def points_csv(rows: Iterable[tuple[np.ndarray, float]], nvars: int) -> str:
    """CSV with columns re_z0, im_z0, ..., re_zn, im_zn, margin."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [f"{part}_z{j}" for j in range(nvars) for part in ("re", "im")] + ["margin"]
    writer.writerow(header)
    for z, m in rows:
        row = []
        for c in np.asarray(z).reshape(-1):
            row += [f"{c.real:.17g}", f"{c.imag:.17g}"]
        writer.writerow(row + [f"{m:.17g}"])
    return buf.getvalue()


def read_points_csv(text: str) -> tuple[np.ndarray, np.ndarray]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    nvars = (len(header) - 1) // 2
    pts, margins = [], []
    for row in reader:
        vals = [float(x) for x in row]
        pts.append([complex(vals[2 * j], vals[2 * j + 1]) for j in range(nvars)])
        margins.append(vals[-1])
    return np.array(pts, dtype=complex).reshape(-1, nvars), np.array(margins)
