"""Numerical toolkit for the projective spectrum of a tuple of matrices.

For square matrices A_0, ..., A_n the projective spectrum is the set of
[z] in P^n where A(z) = z_0 A_0 + ... + z_n A_n is singular. The package
samples it, interpolates det A(z), splits commuting tuples into hyperplanes,
and integrates the Maurer-Cartan form A(z)^{-1} dA(z) over loops.
"""

from .arrangement import Hyperplane, braid_tuple, hyperplanes, joint_eigen_tuples, verify_factorization
from .demos import (
    clock_shift_pair,
    clock_shift_tuple,
    disk_poly_membership,
    rotation_period_experiment,
    rotation_spectrum_locus,
)
from .detpoly import HomogeneousPolynomial, UnivariatePolynomial, interpolate_det, restrict_to_line, roots
from .equiv import find_witness, recover_U, solve_form_similarity
from .errors import (
    GeometricError,
    LoopTouchesSpectrumError,
    NotCommutativeError,
    NotSimilarError,
    NumericalError,
    PreconditionError,
    ProjSpecError,
    SingularPointError,
)
from .fixtures import plane_quadric_tuple
from .mcform import (
    LinearFunctional,
    centrality_check,
    closedness_check,
    descent_check,
    euler_contraction,
    flatness_check,
    omega_eval,
    resolvent_derivative_check,
)
from .pencil import MatrixTuple, ProjectivePoint, normalize
from .periods import Loop, integrate, linking_loop, nontriviality_certificate, radial_log_test, winding_of_det
from .spectrum import affine_slice, cloud_sample, line_sample, margin, membership

__all__ = [name for name in dir() if not name.startswith("_")]
