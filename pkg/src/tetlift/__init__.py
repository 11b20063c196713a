"""Exact polynomial trace lifting on the reference tetrahedron."""

from .bump import BumpSpec, moment
from .hardy import edge_kernel_A, hardy_average, omega_inverse, partial_fraction_decompose
from .jsonio import random_polynomial
from .kernels import lift_E, lift_M, lift_M1, lift_M2, lift_R, lift_S, lift_S_krq
from .norms import NormSpec, edge_integral_I, sobolev_norm, stability_experiment
from .pipeline import IncompatibleTraces, lift, lift_L1, lift_L2, lift_L3, lift_L4, verify_roundtrip
from .poly import NotDivisible, Poly
from .scalar import SQRT3, Scalar
from .traces import (
    SymTensorPoly,
    TraceTuple,
    boundary_derivative_tensor,
    check_polynomial_compatibility,
    edge_mismatch_factor,
    normal_trace_tuple,
)

__version__ = "0.1.0"

__all__ = [
    "BumpSpec",
    "IncompatibleTraces",
    "NormSpec",
    "NotDivisible",
    "Poly",
    "SQRT3",
    "Scalar",
    "SymTensorPoly",
    "TraceTuple",
    "boundary_derivative_tensor",
    "check_polynomial_compatibility",
    "edge_integral_I",
    "edge_kernel_A",
    "edge_mismatch_factor",
    "hardy_average",
    "lift",
    "lift_E",
    "lift_L1",
    "lift_L2",
    "lift_L3",
    "lift_L4",
    "lift_M",
    "lift_M1",
    "lift_M2",
    "lift_R",
    "lift_S",
    "lift_S_krq",
    "moment",
    "normal_trace_tuple",
    "omega_inverse",
    "partial_fraction_decompose",
    "random_polynomial",
    "sobolev_norm",
    "stability_experiment",
    "verify_roundtrip",
]
