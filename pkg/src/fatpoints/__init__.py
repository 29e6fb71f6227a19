"""Exact computations with Fermat-type point configurations and unexpected hypersurfaces."""

__version__ = "0.1.0"

from .field import CyclotomicField, FieldSpec, PrimeField, make_field  # noqa: E402
from .poly import Poly, ProjPoint, monomials_of_degree, variables  # noqa: E402
from .linalg import DenseMatrix, kernel_basis, rank, symbolic_rank  # noqa: E402
from .fermat import GeneratorKind, build_configuration, generators, verify_vanishing  # noqa: E402

__all__ = [
    "CyclotomicField",
    "DenseMatrix",
    "FieldSpec",
    "GeneratorKind",
    "Poly",
    "PrimeField",
    "ProjPoint",
    "build_configuration",
    "generators",
    "kernel_basis",
    "make_field",
    "monomials_of_degree",
    "rank",
    "symbolic_rank",
    "variables",
    "verify_vanishing",
]
