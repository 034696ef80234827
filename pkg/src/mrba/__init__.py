"""Modified Rota-Baxter algebras over the rationals: structures, cohomology,
deformations and abelian extensions, computed exactly."""

from mrba.algebra import (
    AlgebraRep,
    BimoduleRep,
    InvalidStructureError,
    MRBStructure,
    RBStructure,
    adjoint_bimodule,
    from_rota_baxter,
    validate_bimodule,
    validate_mrb,
)
from mrba.cochains import Cochain, CochainPair
from mrba.cohomology import cohomology_report, les_dimension_check, mrba_coboundary

__version__ = "0.1.0"

__all__ = [
    "AlgebraRep",
    "BimoduleRep",
    "Cochain",
    "CochainPair",
    "InvalidStructureError",
    "MRBStructure",
    "RBStructure",
    "adjoint_bimodule",
    "cohomology_report",
    "from_rota_baxter",
    "les_dimension_check",
    "mrba_coboundary",
    "validate_bimodule",
    "validate_mrb",
]
