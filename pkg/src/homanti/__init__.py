"""Exact computations for finite-dimensional Hom-Lie antialgebras.

The package works over the rationals throughout.  Main entry points:

* :mod:`homanti.algebra` for algebras, axioms and morphisms
* :mod:`homanti.representation` for representations and semidirect products
* :mod:`homanti.cohomology` for cochains, the coboundary and cohomology
* :mod:`homanti.extensions` and :mod:`homanti.deformations`
* :mod:`homanti.catalog` for the built-in examples
"""

from ._backend import BACKEND
from .algebra import (
    AlgebraMorphism,
    HomLieAntialgebra,
    IdentityReport,
    check_axioms,
    check_multiplicative,
    is_homomorphism,
    morphism,
    new_algebra,
    twist,
)
from .catalog import conformal, from_name, k1, twisted_k1
from .linalg import Matrix, rational_format, rational_parse
from .representation import (
    Representation,
    adjoint_representation,
    check_representation,
    hom_module,
    new_representation,
    semidirect,
    trivial_representation,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AlgebraMorphism",
    "HomLieAntialgebra",
    "IdentityReport",
    "Matrix",
    "Representation",
    "adjoint_representation",
    "check_axioms",
    "check_multiplicative",
    "check_representation",
    "conformal",
    "from_name",
    "hom_module",
    "is_homomorphism",
    "k1",
    "morphism",
    "new_algebra",
    "new_representation",
    "rational_format",
    "rational_parse",
    "semidirect",
    "trivial_representation",
    "twist",
    "twisted_k1",
]
