"""Exact engine for dg preprojective algebras, Hochschild invariants and dg quotients."""

__version__ = "0.1.0"

from .errors import (AssumptionViolation, EngineError, EtaNotSymplecticBasis,  # noqa: E402
                     SchemaError)
from .coefficients import BaseComponent, BaseRing, LetterRegistry, make_casimir  # noqa: E402
from .tensor import (TensorAlgebra, Potential, build_preprojective,  # noqa: E402
                     build_gl_morphism, check_d_squared, make_eta_F)
from .homology import h_dim, jacobian_presentation  # noqa: E402

__all__ = [
    "__version__", "AssumptionViolation", "EngineError", "EtaNotSymplecticBasis", "SchemaError",
    "BaseComponent", "BaseRing", "LetterRegistry", "make_casimir", "TensorAlgebra", "Potential",
    "build_preprojective", "build_gl_morphism", "check_d_squared", "make_eta_F", "h_dim",
    "jacobian_presentation",
]
