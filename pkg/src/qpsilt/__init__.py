"""Quivers with potential, two-term silting, and presentation functors over finite-dimensional algebras."""
from .algebra import FinDimAlgebra, gabriel_quiver, jacobian_algebra, path_algebra, semisimple
from .complexes import BoundedComplex, ChainMap, HomSpace, complexes_isomorphic, cone, cocone
from .exactlin import DEFAULT_FIELD, GF, QQ, Field
from .presentation import RigidContext, make_context
from .qp import QuiverWithPotential, mutate, mutate_sequence
from .quiver import AlgElem, Potential, Quiver, normalize_potential
from .twoterm import enumerate_two_term_silting, is_silting, silting_mutate, stalk

__version__ = "0.1.0"

__all__ = [
    "AlgElem", "BoundedComplex", "ChainMap", "DEFAULT_FIELD", "Field", "FinDimAlgebra", "GF", "HomSpace",
    "Potential", "QQ", "Quiver", "QuiverWithPotential", "RigidContext", "cocone", "complexes_isomorphic",
    "cone", "enumerate_two_term_silting", "gabriel_quiver", "is_silting", "jacobian_algebra", "make_context",
    "mutate", "mutate_sequence", "normalize_potential", "path_algebra", "semisimple", "silting_mutate", "stalk",
]
