"""Exact-arithmetic quiver representation theory.

Bound quiver algebras and their blow-ups, pseudo-modulations, generalized
path algebras, natural and Ext quivers, and representations of modulations,
all over the rationals with exact linear algebra.
"""

from .algebra import (BoundQuiverPresentation, RealizedAlgebra, StructureConstAlgebra, blow_up,
                      realize_bound_quiver, split_semisimple)
from .exactla import ExactMatrix
from .gpa import GPAlgebra, gpa_build
from .modulation import PseudoModulation, classify
from .natext import ext_dims_lemma, ext_dims_resolution, natural_quiver, natural_valued_quiver, valued_ext_quiver
from .quiver import Arrow, Quiver

__version__ = "0.1.0"

__all__ = [
    "Arrow", "BoundQuiverPresentation", "ExactMatrix", "GPAlgebra", "PseudoModulation", "Quiver",
    "RealizedAlgebra", "StructureConstAlgebra", "blow_up", "classify", "ext_dims_lemma",
    "ext_dims_resolution", "gpa_build", "natural_quiver", "natural_valued_quiver",
    "realize_bound_quiver", "split_semisimple", "valued_ext_quiver",
]
