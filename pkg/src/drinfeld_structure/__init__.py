"""Rank-2 Drinfeld F_q[T]-modules over finite fields: structure of L^phi and exhaustive checks."""

from .apoly import APoly
from .drinfeld import (DrinfeldModule, FrobCharPoly, frobenius_charpoly, is_ordinary,
                       lemma21_quotient, order_in_end, phi_of, recover_scalar)
from .errors import CapExceeded, InternalConsistencyError, NotInImage, ParameterError
from .fields import FieldCtx, FieldElem, embed, extend, make_field, min_poly
from .ore import OrePoly
from .realize import RealizationTarget, census, enumerate_all
from .smith import AMatrix, invariant_factors, smith_normal_form
from .structure import ModuleStructure, euler_char, module_structure, verify_paper_predicates
from .torsion import conjecture_survey, frobenius_matrix, torsion_points

__version__ = "0.1.0"

__all__ = [
    "AMatrix", "APoly", "CapExceeded", "DrinfeldModule", "FieldCtx", "FieldElem",
    "FrobCharPoly", "InternalConsistencyError", "ModuleStructure", "NotInImage", "OrePoly",
    "ParameterError", "RealizationTarget", "census", "conjecture_survey", "embed",
    "enumerate_all", "euler_char", "extend", "frobenius_charpoly", "frobenius_matrix",
    "invariant_factors", "is_ordinary", "lemma21_quotient", "make_field", "min_poly",
    "module_structure", "order_in_end", "phi_of", "recover_scalar",
    "smith_normal_form", "torsion_points", "verify_paper_predicates",
]
