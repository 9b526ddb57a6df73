"""Minimal generators of F_2[x_1, ..., x_m] over the mod-2 Steenrod algebra.

The cohit space Q_n = (P_m)_n / (hit elements) is computed exactly by
elimination over F_2, with admissible monomial bases, weight filtrations,
Kameko maps and the actions of the symmetric and general linear groups.
"""

from .cohit import CohitBasis, admissible_basis, normal_form, weight_local_dim
from .invariants import invariant_subspace, verify_invariant, weight_action
from .monomials import Polynomial, param_vector, parse_monomial, parse_poly
from .steenrod import hit_space, is_hit, sq

__all__ = [
    "CohitBasis",
    "Polynomial",
    "admissible_basis",
    "hit_space",
    "invariant_subspace",
    "is_hit",
    "normal_form",
    "param_vector",
    "parse_monomial",
    "parse_poly",
    "sq",
    "verify_invariant",
    "weight_action",
    "weight_local_dim",
]

__version__ = "0.1.0"
