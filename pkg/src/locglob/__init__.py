"""Local-global invariants of finite Galois modules.

Exact first group cohomology, Tate's cyclic-restriction kernel, p-adic
power tests, Hilbert symbols, elliptic 2-power divisibility, and the
Grunwald-Wang kernel over the rationals, with brute-force cross-checks.
"""

from .abelian import FinAb, Pairing, orthogonal_complement_chain, standard_pairing
from .cohomology import (CocycleClass, H1Group, H1Subgroup, coboundary, h1,
                         h1_star, restrict_class)
from .elliptic import (Curve, CurvePoint, divisible_by_2k, group_law,
                       halve_point, propagation_check, quad_local_roots,
                       scalar_mul)
from .errors import InputError, PrecisionError, SelfCheckError
from .gmodules import (CyclotomicData, GModule, dual_module,
                       homothety_criterion, mu8_klein_model, mu_model,
                       trivial_action_module, trivial_character)
from .groups import (GroupTable, cyclic_group, cyclic_subgroups,
                     direct_product, klein_four_group, symmetric_group_3,
                     trivial_group, unit_group_mod)
from .models import (PlaceModel, ShaGroup, Verdict, finite_support_bound,
                     gw_decision, sha_of_model, verdict, weak_approx_verdict)
from .padics import (PadicNumber, Place, hilbert_symbol, is_nth_power,
                     nth_root, product_formula_check, square_class_approximate)

__all__ = [
    "FinAb", "Pairing", "orthogonal_complement_chain", "standard_pairing",
    "CocycleClass", "H1Group", "H1Subgroup", "coboundary", "h1", "h1_star",
    "restrict_class",
    "Curve", "CurvePoint", "divisible_by_2k", "group_law", "halve_point",
    "propagation_check", "quad_local_roots", "scalar_mul",
    "InputError", "PrecisionError", "SelfCheckError",
    "CyclotomicData", "GModule", "dual_module", "homothety_criterion",
    "mu8_klein_model", "mu_model", "trivial_action_module", "trivial_character",
    "GroupTable", "cyclic_group", "cyclic_subgroups", "direct_product",
    "klein_four_group", "symmetric_group_3", "trivial_group", "unit_group_mod",
    "PlaceModel", "ShaGroup", "Verdict", "finite_support_bound", "gw_decision",
    "sha_of_model", "verdict", "weak_approx_verdict",
    "PadicNumber", "Place", "hilbert_symbol", "is_nth_power", "nth_root",
    "product_formula_check", "square_class_approximate",
]

__version__ = "0.1.0"
