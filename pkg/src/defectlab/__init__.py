"""Palindromic defect of infinite words: generation, palindrome indexing, returns and morphism classes."""

from .complexity import (
    FactorIndex,
    eq1_profile,
    factor_complexity,
    find_N,
    richness_via_bispecials,
    special_report,
    trusted_n_max,
)
from .eertree import (
    PalindromeIndex,
    build_index,
    defect,
    estimate_H,
    is_rich,
    palindromic_complexity,
    windowed_defect,
)
from .errors import DefectLabError
from .morphisms import (
    check_class_P,
    check_class_Pret,
    check_standard_special_P,
    derive_rich_preimage,
    pret_to_P,
)
from .returns import complete_returns, estimate_K, oddities, periodic_defect_criterion
from .sidegraph import build_sidegraph, lemma_tree_verdict
from .words import Alphabet, Morphism, Word, WordSpec, generate_prefix, palindromic_closure

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "DefectLabError", "FactorIndex", "Morphism", "PalindromeIndex", "Word", "WordSpec",
    "build_index", "build_sidegraph", "check_class_P", "check_class_Pret", "check_standard_special_P",
    "complete_returns", "defect", "derive_rich_preimage", "eq1_profile", "estimate_H", "estimate_K",
    "factor_complexity", "find_N", "generate_prefix", "is_rich", "lemma_tree_verdict", "oddities",
    "palindromic_closure", "palindromic_complexity", "periodic_defect_criterion", "pret_to_P",
    "richness_via_bispecials", "special_report", "trusted_n_max", "windowed_defect",
]
