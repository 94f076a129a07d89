"""Root systems, Weyl group words, dominance order and condition (A)."""

from .condition_a import (
    CondAResult,
    chamber_word_from_line,
    condition_A_check,
    condition_A_system,
    crossing_points,
    lemma_condA_witness_scan,
    verify_condition_A_witness,
)
from .fourier_motzkin import FourierMotzkin, FMResult
from .roots import (
    AffineCoroot,
    CartanDatum,
    RootTables,
    build_root_system,
    dominance_leq,
    dominant_conjugate,
    element_word,
    inner_product,
    is_reduced,
    normalize_word,
    require_reduced,
    rho_eval,
    symmetrizer,
    weyl_act,
    weyl_act_coweight,
    weyl_act_root,
    weyl_dimension,
    weyl_length,
)

__all__ = [
    "AffineCoroot",
    "CartanDatum",
    "CondAResult",
    "FMResult",
    "FourierMotzkin",
    "RootTables",
    "build_root_system",
    "chamber_word_from_line",
    "condition_A_check",
    "condition_A_system",
    "crossing_points",
    "dominance_leq",
    "dominant_conjugate",
    "element_word",
    "inner_product",
    "is_reduced",
    "lemma_condA_witness_scan",
    "normalize_word",
    "require_reduced",
    "rho_eval",
    "symmetrizer",
    "verify_condition_A_witness",
    "weyl_act",
    "weyl_act_coweight",
    "weyl_act_root",
    "weyl_dimension",
    "weyl_length",
]
