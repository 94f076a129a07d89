"""Machine-checked reproductions of the SL3 and D4 worked computations."""

from .d4 import UMorphismCertificate, d4_crystal_data, d4_structures, d4_u_certificate, verify_d4
from .report import Check, Report
from .sl3 import (
    ChartMap,
    TransitionEntry,
    sl3_charts,
    sl3_labels,
    sl3_multiplicity,
    sl3_transition_check,
    sl3_transition_matrix_data,
    transition_entries,
    verify_sl3,
)

__all__ = [
    "ChartMap", "Check", "Report", "TransitionEntry", "UMorphismCertificate", "d4_crystal_data",
    "d4_structures", "d4_u_certificate", "sl3_charts", "sl3_labels", "sl3_multiplicity",
    "sl3_transition_check", "sl3_transition_matrix_data", "transition_entries", "verify_d4", "verify_sl3",
]
