"""Exception hierarchy.  Every error carries a stable machine-readable ``code``."""


class MVCrystalError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: str(v) for k, v in self.details.items()}
        return out


class InvalidInputError(MVCrystalError, ValueError):
    code = "invalid_input"


class NonFiniteTypeError(InvalidInputError):
    code = "non_finite_type"


class NonReducedWordError(InvalidInputError):
    code = "non_reduced_word"


class DegenerateLineError(InvalidInputError):
    code = "degenerate_line"


class NonIntegralPathError(MVCrystalError, ValueError):
    code = "non_integral_path"


class BudgetExceededError(MVCrystalError, RuntimeError):
    code = "budget_exceeded"


class CrystalAxiomError(MVCrystalError, RuntimeError):
    code = "axiom_violation"


class MismatchError(InvalidInputError):
    code = "mismatched_data"


class NotInvariantError(InvalidInputError):
    code = "not_invariant"


class NotContainedError(MVCrystalError, ValueError):
    code = "ideal_not_contained"


class InconsistentSystemError(MVCrystalError, ValueError):
    code = "inconsistent_system"


class SingularMatrixError(MVCrystalError, ZeroDivisionError):
    code = "singular_matrix"


class VerificationError(MVCrystalError, RuntimeError):
    code = "verification_failed"
