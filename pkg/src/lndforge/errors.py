"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the CLI reports
verbatim in its ``{"error": code, "message": ...}`` payload.
"""


class LndError(Exception):
    code = "lnd_error"


class RingMismatch(LndError, ValueError):
    code = "ring_mismatch"


class MixedY1Powers(LndError, ValueError):
    code = "mixed_y1_powers"


class ContainsYLast(LndError, ValueError):
    code = "contains_y_last"


class NotDivisible(LndError, ArithmeticError):
    code = "not_divisible"


class IterationCapExceeded(LndError, RuntimeError):
    code = "iteration_cap_exceeded"


class NotInKernel(LndError, ValueError):
    code = "not_in_kernel"


class UnsupportedVariables(LndError, ValueError):
    code = "unsupported_variables"


class DecompositionFailed(LndError, RuntimeError):
    code = "decomposition_failed"


class Infeasible(LndError, ValueError):
    code = "infeasible"


class NRequirement(LndError, ValueError):
    code = "n_requirement"


class InvariantViolation(LndError, AssertionError):
    code = "invariant_violation"


class FormatError(LndError, ValueError):
    code = "format_error"
