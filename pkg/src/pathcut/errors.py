"""Exception taxonomy shared across the package.

Every error carries a machine-readable ``category`` that the CLI maps to a
process exit code.
"""


class PathCutError(Exception):
    category = "internal"


class InputError(PathCutError):
    """Malformed input: bad node ids, missing edges, invalid parameters."""

    category = "input"


class SizeError(PathCutError):
    """Instance too large for an exact (brute-force) operation."""

    category = "size"


class InfeasibleError(PathCutError):
    category = "infeasible"


class ConvergenceError(PathCutError):
    category = "convergence"


class IterationLimitError(PathCutError):
    """Attack outer loop exceeded its iteration cap; carries partial state."""

    category = "iteration-limit"

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class RoundingFailureError(PathCutError):
    """Randomized rounding hit its retry cap; carries the fractional solution."""

    category = "rounding"

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class InstanceSkip(PathCutError):
    """An experiment instance cannot be set up (e.g. too few paths for the
    requested rank); recorded and skipped, never fatal to a batch."""

    category = "skip"


EXIT_CODES = {
    "input": 2,
    "size": 3,
    "infeasible": 4,
    "convergence": 5,
    "iteration-limit": 6,
    "rounding": 7,
    "skip": 8,
    "mismatch": 9,
    "internal": 70,
}


def exit_code_for(exc: BaseException) -> int:
    category = getattr(exc, "category", "internal")
    return EXIT_CODES.get(category, EXIT_CODES["internal"])
