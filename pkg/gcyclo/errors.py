"""Exception hierarchy and exit-code mapping for gcyclo."""

# Exit codes shared by every command
EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_PARAMETER = 2
EXIT_HYPOTHESIS = 3


class CycloError(Exception):
    """Base class for all gcyclo errors.

    Deliberately not a ValueError, so raising one inside a pydantic
    validator propagates unchanged instead of becoming a ValidationError.
    """


class ParameterError(CycloError):
    """Invalid sequence parameters, levels or inputs."""


class NotInvertibleError(CycloError):
    """Element shares a factor with the modulus."""


class NoSolutionError(CycloError):
    """Discrete logarithm does not exist."""


class UndefinedGcdError(CycloError):
    """gcd(0, 0) was requested."""


class SizeError(CycloError):
    """Period or field degree exceeds the configured cap."""


class FieldContextError(CycloError):
    """Field elements belong to different extension fields."""


class HypothesisViolation(CycloError):
    """The closed form does not apply to these parameters."""


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the process exit code."""
    if isinstance(exc, HypothesisViolation):
        return EXIT_HYPOTHESIS
    if isinstance(exc, CycloError):
        return EXIT_PARAMETER
    return EXIT_DISAGREEMENT
