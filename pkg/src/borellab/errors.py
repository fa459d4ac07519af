"""Exception hierarchy shared by all modules.

Exit-code policy lives in the CLI: math-stage failures map to 1,
configuration and schema problems map to 2.
"""


class BorelLabError(Exception):
    """Base class for all package errors."""


class DomainError(BorelLabError):
    """An evaluation point lies outside the admissible domain."""


class UsageError(BorelLabError):
    """Structurally incompatible arguments (mismatched grids, bad shapes)."""


class PreconditionError(BorelLabError):
    """A documented operator hypothesis is violated."""


class GeometryError(BorelLabError):
    """No admissible sector/direction/covering exists for the request."""


class ConfigError(BorelLabError):
    """Malformed run configuration or problem file."""


class NonContractionError(BorelLabError):
    """Picard iteration failed to contract.

    Carries the norm trace and measured ratios so the caller can report
    diagnostics instead of a bare failure.
    """

    def __init__(self, message, trace=None, ratios=None):
        super().__init__(message)
        self.trace = list(trace or [])
        self.ratios = list(ratios or [])
