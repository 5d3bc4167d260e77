"""Exception taxonomy shared across the package.

The command line maps these onto exit codes: argument/domain problems
exit 2, data ingestion problems exit 3, numeric failures exit 4.
"""


class ArgumentError(ValueError):
    """An index, range, or option is structurally invalid."""


class DomainError(ValueError):
    """A value lies outside the mathematical domain of an operation."""


class DataError(RuntimeError):
    """Dataset ingestion failed; ``code`` identifies the failure class."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class NumericError(RuntimeError):
    """A numeric routine failed to converge; carries diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
