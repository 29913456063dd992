"""
Exception hierarchy for the lab.
Every error carries the process exit code the CLI reports for it.
"""


class LabError(Exception):
    """Base class for every error raised by the lab"""
    exit_code = 2

    def __init__(self, message="Invalid input."):
        self.message = message
        super().__init__(self.message)


class ParseError(LabError):
    """Raised when a WCNF file, instance document or rational cannot be parsed"""
    def __init__(self, message="Input could not be parsed."):
        super().__init__(message)


class ValidationError(LabError):
    """Raised when an operation's precondition does not hold"""
    def __init__(self, message="Precondition violated."):
        super().__init__(message)


class CapacityError(LabError):
    """Raised when exhaustive enumeration would exceed the size cap"""
    def __init__(self, message="Too many solutions to enumerate."):
        super().__init__(message)


class EmbeddingError(LabError):
    """Raised when a distance table has no squared-Euclidean realization"""
    def __init__(self, message="Distance table is not squared-Euclidean embeddable."):
        super().__init__(message)


class OutputError(LabError):
    """Raised when an output file cannot be written"""
    def __init__(self, message="Output could not be written."):
        super().__init__(message)
