"""Exception hierarchy shared by all omcube modules.

The CLI maps these onto exit codes: precondition/parse problems exit 2,
resource guards exit 3, and domain verdicts (an algorithm legitimately
reporting "no") exit 4.
"""


class OmcubeError(Exception):
    """Base class for all omcube errors."""


class DimensionError(OmcubeError):
    """Operands live on different ground sets / coordinate counts."""


class PreconditionError(OmcubeError):
    """An operation's precondition does not hold for the given input."""


class ParseError(OmcubeError):
    """Malformed input file; carries position information when known."""

    def __init__(self, message, *, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class ResourceLimitError(OmcubeError):
    """A guard against combinatorial blowup tripped (or a budget expired)."""


class GenerationError(OmcubeError):
    """A randomized generator exhausted its retry budget."""


class DomainVerdict(OmcubeError):
    """A definite negative answer that is an algorithm's legitimate output."""


class NotCUOMError(DomainVerdict):
    """Input is not a complex of uniform oriented matroids."""


class NoCompletionFound(DomainVerdict):
    """An exhaustive completion search ended without a witness."""
