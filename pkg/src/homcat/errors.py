"""Exception hierarchy shared by the library and the command line tool.

Every class below signals a problem with the caller's input.  Internal
logic faults (a cocycle whose image fails to be a cocycle, a witness that
does not check) are raised as plain RuntimeError or AssertionError and
are never caught by the CLI's input-error handling.
"""


class HomcatError(Exception):
    """Base class for all input errors raised by this package."""


class ShapeMismatchError(HomcatError):
    """Matrix or component dimensions do not conform."""


class FieldMismatchError(HomcatError):
    """Operands live over different coefficient fields."""


class InvalidComplexError(HomcatError):
    """A differential fails d(d(x)) = 0 where validity is required."""


class InvalidChainMapError(HomcatError):
    """A square that must commute (strictly or up to a witness) does not."""


class NotQuasiIsoError(HomcatError):
    """A map required to be a quasi-isomorphism is not one."""


class SessionSyntaxError(HomcatError):
    """A session file is not syntactically or structurally well formed."""


class UnknownReferenceError(HomcatError):
    """A session entry or command refers to a name that was never declared."""


class UsageError(HomcatError):
    """A CLI invocation has the wrong arguments for its command."""
