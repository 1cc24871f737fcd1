"""Exception hierarchy shared by all modules.

Exit codes used by the CLI: 2 for bad input (including violated
preconditions), 3 for exhausted budgets, 4 for violated mathematical
properties.  Anything else crashing out is a plain 1.
"""


class SrcoxError(Exception):
    exit_code = 1


class InputError(SrcoxError):
    """Malformed user input (files, flags, tokens)."""

    exit_code = 2


class DomainError(InputError):
    """Structurally valid input outside an operation's domain."""

    exit_code = 2


class ResourceError(SrcoxError):
    """A configured budget or cap was exceeded.

    `partial` may carry whatever incomplete result was computed; it is
    never a substitute for the full answer.
    """

    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PropertyViolation(SrcoxError):
    """An invariant that should hold mathematically failed to hold."""

    exit_code = 4
