"""Exception types shared by all modules.

The CLI maps each class to its own exit code.
"""


class TetraError(Exception):
    """Base class for errors raised by this package."""


class InputError(TetraError, ValueError):
    """The caller passed something that violates an operation's precondition."""


class CapabilityError(TetraError):
    """The input exceeds a configured size bound for an exhaustive routine."""


class InvariantError(TetraError, AssertionError):
    """A structural guarantee failed to hold; this indicates a bug or a counterexample."""
