class MajorizeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MajorizeError, ValueError):
    """Malformed or out-of-domain input (bad lengths, signs, parse failures)."""


class InvariantError(MajorizeError, RuntimeError):
    """A constructed certificate failed its own re-verification.

    Never a legitimate answer; it means there is a bug somewhere.
    """
