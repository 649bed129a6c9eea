"""Exception hierarchy shared by the library and the CLI."""


class MixdiscError(Exception):
    """Base class for every error raised by mixdisc."""


class InputError(MixdiscError, ValueError):
    """Malformed input: wrong shape, non-Hermitian data, bad JSON."""


class PreconditionError(MixdiscError):
    """An operation was called outside its precondition."""


class HypothesisError(PreconditionError):
    """A positivity hypothesis (PSD, PD, sign of a mixed value) does not hold."""
