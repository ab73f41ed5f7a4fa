"""Exception types shared across the package.

The command line front end maps each class to a distinct exit code, so new
failure modes should reuse one of these rather than raising bare exceptions.
"""


class InputError(ValueError):
    """Invalid caller-supplied data: bad node ids, malformed files, bad config."""


class CapabilityError(RuntimeError):
    """Request exceeds a hard size limit (e.g. exhaustive search on a large graph)."""


class ConstructionError(RuntimeError):
    """A randomized generator exhausted its retry budget without a valid sample."""


class IncompleteSpreadError(RuntimeError):
    """A simulation ended at the round cap before the rumor reached every node."""
