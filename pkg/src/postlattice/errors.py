"""Shared exception hierarchy.  Every domain error raised by this package
derives from :class:`PostLatticeError` so callers (and the CLI) can catch
one type."""


class PostLatticeError(Exception):
    """Base class for all errors raised by postlattice."""
