"""Exception types shared across the package.

Invalid arguments raise plain ValueError.  The two classes here mark
conditions that a caller may want to catch separately: a computation
that was refused because it would exceed a size cap, and a bound that
cannot be evaluated because its hypothesis fails.
"""


class ResourceLimitError(RuntimeError):
    """A size cap was exceeded (table too large, brute-force range too big)."""


class HypothesisError(ValueError):
    """A theorem's hypothesis does not hold for the given arguments."""
