"""Average divisor counts of reducible quadratics (n - b)(n - c).

The package computes the objects that appear when tau((n - b)(n - c))
is summed over n: counts of square roots modulo d, the Dirichlet-series
coefficients that encode them, exact divisor-sum scans with a hyperbola
rearrangement, and fully explicit upper bounds for the partial sums.
"""

__version__ = "0.1.0"

from .errors import HypothesisError, ResourceLimitError

__all__ = ["HypothesisError", "ResourceLimitError", "__version__"]
