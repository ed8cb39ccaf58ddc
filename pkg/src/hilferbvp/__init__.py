"""Dirichlet problems for the generalized Hilfer fractional derivative.

Green's function, Lyapunov- and Hartman-Wintner-type necessary conditions,
existence constants, Picard solutions and Mittag-Leffler eigenvalues.
"""

from .analysis import ProblemSpec
from .expr import parse
from .green import GreenKernel
from .specfun import gamma, ml_eval, ml_roots

__all__ = ["ProblemSpec", "parse", "GreenKernel", "gamma", "ml_eval", "ml_roots"]
__version__ = "0.1.0"
