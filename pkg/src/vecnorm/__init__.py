"""vecnorm: normalization of vector-space and bilinear expressions by
rewriting modulo associativity-commutativity, parameterized by pluggable
scalar rewrite systems, plus an executable lab for the termination,
confluence, classification and universality properties of the rewriting.
"""

from vecnorm._backend import KERNEL_IMPL

__version__ = "0.1.0"

__all__ = ["KERNEL_IMPL", "__version__"]
