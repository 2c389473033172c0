"""Cubic theta series, their L-values, and the hypergeometric identities
connecting them: exact q-expansion proofs to finite order plus
extended-precision numerical verification.
"""

__version__ = "0.1.0"

from . import hyper, lvalue, qexp, thetanum  # noqa: F401

__all__ = ["qexp", "thetanum", "hyper", "lvalue", "__version__"]
