"""Meandric systems and large-N Gaussian random-tensor expectations.

The leading-order expectation of the invariant labeled by (sigma_white,
sigma_black) counts meandric systems; ``gauss`` computes it by enumeration and
``factor`` by block factorization and SIF reduction.
"""

from .factor import SifCache, evaluate
from .gauss import ExpansionCoefficients, expectation_leading, expectation_leading_single, full_expansion
from .meander import MeandricSystem, MotzkinPath
from .perm import Permutation, identity, is_sif, parse, shift
from .sequences import catalan, meandric_top_counts, motzkin

__all__ = [
    "ExpansionCoefficients",
    "MeandricSystem",
    "MotzkinPath",
    "Permutation",
    "SifCache",
    "catalan",
    "evaluate",
    "expectation_leading",
    "expectation_leading_single",
    "full_expansion",
    "identity",
    "is_sif",
    "meandric_top_counts",
    "motzkin",
    "parse",
    "shift",
]

__version__ = "0.1.0"
