"""Exact trace polynomials of good words in two-generator Mobius groups.

Symbolic core: good-word combinatorics (`words`), exact rational bivariate
polynomials (`exactpoly`), quaternion algebras and their unit groups
(`quatalg`), and the word -> polynomial pipeline (`wordpoly`).  Numeric
oracle and canonical matrices live in `numeric`; applications in
`discreteness` and `zeroset`.  `cli` and `service` are thin front ends.
"""

__version__ = "0.1.0"

from .words import GoodWord, classify, parse_word, star
from .exactpoly import RatPoly2
from .quatalg import Quat
from .wordpoly import WordPolys, trace_poly, word_polys

__all__ = [
    "__version__",
    "GoodWord",
    "parse_word",
    "classify",
    "star",
    "RatPoly2",
    "Quat",
    "WordPolys",
    "word_polys",
    "trace_poly",
]
